#pragma once

// Controlled Lindblad generators and their representations.
//
// Operators are vectorised column-wise, vec(A X B) = (B^T (x) A) vec(X), so a
// superoperator on N x N matrices is an N^2 x N^2 matrix.

#include <string>
#include <vector>

#include "liewedge/matcore.hpp"

namespace liewedge {

/// Carrier of a control system.
///  r3        : real 3x3 generators (coherence-vector picture of a qubit)
///  qubit     : 4x4 superoperators
///  two_qubit : 16x16 superoperators
enum class Rep { r3, qubit, two_qubit };

std::string to_string(Rep rep);
Rep rep_from_string(const std::string& s);
/// Hilbert-space dimension N of the underlying quantum system.
std::size_t hilbert_dim(Rep rep);
/// Side length of the generator matrices in this carrier.
std::size_t generator_dim(Rep rep);

struct LindbladTerm {
  Mat op;
  double rate = 0.0;
};

struct ControlSystem {
  Rep rep = Rep::qubit;
  /// Hermitian N x N for the quantum carriers; real skew 3x3 for r3.
  Mat drift_h;
  std::vector<Mat> controls;
  /// Lindblad operators with rates (quantum carriers only).
  std::vector<LindbladTerm> lindblad;
  /// Relaxation operator Gamma_0 (r3 only; symmetric positive semidefinite).
  Mat relaxation;
};

/// Throws DomainError / ShapeError if the system breaks its invariants.
void validate(const ControlSystem& sys, double tol = 1e-10);

enum class Carrier { vec, coherence };

struct Superop {
  Mat matrix;
  Carrier carrier = Carrier::vec;
  std::size_t n = 2;  // Hilbert dimension N
};

// --- Pauli machinery ------------------------------------------------------

/// sigma_1 (identity), sigma_x, sigma_y, sigma_z for labels '1','x','y','z'.
Mat pauli(char axis);
/// Tensor product of Paulis, e.g. "zz", "x1", "1y".
Mat pauli_string(const std::string& label);
/// Commutator superoperator sigma-hat for a Pauli label, = ad_hat(sigma/2).
Mat sigma_hat(const std::string& label);

// --- Generators -----------------------------------------------------------

/// I (x) H - H^T (x) I, the matrix of X -> [H, X]. Requires Hermitian H.
Mat ad_hat(const Mat& h);
/// GKS dissipator sum_k rate_k [ 1/2 (I (x) V^dag V + (V^dag V)^T (x) I) - conj(V) (x) V ].
Mat gks_dissipator(const std::vector<LindbladTerm>& ops);

/// Generator contributed by a Hamiltonian in the system's carrier:
/// i ad_hat(H) for quantum carriers, H itself for r3.
Mat hamiltonian_generator(const ControlSystem& sys, const Mat& h);
/// Dissipative part of the drift in the system's carrier.
Mat dissipator(const ControlSystem& sys);
/// Full drift generator: Hamiltonian drift plus dissipator.
Mat drift_generator(const ControlSystem& sys);
std::vector<Mat> control_generators(const ControlSystem& sys);

/// L_u = i ad_hat(H_d + sum u_j H_j) + Gamma_L; propagators are expm(-t L_u).
Superop lindbladian(const ControlSystem& sys, std::span<const double> u);

// --- Coherence-vector representation --------------------------------------

/// Orthonormal basis of traceless Hermitian N x N matrices used for the
/// coherence representation: conj(sigma_P)/sqrt(N) over non-identity Pauli
/// strings in lexicographic order over (1, x, y, z). The conjugation makes the
/// spin-1/2 generator i sigma-hat_z map to H_z.
std::vector<Mat> coherence_basis(std::size_t n);

/// Restriction of a unital superoperator to her_0(N) in coherence_basis().
/// Accepts generators (annihilating I) and channels (fixing I); throws
/// DomainError if I is not an invariant direction on both sides.
Mat coherence_rep(const Mat& superop, double tol = 1e-10);
Mat coherence_rep(const Superop& t, double tol = 1e-10);
/// Inverse of coherence_rep; identity_block is the action on I/sqrt(N)
/// (1 for channels, 0 for generators).
Mat superop_from_coherence(const Mat& m, std::size_t n, double identity_block = 1.0);

// --- Channel audits -------------------------------------------------------

/// Choi matrix C = sum_ij E_ij (x) T(E_ij), i.e.
/// C[(i N + a), (j N + b)] = T[(b N + a), (j N + i)] for column-wise vec.
Mat choi(const Mat& superop);

struct CptpReport {
  bool is_tp = false;
  double tp_residual = 0.0;
  double choi_min_eig = 0.0;
  bool is_cp = false;
};

CptpReport cptp_audit(const Superop& t, double tp_tol = 1e-10, double cp_tol = 1e-10);

}  // namespace liewedge
