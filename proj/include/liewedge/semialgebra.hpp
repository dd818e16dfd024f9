#pragma once

// Truncated BCH products, tangent spaces of wedges and the semialgebra
// inclusion test [A, T_A w] in T_A w.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liewedge/matcore.hpp"
#include "liewedge/wedge.hpp"

namespace liewedge {

/// A + B + 1/2[A,B] + 1/12([A,[A,B]] + [B,[B,A]]) - 1/24[B,[A,[A,B]]],
/// truncated after the requested order (1..4).
Mat bch(const Mat& a, const Mat& b, int order = 4);

struct BchWitness {
  Mat A;
  Mat B;
  double t = 0.0;
  Mat product;               // bch(tA, tB)
  Mat offending_component;   // product minus its nearest wedge point
  double residual = 0.0;     // |offending| / |product|
};

struct ProbeOptions {
  std::size_t pair_samples = 1000;
  std::vector<double> t_grid{1e-2};
  double tol = 1e-6;
  std::uint64_t seed = 1;
  int order = 4;
  /// Pairs tested before the random ones.
  std::vector<std::pair<Mat, Mat>> pairs;
};

/// Searches for A, B in w with bch(tA, tB) outside w. No witness means none
/// was found at this sampling budget, not a proof.
std::optional<BchWitness> semialgebra_probe(const Wedge& w, const ProbeOptions& opt = {});

/// T_A w = (A^perp cap w*)^perp from sampled elements of the dual face.
/// Throws DomainError if A is not in w.
Subspace tangent_space(const Wedge& w, const Mat& a, std::size_t face_samples = 64, std::uint64_t seed = 1);

/// so(3) + R Gamma_0 + {[Omega, Gamma_0]}: the tangent space of the orbit
/// wedge at Gamma_0 + H.
Subspace orbit_tangent_space(const Mat& gamma0);

enum class SemialgebraCase { i, ii, iii, iv };
std::string to_string(SemialgebraCase c);
SemialgebraCase semialgebra_case_from_string(const std::string& s);

struct CaseParams {
  /// Diagonal of Gamma_0 for case iv (a > b > c >= 0).
  double a = 3.0, b = 2.0, c = 1.0;
  /// Hamiltonian axis nu in A = Gamma_0 + H_nu for case iv.
  char axis = 'z';
  std::size_t face_samples = 64;
  std::uint64_t seed = 1;
};

struct CaseResult {
  SemialgebraCase id = SemialgebraCase::i;
  bool semialgebra = true;
  Mat gamma0;
  Mat A;
  Subspace tangent;
  std::optional<Mat> B;
  std::optional<Mat> commutator;  // [A, B]
  double violation = 0.0;         // largest relative distance of [A, T] from T
};

/// Orbit wedge so(3) + cone(SO(3) Gamma_0) for the four eigenvalue patterns
/// of Gamma_0, with the inclusion test evaluated on a basis of T_A.
CaseResult semialgebra_case(SemialgebraCase id, const CaseParams& p = {});

}  // namespace liewedge
