#pragma once

// Catalogue of concrete systems: the real 3x3 examples, the single-qubit
// channel families and the two-qubit systems, plus closed forms for the
// conjugated drift components and Kraus families.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "liewedge/lindblad.hpp"
#include "liewedge/matcore.hpp"

namespace liewedge {

// --- Real 3x3 basis --------------------------------------------------------

/// Rotation generators with expm(t H_z) the rotation by t about e_z.
Mat H_x();
Mat H_y();
Mat H_z();
/// Off-diagonal symmetric generators.
Mat p_x();
Mat p_y();
Mat p_z();
/// E_ii = e_i e_i^T for i in {1, 2, 3}.
Mat E_diag(int i);
/// E_ii - E_jj.
Mat Delta(int i, int j);
/// 2/9 I + 1/18 Delta_12 + 8/9 Delta_13 = diag(7/6, 1/6, -2/3).
Mat Delta_ex3();
/// Named r3 element: H_x, H_y, H_z, p_x, p_y, p_z, E11, E22, E33, I.
Mat r3_named(const std::string& name);

/// Levi-Civita symbol over axis labels x, y, z.
int epsilon(char p, char q, char r);
/// The axis different from both arguments (which must differ).
char third_axis(char a, char b);

// --- Specifications --------------------------------------------------------

enum class ChannelName {
  bit_flip,
  phase_flip,
  bit_phase_flip,
  depolarizing,
  example1,
  example2,
  example3,
  two_qubit_A,
  two_qubit_B,
  two_qubit_C,
};

std::string to_string(ChannelName name);
ChannelName channel_from_string(const std::string& s);

struct ChannelSpec {
  ChannelName name = ChannelName::phase_flip;
  /// flips: {gamma}; depolarizing: {gamma_x, gamma_y, gamma_z};
  /// example1: {a, b, c}; example2/3: {gamma};
  /// two-qubit: {gamma, gamma'} for local noise on the first/second qubit.
  std::vector<double> rates;
  /// Single qubit: "x", "y", "z". Two qubit: Pauli pairs such as "x1", "1y", "zz".
  std::vector<std::string> control_axes;
  std::optional<std::string> drift_axis;
  /// Two-qubit local noise axes k, k' (default z, z).
  std::vector<char> noise_axes;
};

/// The configuration used throughout the examples for each name; the
/// single-qubit channels come out purely dissipative.
ChannelSpec default_spec(ChannelName name);

/// Throws DomainError on inconsistent specs.
ControlSystem build_system(const ChannelSpec& spec);

// --- Conjugated drift components (single qubit) ---------------------------

/// k-part of the drift i sigma-hat_d conjugated by expm(-theta i sigma-hat_c).
Mat k_component(char c, char d, double theta);

struct AxisRate {
  char axis;
  double rate;
};

/// p-part of the dissipator sum_k 2 gamma_k sigma-hat_k^2 conjugated by
/// expm(-theta i sigma-hat_c); closed forms for one, two or three operators.
Mat p_component(char c, std::span<const AxisRate> ks, double theta);

/// Coefficients of p_component on the basis
/// {sigma-hat_c'^2 ..., {sigma-hat_k, sigma-hat_r}} as listed by
/// p_component_terms; used to check the displayed coefficient vectors.
struct PauliTerm {
  double coef;
  Mat op;
  std::string label;
};
std::vector<PauliTerm> p_component_terms(char c, std::span<const AxisRate> ks, double theta);

// --- Kraus families -------------------------------------------------------

struct KrausSet {
  std::vector<Mat> operators;
  double time = 0.0;
};

KrausSet kraus_family(const ChannelSpec& spec, double t);
/// sum_i conj(E_i) (x) E_i.
Mat kraus_superop(const KrausSet& k);
/// Choi rank at 1e-8 relative; throws DomainError if T is not CP.
std::size_t kraus_rank(const Superop& t);
/// sum E_i^dag E_i - I, max entry.
double kraus_completeness_residual(const KrausSet& k);

// --- Two-qubit systems ----------------------------------------------------

/// Edge-conjugated drift of two_qubit_C with local rotation angles theta,
/// theta' about the control axes c (first qubit) and c' (second qubit).
Mat two_qubit_wedge_generators(const ChannelSpec& spec, double theta, double theta_p);
/// Same via explicit conjugation, for cross-checks.
Mat two_qubit_conjugated_drift(const ChannelSpec& spec, double theta, double theta_p);

}  // namespace liewedge
