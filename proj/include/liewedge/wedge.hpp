#pragma once

// Lie wedges W = E + C (edge E, pointed cone C of dissipative directions) and
// the inner-approximation loop that saturates them under the edge group.
//
// Sign convention: the cone holds the drift directions themselves (Gamma_0 +
// H_d and its conjugates); the tangent wedge of the propagator semigroup is
// E + (-C).

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "liewedge/liealg.hpp"
#include "liewedge/lindblad.hpp"
#include "liewedge/matcore.hpp"

namespace liewedge {

/// Best response of the exact generating family: returns the unit-norm family
/// member g maximising <g, direction>.
using ConeOracle = std::function<Mat(const Mat& direction)>;

struct Cone {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Field field = Field::real;
  /// Unit-norm sampled generators.
  std::vector<Mat> generators;
  /// Optional maximiser over the full (infinite) generating family.
  ConeOracle oracle;
  /// Optional closed form theta -> generator for one-parameter families.
  std::function<Mat(double)> analytic;
  bool pointed = true;
  double tol = 1e-8;

  static Cone empty(std::size_t rows, std::size_t cols, Field field);
  static Cone ray(const Mat& g);
  bool is_empty() const { return generators.empty(); }
};

struct Wedge {
  Subspace edge;
  Cone cone;
  Rep rep = Rep::r3;

  std::size_t rows() const { return cone.rows; }
  /// dim E + dim span(C); the real dimension of the wedge's linear hull.
  std::size_t dimension() const;
};

// --- Membership -----------------------------------------------------------

struct NnlsResult {
  std::vector<double> x;
  double residual = 0.0;
  std::size_t iterations = 0;
};

/// Lawson-Hanson active-set NNLS: min |A x - b| over x >= 0, with A given
/// column-wise as flattened vectors.
NnlsResult nnls(const std::vector<std::vector<double>>& columns, const std::vector<double>& b,
                std::size_t max_iter = 10000);

struct ConeProjection {
  Mat nearest;                      // best nonnegative combination found
  double residual = 0.0;            // |x - nearest|
  std::vector<Mat> support;         // generators with positive weight
  std::vector<double> weights;      // matching weights
};

/// Nearest point of the cone to x. Uses the sampled generators; when an
/// oracle is present, keeps adding the family member most aligned with the
/// residual until no member improves it (column generation).
ConeProjection cone_project(const Cone& c, const Mat& x);

/// residual <= tol * max(1, |x|). An inner approximation when the cone has
/// no oracle.
bool cone_contains(const Cone& c, const Mat& x, double tol = 1e-8);

/// Distance from x to edge + cone, and the offending part x - nearest.
struct WedgeProjection {
  Mat nearest;
  Mat offending;
  double residual = 0.0;
};
WedgeProjection wedge_project(const Wedge& w, const Mat& x);
bool wedge_contains(const Wedge& w, const Mat& x, double tol = 1e-8);

/// Directions g with both g and -g in the cone.
Subspace lineality(const Cone& c, double tol = 1e-8);

// --- Construction ----------------------------------------------------------

/// Edge = span of the control generators; cone = ray through the full drift.
Wedge initial_wedge(const ControlSystem& sys);

struct SaturateOptions {
  /// Orbit samples per round: theta-grid for one-dimensional edges, random
  /// group elements otherwise. Zero selects the defaults (720 / 500).
  std::size_t orbit_samples = 0;
  std::size_t max_rounds = 10;
  double tol = 1e-8;
  std::uint64_t seed = 0x5eedULL;
  /// Attach the best-response oracle to the final cone.
  bool attach_oracle = true;
};

struct SaturateReport {
  std::size_t rounds = 0;
  bool converged = false;
  std::vector<std::size_t> edge_dims;       // per round
  std::vector<std::size_t> generator_counts;  // per round
};

Wedge saturate(const Wedge& w, const SaturateOptions& opt = {}, SaturateReport* report = nullptr);

/// Orthonormal span of the cone generators.
Subspace cone_span(const Cone& c, double tol = 1e-9);

// --- Real 3x3 relaxation cones -------------------------------------------

/// Dual of the cone generated by the SO(3) orbit of diag(a, b, c):
/// c l1(S) + b l2(S) + a l3(S) >= -tol with l1 >= l2 >= l3.
bool dual_cone_contains(double a, double b, double c, const Mat& s, double tol = 1e-10);
/// Eigenvalue partial sums of S bounded by those of gamma, totals equal.
bool majorized(const Mat& s, double a, double b, double c, double tol = 1e-10);

// --- Outer approximation conditions ---------------------------------------

struct OuterWedgeReport {
  double gamma_in_cone = 0.0;        // cone residual of Gamma_L
  double bracket_k_residual = 0.0;   // [c, c] outside the Hamiltonian algebra
  double bracket_span_residual = 0.0;  // [c, ad su(N)] outside span(c)
  double ad_invariance = 0.0;        // cone residual of U g U^dag
  std::size_t samples = 0;
  bool holds(double tol = 1e-8) const {
    return gamma_in_cone <= tol && bracket_k_residual <= tol && bracket_span_residual <= tol && ad_invariance <= tol;
  }
};

/// Samples pairs of cone generators and random unitaries U (as conj(U) (x) U).
/// Accepts the vec carrier (N^2) or the coherence carrier (N^2 - 1).
OuterWedgeReport outer_wedge_check(const Cone& c, const Mat& gamma_l, std::size_t n, std::size_t samples,
                                   std::uint64_t seed = 1);

/// Basis i sigma-hat_P of the Hamiltonian superoperators ad su(N), N = 2^q.
std::vector<Mat> hamiltonian_superop_basis(std::size_t n);

struct GroupElement {
  Mat g;
  Mat g_inv;
  Mat conjugate(const Mat& x) const { return g * x * g_inv; }
};

/// Deterministic group samples exp(E) for E in the edge: identity first, then
/// a uniform theta-grid over one period for one-dimensional edges, random
/// exponentials otherwise.
std::vector<GroupElement> edge_group_samples(const Subspace& edge, std::size_t count, std::uint64_t seed);

}  // namespace liewedge
