#pragma once

// Lie closures, subspace arithmetic and controllability conditions.

#include <utility>
#include <vector>

#include "liewedge/lindblad.hpp"
#include "liewedge/matcore.hpp"

namespace liewedge {

/// Smallest bracket-closed subspace containing gens. Breadth-first: each level
/// brackets the new basis elements against the whole basis. Throws
/// ConvergenceError if the dimension still grows after max_depth levels.
Subspace lie_closure(std::span<const Mat> gens, double tol = 1e-9, std::size_t max_depth = 64);
Subspace lie_closure(const Subspace& s, std::size_t max_depth = 64);

/// |A - proj_S A| <= tol * max(1, |A|).
bool subspace_contains(const Subspace& s, const Mat& a, double tol = 1e-9);
bool subspace_equal(const Subspace& a, const Subspace& b, double tol = 1e-9);
/// Orthogonal complement within the ambient matrix space of s.
Subspace orthocomplement(const Subspace& s);
Subspace subspace_sum(const Subspace& a, const Subspace& b);
/// Orthonormal basis of the full ambient space (real or complex matrices).
std::vector<Mat> ambient_basis(std::size_t rows, std::size_t cols, Field field);

/// (A - A^dag)/2 and (A + A^dag)/2; transpose replaces adjoint on real input.
std::pair<Mat, Mat> cartan_split(const Mat& a);

struct ConditionReport {
  std::size_t dim_kc = 0;
  std::size_t dim_kd = 0;
  std::size_t dim_s = 0;
  std::size_t dim_target_k = 0;
  std::size_t dim_target_s = 0;
  bool holds_H = false;
  bool holds_WH = false;
  bool holds_A = false;
};

/// kc = Lie closure of the control generators, kd adds the Hamiltonian drift,
/// s adds the full drift (Hamiltonian plus dissipator).
ConditionReport check_conditions(const ControlSystem& sys, double tol = 1e-9);

}  // namespace liewedge
