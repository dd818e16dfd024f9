#include "liewedge/liealg.hpp"

#include <algorithm>
#include <cmath>

namespace liewedge {

Subspace lie_closure(std::span<const Mat> gens, double tol, std::size_t max_depth) {
  if (gens.empty()) return Subspace{};
  const auto& g0 = gens.front();
  if (!g0.square()) throw ShapeError("lie_closure needs square matrices");
  Field field = Field::real;
  for (const auto& g : gens) {
    if (!g.same_shape(g0)) throw ShapeError("lie_closure generators must share a shape");
    if (!g.is_real()) field = Field::complex;
  }
  Subspace s = orthonormal_span(gens, g0.rows(), g0.cols(), field, tol);
  std::size_t frontier_begin = 0;
  for (std::size_t depth = 0; depth < max_depth; ++depth) {
    const std::size_t frontier_end = s.dim();
    if (frontier_begin == frontier_end) return s;
    for (std::size_t i = frontier_begin; i < frontier_end; ++i)
      for (std::size_t j = 0; j < i; ++j) {
        s.try_extend(comm(s.basis()[i], s.basis()[j]));
        if (s.dim() == s.ambient_dim()) return s;
      }
    frontier_begin = frontier_end;
    if (s.dim() == s.ambient_dim()) return s;
  }
  if (frontier_begin == s.dim()) return s;
  throw ConvergenceError("lie_closure: dimension still growing after " + std::to_string(max_depth) +
                         " bracket levels; the tolerance is probably too small");
}

Subspace lie_closure(const Subspace& s, std::size_t max_depth) {
  if (s.dim() == 0) return s;
  return lie_closure(s.basis(), s.tol(), max_depth);
}

bool subspace_contains(const Subspace& s, const Mat& a, double tol) {
  if (s.dim() > 0 && (a.rows() != s.rows() || a.cols() != s.cols()))
    throw ShapeError("matrix " + shape_string(a) + " is not in the ambient space of the subspace");
  const Mat r = s.dim() > 0 ? a - s.project(a) : a;
  return norm(r) <= tol * std::max(1.0, norm(a));
}

bool subspace_equal(const Subspace& a, const Subspace& b, double tol) {
  if (a.dim() != b.dim()) return false;
  for (const auto& v : a.basis())
    if (!subspace_contains(b, v, tol)) return false;
  return true;
}

std::vector<Mat> ambient_basis(std::size_t rows, std::size_t cols, Field field) {
  std::vector<Mat> out;
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      Mat e = Mat::zeros(rows, cols, field);
      e(i, j) = 1.0;
      out.push_back(e);
      if (field == Field::complex) {
        Mat f = Mat::zeros(rows, cols, field);
        f(i, j) = cplx{0.0, 1.0};
        out.push_back(f);
      }
    }
  return out;
}

Subspace orthocomplement(const Subspace& s) {
  Subspace out(s.rows(), s.cols(), s.field(), s.tol());
  Subspace work = s;
  for (const auto& e : ambient_basis(s.rows(), s.cols(), s.field())) {
    const Mat r = work.dim() > 0 ? e - work.project(e) : e;
    if (norm(r) > 1e-6 && work.try_extend(r)) out.try_extend(r);
  }
  return out;
}

Subspace subspace_sum(const Subspace& a, const Subspace& b) {
  Subspace out = a.dim() > 0 ? a : Subspace(b.rows(), b.cols(), b.field(), b.tol());
  for (const auto& v : b.basis()) out.try_extend(v);
  return out;
}

std::pair<Mat, Mat> cartan_split(const Mat& a) {
  if (!a.square()) throw ShapeError("cartan_split needs a square matrix");
  const Mat adj = a.adjoint();
  return {0.5 * (a - adj), 0.5 * (a + adj)};
}

ConditionReport check_conditions(const ControlSystem& sys, double tol) {
  validate(sys);
  ConditionReport r;
  const std::size_t n = hilbert_dim(sys.rep);
  r.dim_target_k = n * n - 1;
  r.dim_target_s = r.dim_target_k * r.dim_target_k;

  std::vector<Mat> gens = control_generators(sys);
  r.dim_kc = lie_closure(gens, tol).dim();
  if (!sys.drift_h.empty() && norm(sys.drift_h) > 0.0) gens.push_back(hamiltonian_generator(sys, sys.drift_h));
  r.dim_kd = lie_closure(gens, tol).dim();

  std::vector<Mat> sgens = control_generators(sys);
  const Mat drift = drift_generator(sys);
  if (norm(drift) > 0.0) sgens.push_back(drift);
  if (sys.rep == Rep::r3) {
    r.dim_s = lie_closure(sgens, tol).dim();
  } else {
    // Restrict to the traceless carrier so that s is measured in gl(her_0).
    std::vector<Mat> cg;
    for (const auto& g : sgens) cg.push_back(coherence_rep(g));
    r.dim_s = lie_closure(cg, tol).dim();
  }

  r.holds_H = r.dim_kc == r.dim_target_k;
  r.holds_WH = r.dim_kd == r.dim_target_k && !r.holds_H;
  r.holds_A = r.dim_s == r.dim_target_s;
  return r;
}

}  // namespace liewedge
