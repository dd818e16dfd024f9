#include "liewedge/semialgebra.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "liewedge/channels.hpp"
#include "liewedge/liealg.hpp"
#include "liewedge/parallel.hpp"

namespace liewedge {

Mat bch(const Mat& a, const Mat& b, int order) {
  if (!a.square() || !a.same_shape(b)) throw ShapeError("bch needs square matrices of one shape");
  if (order < 1 || order > 4) throw DomainError("bch supports orders 1 to 4, got " + std::to_string(order));
  Mat out = a + b;
  if (order < 2) return out;
  const Mat ab = comm(a, b);
  out += 0.5 * ab;
  if (order < 3) return out;
  const Mat a_ab = comm(a, ab);
  out += (1.0 / 12.0) * (a_ab + comm(b, comm(b, a)));
  if (order < 4) return out;
  out -= (1.0 / 24.0) * comm(b, a_ab);
  return out;
}

namespace {

Mat random_wedge_element(const Wedge& w, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  std::uniform_real_distribution<double> weight(0.1, 1.0);
  Mat x = Mat::zeros(w.cone.rows, w.cone.cols, w.cone.field);
  for (const auto& e : w.edge.basis()) x += nd(rng) * (e.field() == x.field() ? e : e.promoted());
  if (!w.cone.generators.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, w.cone.generators.size() - 1);
    const int terms = std::uniform_int_distribution<int>(1, 3)(rng);
    for (int k = 0; k < terms; ++k) x += weight(rng) * w.cone.generators[pick(rng)];
  }
  return x;
}

std::optional<BchWitness> test_pair(const Wedge& w, const Mat& a, const Mat& b, const ProbeOptions& opt) {
  for (double t : opt.t_grid) {
    const Mat p = bch(t * a, t * b, opt.order);
    const auto proj = wedge_project(w, p);
    const double rel = proj.residual / std::max(norm(p), 1e-300);
    if (rel > opt.tol) return BchWitness{a, b, t, p, proj.offending, rel};
  }
  return std::nullopt;
}

}  // namespace

std::optional<BchWitness> semialgebra_probe(const Wedge& w, const ProbeOptions& opt) {
  if (opt.t_grid.empty()) throw DomainError("semialgebra_probe needs a nonempty t grid");
  for (const auto& [a, b] : opt.pairs)
    if (auto hit = test_pair(w, a, b, opt)) return hit;

  std::mt19937_64 rng(opt.seed);
  std::vector<std::pair<Mat, Mat>> pairs(opt.pair_samples);
  for (auto& pr : pairs) {
    pr.first = random_wedge_element(w, rng);
    pr.second = random_wedge_element(w, rng);
  }
  std::vector<std::optional<BchWitness>> hits(pairs.size());
  parallel_for(pairs.size(), [&](std::size_t k) { hits[k] = test_pair(w, pairs[k].first, pairs[k].second, opt); });
  for (auto& h : hits)
    if (h) return h;
  return std::nullopt;
}

Subspace tangent_space(const Wedge& w, const Mat& a, std::size_t face_samples, std::uint64_t seed) {
  const std::size_t rows = w.cone.rows;
  const Field field = (w.cone.field == Field::complex || !a.is_real()) ? Field::complex : Field::real;
  const auto lift = [field](const Mat& m) { return field == Field::complex && m.is_real() ? m.promoted() : m; };
  if (a.rows() != rows || a.cols() != w.cone.cols) throw ShapeError("tangent_space: shape mismatch");
  if (!wedge_contains(w, a, 1e-7)) throw DomainError("tangent_space: A is not in the wedge");

  // Linear constraints on the dual face: orthogonal to the edge, to the
  // supporting generators of A and to their edge derivatives.
  std::vector<Mat> cons;
  for (const auto& e : w.edge.basis()) cons.push_back(lift(e));
  const Mat a_cone = w.edge.dim() > 0 ? lift(a) - w.edge.project(lift(a)) : lift(a);
  if (norm(a_cone) > 0.0 && !w.cone.generators.empty()) {
    const auto cp = cone_project(w.cone, a_cone);
    const double wmax = cp.weights.empty() ? 0.0 : *std::max_element(cp.weights.begin(), cp.weights.end());
    for (std::size_t i = 0; i < cp.support.size(); ++i) {
      if (cp.weights[i] <= 1e-8 * wmax) continue;
      cons.push_back(lift(cp.support[i]));
      for (const auto& e : w.edge.basis()) cons.push_back(comm(lift(e), lift(cp.support[i])));
    }
  }
  cons.push_back(lift(a));
  const Subspace fixed = orthonormal_span(cons, rows, rows, field);
  const Subspace v = orthocomplement(fixed);
  if (v.dim() == 0) return orthocomplement(Subspace(rows, rows, field));

  Cone local = Cone::empty(rows, rows, field);
  for (const auto& g : w.cone.generators) {
    const Mat p = v.project(lift(g));
    if (norm(p) > 1e-12) local.generators.push_back(p);
  }

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<Mat> xs(face_samples, Mat::zeros(rows, rows, field));
  for (auto& x : xs)
    for (const auto& b : v.basis()) x += nd(rng) * b;

  // Projection onto the dual cone within v: d = x + P_cone(-x), refined by
  // cutting planes from the oracle.
  std::vector<std::vector<double>> coords(face_samples);
  parallel_for(face_samples, [&](std::size_t k) {
    Cone c = local;
    const Mat& x = xs[k];
    Mat d = x + cone_project(c, -1.0 * x).nearest;
    if (w.cone.oracle) {
      for (int it = 0; it < 50 && norm(d) > 0.0; ++it) {
        const Mat g = lift(w.cone.oracle(-1.0 * d));
        if (inner(g, d) >= -1e-14 * norm(d)) break;
        c.generators.push_back(v.project(g));
        d = x + cone_project(c, -1.0 * x).nearest;
      }
    }
    if (norm(d) > 1e-8 * norm(x)) coords[k] = v.coordinates((1.0 / norm(d)) * d);
  });

  std::vector<std::vector<double>> kept;
  for (auto& c : coords)
    if (!c.empty()) kept.push_back(std::move(c));
  Subspace face(rows, rows, field);
  if (!kept.empty()) {
    Eigen::MatrixXd m(static_cast<Eigen::Index>(v.dim()), static_cast<Eigen::Index>(kept.size()));
    for (std::size_t j = 0; j < kept.size(); ++j)
      for (std::size_t i = 0; i < v.dim(); ++i) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kept[j][i];
    const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    for (Eigen::Index k = 0; k < s.size(); ++k) {
      if (s[k] <= 1e-5 * s[0]) break;
      Mat dir = Mat::zeros(rows, rows, field);
      for (std::size_t i = 0; i < v.dim(); ++i) dir += svd.matrixU()(static_cast<Eigen::Index>(i), k) * v.basis()[i];
      face.try_extend(dir);
    }
  }
  if (face.dim() == v.dim()) return fixed;
  return orthocomplement(face);
}

Subspace orbit_tangent_space(const Mat& gamma0) {
  std::vector<Mat> gens{H_x(), H_y(), H_z(), gamma0};
  for (const auto& h : {H_x(), H_y(), H_z()}) gens.push_back(comm(h, gamma0));
  return orthonormal_span(gens);
}

std::string to_string(SemialgebraCase c) {
  switch (c) {
    case SemialgebraCase::i: return "i";
    case SemialgebraCase::ii: return "ii";
    case SemialgebraCase::iii: return "iii";
    case SemialgebraCase::iv: return "iv";
  }
  return "?";
}

SemialgebraCase semialgebra_case_from_string(const std::string& s) {
  if (s == "i") return SemialgebraCase::i;
  if (s == "ii") return SemialgebraCase::ii;
  if (s == "iii") return SemialgebraCase::iii;
  if (s == "iv") return SemialgebraCase::iv;
  throw DomainError("unknown semialgebra case '" + s + "' (expected i, ii, iii or iv)");
}

CaseResult semialgebra_case(SemialgebraCase id, const CaseParams& p) {
  CaseResult r;
  r.id = id;
  std::vector<double> diag;
  char axis = 'z';
  std::optional<Mat> b;
  switch (id) {
    case SemialgebraCase::i: diag = {1, 1, 1}; break;
    case SemialgebraCase::ii:
      diag = {1, 0, 0};
      b = p_z();
      break;
    case SemialgebraCase::iii:
      diag = {1, 1, 0};
      axis = 'y';
      b = p_y();
      break;
    case SemialgebraCase::iv:
      if (!(p.a > p.b && p.b > p.c && p.c >= 0.0)) throw DomainError("case iv needs a > b > c >= 0");
      if (p.axis != 'x' && p.axis != 'y' && p.axis != 'z') throw DomainError("case iv axis must be x, y or z");
      diag = {p.a, p.b, p.c};
      axis = p.axis;
      b = r3_named(std::string("p_") + axis);
      break;
  }
  r.gamma0 = Mat::diag(diag);
  r.A = r.gamma0 + r3_named(std::string("H_") + axis);

  ChannelSpec spec = default_spec(ChannelName::example1);
  spec.rates = diag;
  const Wedge w = saturate(initial_wedge(build_system(spec)));
  r.tangent = tangent_space(w, r.A, p.face_samples, p.seed);

  const auto violation_of = [&](const Mat& x) {
    const Mat c = comm(r.A, x);
    return norm(c - r.tangent.project(c)) / std::max(1.0, norm(c));
  };
  Mat worst;
  for (const auto& t : r.tangent.basis()) {
    const double v = violation_of(t);
    if (v > r.violation) {
      r.violation = v;
      worst = t;
    }
  }
  r.semialgebra = r.violation <= 1e-8;
  if (!r.semialgebra) {
    if (!b || violation_of(*b) <= 1e-8) b = worst;
    r.B = *b;
    r.commutator = comm(r.A, *b);
  }
  return r;
}

}  // namespace liewedge
