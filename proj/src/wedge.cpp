#include "liewedge/wedge.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>

#include "liewedge/parallel.hpp"

namespace liewedge {

Cone Cone::empty(std::size_t rows, std::size_t cols, Field field) {
  Cone c;
  c.rows = rows;
  c.cols = cols;
  c.field = field;
  return c;
}

Cone Cone::ray(const Mat& g) {
  Cone c = empty(g.rows(), g.cols(), g.field());
  const double n = norm(g);
  if (n > 0.0) c.generators.push_back((1.0 / n) * g);
  return c;
}

Subspace cone_span(const Cone& c, double tol) { return orthonormal_span(c.generators, c.rows, c.cols, c.field, tol); }

std::size_t Wedge::dimension() const { return edge.dim() + cone_span(cone).dim(); }

// --- NNLS -------------------------------------------------------------------

NnlsResult nnls(const std::vector<std::vector<double>>& columns, const std::vector<double>& b, std::size_t max_iter) {
  const std::size_t n = columns.size();
  const std::size_t m = b.size();
  NnlsResult out;
  out.x.assign(n, 0.0);
  const Eigen::Map<const Eigen::VectorXd> bv(b.data(), static_cast<Eigen::Index>(m));
  if (n == 0) {
    out.residual = bv.norm();
    return out;
  }
  Eigen::MatrixXd a(m, n);
  for (std::size_t j = 0; j < n; ++j) {
    if (columns[j].size() != m) throw ShapeError("nnls: column length does not match the target");
    a.col(static_cast<Eigen::Index>(j)) = Eigen::Map<const Eigen::VectorXd>(columns[j].data(), static_cast<Eigen::Index>(m));
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  std::vector<char> passive(n, 0);
  std::vector<char> blocked(n, 0);
  const double scale = std::max(1.0, a.cwiseAbs().maxCoeff()) * std::max(1.0, bv.norm());
  const double wtol = 1e-13 * scale;

  Eigen::VectorXd resid = bv;
  Eigen::VectorXd w = a.transpose() * resid;
  std::size_t iter = 0;
  while (iter < max_iter) {
    Eigen::Index t = -1;
    double best = wtol;
    for (std::size_t j = 0; j < n; ++j)
      if (!passive[j] && !blocked[j] && w[j] > best) {
        best = w[j];
        t = static_cast<Eigen::Index>(j);
      }
    if (t < 0) break;
    passive[t] = 1;
    bool added_survived = true;
    while (iter++ < max_iter) {
      std::vector<Eigen::Index> idx;
      for (std::size_t j = 0; j < n; ++j)
        if (passive[j]) idx.push_back(static_cast<Eigen::Index>(j));
      Eigen::MatrixXd ap(m, idx.size());
      for (std::size_t k = 0; k < idx.size(); ++k) ap.col(static_cast<Eigen::Index>(k)) = a.col(idx[k]);
      Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(ap);
      qr.setThreshold(1e-12);
      const Eigen::VectorXd z = qr.solve(bv);
      bool feasible = true;
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (z[static_cast<Eigen::Index>(k)] <= 0.0) feasible = false;
      if (feasible) {
        x.setZero();
        for (std::size_t k = 0; k < idx.size(); ++k) x[idx[k]] = z[static_cast<Eigen::Index>(k)];
        break;
      }
      double alpha = 1.0;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const double zk = z[static_cast<Eigen::Index>(k)];
        if (zk <= 0.0) {
          const double xk = x[idx[k]];
          alpha = std::min(alpha, xk / (xk - zk));
        }
      }
      for (std::size_t k = 0; k < idx.size(); ++k) {
        const double zk = z[static_cast<Eigen::Index>(k)];
        x[idx[k]] += alpha * (zk - x[idx[k]]);
      }
      for (std::size_t k = 0; k < idx.size(); ++k)
        if (x[idx[k]] <= 1e-15 * std::max(1.0, x.cwiseAbs().maxCoeff())) {
          x[idx[k]] = 0.0;
          passive[idx[k]] = 0;
        }
      if (!passive[t]) {
        added_survived = false;
        break;
      }
    }
    const Eigen::VectorXd new_resid = bv - a * x;
    if (!added_survived && new_resid.norm() >= resid.norm() - 1e-15 * scale) {
      // Degenerate column: skip it until the iterate moves.
      blocked[t] = 1;
    } else {
      std::fill(blocked.begin(), blocked.end(), 0);
    }
    resid = new_resid;
    w = a.transpose() * resid;
  }
  out.iterations = iter;
  for (std::size_t j = 0; j < n; ++j) out.x[j] = std::max(0.0, x[static_cast<Eigen::Index>(j)]);
  out.residual = (bv - a * x).norm();
  return out;
}

// --- Projection onto cones and wedges ----------------------------------------

namespace {

Mat combine(const std::vector<Mat>& gens, const std::vector<double>& w, std::size_t rows, std::size_t cols, Field f) {
  Mat out = Mat::zeros(rows, cols, f);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (w[i] > 0.0) out += w[i] * gens[i];
  return out;
}

ConeProjection project_onto(const std::vector<Mat>& gens, const Mat& x, std::size_t rows, std::size_t cols, Field f) {
  std::vector<std::vector<double>> columns;
  columns.reserve(gens.size());
  for (const auto& g : gens) columns.push_back(f == Field::complex && g.is_real() ? g.promoted().flatten() : g.flatten());
  Mat xf = x;
  if (f == Field::complex && x.is_real()) xf = x.promoted();
  const auto sol = nnls(columns, xf.flatten());
  ConeProjection p;
  p.nearest = combine(gens, sol.x, rows, cols, f);
  p.residual = norm(x - p.nearest);
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (sol.x[i] > 0.0) {
      p.support.push_back(gens[i]);
      p.weights.push_back(sol.x[i]);
    }
  return p;
}

// Column generation against the oracle. Stops early once a polar-cone
// certificate shows the distance exceeds exit_distance (negative: never).
ConeProjection project_generated(const Cone& c, const Mat& x, double exit_distance) {
  if (x.rows() != c.rows || x.cols() != c.cols)
    throw ShapeError("cone_project: " + shape_string(x) + " is not in the ambient space of the cone");
  const Field f = (c.field == Field::complex || !x.is_real()) ? Field::complex : Field::real;
  ConeProjection p = project_onto(c.generators, x, c.rows, c.cols, f);
  if (!c.oracle || p.residual <= exit_distance) return p;

  const double xs = std::max(1.0, norm(x));
  const bool early = exit_distance >= 0.0;
  Mat u;
  double kappa = 0.0;
  if (early) {
    u = Mat::zeros(c.rows, c.cols, c.field);
    for (const auto& g : c.generators) u += g;
    if (norm(u) > 0.0) {
      u = (1.0 / norm(u)) * u;
      kappa = inner(c.oracle(-1.0 * u), u);
    }
  }
  std::vector<Mat> working = p.support;
  working.push_back(c.oracle(x));
  if (const ConeProjection q = project_onto(working, x, c.rows, c.cols, f); q.residual < p.residual) p = q;
  for (int it = 0; it < 200; ++it) {
    if (p.residual <= exit_distance) break;
    if (p.residual <= 1e-13 * xs) break;
    const Mat r = x - p.nearest;
    const Mat g = c.oracle(r);
    const double m = inner(g, r);
    if (m <= 1e-12 * norm(r)) break;
    if (kappa > 1e-9) {
      const Mat d = (1.0 / norm(r)) * r - (m / (norm(r) * kappa)) * u;
      if (inner(x, d) > exit_distance * norm(d)) break;
    }
    working = p.support;
    working.push_back(g);
    const ConeProjection q = project_onto(working, x, c.rows, c.cols, f);
    if (q.residual >= p.residual * (1.0 - 1e-14)) break;
    p = q;
    if (p.residual <= exit_distance) break;
  }
  return p;
}

}  // namespace

ConeProjection cone_project(const Cone& c, const Mat& x) {
  return project_generated(c, x, -1.0);
}

bool cone_contains(const Cone& c, const Mat& x, double tol) {
  const double bound = tol * std::max(1.0, norm(x));
  return project_generated(c, x, bound).residual <= bound;
}

WedgeProjection wedge_project(const Wedge& w, const Mat& x) {
  WedgeProjection out;
  const Mat e = w.edge.dim() > 0 ? w.edge.project(x) : Mat::zeros(x.rows(), x.cols(), x.field());
  const ConeProjection cp = cone_project(w.cone, x - e);
  out.nearest = e + cp.nearest;
  out.offending = x - out.nearest;
  out.residual = norm(out.offending);
  return out;
}

bool wedge_contains(const Wedge& w, const Mat& x, double tol) {
  return wedge_project(w, x).residual <= tol * std::max(1.0, norm(x));
}

Subspace lineality(const Cone& c, double tol) {
  Subspace out(c.rows, c.cols, c.field);
  if (c.generators.empty()) return out;
  Mat sum = Mat::zeros(c.rows, c.cols, c.field);
  for (const auto& g : c.generators) sum += g;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& g : c.generators) worst = std::min(worst, inner(sum, g));
  if (worst > tol * static_cast<double>(c.generators.size())) return out;  // pointedness certificate

  Cone sampled = c;
  sampled.oracle = nullptr;
  std::vector<char> in_lineality(c.generators.size(), 0);
  parallel_for(c.generators.size(), [&](std::size_t i) {
    in_lineality[i] = cone_contains(sampled, -1.0 * c.generators[i], std::max(tol, 1e-7)) ? 1 : 0;
  });
  for (std::size_t i = 0; i < c.generators.size(); ++i)
    if (in_lineality[i]) out.try_extend(c.generators[i]);
  return out;
}

// --- Construction -------------------------------------------------------------

Wedge initial_wedge(const ControlSystem& sys) {
  validate(sys);
  Wedge w;
  w.rep = sys.rep;
  const Mat drift = drift_generator(sys);
  const auto ctrl = control_generators(sys);
  Field f = drift.field();
  for (const auto& g : ctrl)
    if (!g.is_real()) f = Field::complex;
  w.edge = orthonormal_span(ctrl, drift.rows(), drift.cols(), f);
  w.cone = Cone::ray(f == Field::complex ? drift.promoted() : drift);
  w.cone.rows = drift.rows();
  w.cone.cols = drift.cols();
  w.cone.field = f;
  return w;
}

std::vector<Mat> hamiltonian_superop_basis(std::size_t n) {
  const cplx i{0.0, 1.0};
  std::vector<Mat> out;
  std::vector<std::string> labels{""};
  std::size_t q = 0;
  for (std::size_t m = 1; m < n; m *= 2) ++q;
  for (std::size_t k = 0; k < q; ++k) {
    std::vector<std::string> next;
    for (const auto& s : labels)
      for (char c : {'1', 'x', 'y', 'z'}) next.push_back(s + c);
    labels = std::move(next);
  }
  for (const auto& l : labels)
    if (l.find_first_not_of('1') != std::string::npos) out.push_back(i * sigma_hat(l));
  return out;
}

namespace {

bool all_skew(const Subspace& s) {
  for (const auto& b : s.basis())
    if (!is_skew_hermitian(b, 1e-10)) return false;
  return true;
}


// Eigenvalues of i E for skew-Hermitian E.
std::vector<double> skew_frequencies(const Mat& e) {
  const Mat h = cplx{0.0, 1.0} * e.promoted();
  return eig_sym(0.5 * (h + h.adjoint()), 1e-6).values;
}

double one_parameter_period(const Mat& e) {
  double base = 0.0;
  for (double v : skew_frequencies(e))
    if (std::abs(v) > 1e-9 && (base == 0.0 || std::abs(v) < base)) base = std::abs(v);
  if (base == 0.0) return 1.0;
  return 2.0 * std::numbers::pi / base;
}

double spectral_radius(const Mat& e) {
  const auto f = skew_frequencies(e);
  return std::max(std::abs(f.front()), std::abs(f.back()));
}

Mat unit(const Mat& x) { return (1.0 / norm(x)) * x; }

Mat off_edge(const Subspace& edge, const Mat& x) { return edge.dim() > 0 ? x - edge.project(x) : x; }

// Maximises <Ad_g s, d> over g in the edge group by regularised Newton steps
// in exponential coordinates around the current point.
class OrbitOracle {
 public:
  OrbitOracle(std::vector<Mat> edge_basis, std::vector<Mat> orbit, std::size_t starts)
      : basis_(std::move(edge_basis)), orbit_(std::move(orbit)), starts_(starts) {}

  Mat operator()(const Mat& d) const {
    std::vector<std::pair<double, std::size_t>> scored(orbit_.size());
    for (std::size_t k = 0; k < orbit_.size(); ++k) scored[k] = {inner(orbit_[k], d), k};
    const std::size_t keep = std::min(starts_, scored.size());
    std::partial_sort(scored.begin(), scored.begin() + static_cast<std::ptrdiff_t>(keep), scored.end(),
                      [](const auto& a, const auto& b) { return a.first > b.first; });
    Mat best = orbit_[scored.front().second];
    double best_val = scored.front().first;
    if (basis_.empty()) return best;
    for (std::size_t s = 0; s < keep; ++s) {
      Mat y = climb(orbit_[scored[s].second], d);
      const double v = inner(y, d);
      if (v > best_val) {
        best_val = v;
        best = std::move(y);
      }
    }
    return best;
  }

 private:
  Mat climb(Mat y, const Mat& d) const {
    const std::size_t n = basis_.size();
    const double scale = std::max(1e-300, norm(d));
    double f = inner(y, d);
    for (int it = 0; it < 100; ++it) {
      std::vector<Mat> first(n);
      std::vector<double> grad(n);
      for (std::size_t i = 0; i < n; ++i) {
        first[i] = comm(basis_[i], y);
        grad[i] = inner(first[i], d);
      }
      double gnorm = 0.0;
      for (double g : grad) gnorm += g * g;
      gnorm = std::sqrt(gnorm);
      if (gnorm <= 1e-14 * scale) break;
      Mat hess = Mat::zeros(n, n);
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) {
          const double v = 0.5 * (inner(comm(basis_[i], first[j]), d) + inner(comm(basis_[j], first[i]), d));
          hess(i, j) = v;
          hess(j, i) = v;
        }
      const auto eig = eig_sym(hess, 1e-6);
      const double shift = std::max(0.0, eig.values.front()) + 1e-3 * scale;
      std::vector<double> step(n, 0.0);
      for (std::size_t k = 0; k < n; ++k) {
        double proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += eig.vectors(i, k).real() * grad[i];
        const double c = -proj / (eig.values[k] - shift);
        for (std::size_t i = 0; i < n; ++i) step[i] += c * eig.vectors(i, k).real();
      }
      bool improved = false;
      for (int ls = 0; ls < 40; ++ls) {
        Mat x = Mat::zeros(basis_[0].rows(), basis_[0].cols(), basis_[0].field());
        for (std::size_t i = 0; i < n; ++i) x += step[i] * basis_[i];
        const Mat g = expm(x);
        Mat cand = g * y * g.adjoint();
        cand = unit(cand);
        const double fc = inner(cand, d);
        if (fc > f) {
          const double gain = fc - f;
          y = std::move(cand);
          f = fc;
          improved = true;
          if (gain <= 1e-15 * scale) it = 100;
          break;
        }
        for (double& s : step) s *= 0.5;
      }
      if (!improved) break;
    }
    return y;
  }

  std::vector<Mat> basis_;
  std::vector<Mat> orbit_;
  std::size_t starts_;
};

bool near_duplicate(const Mat& a, const std::vector<Mat>& pool, double tol) {
  for (const auto& b : pool)
    if (max_abs_diff(a, b) <= tol) return true;
  return false;
}

}  // namespace

std::vector<GroupElement> edge_group_samples(const Subspace& edge, std::size_t count, std::uint64_t seed) {
  std::vector<GroupElement> out;
  const std::size_t side = edge.rows();
  if (edge.dim() == 0 || count == 0) {
    out.push_back({Mat::identity(side, edge.field()), Mat::identity(side, edge.field())});
    return out;
  }
  const bool compact = all_skew(edge);
  std::vector<Mat> exps(count);
  if (edge.dim() == 1) {
    const Mat& e = edge.basis()[0];
    const double period = compact ? one_parameter_period(e) : 6.0;
    const double start = compact ? 0.0 : -3.0;
    for (std::size_t k = 0; k < count; ++k)
      exps[k] = (start + period * static_cast<double>(k) / static_cast<double>(count)) * e;
  } else {
    std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * edge.dim()));
    double rho = 0.0;
    for (const auto& b : edge.basis()) rho += compact ? spectral_radius(b) : norm(b);
    rho /= static_cast<double>(edge.dim());
    std::normal_distribution<double> nd(0.0, compact ? 3.0 / rho : 1.0);
    exps[0] = Mat::zeros(side, side, edge.field());
    for (std::size_t k = 1; k < count; ++k) {
      Mat x = Mat::zeros(side, side, edge.field());
      for (const auto& b : edge.basis()) x += nd(rng) * b;
      exps[k] = std::move(x);
    }
  }
  out.resize(count);
  parallel_for(count, [&](std::size_t k) {
    Mat g = expm(exps[k]);
    Mat gi = compact ? g.adjoint() : expm(-1.0 * exps[k]);
    out[k] = {std::move(g), std::move(gi)};
  });
  return out;
}

Wedge saturate(const Wedge& w, const SaturateOptions& opt, SaturateReport* report) {
  SaturateReport rep;
  const std::size_t side = w.cone.rows;
  const Field field =
      (w.cone.field == Field::complex || (w.edge.dim() > 0 && w.edge.field() == Field::complex)) ? Field::complex
                                                                                                   : Field::real;
  const auto lift = [field](const Mat& m) { return field == Field::complex && m.is_real() ? m.promoted() : m; };
  Subspace edge(side, side, field);
  if (w.edge.dim() > 0) {
    std::vector<Mat> eb;
    for (const auto& b : w.edge.basis()) eb.push_back(lift(b));
    edge = lie_closure(orthonormal_span(eb, side, side, field));
  }
  std::vector<Mat> seeds;
  for (const auto& g : w.cone.generators) seeds.push_back(lift(g));
  std::vector<Mat> gens;
  std::vector<Mat> orbit;
  const double dup_tol = 1e-12;

  for (std::size_t round = 1; round <= opt.max_rounds; ++round) {
    const std::size_t count =
        opt.orbit_samples > 0 ? opt.orbit_samples : (edge.dim() <= 1 ? std::size_t{720} : std::size_t{500});
    const auto group = edge_group_samples(edge, edge.dim() == 0 ? 1 : count, opt.seed);

    std::vector<Mat> proj_seeds;
    for (const auto& s : seeds) {
      const Mat p = off_edge(edge, s);
      if (norm(p) > 1e-9 * std::max(1.0, norm(s))) proj_seeds.push_back(p);
    }

    // Step (3): conjugate the seeds by the sampled edge group.
    std::vector<Mat> candidates(proj_seeds.size() * group.size());
    parallel_for(candidates.size(), [&](std::size_t idx) {
      const auto& s = proj_seeds[idx / group.size()];
      const auto& g = group[idx % group.size()];
      candidates[idx] = unit(off_edge(edge, g.conjugate(s)));
    });
    orbit = candidates;

    // Step (4): append candidates that are new to the previous hull.
    Cone prev = Cone::empty(side, side, field);
    for (const auto& g : gens) {
      const Mat p = off_edge(edge, g);
      if (norm(p) > 1e-9) prev.generators.push_back(unit(p));
    }
    std::vector<Mat> next = prev.generators;
    std::vector<char> fresh(candidates.size(), 0);
    parallel_for(candidates.size(), [&](std::size_t i) {
      if (near_duplicate(candidates[i], prev.generators, dup_tol)) return;
      fresh[i] = cone_contains(prev, candidates[i], opt.tol) ? 0 : 1;
    });
    std::size_t novel = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i)
      if (fresh[i] && !near_duplicate(candidates[i], next, dup_tol)) {
        next.push_back(candidates[i]);
        ++novel;
      }
    gens = std::move(next);

    // Step (2) for the next round: absorb the lineality space into the edge.
    Cone cone = Cone::empty(side, side, field);
    cone.generators = gens;
    const Subspace lin = lineality(cone, opt.tol);
    Subspace grown = edge;
    if (lin.dim() > 0) {
      grown = subspace_sum(edge, lin);
      grown = lie_closure(grown);
    }
    rep.rounds = round;
    rep.edge_dims.push_back(grown.dim());
    rep.generator_counts.push_back(gens.size());
    const bool stable = grown.dim() == edge.dim();
    edge = grown;
    if (novel == 0 && stable) {
      rep.converged = true;
      break;
    }
  }

  // Drop anything the final edge swallowed.
  Wedge out;
  out.rep = w.rep;
  out.edge = edge;
  out.cone = Cone::empty(side, side, field);
  out.cone.tol = opt.tol;
  for (const auto& g : gens) {
    const Mat p = off_edge(edge, g);
    if (norm(p) > 1e-9) out.cone.generators.push_back(unit(p));
  }
  std::vector<Mat> kept_orbit;
  for (const auto& g : orbit) {
    const Mat p = off_edge(edge, g);
    if (norm(p) > 1e-9) kept_orbit.push_back(unit(p));
  }
  out.cone.pointed = lineality(out.cone, opt.tol).dim() == 0;
  if (opt.attach_oracle && !out.cone.generators.empty() && all_skew(edge) && !kept_orbit.empty()) {
    auto oracle = std::make_shared<OrbitOracle>(edge.basis(), kept_orbit, 3);
    out.cone.oracle = [oracle](const Mat& d) { return (*oracle)(d); };
  }
  if (edge.dim() == 1 && all_skew(edge) && !out.cone.generators.empty()) {
    std::vector<Mat> ps;
    for (const auto& s : seeds) {
      const Mat p = off_edge(edge, s);
      if (norm(p) > 1e-9) ps.push_back(p);
    }
    if (ps.size() == 1) {
      const Mat e = (one_parameter_period(edge.basis()[0]) / (2.0 * std::numbers::pi)) * edge.basis()[0];
      const Mat s = ps[0];
      out.cone.analytic = [e, s](double theta) {
        const Mat g = expm(theta * e);
        return Mat(g * s * g.adjoint());
      };
    }
  }
  if (report) *report = rep;
  return out;
}

bool dual_cone_contains(double a, double b, double c, const Mat& s, double tol) {
  if (!(a >= b && b >= c && c >= 0.0)) throw DomainError("dual_cone_contains needs a >= b >= c >= 0");
  if (s.rows() != 3 || s.cols() != 3) throw ShapeError("dual_cone_contains needs a 3x3 matrix");
  if (s.max_abs_imag() > 1e-12 || !is_hermitian(s, 1e-10)) throw DomainError("dual_cone_contains needs a symmetric matrix");
  const auto l = eig_sym(s).values;
  return c * l[0] + b * l[1] + a * l[2] >= -tol * std::max(1.0, norm(s));
}

bool majorized(const Mat& s, double a, double b, double c, double tol) {
  if (s.rows() != 3 || s.cols() != 3) throw ShapeError("majorized needs a 3x3 matrix");
  if (s.max_abs_imag() > 1e-12 || !is_hermitian(s, 1e-10)) throw DomainError("majorized needs a symmetric matrix");
  std::vector<double> g{a, b, c};
  std::sort(g.begin(), g.end(), std::greater<>());
  const auto l = eig_sym(s).values;
  const double scale = std::max(1.0, std::abs(a) + std::abs(b) + std::abs(c));
  if (l[0] > g[0] + tol * scale) return false;
  if (l[0] + l[1] > g[0] + g[1] + tol * scale) return false;
  return std::abs(l[0] + l[1] + l[2] - (g[0] + g[1] + g[2])) <= tol * scale;
}

OuterWedgeReport outer_wedge_check(const Cone& c, const Mat& gamma_l, std::size_t n, std::size_t samples,
                                   std::uint64_t seed) {
  OuterWedgeReport r;
  r.samples = samples;
  if (c.generators.empty()) throw DomainError("outer_wedge_check needs a nonempty cone");
  const bool coherent = gamma_l.rows() == n * n - 1;
  if (!coherent && gamma_l.rows() != n * n)
    throw ShapeError("outer_wedge_check needs superoperators of size N^2 or N^2 - 1");
  const double gs = std::max(1.0, norm(gamma_l));
  r.gamma_in_cone = cone_project(c, gamma_l).residual / gs;

  auto ham = hamiltonian_superop_basis(n);
  if (coherent)
    for (auto& h : ham) h = coherence_rep(h);
  const Subspace kspan = orthonormal_span(ham);
  const Subspace cspan = cone_span(c);
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, c.generators.size() - 1), pick_h(0, ham.size() - 1);
  std::normal_distribution<double> nd(0.0, 1.0);

  struct Draw {
    std::size_t i, j, h;
    Mat u;
  };
  std::vector<Draw> draws(samples);
  for (auto& d : draws) {
    d.i = pick(rng);
    d.j = pick(rng);
    d.h = pick_h(rng);
    Mat h(n, n, Field::complex);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) h(a, b) = cplx{nd(rng), nd(rng)};
    h = 0.5 * (h + h.adjoint());
    d.u = expm(cplx{0.0, 3.0} * h);
  }
  std::vector<double> k_res(samples), span_res(samples), ad_res(samples);
  parallel_for(samples, [&](std::size_t s) {
    const auto& d = draws[s];
    const Mat& gi = c.generators[d.i];
    const Mat& gj = c.generators[d.j];
    const Mat b = comm(gi, gj);
    k_res[s] = norm(b - kspan.project(b)) / std::max(1.0, norm(gi) * norm(gj));
    const Mat bh = comm(gi, ham[d.h]);
    span_res[s] = norm(bh - cspan.project(bh)) / std::max(1.0, norm(gi) * norm(ham[d.h]));
    Mat uhat = kron(d.u.conj(), d.u);
    if (coherent) uhat = coherence_rep(uhat);
    const Mat conj = uhat * gi * uhat.adjoint();
    ad_res[s] = cone_project(c, conj).residual / std::max(1.0, norm(conj));
  });
  for (std::size_t s = 0; s < samples; ++s) {
    r.bracket_k_residual = std::max(r.bracket_k_residual, k_res[s]);
    r.bracket_span_residual = std::max(r.bracket_span_residual, span_res[s]);
    r.ad_invariance = std::max(r.ad_invariance, ad_res[s]);
  }
  return r;
}

}  // namespace liewedge
