#include "liewedge/reachable.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>

#include "liewedge/parallel.hpp"

namespace liewedge {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double Schedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments) t += s.duration;
  return t;
}

namespace {

Superop identity_map(const ControlSystem& sys) {
  const auto d = generator_dim(sys.rep);
  return {Mat::identity(d), sys.rep == Rep::r3 ? Carrier::coherence : Carrier::vec, hilbert_dim(sys.rep)};
}

void check_segment(const ControlSystem& sys, const Segment& s) {
  if (!(s.duration >= 0.0) || !std::isfinite(s.duration))
    throw DomainError("segment duration must be finite and nonnegative");
  if (s.u.size() != sys.controls.size())
    throw ShapeError("segment has " + std::to_string(s.u.size()) + " amplitudes, system has " +
                     std::to_string(sys.controls.size()) + " controls");
}

}  // namespace

Superop propagate(const ControlSystem& sys, const Schedule& sched) {
  Superop out = identity_map(sys);
  for (const auto& s : sched.segments) check_segment(sys, s);
  for (const auto& s : sched.segments) {
    if (s.duration == 0.0) continue;
    const Superop l = lindbladian(sys, s.u);
    out.matrix = expm(-s.duration * l.matrix) * out.matrix;
  }
  if (out.matrix.max_abs_imag() == 0.0 && !out.matrix.is_real()) out.matrix = out.matrix.realified(0.0);
  return out;
}

std::vector<ReachableSample> sample_reachable(const ControlSystem& sys, const SampleOptions& opt) {
  validate(sys);
  if (opt.depth == 0) throw DomainError("sample_reachable needs depth >= 1");
  if (!(opt.horizon > 0.0)) throw DomainError("sample_reachable needs a positive horizon");
  if (!(opt.u_max >= 0.0)) throw DomainError("sample_reachable needs u_max >= 0");
  std::vector<ReachableSample> out(opt.count);
  const double max_dt = opt.horizon / static_cast<double>(opt.depth);
  parallel_for(opt.count, [&](std::size_t k) {
    std::mt19937_64 rng(splitmix64(opt.seed ^ splitmix64(k)));
    std::uniform_real_distribution<double> amp(-opt.u_max, opt.u_max);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    Schedule s;
    for (std::size_t j = 0; j < opt.depth; ++j) {
      Segment seg;
      seg.duration = max_dt * (1.0 - unit(rng));  // (0, max_dt]
      for (std::size_t c = 0; c < sys.controls.size(); ++c) seg.u.push_back(amp(rng));
      s.segments.push_back(std::move(seg));
    }
    out[k].map = propagate(sys, s);
    out[k].schedule = std::move(s);
  });
  return out;
}

ContractionReport contraction_audit(const ControlSystem& sys, const Schedule& sched, std::size_t grid) {
  validate(sys);
  if (grid == 0) throw DomainError("contraction_audit needs a positive grid");
  for (const auto& s : sched.segments) check_segment(sys, s);
  // Rejects non-unital generators up front.
  for (const auto& s : sched.segments) (void)coherence_rep(lindbladian(sys, s.u));
  if (sched.segments.empty()) (void)coherence_rep(drift_generator(sys));

  ContractionReport r;
  std::vector<Mat> gens;
  std::vector<double> bounds{0.0};
  for (const auto& s : sched.segments) {
    gens.push_back(lindbladian(sys, s.u).matrix);
    bounds.push_back(bounds.back() + s.duration);
  }
  const double total = bounds.back();
  Superop x = identity_map(sys);
  double t = 0.0;
  for (std::size_t k = 0; k <= grid; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(grid);
    for (std::size_t j = 0; j < gens.size(); ++j) {
      const double step = std::min(target, bounds[j + 1]) - std::max(t, bounds[j]);
      if (step > 0.0) x.matrix = expm(-step * gens[j]) * x.matrix;
    }
    t = target;
    const Mat c = coherence_rep(x);
    r.times.push_back(target);
    r.s.push_back(inner(c, c));
  }
  for (std::size_t k = 1; k < r.s.size(); ++k) r.max_increment = std::max(r.max_increment, r.s[k] - r.s[k - 1]);
  return r;
}

namespace {

struct Simplex {
  std::vector<std::vector<double>> points;
  std::vector<double> values;
};

// Nelder-Mead with standard coefficients; returns the evaluations used.
std::size_t nelder_mead(const std::function<double(const std::vector<double>&)>& f, std::vector<double>& x,
                        double& fx, std::size_t budget, double step) {
  const std::size_t n = x.size();
  Simplex s;
  s.points.push_back(x);
  s.values.push_back(fx);
  for (std::size_t i = 0; i < n; ++i) {
    auto p = x;
    p[i] += step * std::max(1.0, std::abs(p[i]) * 0.2);
    s.points.push_back(p);
    s.values.push_back(f(p));
  }
  std::size_t used = n;
  std::vector<std::size_t> order(n + 1);
  const auto point_at = [&](const std::vector<double>& c, const std::vector<double>& w, double coef) {
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = c[i] + coef * (w[i] - c[i]);
    return out;
  };
  while (used < budget) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return s.values[a] < s.values[b]; });
    const std::size_t best = order.front(), worst = order.back(), second = order[n - 1];
    if (s.values[worst] - s.values[best] <= 1e-16 * std::max(1.0, std::abs(s.values[best]))) {
      double spread = 0.0;
      for (std::size_t i = 0; i < n; ++i) spread = std::max(spread, std::abs(s.points[worst][i] - s.points[best][i]));
      if (spread < 1e-12) break;
    }
    std::vector<double> c(n, 0.0);
    for (std::size_t k = 0; k <= n; ++k)
      if (k != worst)
        for (std::size_t i = 0; i < n; ++i) c[i] += s.points[k][i] / static_cast<double>(n);
    const auto xr = point_at(c, s.points[worst], -1.0);
    const double fr = f(xr);
    ++used;
    if (fr < s.values[best]) {
      const auto xe = point_at(c, s.points[worst], -2.0);
      const double fe = f(xe);
      ++used;
      if (fe < fr) {
        s.points[worst] = xe;
        s.values[worst] = fe;
      } else {
        s.points[worst] = xr;
        s.values[worst] = fr;
      }
    } else if (fr < s.values[second]) {
      s.points[worst] = xr;
      s.values[worst] = fr;
    } else {
      const bool outside = fr < s.values[worst];
      const auto xc = point_at(c, outside ? xr : s.points[worst], 0.5);
      const double fc = f(xc);
      ++used;
      if (fc < (outside ? fr : s.values[worst])) {
        s.points[worst] = xc;
        s.values[worst] = fc;
      } else {
        for (std::size_t k = 0; k <= n; ++k) {
          if (k == best) continue;
          s.points[k] = point_at(s.points[best], s.points[k], 0.5);
          s.values[k] = f(s.points[k]);
          ++used;
        }
      }
    }
  }
  const auto it = std::min_element(s.values.begin(), s.values.end());
  const auto idx = static_cast<std::size_t>(it - s.values.begin());
  x = s.points[idx];
  fx = s.values[idx];
  return used;
}

Schedule decode(const std::vector<double>& p, std::size_t segments, std::size_t m) {
  Schedule s;
  for (std::size_t j = 0; j < segments; ++j) {
    Segment seg;
    seg.duration = std::abs(p[j]);
    for (std::size_t c = 0; c < m; ++c) seg.u.push_back(p[segments + j * m + c]);
    s.segments.push_back(std::move(seg));
  }
  return s;
}

}  // namespace

SteerResult steer(const ControlSystem& sys, const Superop& target, const SteerOptions& opt) {
  validate(sys);
  const Superop id = identity_map(sys);
  if (target.matrix.rows() != id.matrix.rows() || target.matrix.cols() != id.matrix.cols() ||
      target.carrier != id.carrier)
    throw ShapeError("steer: target is not in the system's representation");
  const std::size_t m = sys.controls.size();
  const std::size_t dim = opt.segments * (1 + m);

  SteerResult best;
  if (dim == 0) {
    best.distance = norm(id.matrix - target.matrix);
    best.initial_distance = best.distance;
    best.evaluations = 1;
    return best;
  }

  const std::size_t restarts = std::max<std::size_t>(1, opt.restarts);
  const std::size_t per = std::max<std::size_t>(dim + 2, opt.budget / restarts);
  struct Run {
    std::vector<double> x;
    double fx = 0.0;
    double f0 = 0.0;
    std::size_t used = 0;
  };
  std::vector<Run> runs(restarts);
  const auto objective = [&](const std::vector<double>& p) {
    const Mat d = propagate(sys, decode(p, opt.segments, m)).matrix - target.matrix;
    return inner(d, d);
  };
  parallel_for(restarts, [&](std::size_t r) {
    std::mt19937_64 rng(splitmix64(opt.seed ^ splitmix64(r + 1)));
    std::uniform_real_distribution<double> dur(0.0, opt.horizon / static_cast<double>(opt.segments));
    std::uniform_real_distribution<double> amp(-opt.u_max, opt.u_max);
    Run& run = runs[r];
    run.x.resize(dim);
    for (std::size_t j = 0; j < opt.segments; ++j) run.x[j] = dur(rng);
    for (std::size_t k = opt.segments; k < dim; ++k) run.x[k] = amp(rng);
    run.fx = objective(run.x);
    run.f0 = run.fx;
    run.used = 1;
    // Restart the simplex around the incumbent until the budget is spent.
    double step = 0.5;
    while (run.used < per) {
      const double before = run.fx;
      run.used += nelder_mead(objective, run.x, run.fx, per - run.used, step);
      if (before - run.fx <= 1e-15 * std::max(1.0, before)) step *= 0.1;
      if (step < 1e-9 || run.fx == 0.0) break;
    }
  });

  std::size_t pick = 0;
  best.initial_distance = std::sqrt(runs[0].f0);
  for (std::size_t r = 0; r < restarts; ++r) {
    best.evaluations += runs[r].used;
    if (runs[r].fx < runs[pick].fx) pick = r;
    best.initial_distance = std::min(best.initial_distance, std::sqrt(runs[r].f0));
  }
  best.schedule = decode(runs[pick].x, opt.segments, m);
  best.distance = norm(propagate(sys, best.schedule).matrix - target.matrix);
  return best;
}

}  // namespace liewedge
