#pragma once

// Piecewise-constant propagation, sampling of the system semigroup,
// contraction audits and a derivative-free steering heuristic.

#include <cstdint>
#include <vector>

#include "liewedge/lindblad.hpp"
#include "liewedge/matcore.hpp"

namespace liewedge {

struct Segment {
  double duration = 0.0;
  std::vector<double> u;
};

struct Schedule {
  std::vector<Segment> segments;
  double total_duration() const;
};

/// prod_i expm(-dt_i L_{u_i}), later segments on the left.
Superop propagate(const ControlSystem& sys, const Schedule& sched);

struct SampleOptions {
  std::size_t count = 100;
  std::size_t depth = 1;     // segments per schedule
  double horizon = 1.0;      // durations uniform on (0, horizon / depth]
  double u_max = 5.0;        // amplitudes uniform on [-u_max, u_max]
  std::uint64_t seed = 1;
};

struct ReachableSample {
  Schedule schedule;
  Superop map;
};

/// Throws DomainError for depth 0 or a nonpositive horizon.
std::vector<ReachableSample> sample_reachable(const ControlSystem& sys, const SampleOptions& opt);

struct ContractionReport {
  std::vector<double> times;
  std::vector<double> s;           // |coherence_rep(X(t))|_F^2
  double max_increment = 0.0;      // largest s(t_{k+1}) - s(t_k)
  bool holds(double tol = 1e-9) const { return max_increment <= tol; }
};

/// Samples s(t) on grid + 1 equally spaced times over the schedule.
/// Throws DomainError for non-unital systems.
ContractionReport contraction_audit(const ControlSystem& sys, const Schedule& sched, std::size_t grid);

struct SteerOptions {
  std::size_t segments = 1;
  std::size_t budget = 20000;      // total objective evaluations
  std::size_t restarts = 8;
  double horizon = 2.0;            // initial durations uniform on (0, horizon / segments]
  double u_max = 5.0;              // initial amplitudes uniform on [-u_max, u_max]
  std::uint64_t seed = 1;
};

struct SteerResult {
  Schedule schedule;
  double distance = 0.0;           // |propagate(schedule) - target|_F
  double initial_distance = 0.0;   // best initial evaluation over restarts
  std::size_t evaluations = 0;
};

/// Nelder-Mead over segment durations (taken in absolute value) and
/// amplitudes, with random restarts split from the seed.
SteerResult steer(const ControlSystem& sys, const Superop& target, const SteerOptions& opt);

/// Stateless 64-bit mixer used to split per-task random streams.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace liewedge
