#pragma once

// JSON reports and CSV figure tables behind the command-line frontend.
// Every document carries schema, command, input, tolerances, dimensions and
// result objects in that order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "liewedge/channels.hpp"
#include "liewedge/io.hpp"
#include "liewedge/semialgebra.hpp"
#include "liewedge/wedge.hpp"

namespace liewedge {

struct Report {
  Json doc;
  /// False on a numerical failure (non-convergence, failed audit).
  bool ok = true;
};

struct SaturationArgs {
  std::optional<std::size_t> samples;
  std::optional<std::size_t> rounds;
  std::optional<double> tol;
};

/// Example n in {1, 2, 3}: conditions, saturation, edge and cone dimensions,
/// cone generators as coordinates on H_x ... E33.
Report example_report(int n);

/// Purely dissipative channels: generator, propagator at t, CPTP audit, Kraus
/// family and rank. rates replaces the default rates when non-empty; a single
/// rate is broadcast to all three depolarizing axes.
Report channel_report(ChannelName name, const std::vector<double>& rates, double t);

/// Saturation report and generator dump. Arguments override the file.
Report wedge_report(const SystemFile& f, const SaturationArgs& args);

Report conditions_report(const SystemFile& f);

struct SemialgebraArgs {
  std::size_t pairs = 1000;
  double t = 1e-2;
  double tol = 1e-6;
  std::uint64_t seed = 1;
};
Report semialgebra_report(const SystemFile& f, const SemialgebraArgs& args);
/// Orbit-wedge cases with the tangent-space inclusion test.
Report semialgebra_case_report(SemialgebraCase id);

struct ReachableArgs {
  std::size_t switches = 1;
  std::size_t count = 100;
  std::uint64_t seed = 1;
  double horizon = 1.0;
  double u_max = 5.0;
  std::size_t grid = 20;
};
/// Sampled propagators: CPTP summary, coherence determinants and a
/// contraction audit of every sampled schedule (unital systems only).
Report reachable_report(const SystemFile& f, const ReachableArgs& args);

struct FigureTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};

/// "2a": theta, c_Hx, c_Hz, c_Gamma0 for the saturated cone of example 2.
/// "2b": theta, edge_coef, c_Hy, c_Hz, c_Gamma0 with edge_coef in {-1, 0, 1}.
/// "3" : theta, c_Hx, c_Hz, c_Gamma0 for example 3.
/// Samples are the drift conjugated by the computed edge group at
/// theta_k = 2 pi k / steps, scaled so that c_Gamma0 = 1.
FigureTable figure_data(const std::string& figure, std::size_t steps);
std::string figure_csv(const FigureTable& t);

}  // namespace liewedge
