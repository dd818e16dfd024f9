// Command-line frontend: every computation is exported as JSON or CSV.
// Exit codes: 0 success, 1 numerical failure, 2 usage or parse error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "liewedge/io.hpp"
#include "liewedge/report.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kNumerical = 1;
constexpr int kUsage = 2;

class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    if (!std::cout) throw OutputError("failed to write to standard output");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  out << text;
  out.close();
  if (!out) throw OutputError("failed to write '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace liewedge;
  CLI::App app{"Lie wedges of coherently controlled unital Lindblad systems"};
  app.require_subcommand(1);
  std::string output;
  app.add_option("-o,--output", output, "Write the document to FILE instead of standard output");

  int example_id = 0;
  auto* example = app.add_subcommand("example", "Saturate one of the worked real 3x3 examples");
  example->add_option("id", example_id, "Example number")->required()->check(CLI::Range(1, 3));

  std::string channel_name;
  std::vector<double> gammas;
  double channel_t = 1.0;
  auto* channel = app.add_subcommand("channel", "Single-qubit channel report with Kraus family");
  channel->add_option("name", channel_name, "bit_flip | phase_flip | bit_phase_flip | depolarizing")->required();
  channel->add_option("--gamma", gammas, "Rate(s); one value is broadcast for depolarizing");
  channel->add_option("--t", channel_t, "Time");

  std::string system_path;
  SaturationArgs sat;
  auto* wedge = app.add_subcommand("wedge", "Saturation report and generator dump");
  wedge->add_option("--system", system_path, "System file")->required();
  wedge->add_option("--samples", sat.samples, "Orbit samples per round");
  wedge->add_option("--rounds", sat.rounds, "Maximum saturation rounds");
  wedge->add_option("--tol", sat.tol, "Saturation tolerance");

  auto* conditions = app.add_subcommand("conditions", "Controllability conditions (H), (WH), (A)");
  conditions->add_option("--system", system_path, "System file")->required();

  SemialgebraArgs semi;
  std::string case_id;
  auto* semialgebra = app.add_subcommand("semialgebra", "BCH probe for the semialgebra property");
  auto* semi_system = semialgebra->add_option("--system", system_path, "System file");
  auto* semi_case = semialgebra->add_option("--case", case_id, "Orbit-wedge case i | ii | iii | iv");
  semi_system->excludes(semi_case);
  semialgebra->add_option("--pairs", semi.pairs, "Random pairs to probe");
  semialgebra->add_option("--t", semi.t, "BCH scale t");
  semialgebra->add_option("--seed", semi.seed, "Random seed");

  ReachableArgs reach;
  auto* reachable = app.add_subcommand("reachable", "Sampled reachable channels with contraction audit");
  reachable->add_option("--system", system_path, "System file")->required();
  reachable->add_option("--switches", reach.switches, "Piecewise-constant segments per schedule")->required();
  reachable->add_option("--count", reach.count, "Number of schedules")->required();
  reachable->add_option("--seed", reach.seed, "Random seed");
  reachable->add_option("--horizon", reach.horizon, "Total duration bound");
  reachable->add_option("--umax", reach.u_max, "Amplitude bound");

  std::string figure;
  std::size_t theta_steps = 360;
  auto* figdata = app.add_subcommand("figdata", "CSV of projected cone samples");
  figdata->add_option("figure", figure, "2a | 2b | 3")->required()->check(CLI::IsMember({"2a", "2b", "3"}));
  figdata->add_option("--theta-steps", theta_steps, "Samples over one period")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*figdata) {
      write_output(output, figure_csv(figure_data(figure, theta_steps)));
      return kOk;
    }
    Report r;
    if (*example) {
      r = example_report(example_id);
    } else if (*channel) {
      r = channel_report(channel_from_string(channel_name), gammas, channel_t);
    } else if (*wedge) {
      r = wedge_report(load_system(system_path), sat);
    } else if (*conditions) {
      r = conditions_report(load_system(system_path));
    } else if (*semialgebra) {
      if (!case_id.empty())
        r = semialgebra_case_report(semialgebra_case_from_string(case_id));
      else if (!system_path.empty())
        r = semialgebra_report(load_system(system_path), semi);
      else
        throw DomainError("semialgebra needs --system or --case");
    } else if (*reachable) {
      r = reachable_report(load_system(system_path), reach);
    }
    write_output(output, dump_json(r.doc));
    return r.ok ? kOk : kNumerical;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumerical;
  }
}
