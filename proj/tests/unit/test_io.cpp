#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "liewedge/channels.hpp"
#include "liewedge/io.hpp"
#include "liewedge/report.hpp"

using namespace liewedge;
using namespace testing_helpers;

namespace {

bool bit_equal(const Mat& a, const Mat& b) {
  if (!a.same_shape(b) || a.field() != b.field()) return false;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double ar = a.data()[k].real(), br = b.data()[k].real();
    const double ai = a.data()[k].imag(), bi = b.data()[k].imag();
    if (std::memcmp(&ar, &br, sizeof ar) != 0) return false;
    // Real-tagged matrices carry no imaginary sign information.
    if (a.is_real() ? (ai != 0.0 || bi != 0.0) : std::memcmp(&ai, &bi, sizeof ai) != 0) return false;
  }
  return true;
}

bool bit_equal(const ControlSystem& a, const ControlSystem& b) {
  if (a.rep != b.rep || a.controls.size() != b.controls.size() || a.lindblad.size() != b.lindblad.size()) return false;
  if (a.drift_h.empty() != b.drift_h.empty() || (!a.drift_h.empty() && !bit_equal(a.drift_h, b.drift_h))) return false;
  if (a.relaxation.empty() != b.relaxation.empty() || (!a.relaxation.empty() && !bit_equal(a.relaxation, b.relaxation)))
    return false;
  for (std::size_t k = 0; k < a.controls.size(); ++k)
    if (!bit_equal(a.controls[k], b.controls[k])) return false;
  for (std::size_t k = 0; k < a.lindblad.size(); ++k)
    if (!bit_equal(a.lindblad[k].op, b.lindblad[k].op) ||
        std::memcmp(&a.lindblad[k].rate, &b.lindblad[k].rate, sizeof(double)) != 0)
      return false;
  return true;
}

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_system(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return std::numeric_limits<std::size_t>::max();
}

std::string parse_error_field(const std::string& text) {
  try {
    parse_system(text);
  } catch (const ParseError& e) {
    return e.field();
  }
  return {};
}

}  // namespace

TEST_CASE("matrix literals") {
  const Mat m = parse_matrix("[1 -2.5e-3; 0.25, 4]");
  CHECK(m.is_real());
  CHECK(max_abs_diff(m, Mat::real({{1, -2.5e-3}, {0.25, 4}})) == 0.0);

  const Mat c = parse_matrix(" [1+2i -i; 3e-2-1e+2i 2i] ");
  CHECK_FALSE(c.is_real());
  CHECK(c(0, 0) == cplx{1, 2});
  CHECK(c(0, 1) == cplx{0, -1});
  CHECK(c(1, 0) == cplx{3e-2, -1e2});
  CHECK(c(1, 1) == cplx{0, 2});

  CHECK_THROWS_AS(parse_matrix("[1 2; 3]"), DomainError);
  CHECK_THROWS_AS(parse_matrix("1 2"), DomainError);
  CHECK_THROWS_AS(parse_matrix("[]"), DomainError);
  CHECK_THROWS_AS(parse_matrix("[1 x]"), DomainError);
  CHECK_THROWS_AS(parse_matrix("[nan]"), DomainError);
  CHECK_THROWS_AS(parse_matrix("[inf]"), DomainError);
}

TEST_CASE("seventeen-digit printing round-trips") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 2000) {
    const std::uint64_t b = bits(rng);
    double x;
    std::memcpy(&x, &b, sizeof x);
    if (!std::isfinite(x)) continue;
    const Mat m = parse_matrix("[" + format_double(x) + "]");
    CHECK(std::memcmp(&m(0, 0), &x, sizeof x) == 0);
    ++checked;
  }
  for (double x : {0.1, -0.0, 5e-324, std::numeric_limits<double>::max(), 1.0 / 3.0}) {
    Mat z(1, 1, Field::complex);
    z(0, 0) = cplx{x, -x};
    const Mat m = parse_matrix(format_matrix(z));
    CHECK(bit_equal(m, z));
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("system files round-trip bit for bit") {
  for (auto name : {ChannelName::example1, ChannelName::example2, ChannelName::example3, ChannelName::phase_flip,
                    ChannelName::depolarizing, ChannelName::two_qubit_A, ChannelName::two_qubit_B,
                    ChannelName::two_qubit_C}) {
    auto spec = default_spec(name);
    if (name == ChannelName::phase_flip || name == ChannelName::depolarizing) spec.control_axes = {"x", "y"};
    SystemFile f;
    f.system = build_system(spec);
    const SystemFile back = parse_system(emit_system(f));
    CHECK_MESSAGE(bit_equal(f.system, back.system), to_string(name));
  }
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    SystemFile f;
    f.system = random_unital(rng, trial % 2 ? Rep::two_qubit : Rep::qubit);
    f.samples = 100 + trial;
    f.rounds = 3;
    f.tol = 1.0 / 3.0 * 1e-7;
    f.seed = 0xffffffffffffffffULL;
    const std::string text = emit_system(f);
    const SystemFile back = parse_system(text);
    CHECK(bit_equal(f.system, back.system));
    CHECK(back.samples == f.samples);
    CHECK(back.rounds == f.rounds);
    CHECK(std::memcmp(&*back.tol, &*f.tol, sizeof(double)) == 0);
    CHECK(back.seed == f.seed);
    CHECK(emit_system(back) == text);
  }
}

TEST_CASE("named elements") {
  const auto f = parse_system("rep r3\n# comment\ndrift H_z   # trailing\ncontrol H_y\nrelaxation [1 0 0; 0 0 0; 0 0 1]\n");
  CHECK(bit_equal(f.system, build_system(default_spec(ChannelName::example2))));

  const auto q = parse_system("rep qubit\ndrift z\ncontrol x\nlindblad 0.5 z\n");
  CHECK(max_abs_diff(q.system.drift_h, 0.5 * pauli('z')) == 0.0);
  CHECK(max_abs_diff(q.system.lindblad[0].op, pauli('z')) == 0.0);
  CHECK(q.system.lindblad[0].rate == 0.5);

  const auto t = parse_system("rep two_qubit\ncontrol x1\ncontrol 1y\nlindblad 1 zz\n");
  CHECK(max_abs_diff(t.system.controls[1], 0.5 * pauli_string("1y")) == 0.0);
}

TEST_CASE("parse diagnostics carry line and field") {
  CHECK(parse_error_line("control x\n") == 0);
  CHECK(parse_error_field("control x\n") == "rep");
  CHECK(parse_error_line("rep qubit\n\ncontrol q\n") == 3);
  CHECK(parse_error_field("rep qubit\n\ncontrol q\n") == "control");
  CHECK(parse_error_line("rep qubit\nfoo 1\n") == 2);
  CHECK(parse_error_field("rep qubit\nfoo 1\n") == "foo");
  CHECK(parse_error_line("rep qutrit\n") == 1);
  CHECK(parse_error_line("rep qubit\ndrift [1 2; 3 4]\n") == 2);
  CHECK(parse_error_line("rep qubit\ncontrol [1 0 0; 0 1 0; 0 0 1]\n") == 2);
  CHECK(parse_error_line("rep qubit\nlindblad -1 z\n") == 2);
  CHECK(parse_error_line("rep qubit\nlindblad z\n") == 2);
  CHECK(parse_error_line("rep qubit\nrelaxation [1 0; 0 1]\n") == 2);
  CHECK(parse_error_line("rep r3\ndrift H_z\ndrift H_x\nrelaxation [1 0 0; 0 1 0; 0 0 1]\n") == 3);
  CHECK(parse_error_line("rep r3\ncontrol H_y\n") == 0);
  CHECK(parse_error_line("rep r3\nrelaxation [1 0 0; 0 1 0; 0 0 1]\nsamples -3\n") == 3);
  CHECK(parse_error_line("rep r3\nrelaxation [1 0 0; 0 1 0; 0 0 1]\ntol 0\n") == 3);
  CHECK(parse_error_line("rep r3\nrelaxation [1 0 0; 0 -1 0; 0 0 1]\n") == 0);
  CHECK_THROWS_AS(load_system("/nonexistent/system.sys"), ParseError);
}

TEST_CASE("json emission") {
  Json j;
  j["x"] = 0.1;
  j["n"] = 3;
  j["bad"] = std::numeric_limits<double>::quiet_NaN();
  j["empty"] = Json::array();
  j["nested"] = Json::array({Json::array({1.5, 2.0}), Json::object()});
  const std::string s = dump_json(j);
  CHECK(s.find("\"x\": 0.10000000000000001") != std::string::npos);
  CHECK(s.find("\"n\": 3") != std::string::npos);
  CHECK(s.find("\"bad\": null") != std::string::npos);
  CHECK(s.find("\"empty\": []") != std::string::npos);
  CHECK(s.find("[1.5, 2]") != std::string::npos);
  CHECK(Json::parse(s)["x"].get<double>() == 0.1);

  const Json m = matrix_json(Mat::complex({{1, {0, -1}}, {{0, 1}, 2}}));
  CHECK(m["field"] == "complex");
  CHECK(m["im"][0][1].get<double>() == -1.0);
  CHECK(matrix_json(Mat::identity(2))["im"].empty());
  CHECK(dump_json(matrices_json({})) == "[]\n");

  ControlSystem bare;
  bare.rep = Rep::qubit;
  const Json sj = system_json(bare);
  CHECK(sj["controls"].is_array());
  CHECK(sj["controls"].empty());
  CHECK(sj["lindblad"].is_array());
  CHECK(sj["drift"].is_null());
}

TEST_CASE("reports") {
  SUBCASE("conditions of the first example") {
    SystemFile f;
    f.system = build_system(default_spec(ChannelName::example1));
    const Report r = conditions_report(f);
    CHECK(r.doc["schema"] == kSchemaVersion);
    CHECK(r.doc["result"]["conditions"]["holds_H"] == true);
    CHECK(dump_json(r.doc).find("\"holds_H\": true") != std::string::npos);
  }
  SUBCASE("zero-rate phase flip is the identity") {
    const Report r = channel_report(ChannelName::phase_flip, {0.0}, 1.0);
    CHECK(r.ok);
    CHECK(r.doc["result"]["kraus_rank"] == 1);
    const auto& re = r.doc["result"]["propagator"]["re"];
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 4; ++j) CHECK(re[i][j].get<double>() == (i == j ? 1.0 : 0.0));
    CHECK(channel_report(ChannelName::depolarizing, {0.3}, 0.5).doc["result"]["kraus_rank"] == 4);
    CHECK_THROWS_AS(channel_report(ChannelName::example2, {}, 1.0), DomainError);
  }
  SUBCASE("second example") {
    const Report r = example_report(2);
    CHECK(r.ok);
    CHECK(r.doc["dimensions"]["edge"] == 1);
    CHECK(r.doc["dimensions"]["wedge"] == 4);
    CHECK(r.doc["result"]["cone_samples"].size() == r.doc["dimensions"]["generators"].get<std::size_t>());
    CHECK(dump_json(r.doc) == dump_json(example_report(2).doc));
    CHECK_THROWS_AS(example_report(4), DomainError);
  }
  SUBCASE("witness dump") {
    SystemFile f;
    f.system = build_system(default_spec(ChannelName::example2));
    SemialgebraArgs a;
    a.pairs = 200;
    const Report r = semialgebra_report(f, a);
    CHECK(r.doc["result"]["verdict"] == "witness_found");
    CHECK(r.doc["result"]["witness"]["residual"].get<double>() > 1e-6);
  }
  SUBCASE("reachable summary") {
    auto spec = default_spec(ChannelName::phase_flip);
    spec.control_axes = {"x", "y"};
    SystemFile f;
    f.system = build_system(spec);
    ReachableArgs a;
    a.switches = 2;
    a.count = 20;
    const Report r = reachable_report(f, a);
    CHECK(r.ok);
    CHECK(r.doc["result"]["schedules"].size() == 20);
    CHECK(r.doc["result"]["contraction"]["holds"] == true);
    CHECK(r.doc["result"]["summary"]["coherence_max_singular_value"].get<double>() <= 1.0 + 1e-10);
  }
}

TEST_CASE("figure data") {
  const auto a = figure_data("2a", 360);
  REQUIRE(a.rows.size() == 360);
  CHECK(a.header == std::vector<std::string>{"theta", "c_Hx", "c_Hz", "c_Gamma0"});
  for (const auto& row : a.rows) {
    CHECK(std::abs(row[1] - std::sin(row[0])) < 1e-12);
    CHECK(std::abs(row[2] - std::cos(row[0])) < 1e-12);
    CHECK(row[3] == 1.0);
  }
  const auto b = figure_data("2b", 90);
  REQUIRE(b.rows.size() == 270);
  for (const auto& row : b.rows) {
    CHECK(std::abs(row[2] - row[1]) < 1e-12);
    CHECK(std::abs(row[3] - std::cos(row[0])) < 1e-12);
  }
  // Projection of R (Gamma0 + H_z) R^T onto {H_x, H_z, Gamma0} for Gamma0 = diag(1, 1, 2).
  const auto c = figure_data("3", 100);
  for (const auto& row : c.rows) {
    const double th = row[0];
    const double g = (5.0 + std::cos(th) * std::cos(th)) / 6.0;
    CHECK(std::abs(row[1] - std::sin(th) / g) < 1e-12);
    CHECK(std::abs(row[2] - std::cos(th) / g) < 1e-12);
  }
  const std::string csv = figure_csv(figure_data("2a", 4));
  CHECK(csv.substr(0, csv.find('\n')) == "theta,c_Hx,c_Hz,c_Gamma0");
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);
  CHECK_THROWS_AS(figure_data("4", 10), DomainError);
  CHECK_THROWS_AS(figure_data("2a", 0), DomainError);
}
