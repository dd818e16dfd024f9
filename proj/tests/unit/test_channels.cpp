#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "liewedge/channels.hpp"
#include "liewedge/liealg.hpp"

using namespace liewedge;
using namespace testing_helpers;

namespace {

const cplx I1{0, 1};

Mat conj_by(char c, double theta, const Mat& x) {
  const Mat g = (-I1 * theta) * sigma_hat(std::string(1, c));
  return expm(g) * x * expm(-1.0 * g);
}

Mat sbar_s(char a, char b) { return kron(pauli(a).conj(), pauli(b)); }

double coef(const Mat& basis_el, const Mat& x) { return inner(basis_el, x) / inner(basis_el, basis_el); }

}  // namespace

TEST_CASE("epsilon and axes") {
  CHECK(epsilon('x', 'y', 'z') == 1);
  CHECK(epsilon('y', 'z', 'x') == 1);
  CHECK(epsilon('x', 'z', 'y') == -1);
  CHECK(epsilon('x', 'x', 'y') == 0);
  CHECK(third_axis('x', 'z') == 'y');
  CHECK_THROWS_AS(third_axis('x', 'x'), DomainError);
}

TEST_CASE("build_system") {
  const auto e2 = build_system(default_spec(ChannelName::example2));
  CHECK(max_abs_diff(drift_generator(e2), H_z() + Mat::diag({1, 0, 1})) == 0.0);
  CHECK(max_abs_diff(e2.controls.at(0), H_y()) == 0.0);
  auto s3 = default_spec(ChannelName::example3);
  s3.rates = {0.5};
  CHECK(max_abs_diff(build_system(s3).relaxation, Mat::diag({0.5, 0.5, 1.0})) == 0.0);
  const auto a = build_system(default_spec(ChannelName::two_qubit_A));
  REQUIRE(a.controls.size() == 5);
  CHECK(max_abs_diff(hamiltonian_generator(a, a.controls[4]), I1 * sigma_hat("zz")) < 1e-15);

  auto bad = default_spec(ChannelName::depolarizing);
  bad.rates = {1.0};
  CHECK_THROWS_AS(build_system(bad), DomainError);
  auto bad2 = default_spec(ChannelName::phase_flip);
  bad2.rates = {-1.0};
  CHECK_THROWS_AS(build_system(bad2), DomainError);
  CHECK_THROWS_AS(channel_from_string("amplitude_damping"), DomainError);
}

TEST_CASE("k_component matches conjugation") {
  for (char c : {'x', 'y', 'z'})
    for (char d : {'x', 'y', 'z'})
      for (double th : {0.0, 0.3, 1.7, -2.4}) {
        const Mat direct = conj_by(c, th, I1 * sigma_hat(std::string(1, d)));
        CHECK(max_abs_diff(k_component(c, d, th), direct) < 1e-12);
      }
  CHECK(max_abs_diff(k_component('x', 'z', std::numbers::pi / 2), -1.0 * (I1 * sigma_hat("y"))) < 1e-15);
  CHECK(max_abs_diff(k_component('y', 'y', 0.9), I1 * sigma_hat("y")) == 0.0);
}

TEST_CASE("p_component matches conjugation for one to three operators") {
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi), rate(0.1, 2.0);
  const std::vector<std::vector<char>> sets{{'x'}, {'y'}, {'z'}, {'x', 'y'}, {'z', 'x'}, {'y', 'z'}, {'x', 'y', 'z'},
                                            {'z', 'y', 'x'}};
  for (char c : {'x', 'y', 'z'})
    for (const auto& set : sets)
      for (int trial = 0; trial < 5; ++trial) {
        std::vector<AxisRate> ks;
        std::vector<LindbladTerm> ops;
        for (char k : set) {
          ks.push_back({k, rate(rng)});
          ops.push_back({pauli(k), ks.back().rate});
        }
        const double th = ang(rng);
        const Mat direct = conj_by(c, th, gks_dissipator(ops));
        CHECK(max_abs_diff(p_component(c, ks, th), direct) < 1e-12);
      }
  const std::vector<AxisRate> iso{{'x', 0.4}, {'y', 0.4}, {'z', 0.4}};
  const Mat g0 = gks_dissipator({{pauli('x'), 0.4}, {pauli('y'), 0.4}, {pauli('z'), 0.4}});
  for (double th : {0.2, 1.1, 2.9}) CHECK(max_abs_diff(p_component('x', iso, th), g0) < 1e-14);
  const std::vector<AxisRate> along{{'z', 0.8}};
  CHECK(max_abs_diff(p_component('z', along, 1.2), gks_dissipator({{pauli('z'), 0.8}})) < 1e-15);
  const std::vector<AxisRate> repeated{{'x', 1.0}, {'x', 1.0}};
  CHECK_THROWS_AS(p_component('z', repeated, 0.1), DomainError);
}

TEST_CASE("Pauli coefficient vectors of p_component") {
  const double g = 0.7, gp = 0.3, gpp = 1.1;
  for (double th : {0.25, 1.3, -0.8}) {
    const double c2 = std::cos(2 * th), s2 = std::sin(2 * th);
    // One operator: c = x, k = z, r = y.
    {
      const std::vector<AxisRate> ks{{'z', g}};
      const Mat p = p_component('x', ks, th);
      const int e = epsilon('x', 'z', 'y');
      CHECK(std::abs(coef(Mat::identity(4), p) - g) < 1e-12);
      CHECK(std::abs(coef(-1.0 * sbar_s('z', 'z'), p) - 0.5 * g * (1 + c2)) < 1e-12);
      CHECK(std::abs(coef(-1.0 * sbar_s('y', 'y'), p) - 0.5 * g * (1 - c2)) < 1e-12);
      CHECK(std::abs(coef(-e * (sbar_s('z', 'y') + sbar_s('y', 'z')), p) - 0.5 * g * s2) < 1e-12);
    }
    // Two operators with sigma_c = sigma_k': the leading entry is 2 gamma'.
    {
      const std::vector<AxisRate> ks{{'z', g}, {'x', gp}};
      const Mat p = p_component('x', ks, th);
      const int e = epsilon('x', 'z', 'y');
      CHECK(std::abs(coef(-1.0 * sbar_s('x', 'x'), p) - 0.5 * 2 * gp) < 1e-12);
      CHECK(std::abs(coef(Mat::identity(4), p) - 0.5 * 2 * (g + gp)) < 1e-12);
      CHECK(std::abs(coef(-1.0 * sbar_s('z', 'z'), p) - 0.5 * g * (1 + c2)) < 1e-12);
      CHECK(std::abs(coef(-1.0 * sbar_s('y', 'y'), p) - 0.5 * g * (1 - c2)) < 1e-12);
      CHECK(std::abs(coef(-e * (sbar_s('z', 'y') + sbar_s('y', 'z')), p) - 0.5 * g * s2) < 1e-12);
    }
    // Three operators, k'' = c: the leading entry is 2 gamma''.
    {
      const std::vector<AxisRate> ks{{'y', g}, {'z', gp}, {'x', gpp}};
      const Mat p = p_component('x', ks, th);
      const int e = epsilon('x', 'y', 'z');
      CHECK(std::abs(coef(-1.0 * sbar_s('x', 'x'), p) - 0.5 * 2 * gpp) < 1e-12);
      CHECK(std::abs(coef(Mat::identity(4), p) - (g + gp + gpp)) < 1e-12);
      CHECK(std::abs(coef(-1.0 * sbar_s('y', 'y'), p) - 0.5 * (g + gp + (g - gp) * c2)) < 1e-12);
      CHECK(std::abs(coef(-1.0 * sbar_s('z', 'z'), p) - 0.5 * (g + gp - (g - gp) * c2)) < 1e-12);
      CHECK(std::abs(coef(-e * (sbar_s('z', 'y') + sbar_s('y', 'z')), p) - 0.5 * (g - gp) * s2) < 1e-12);
    }
  }
}

TEST_CASE("qubit channels map onto the real examples") {
  ChannelSpec s;
  s.name = ChannelName::bit_phase_flip;
  s.rates = {0.5};
  s.control_axes = {"y"};
  s.drift_axis = "z";
  const auto q = build_system(s);
  CHECK(max_abs_diff(coherence_rep(drift_generator(q)), drift_generator(build_system(default_spec(ChannelName::example2)))) <
        1e-14);
  const Mat ctrl = coherence_rep(control_generators(q)[0]);
  CHECK(std::abs(std::abs(inner(ctrl, H_y())) - norm(H_y()) * norm(ctrl)) < 1e-14);

  ControlSystem q3 = q;
  q3.lindblad = {{pauli('x'), 0.5}, {pauli('y'), 0.5}};
  CHECK(max_abs_diff(coherence_rep(drift_generator(q3)), drift_generator(build_system(default_spec(ChannelName::example3)))) <
        1e-14);
}

TEST_CASE("Kraus families") {
  for (auto name : {ChannelName::bit_flip, ChannelName::phase_flip, ChannelName::bit_phase_flip, ChannelName::depolarizing}) {
    const auto spec = default_spec(name);
    const auto sys = build_system(spec);
    const std::vector<double> none;
    const Mat l = lindbladian(sys, none).matrix;
    for (int i = 0; i < 50; ++i) {
      const double t = 0.1 * i;
      const auto k = kraus_family(spec, t);
      CHECK(kraus_completeness_residual(k) < 1e-10);
      CHECK(max_abs_diff(kraus_superop(k), expm(-t * l)) < 1e-10);
    }
    CHECK(kraus_rank({kraus_superop(kraus_family(spec, 0.0)), Carrier::vec, 2}) == 1);
    const auto rank = kraus_rank({kraus_superop(kraus_family(spec, 0.8)), Carrier::vec, 2});
    CHECK(rank == (name == ChannelName::depolarizing ? 4u : 2u));
  }
  const double a = 2.0, t = 0.6;
  const auto pf = kraus_superop(kraus_family(default_spec(ChannelName::phase_flip), t));
  CHECK(max_abs_diff(pf, Mat::diag({1, std::exp(-a * t), std::exp(-a * t), 1})) < 1e-14);
  CHECK_THROWS_AS(kraus_family(default_spec(ChannelName::phase_flip), -1.0), DomainError);
  CHECK_THROWS_AS(kraus_family(default_spec(ChannelName::example2), 1.0), DomainError);
  Mat transpose = Mat::zeros(4, 4);
  for (std::size_t p = 0; p < 2; ++p)
    for (std::size_t q = 0; q < 2; ++q) transpose(p * 2 + q, q * 2 + p) = 1.0;
  CHECK_THROWS_AS(kraus_rank({transpose, Carrier::vec, 2}), DomainError);
}

TEST_CASE("two-qubit wedge generators") {
  const auto spec = default_spec(ChannelName::two_qubit_C);
  const Mat g00 = two_qubit_wedge_generators(spec, 0.0, 0.0);
  const Mat s0 = sigma_hat("z1"), s1 = sigma_hat("1z");
  const Mat expected = I1 * (sigma_hat("z1") + sigma_hat("1z") + sigma_hat("zz")) + 2.0 * (s0 * s0) + 1.0 * (s1 * s1);
  CHECK(max_abs_diff(g00, expected) < 1e-14);
  std::mt19937_64 rng(32);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  for (const auto& axes : std::vector<std::vector<std::string>>{{"x1", "1y"}, {"y1", "1x"}, {"x1", "1x"}})
    for (const auto& noise : std::vector<std::vector<char>>{{'z', 'z'}, {'x', 'y'}, {'y', 'x'}}) {
      auto s = spec;
      s.control_axes = axes;
      s.noise_axes = noise;
      for (int trial = 0; trial < 5; ++trial) {
        const double a = ang(rng), b = ang(rng);
        CHECK(max_abs_diff(two_qubit_wedge_generators(s, a, b), two_qubit_conjugated_drift(s, a, b)) < 1e-10);
      }
    }
  CHECK_THROWS_AS(two_qubit_wedge_generators(default_spec(ChannelName::two_qubit_A), 0, 0), DomainError);
}
