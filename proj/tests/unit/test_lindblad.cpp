#include <cmath>

#include "doctest.h"
#include "helpers.hpp"
#include "liewedge/channels.hpp"
#include "liewedge/liealg.hpp"
#include "liewedge/lindblad.hpp"

using namespace liewedge;
using namespace testing_helpers;

TEST_CASE("ad_hat") {
  CHECK(max_abs_diff(ad_hat(0.5 * pauli('z')), Mat::diag({0, -1, 1, 0})) == 0.0);
  CHECK(norm(ad_hat(Mat::identity(2))) == 0.0);
  const cplx i{0, 1};
  const Mat lhs = comm(i * sigma_hat("x"), i * sigma_hat("y"));
  CHECK(max_abs_diff(lhs, -1.0 * (i * sigma_hat("z"))) < 1e-15);
  CHECK_THROWS_AS(ad_hat(Mat::real({{0, 1}, {0, 0}})), DomainError);

  std::mt19937_64 rng(21);
  const Mat a = random_hermitian(rng, 3), b = random_hermitian(rng, 3);
  const Mat ab = i * comm(a, b);  // Hermitian
  CHECK(max_abs_diff(ad_hat(ab), i * comm(ad_hat(a), ad_hat(b))) < 1e-12);
}

TEST_CASE("gks_dissipator") {
  for (char k : {'x', 'y', 'z'}) {
    const Mat s = sigma_hat(std::string(1, k));
    CHECK(max_abs_diff(gks_dissipator({{pauli(k), 0.7}}), 1.4 * (s * s)) < 1e-12);
  }
  CHECK(norm(gks_dissipator({{Mat::identity(2), 1.0}})) < 1e-15);
  std::mt19937_64 rng(22);
  for (int t = 0; t < 5; ++t) {
    const Mat v = random_hermitian(rng, 2);
    const Mat g = gks_dissipator({{v, 0.5}});
    Mat vi(4, 1);
    vi(0, 0) = 1;
    vi(3, 0) = 1;
    CHECK(norm(g * vi) < 1e-12);
    const Mat c = coherence_rep(g);
    CHECK(max_abs_diff(c, c.transpose()) < 1e-12);
    CHECK(eig_sym(c).values.back() > -1e-12);
  }
}

TEST_CASE("lindbladian and coherence representation") {
  ControlSystem pf;
  pf.rep = Rep::qubit;
  pf.lindblad.push_back({pauli('z'), 0.4});
  const std::vector<double> none;
  const auto l = lindbladian(pf, none);
  const double t = 1.3;
  const Mat prop = expm(-t * l.matrix);
  const double e = std::exp(-2 * 0.4 * t);
  CHECK(max_abs_diff(prop, Mat::diag({1, e, e, 1})) < 1e-14);

  ControlSystem closed;
  closed.rep = Rep::qubit;
  closed.drift_h = 0.5 * pauli('x');
  const cplx i{0, 1};
  CHECK(max_abs_diff(lindbladian(closed, none).matrix, i * ad_hat(closed.drift_h)) == 0.0);
  std::vector<double> bad{1.0};
  CHECK_THROWS_AS(lindbladian(closed, bad), ShapeError);

  CHECK(max_abs_diff(coherence_rep(i * sigma_hat("z")), H_z()) < 1e-15);
  CHECK(max_abs_diff(coherence_rep(i * sigma_hat("x")), H_x()) < 1e-15);
  const Mat sz = sigma_hat("z");
  CHECK(max_abs_diff(coherence_rep(2.0 * (sz * sz)), Mat::diag({2, 2, 0})) < 1e-15);
  CHECK(max_abs_diff(coherence_rep(Mat::identity(4)), Mat::identity(3)) < 1e-15);

  ControlSystem q1;
  q1.rep = Rep::qubit;
  q1.drift_h = 0.5 * pauli('z');
  q1.controls = {0.5 * pauli('x'), 0.5 * pauli('y')};
  q1.lindblad.push_back({pauli('z'), 0.5});
  CHECK(max_abs_diff(coherence_rep(drift_generator(q1)), H_z() + Mat::diag({1, 1, 0})) < 1e-14);

  Mat nonunital = Mat::zeros(4, 4);
  nonunital(1, 0) = 1.0;
  CHECK_THROWS_AS(coherence_rep(nonunital), DomainError);
}

TEST_CASE("coherence_rep is a Lie homomorphism with an inverse") {
  std::mt19937_64 rng(23);
  const auto a = random_unital(rng, Rep::qubit);
  const std::vector<double> u{0.3};
  const Mat la = lindbladian(a, u).matrix;
  const auto b = random_unital(rng, Rep::qubit);
  const Mat lb = lindbladian(b, u).matrix;
  CHECK(max_abs_diff(coherence_rep(comm(la, lb)), comm(coherence_rep(la), coherence_rep(lb))) < 1e-12);
  CHECK(max_abs_diff(superop_from_coherence(coherence_rep(la), 2, 0.0), la) < 1e-12);

  const auto c = random_unital(rng, Rep::two_qubit);
  const Mat lc = lindbladian(c, u).matrix;
  const Mat rc = coherence_rep(lc);
  CHECK(rc.rows() == 15);
  const auto [k, p] = cartan_split(rc);
  const Mat ham = hamiltonian_generator(c, c.drift_h + 0.3 * c.controls[0]);
  CHECK(max_abs_diff(k, coherence_rep(ham)) < 1e-12);
  CHECK(max_abs_diff(p, coherence_rep(dissipator(c))) < 1e-12);
  CHECK(eig_sym(p).values.back() > -1e-12);
}

TEST_CASE("cptp_audit") {
  const auto id = cptp_audit({Mat::identity(4), Carrier::vec, 2});
  CHECK(id.is_tp);
  CHECK(id.is_cp);
  CHECK(id.choi_min_eig >= -1e-15);

  Mat transpose = Mat::zeros(4, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) transpose(a * 2 + b, b * 2 + a) = 1.0;
  const auto tr = cptp_audit({transpose, Carrier::vec, 2});
  CHECK(tr.is_tp);
  CHECK_FALSE(tr.is_cp);
  CHECK(std::abs(tr.choi_min_eig + 1.0) < 1e-12);

  std::mt19937_64 rng(24);
  for (auto rep : {Rep::qubit, Rep::two_qubit})
    for (int trial = 0; trial < 5; ++trial) {
      const auto sys = random_unital(rng, rep);
      const std::vector<double> u{0.7};
      const Mat l = lindbladian(sys, u).matrix;
      for (double t : {0.1, 1.0, 10.0}) {
        const auto r = cptp_audit({expm(-t * l), Carrier::vec, hilbert_dim(rep)});
        CHECK(r.is_tp);
        CHECK(r.is_cp);
      }
      CHECK(max_abs_diff(expm(-1.5 * l), expm(-0.5 * l) * expm(-1.0 * l)) < 1e-10);
    }
}

TEST_CASE("validate") {
  ControlSystem s;
  s.rep = Rep::r3;
  s.drift_h = p_x();
  CHECK_THROWS_AS(validate(s), DomainError);
  s.drift_h = H_z();
  s.relaxation = Mat::diag({1, -1, 0});
  CHECK_THROWS_AS(validate(s), DomainError);
  ControlSystem q;
  q.rep = Rep::qubit;
  q.lindblad.push_back({pauli('x'), -1.0});
  CHECK_THROWS_AS(validate(q), DomainError);
  q.lindblad[0].rate = 1.0;
  q.controls.push_back(Mat::identity(4));
  CHECK_THROWS_AS(validate(q), ShapeError);
}
