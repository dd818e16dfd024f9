#include <cmath>
#include <numbers>

#include "doctest.h"
#include "helpers.hpp"
#include "liewedge/channels.hpp"
#include "liewedge/matcore.hpp"

using namespace liewedge;
using namespace testing_helpers;

TEST_CASE("kron index layout and identities") {
  CHECK(max_abs_diff(kron(Mat::identity(2), Mat::identity(2)), Mat::identity(4)) == 0.0);
  const Mat sz = Mat::real({{1, 0}, {0, -1}});
  const Mat s = 0.5 * (kron(Mat::identity(2), sz) - kron(sz.transpose(), Mat::identity(2)));
  CHECK(max_abs_diff(s, Mat::diag({0, -1, 1, 0})) == 0.0);

  std::mt19937_64 rng(1);
  const Mat a = random_complex(rng, 2, 3), b = random_complex(rng, 3, 2);
  const Mat c = random_complex(rng, 3, 2), d = random_complex(rng, 2, 3);
  CHECK(max_abs_diff(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
  const Mat k = kron(a, b);
  CHECK(k(1 * 3 + 2, 2 * 2 + 1) == a(1, 2) * b(2, 1));
}

TEST_CASE("commutator table entries") {
  CHECK(max_abs_diff(comm(H_x(), p_x()), -2.0 * Delta(2, 3)) < 1e-15);
  CHECK(norm(comm(p_y(), p_y())) == 0.0);
  CHECK(max_abs_diff(acomm(p_x(), p_x()), 2.0 * (p_x() * p_x())) == 0.0);
  CHECK_THROWS_AS(comm(Mat::zeros(2, 2), Mat::zeros(3, 3)), ShapeError);
}

TEST_CASE("expm") {
  CHECK(max_abs_diff(expm(Mat::zeros(3, 3)), Mat::identity(3)) == 0.0);
  const Mat r = expm((std::numbers::pi / 2) * H_z());
  CHECK(max_abs_diff(r, Mat::real({{0, -1, 0}, {1, 0, 0}, {0, 0, 1}})) < 1e-14);
  const Mat d = expm(Mat::diag({1.0, -2.0, 0.5}));
  CHECK(std::abs(d(0, 0) - std::exp(1.0)) < 1e-14 * std::exp(1.0));
  CHECK(std::abs(d(1, 1) - std::exp(-2.0)) < 1e-15);

  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    Mat a = random_complex(rng, 4, 4);
    a *= 10.0 / norm(a) * (trial + 1) / 20.0;
    CHECK(max_abs_diff(expm(a) * expm(-1.0 * a), Mat::identity(4)) < 1e-10);
  }
  Mat big = random_real(rng, 3, 3);
  big *= 1000.0 / norm1(big);
  CHECK(expm(big).all_finite());
}

TEST_CASE("logm inverts expm near the identity") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 10; ++trial) {
    Mat a = random_complex(rng, 4, 4);
    a *= 0.7 / norm(a);
    CHECK(max_abs_diff(logm(expm(a)), a) < 1e-12);
  }
  const Mat real = 0.3 * random_real(rng, 3, 3);
  CHECK(logm(expm(real)).is_real());
}

TEST_CASE("eig_sym") {
  auto e = eig_sym(Mat::diag({3, 1, 2}));
  CHECK(e.values == std::vector<double>{3, 2, 1});
  e = eig_sym(p_x());
  CHECK(std::abs(e.values[0] - 1) < 1e-14);
  CHECK(std::abs(e.values[1]) < 1e-14);
  CHECK(std::abs(e.values[2] + 1) < 1e-14);

  std::mt19937_64 rng(4);
  for (std::size_t n : {3u, 9u, 16u}) {
    const Mat s = random_symmetric(rng, n);
    const auto r = eig_sym(s);
    Mat lam = Mat::zeros(n, n);
    double tr = 0;
    for (std::size_t i = 0; i < n; ++i) {
      lam(i, i) = r.values[i];
      tr += r.values[i];
    }
    CHECK(max_abs_diff(r.vectors * lam * r.vectors.transpose(), s) < 1e-10 * norm(s));
    CHECK(std::abs(tr - s.trace().real()) < 1e-10);
    for (std::size_t i = 1; i < n; ++i) CHECK(r.values[i - 1] >= r.values[i]);
  }
  const Mat h = random_hermitian(rng, 4);
  const auto r = eig_sym(h);
  for (std::size_t k = 0; k < 4; ++k) {
    Mat v(4, 1, Field::complex);
    for (std::size_t i = 0; i < 4; ++i) v(i, 0) = r.vectors(i, k);
    CHECK(norm(h * v - r.values[k] * v) < 1e-10 * norm(h));
  }
  CHECK_THROWS_AS(eig_sym(H_x()), DomainError);
}

TEST_CASE("orthonormal_span") {
  std::vector<Mat> rot{H_x(), H_y(), H_z()};
  CHECK(orthonormal_span(rot).dim() == 3);
  CHECK(orthonormal_span({}, 3, 3, Field::real).dim() == 0);
  std::vector<Mat> dep{p_x(), 2.0 * p_x()};
  CHECK(orthonormal_span(dep).dim() == 1);

  std::mt19937_64 rng(5);
  std::vector<Mat> g;
  for (int i = 0; i < 5; ++i) g.push_back(random_real(rng, 3, 3));
  g.push_back(g[0] + g[1]);
  const auto s = orthonormal_span(g);
  CHECK(s.dim() == 5);
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j)
      CHECK(std::abs(inner(s.basis()[i], s.basis()[j]) - (i == j ? 1.0 : 0.0)) < 1e-12);
  CHECK(orthonormal_span(s.basis()).dim() == s.dim());
}

TEST_CASE("flatten round trip and inner product") {
  std::mt19937_64 rng(6);
  const Mat a = random_complex(rng, 3, 2), b = random_complex(rng, 3, 2);
  const auto fa = a.flatten(), fb = b.flatten();
  double dot = 0;
  for (std::size_t i = 0; i < fa.size(); ++i) dot += fa[i] * fb[i];
  CHECK(std::abs(dot - inner(a, b)) < 1e-12);
  CHECK(max_abs_diff(Mat::unflatten(fa, 3, 2, Field::complex), a) == 0.0);
}
