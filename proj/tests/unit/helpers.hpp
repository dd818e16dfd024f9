#pragma once

#include <cmath>
#include <random>

#include "liewedge/lindblad.hpp"
#include "liewedge/matcore.hpp"

namespace testing_helpers {

using liewedge::cplx;
using liewedge::Field;
using liewedge::Mat;

inline Mat random_real(std::mt19937_64& rng, std::size_t r, std::size_t c, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Mat m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = n(rng);
  return m;
}

inline Mat random_complex(std::mt19937_64& rng, std::size_t r, std::size_t c, double scale = 1.0) {
  std::normal_distribution<double> n(0.0, scale);
  Mat m(r, c, Field::complex);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = cplx{n(rng), n(rng)};
  return m;
}

inline Mat random_symmetric(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  Mat a = random_real(rng, n, n, scale);
  return 0.5 * (a + a.transpose());
}

inline Mat random_hermitian(std::mt19937_64& rng, std::size_t n, double scale = 1.0) {
  Mat a = random_complex(rng, n, n, scale);
  return 0.5 * (a + a.adjoint());
}

inline liewedge::ControlSystem random_unital(std::mt19937_64& rng, liewedge::Rep rep) {
  liewedge::ControlSystem sys;
  sys.rep = rep;
  const auto n = liewedge::hilbert_dim(rep);
  sys.drift_h = random_hermitian(rng, n);
  sys.controls.push_back(random_hermitian(rng, n));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 2; ++k) sys.lindblad.push_back({random_hermitian(rng, n), u(rng)});
  return sys;
}

}  // namespace testing_helpers
