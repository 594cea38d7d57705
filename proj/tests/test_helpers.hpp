#pragma once

#include <cmath>
#include <random>

#include <catch_amalgamated.hpp>

#include "fdlp/types.hpp"

namespace fdlp::test {

inline VectorXd random_real(Index n, std::mt19937_64& rng, double scale = 1.0) {
  std::normal_distribution<double> g(0.0, scale);
  VectorXd x(n);
  for (Index i = 0; i < n; ++i) x[i] = g(rng);
  return x;
}

inline VectorXcd random_complex(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  VectorXcd x(n);
  for (Index i = 0; i < n; ++i) x[i] = Complex(g(rng), g(rng));
  return x;
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& a) {
  return a.cwiseAbs().maxCoeff();
}

/// O(N^2) DFT with e^{sign j 2 pi k n / N} / sqrt(N).
inline VectorXcd naive_dft(const VectorXcd& x, double sign) {
  const Index n = x.size();
  VectorXcd out = VectorXcd::Zero(n);
  for (Index k = 0; k < n; ++k) {
    for (Index i = 0; i < n; ++i) {
      out[k] += x[i] * std::polar(1.0, sign * 2.0 * M_PI * static_cast<double>(k * i % n) / static_cast<double>(n));
    }
  }
  return out / std::sqrt(static_cast<double>(n));
}

}  // namespace fdlp::test
