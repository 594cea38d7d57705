#pragma once

// Self-checks shared by the `verify` CLI subcommand and the test suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fdlp/linear_prediction.hpp"

namespace fdlp {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Step-up recursion: all-pole model whose reflection coefficients are `k`.
/// |k_i| < 1 for every i gives a minimum-phase inverse filter.
LpModel model_from_reflections(const VectorXcd& reflections, double gain);

/// All-pole model with the given poles: A(z) = prod (1 - z_i z^-1).
LpModel model_from_poles(const VectorXcd& roots, double gain);

/// Random minimum-phase model, poles uniform in radius below max_radius.
/// Real models get conjugate pole pairs. Drawing poles rather than
/// reflection coefficients keeps high orders away from the unit circle.
LpModel random_stable_model(Index order, bool complex_valued, std::mt19937_64& rng, double max_radius = 0.95);

/// |idft| vs |dft| on `count` random real vectors (lengths 64..4096).
CheckResult check_fourier_identity_real(int count, std::uint64_t seed, double tol = 1e-12);
/// Index-reversed identity |idft(x)[k]| = |dft(x)[-k]| on random complex vectors.
CheckResult check_fourier_identity_complex_reversed(int count, std::uint64_t seed, double tol = 1e-12);
/// Elementwise identity on random complex vectors (holds only for real input).
CheckResult check_fourier_identity_complex_elementwise(int count, std::uint64_t seed, double tol = 1e-12);
/// Cepstral recursion vs dense-grid oracle on random stable models.
CheckResult check_cepstral_recursion(int count, std::uint64_t seed, Index max_order = 50, Index n_coeffs = 100,
                                     double tol = 1e-8);
/// Conventional FDLP of random real signals: conjugate-closed pole sets.
CheckResult check_pole_symmetry(int count, std::uint64_t seed, double tol = 1e-6);
/// Periodic Hann at 50% hop sums to one in the interior.
CheckResult check_cola(double tol = 1e-12);

std::vector<CheckResult> run_verify_suite(std::uint64_t seed = 2024);

}  // namespace fdlp
