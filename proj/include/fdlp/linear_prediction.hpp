#pragma once

// Autocorrelation-method linear prediction.
//
// Prediction model: x[n] = sum_{k=1..p} alpha_k x[n-k] + G u[n], so the
// inverse filter is A(z) = 1 - sum alpha_k z^-k and the model response is
// G^2 / |A(e^{j tau})|^2. The routines are templated on the scalar type:
// real sequences run in real arithmetic, complex sequences in complex
// arithmetic, through the same code.

#include <vector>

#include "fdlp/types.hpp"

namespace fdlp {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

enum class ModelDomain { Raw, ConventionalFdlp, ComplexFdlp };

struct LpModel {
  VectorXcd coeffs;  // alpha_1 .. alpha_p
  double gain = 0.0;
  ModelDomain domain = ModelDomain::Raw;
  Index source_len = 0;      // length of the sequence the model was fit to
  double duration_s = 0.0;   // physical span of the model's time axis
  bool order_clamped = false;

  Index order() const { return coeffs.size(); }
};

/// Biased autocorrelation r[k] = sum_n x[n] conj(x[n-k]), k = 0..max_lag.
template <typename Scalar>
struct AutocorrSequence {
  Vector<Scalar> r;

  Index max_lag() const { return r.size() - 1; }
  double energy() const;
  bool zero_energy() const { return !(energy() > 0.0); }
};

template <typename Scalar>
AutocorrSequence<Scalar> autocorrelate(const Vector<Scalar>& x, Index max_lag);

/// O(N p) reference loop, also the fast path for short lag ranges.
template <typename Scalar>
AutocorrSequence<Scalar> autocorrelate_direct(const Vector<Scalar>& x, Index max_lag);

/// Everything the Levinson-Durbin recursion produces, not just the final model.
template <typename Scalar>
struct LevinsonTrace {
  Vector<Scalar> coeffs;          // alpha_1 .. alpha_order
  Vector<Scalar> reflection;      // kappa_1 .. kappa_order
  std::vector<double> errors;     // E_0 .. E_order
  bool truncated = false;         // stopped early (Truncate policy only)

  Index order() const { return coeffs.size(); }
  double final_error() const { return errors.back(); }
};

enum class FailurePolicy {
  Throw,     // IllConditionedError naming the failing order
  Truncate,  // keep the last positive-definite order
};

template <typename Scalar>
LevinsonTrace<Scalar> levinson_recursion(const AutocorrSequence<Scalar>& r, Index order,
                                         FailurePolicy policy = FailurePolicy::Throw);

/// Levinson-Durbin solve of the Toeplitz normal equations; G = sqrt(E_p).
template <typename Scalar>
LpModel levinson(const AutocorrSequence<Scalar>& r, Index order);

/// G^2 / |A(e^{j tau_k})|^2 for tau_k = 2 pi k / n_points, k = 0..n_points-1.
VectorXd lp_power_response(const LpModel& m, Index n_points);

/// A(e^{j tau_k}) on the same grid.
VectorXcd inverse_filter_response(const LpModel& m, Index n_points);

struct RootOptions {
  int max_iterations = 500;
  double tolerance = 1e-10;
};

/// Roots of z^p - alpha_1 z^{p-1} - ... - alpha_p (Aberth-Ehrlich iteration).
VectorXcd poles(const LpModel& m, const RootOptions& opts = {});

/// Smallest factor of the form 2^a 3^b 5^c that is >= n.
Index next_fast_size(Index n);

}  // namespace fdlp
