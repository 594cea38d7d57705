#pragma once

#include <complex>
#include <cstddef>

#include <Eigen/Core>

namespace fdlp {

using Complex = std::complex<double>;
using Eigen::Index;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Uniformly sampled real waveform.
struct Signal {
  VectorXd samples;
  double sample_rate = 16000.0;

  Index size() const { return samples.size(); }
  double duration() const { return static_cast<double>(samples.size()) / sample_rate; }
};

/// Sampled temporal envelope with a physical time axis in seconds.
struct Envelope {
  VectorXd values;
  VectorXd time_axis;
  bool symmetric = false;
};

}  // namespace fdlp
