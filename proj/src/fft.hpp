#pragma once

// Thin wrapper over Eigen's FFT module, with a Bluestein fallback for sizes
// that have a large prime factor. All transforms here are unscaled; callers
// apply whatever normalization their contract needs.

#include "fdlp/types.hpp"

namespace fdlp::detail {

/// X[k] = sum_n x[n] exp(-j 2 pi k n / N)
VectorXcd fft(const VectorXcd& x);
/// Full (two-sided) spectrum of a real sequence, optionally zero-padded to nfft.
VectorXcd fft_real(const VectorXd& x, Index nfft = -1);
/// x[n] = sum_k X[k] exp(+j 2 pi k n / N), no 1/N.
VectorXcd ifft(const VectorXcd& x);
/// Zero-padded transform of a short sequence onto an nfft-point grid.
VectorXcd fft_padded(const VectorXcd& x, Index nfft);
/// Real output of an unscaled inverse transform of a conjugate-symmetric
/// spectrum; only bins 0..nfft/2 are read.
VectorXd ifft_real(const VectorXcd& spectrum, Index nfft);

}  // namespace fdlp::detail
