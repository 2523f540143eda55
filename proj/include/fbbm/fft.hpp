// Thin FFTW wrapper: complex-to-complex transforms of arbitrary length.
#pragma once

#include <complex>
#include <span>

namespace fbbm::fft {

using cd = std::complex<double>;

/// out[k] = sum_m in[m] exp(-2*pi*i*k*m/n).  in and out may alias.
void forward(std::span<const cd> in, std::span<cd> out);

/// out[m] = sum_k in[k] exp(+2*pi*i*k*m/n).  Unnormalized.
void backward(std::span<const cd> in, std::span<cd> out);

}  // namespace fbbm::fft
