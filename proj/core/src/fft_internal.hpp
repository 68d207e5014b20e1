#pragma once

#include <complex>

#include "sburgers/grid.hpp"

namespace sburgers::detail {

// Cached-plan FFTW c2c transforms over one component (n^d contiguous values,
// row major, last axis fastest). `in` and `out` must be distinct buffers.
// Forward uses e^{-ik·x} and divides by n^d so that coefficients are mode
// amplitudes; backward uses e^{+ik·x} unscaled. Plan creation is serialized;
// execution is concurrency-safe.
void fft_forward(const TorusGrid& grid, const std::complex<double>* in,
                 std::complex<double>* out);
void fft_backward(const TorusGrid& grid, const std::complex<double>* in,
                  std::complex<double>* out);

}  // namespace sburgers::detail
