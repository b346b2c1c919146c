#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "chemflow/grid.hpp"

namespace chemflow {

/// Discrete Fourier transform contract for grid fields.
///
/// Convention: forward() produces coefficients f_hat with
///   f(x_j) = sum_k f_hat(k) * exp(i xi_k . x_j),
/// i.e. the raw DFT sum divided by the total point count. With this
/// normalization the mean of the field is the k=0 coefficient and
/// Parseval reads  ||f||_2^2 = volume * sum |f_hat|^2.
namespace fft {

void forward(const GridSpec& grid, const std::vector<double>& physical,
             std::vector<std::complex<double>>& spectral);
void inverse(const GridSpec& grid, const std::vector<std::complex<double>>& spectral,
             std::vector<double>& physical);

}  // namespace fft

/// Visits every spectral slot with its physical wavenumber vector xi
/// (components 2*pi*k_a/L_a) and the signed integer mode indices.
void for_each_mode(const GridSpec& grid,
                   const std::function<void(std::size_t idx, const std::array<double, 3>& xi,
                                            const std::array<int, 3>& k)>& fn);

/// Visits every grid point with its physical coordinates.
void for_each_point(const GridSpec& grid,
                    const std::function<void(std::size_t idx, const std::array<double, 3>& x)>& fn);

}  // namespace chemflow
