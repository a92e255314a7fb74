#pragma once

// Data-parallel loops over abscissae or matrix rows. Every kernel has a
// serial reference and an OpenMP version with identical per-element
// arithmetic, so the two agree bit for bit; the serial one is kept for tests
// and the benchmark.

#include <span>

#include "hermite/numkit.hpp"

namespace hermite::kernels {

namespace serial {

/// out[i] = psi_n^{(k)}(xs[i]).
void psi_derivative_values(int n, int k, std::span<const double> xs, std::span<double> out);

/// out[i] = sum_j coeffs[j] psi_j(xs[i]) by overflow-safe Clenshaw.
void expansion_values(std::span<const double> coeffs, std::span<const double> xs,
                      std::span<double> out);

/// Row i holds psi_0(xs[i]) .. psi_degree(xs[i]).
numkit::DenseMatrix psi_table(int degree, std::span<const double> xs);

/// D(i,j) = sigma_j''(x_i) for cardinal functions on the zeros of psi_{n+1}.
numkit::DenseMatrix cardinal_second_derivatives(std::span<const double> nodes);

}  // namespace serial

namespace omp {

void psi_derivative_values(int n, int k, std::span<const double> xs, std::span<double> out);
void expansion_values(std::span<const double> coeffs, std::span<const double> xs,
                      std::span<double> out);
numkit::DenseMatrix psi_table(int degree, std::span<const double> xs);
numkit::DenseMatrix cardinal_second_derivatives(std::span<const double> nodes);

}  // namespace omp

/// Worker count the OpenMP kernels would use (1 when built without OpenMP).
int max_threads();

}  // namespace hermite::kernels
