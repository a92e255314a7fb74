#include "hermite/kernels.hpp"

#include <cstddef>
#include <vector>

#include "hermite/basis.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace hermite::kernels {

namespace {

using numkit::DenseMatrix;

// ψ'_{n+1} at every node; diagonal entries use ψ''' = (x^2 - (2n+3)) ψ' at a
// zero of ψ_{n+1}.
inline void cardinal_row(std::span<const double> nodes, std::span<const double> dpsi,
                         std::size_t i, std::span<double> row) {
  const double c = 2.0 * static_cast<double>(nodes.size()) + 1.0;  // 2(n+1)+1
  const double xi = nodes[i];
  for (std::size_t j = 0; j < nodes.size(); ++j) {
    if (j == i) {
      row[j] = (xi * xi - c) / 3.0;
    } else {
      const double d = xi - nodes[j];
      row[j] = -2.0 * dpsi[i] / (dpsi[j] * d * d);
    }
  }
}

}  // namespace

int max_threads() {
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace serial {

void psi_derivative_values(int n, int k, std::span<const double> xs, std::span<double> out) {
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = psi_derivative(n, k, xs[i]);
}

void expansion_values(std::span<const double> coeffs, std::span<const double> xs,
                      std::span<double> out) {
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = psi_series(coeffs, xs[i]);
}

DenseMatrix psi_table(int degree, std::span<const double> xs) {
  DenseMatrix t(xs.size(), degree + 1);
  for (std::size_t i = 0; i < xs.size(); ++i) psi_range(0, degree, xs[i], t.row(i));
  return t;
}

DenseMatrix cardinal_second_derivatives(std::span<const double> nodes) {
  const std::size_t size = nodes.size();
  const int degree = static_cast<int>(size);  // ψ_{n+1}
  std::vector<double> dpsi(size);
  for (std::size_t j = 0; j < size; ++j) dpsi[j] = psi_derivative(degree, 1, nodes[j]);
  DenseMatrix d(size, size);
  for (std::size_t i = 0; i < size; ++i) cardinal_row(nodes, dpsi, i, d.row(i));
  return d;
}

}  // namespace serial

namespace omp {

void psi_derivative_values(int n, int k, std::span<const double> xs, std::span<double> out) {
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = psi_derivative(n, k, xs[i]);
}

void expansion_values(std::span<const double> coeffs, std::span<const double> xs,
                      std::span<double> out) {
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = psi_series(coeffs, xs[i]);
}

DenseMatrix psi_table(int degree, std::span<const double> xs) {
  DenseMatrix t(xs.size(), degree + 1);
  const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(xs.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < count; ++i) psi_range(0, degree, xs[i], t.row(i));
  return t;
}

DenseMatrix cardinal_second_derivatives(std::span<const double> nodes) {
  const std::ptrdiff_t size = static_cast<std::ptrdiff_t>(nodes.size());
  const int degree = static_cast<int>(size);
  std::vector<double> dpsi(size);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t j = 0; j < size; ++j) dpsi[j] = psi_derivative(degree, 1, nodes[j]);
  DenseMatrix d(size, size);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < size; ++i) cardinal_row(nodes, dpsi, i, d.row(i));
  return d;
}

}  // namespace omp

}  // namespace hermite::kernels
