#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "hermite/basis.hpp"
#include "hermite/kernels.hpp"
#include "hermite/nodes.hpp"

using namespace hermite;

namespace {

std::vector<double> sample_grid(int count, double w) {
  std::vector<double> xs(count);
  for (int i = 0; i < count; ++i) xs[i] = -w + 2.0 * w * i / (count - 1);
  return xs;
}

}  // namespace

TEST_CASE("OpenMP kernels match the serial reference bit for bit") {
  CHECK(kernels::max_threads() >= 1);
  const auto xs = sample_grid(3001, 25.0);

  for (int n : {0, 7, 150}) {
    for (int k = 0; k <= 3; ++k) {
      std::vector<double> a(xs.size()), b(xs.size());
      kernels::serial::psi_derivative_values(n, k, xs, a);
      kernels::omp::psi_derivative_values(n, k, xs, b);
      CHECK(a == b);
    }
  }

  std::vector<double> coeffs(201);
  for (std::size_t j = 0; j < coeffs.size(); ++j) coeffs[j] = std::sin(1.0 + j);
  std::vector<double> a(xs.size()), b(xs.size());
  kernels::serial::expansion_values(coeffs, xs, a);
  kernels::omp::expansion_values(coeffs, xs, b);
  CHECK(a == b);

  const NodeSet ns = gauss_hermite_nodes(120);
  const auto ta = kernels::serial::psi_table(130, ns.nodes);
  const auto tb = kernels::omp::psi_table(130, ns.nodes);
  CHECK(std::vector<double>(ta.data().begin(), ta.data().end()) ==
        std::vector<double>(tb.data().begin(), tb.data().end()));

  const auto da = kernels::serial::cardinal_second_derivatives(ns.nodes);
  const auto db = kernels::omp::cardinal_second_derivatives(ns.nodes);
  CHECK(std::vector<double>(da.data().begin(), da.data().end()) ==
        std::vector<double>(db.data().begin(), db.data().end()));
}

TEST_CASE("serial kernels agree with single-point evaluators") {
  const auto xs = sample_grid(101, 8.0);
  std::vector<double> v(xs.size());
  kernels::serial::psi_derivative_values(9, 2, xs, v);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    CHECK(v[i] == doctest::Approx(psi_derivative(9, 2, xs[i])).epsilon(1e-14).scale(1e-300));
  }
  const auto t = kernels::serial::psi_table(6, xs);
  CHECK(t.rows() == xs.size());
  CHECK(t.cols() == 7);
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (int j = 0; j <= 6; ++j) CHECK(t(i, j) == doctest::Approx(psi(j, xs[i])).epsilon(1e-14));
}
