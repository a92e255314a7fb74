// Serial reference vs OpenMP kernels. Prints one line per kernel:
//   name  size  serial_ms  omp_ms  speedup  max_abs_diff

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <span>
#include <vector>

#include "hermite/kernels.hpp"
#include "hermite/nodes.hpp"

using namespace hermite;

namespace {

double best_ms(const std::function<void()>& fn, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    fn();
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    best = std::min(best, ms);
  }
  return best;
}

double max_diff(std::span<const double> a, std::span<const double> b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

void report(const char* name, std::size_t size, double ts, double tp, double diff) {
  std::printf("%-28s %8zu %10.3f %10.3f %7.2fx %10.3g\n", name, size, ts, tp, ts / tp, diff);
}

}  // namespace

int main(int argc, char** argv) {
  const int n = argc > 1 ? std::atoi(argv[1]) : 400;
  const int reps = argc > 2 ? std::atoi(argv[2]) : 5;
  std::printf("threads %d, n %d, best of %d\n", kernels::max_threads(), n, reps);
  std::printf("%-28s %8s %10s %10s %8s %10s\n", "kernel", "size", "serial_ms", "omp_ms", "speedup",
              "max_diff");

  const int points = 20000;
  std::vector<double> xs(points);
  const double w = std::sqrt(2.0 * n + 3.0) + 2.0;
  for (int i = 0; i < points; ++i) xs[i] = -w + 2.0 * w * i / (points - 1);

  {
    std::vector<double> a(points), b(points);
    const double ts = best_ms([&] { kernels::serial::psi_derivative_values(n, 2, xs, a); }, reps);
    const double tp = best_ms([&] { kernels::omp::psi_derivative_values(n, 2, xs, b); }, reps);
    report("psi_derivative_values k=2", points, ts, tp, max_diff(a, b));
  }
  {
    std::vector<double> coeffs(n + 1);
    for (int k = 0; k <= n; ++k) coeffs[k] = std::cos(0.37 * k) / (1.0 + k);
    std::vector<double> a(points), b(points);
    const double ts = best_ms([&] { kernels::serial::expansion_values(coeffs, xs, a); }, reps);
    const double tp = best_ms([&] { kernels::omp::expansion_values(coeffs, xs, b); }, reps);
    report("expansion_values", points, ts, tp, max_diff(a, b));
  }
  const NodeSet ns = gauss_hermite_nodes(n);
  {
    numkit::DenseMatrix a, b;
    const double ts = best_ms([&] { a = kernels::serial::psi_table(n, ns.nodes); }, reps);
    const double tp = best_ms([&] { b = kernels::omp::psi_table(n, ns.nodes); }, reps);
    report("psi_table", ns.nodes.size(), ts, tp, max_diff(a.data(), b.data()));
  }
  {
    numkit::DenseMatrix a, b;
    const double ts = best_ms([&] { a = kernels::serial::cardinal_second_derivatives(ns.nodes); }, reps);
    const double tp = best_ms([&] { b = kernels::omp::cardinal_second_derivatives(ns.nodes); }, reps);
    report("cardinal_second_derivatives", ns.nodes.size(), ts, tp, max_diff(a.data(), b.data()));
  }
  return 0;
}
