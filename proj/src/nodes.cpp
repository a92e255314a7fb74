#include "hermite/nodes.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "hermite/basis.hpp"
#include "hermite/errors.hpp"
#include "hermite/io.hpp"
#include "hermite/numkit.hpp"

namespace hermite {

namespace {

void check_degree(int n, const char* who) {
  if (n < 0) throw InputError(std::string(who) + ": negative degree");
  // psi_{n+1} and psi'_{n+1} are evaluated, so stay one below the cap.
  if (n + 2 > kMaxDegree) {
    throw CapabilityError(std::string(who) + ": degree " + std::to_string(n) +
                          " exceeds configured maximum");
  }
}

// Mirror a sorted nonnegative half (ascending, possibly starting at 0) onto
// the full symmetric set of `count` points.
std::vector<double> mirror(const std::vector<double>& positive, std::size_t count) {
  std::vector<double> full(count);
  const std::size_t half = count / 2;
  for (std::size_t j = 0; j < half; ++j) {
    const double v = positive[positive.size() - 1 - j];
    full[j] = -v;
    full[count - 1 - j] = v;
  }
  if (count % 2 == 1) full[half] = 0.0;
  return full;
}

// Zero of psi^{(order)}_{deg} in [a, b], assuming a sign change.
double bracketed_root(int deg, int order, double a, double b) {
  auto g = [&](double x) { return psi_derivative(deg, order, x); };
  double ga = g(a);
  double gb = g(b);
  if (ga == 0.0) return a;
  if (gb == 0.0) return b;
  if ((ga > 0.0) == (gb > 0.0)) {
    throw NumericalError("tau_points: no sign change of psi'_" + std::to_string(deg) +
                         " on [" + std::to_string(a) + ", " + std::to_string(b) + "]");
  }
  for (int it = 0; it < 30; ++it) {
    const double mid = 0.5 * (a + b);
    const double gm = g(mid);
    if (gm == 0.0) return mid;
    if ((gm > 0.0) == (ga > 0.0)) {
      a = mid;
      ga = gm;
    } else {
      b = mid;
    }
  }
  // Newton on the narrowed bracket; ψ'' = (x^2 - (2deg+1)) ψ for order 1.
  double x = 0.5 * (a + b);
  for (int it = 0; it < 6; ++it) {
    const double f = g(x);
    const double df = order == 1 ? (x * x - (2.0 * deg + 1.0)) * psi(deg, x)
                                 : psi_derivative(deg, order + 1, x);
    if (df == 0.0) break;
    const double step = f / df;
    const double next = x - step;
    if (next <= a || next >= b) break;
    x = next;
    if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

}  // namespace

NodeSet gauss_hermite_nodes(int n) {
  check_degree(n, "gauss_hermite_nodes");
  const int size = n + 1;
  numkit::SymTridiag jacobi;
  jacobi.diagonal.assign(size, 0.0);
  jacobi.off_diagonal.resize(n);
  for (int m = 1; m <= n; ++m) jacobi.off_diagonal[m - 1] = std::sqrt(0.5 * m);
  std::vector<double> eig = numkit::tridiag_eigenvalues(jacobi);

  // Polish the nonnegative half; the odd-size middle zero is exactly 0.
  std::vector<double> positive;
  for (int j = size / 2 + size % 2; j < size; ++j) {
    double x = eig[j];
    for (int it = 0; it < 5; ++it) {
      const double f = psi(size, x);
      const double df = psi_derivative(size, 1, x);
      if (df == 0.0 || !std::isfinite(df)) break;
      const double step = f / df;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    if (!std::isfinite(x)) throw NumericalError("gauss_hermite_nodes: Newton diverged");
    positive.push_back(x);
  }
  std::sort(positive.begin(), positive.end());

  NodeSet out;
  out.n = n;
  out.nodes = mirror(positive, size);
  out.weights.resize(size);
  for (int j = 0; j < size; ++j) {
    const double p = psi(n, out.nodes[j]);
    out.weights[j] = 1.0 / (size * p * p);
  }
  // Weights from mirrored nodes may differ in the last bit; use one side.
  for (int j = 0; j < size / 2; ++j) out.weights[j] = out.weights[size - 1 - j];
  return out;
}

std::vector<double> tau_points(const NodeSet& ns) {
  const int n = ns.n;
  const int deg = n + 1;
  const int count = n + 2;
  const auto& x = ns.nodes;
  std::vector<double> positive;
  // Interior brackets (x_{j-1}, x_j) with nonnegative upper end. For odd n the
  // middle bracket straddles 0 and its zero is 0 by symmetry.
  for (int j = 1; j <= n; ++j) {
    if (x[j] <= 0.0) continue;
    if (x[j - 1] < 0.0) {
      if (count % 2 == 1) continue;  // zero at the origin, added by mirror
      throw NumericalError("tau_points: unexpected straddling bracket");
    }
    positive.push_back(bracketed_root(deg, 1, x[j - 1], x[j]));
  }
  positive.push_back(bracketed_root(deg, 1, x[n], std::sqrt(2.0 * n + 5.0)));
  std::sort(positive.begin(), positive.end());
  if (positive.size() != static_cast<std::size_t>(count / 2)) {
    throw NumericalError("tau_points: found " + std::to_string(positive.size()) +
                         " positive zeros, expected " + std::to_string(count / 2));
  }
  std::vector<double> tau = mirror(positive, count);

  const double scale = sup_norm_estimate(deg, 1);
  for (double t : tau) {
    if (std::abs(psi_derivative(deg, 1, t)) > 1e-12 * scale) {
      throw NumericalError("tau_points: residual too large at " + std::to_string(t));
    }
  }
  return tau;
}

std::vector<double> tau_points(int n) {
  check_degree(n, "tau_points");
  return tau_points(gauss_hermite_nodes(n));
}

std::vector<double> eta_points(const NodeSet& ns) {
  const int n = ns.n;
  const double edge = std::sqrt(2.0 * n + 3.0);
  std::vector<double> eta;
  eta.reserve(n + 3);
  eta.push_back(-edge);
  eta.insert(eta.end(), ns.nodes.begin(), ns.nodes.end());
  eta.push_back(edge);
  for (double e : eta) {
    const double r = psi_derivative(n + 1, 2, e);
    if (!(std::abs(r) <= 1e-10)) {
      throw NumericalError("eta_points: |psi''_" + std::to_string(n + 1) + "| = " +
                           std::to_string(std::abs(r)) + " at " + std::to_string(e));
    }
  }
  return eta;
}

std::vector<double> eta_points(int n) {
  check_degree(n, "eta_points");
  return eta_points(gauss_hermite_nodes(n));
}

SuperconPoints supercon_points(int n) {
  check_degree(n, "supercon_points");
  const NodeSet ns = gauss_hermite_nodes(n);
  return {n, tau_points(ns), eta_points(ns)};
}

void write_points_csv(std::ostream& os, const NodeSet& nodes, const SuperconPoints& points) {
  os << "index,kind,value,weight\n";
  for (std::size_t j = 0; j < nodes.nodes.size(); ++j) {
    os << j << ",node," << io::fmt17(nodes.nodes[j]) << ',' << io::fmt17(nodes.weights[j])
       << '\n';
  }
  for (std::size_t j = 0; j < points.tau.size(); ++j) {
    os << j << ",tau," << io::fmt17(points.tau[j]) << ",\n";
  }
  for (std::size_t j = 0; j < points.eta.size(); ++j) {
    os << j << ",eta," << io::fmt17(points.eta[j]) << ",\n";
  }
}

}  // namespace hermite
