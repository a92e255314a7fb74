#include "hermite/postprocess.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "hermite/errors.hpp"
#include "hermite/kernels.hpp"

namespace hermite {

void validate(const MergeSpec& spec) {
  if (spec.n < 0 || spec.m < 0) throw InputError("merge: degrees must be nonnegative");
  if (spec.m > 2 * spec.n + 1) {
    throw InputError("merge: need m <= 2n+1 (n = " + std::to_string(spec.n) +
                     ", m = " + std::to_string(spec.m) + ")");
  }
}

MergeResult merge_samples(const NodeSet& xs, std::span<const double> x_values,
                          const NodeSet& ys, std::span<const double> y_values,
                          const MergeSpec& spec) {
  validate(spec);
  if (xs.n != spec.n || ys.n != spec.n + 1) {
    throw InputError("merge: node sets must be the zeros of psi_{n+1} and psi_{n+2}");
  }
  const std::size_t rx = xs.nodes.size();
  const std::size_t ry = ys.nodes.size();
  if (x_values.size() != rx || y_values.size() != ry) {
    throw InputError("merge: sample count does not match node count");
  }
  const std::size_t cols = spec.m + 1;

  const numkit::DenseMatrix a1 = kernels::omp::psi_table(spec.m, xs.nodes);
  const numkit::DenseMatrix a2 = kernels::omp::psi_table(spec.m, ys.nodes);
  numkit::DenseMatrix a(rx + ry, cols);
  std::vector<double> b(rx + ry);
  for (std::size_t i = 0; i < rx; ++i) {
    std::copy(a1.row(i).begin(), a1.row(i).end(), a.row(i).begin());
    b[i] = x_values[i];
  }
  for (std::size_t i = 0; i < ry; ++i) {
    std::copy(a2.row(i).begin(), a2.row(i).end(), a.row(rx + i).begin());
    b[rx + i] = y_values[i];
  }

  const numkit::LstsqSolution ls = numkit::lstsq(a, b);
  if (ls.rank < static_cast<int>(cols)) {
    throw ConditioningError("merge: design matrix has numerical rank " +
                                std::to_string(ls.rank) + " < " + std::to_string(cols) +
                                " columns",
                            ls.rank, static_cast<int>(cols));
  }

  MergeResult r;
  r.phi.coeffs = ls.x;
  r.rank = ls.rank;
  const std::vector<double> fitted = a.multiply(ls.x);
  r.residuals_x.resize(rx);
  r.residuals_y.resize(ry);
  for (std::size_t i = 0; i < rx; ++i) r.residuals_x[i] = fitted[i] - b[i];
  for (std::size_t i = 0; i < ry; ++i) r.residuals_y[i] = fitted[rx + i] - b[rx + i];
  std::vector<double> stacked(r.residuals_x);
  stacked.insert(stacked.end(), r.residuals_y.begin(), r.residuals_y.end());
  r.residual_norm = numkit::norm2(stacked);
  r.hull_lo = ys.nodes.front();
  r.hull_hi = ys.nodes.back();
  return r;
}

MergeResult merge(const CollocationSolution& u_n, const CollocationSolution& u_n1,
                  const MergeSpec& spec) {
  if (u_n.nodes.n != spec.n || u_n1.nodes.n != spec.n + 1) {
    throw InputError("merge: expected solutions of degree n and n+1");
  }
  return merge_samples(u_n.nodes, u_n.nodal_values, u_n1.nodes, u_n1.nodal_values, spec);
}

WindowedError windowed_error_report(const HermiteExpansion& approx, const Sampler& exact,
                                    double hull_lo, double hull_hi, double window,
                                    int points) {
  if (points < 2 || !(window > 0.0)) throw InputError("windowed_error_report: bad grid");
  std::vector<double> xs(points);
  const double h = 2.0 * window / (points - 1);
  for (int i = 0; i < points; ++i) xs[i] = -window + h * i;
  // Include the hull ends themselves so the inside sup sees the boundary.
  xs.push_back(hull_lo);
  xs.push_back(hull_hi);
  const std::vector<double> v = evaluate(approx, xs);
  WindowedError w;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = std::abs(exact(xs[i]) - v[i]);
    if (xs[i] >= hull_lo && xs[i] <= hull_hi) {
      w.inside = std::max(w.inside, e);
    } else {
      w.outside = std::max(w.outside, e);
    }
  }
  return w;
}

WindowedError windowed_error_report(const MergeResult& result, const Sampler& exact,
                                    double window, int points) {
  return windowed_error_report(result.phi, exact, result.hull_lo, result.hull_hi, window, points);
}

}  // namespace hermite
