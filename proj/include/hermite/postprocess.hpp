#pragma once

#include <iosfwd>
#include <vector>

#include "hermite/collocation.hpp"
#include "hermite/interpolation.hpp"

namespace hermite {

/// Target degree m of the merged approximation; requires m <= 2n+1 so the
/// stacked system has at least as many rows (2n+3) as unknowns (m+1).
struct MergeSpec {
  int n = 0;
  int m = 0;
};

void validate(const MergeSpec& spec);

struct MergeResult {
  HermiteExpansion phi;
  double residual_norm = 0.0;
  std::vector<double> residuals_x;  // phi(x_j) - u_n(x_j), zeros of psi_{n+1}
  std::vector<double> residuals_y;  // phi(y_j) - u_{n+1}(y_j), zeros of psi_{n+2}
  int rank = 0;
  double hull_lo = 0.0;  // y_0
  double hull_hi = 0.0;  // y_{n+1}
};

/// Least-squares fit in span{psi_0..psi_m} to the nodal values of u_n at its
/// collocation nodes and of u_{n+1} at its own, equally weighted. Throws
/// ConditioningError when the design matrix is rank deficient.
MergeResult merge(const CollocationSolution& u_n, const CollocationSolution& u_n1,
                  const MergeSpec& spec);

/// Same fit from raw nodal samples.
MergeResult merge_samples(const NodeSet& x_nodes, std::span<const double> x_values,
                          const NodeSet& y_nodes, std::span<const double> y_values,
                          const MergeSpec& spec);

struct WindowedError {
  double inside = 0.0;   // sup |u - approx| on [hull_lo, hull_hi]
  double outside = 0.0;  // sup over the rest of [-window, window]
};

/// Splits the sup error of `approx` on a `points`-point grid over
/// [-window, window] at the hull [hull_lo, hull_hi].
WindowedError windowed_error_report(const HermiteExpansion& approx, const Sampler& exact,
                                    double hull_lo, double hull_hi, double window,
                                    int points = 4000);

WindowedError windowed_error_report(const MergeResult& result, const Sampler& exact,
                                    double window, int points = 4000);

}  // namespace hermite
