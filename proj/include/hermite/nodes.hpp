#pragma once

#include <iosfwd>
#include <vector>

namespace hermite {

/// Zeros x_0 < ... < x_n of psi_{n+1} with the discrete orthogonality weights
/// w_j = 1 / ((n+1) psi_n(x_j)^2).
struct NodeSet {
  int n = 0;
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// tau: zeros of psi'_{n+1} (n+2 points); eta: zeros of psi''_{n+1} (n+3 points).
/// Both ascending.
struct SuperconPoints {
  int n = 0;
  std::vector<double> tau;
  std::vector<double> eta;
};

/// Golub-Welsch eigenvalues of the zero-diagonal Jacobi matrix with
/// off-diagonal sqrt(m/2), each polished by Newton on psi_{n+1}. Nodes are
/// computed for x >= 0 and mirrored, so symmetry is exact.
NodeSet gauss_hermite_nodes(int n);

/// One zero of psi'_{n+1} between each pair of adjacent nodes plus one in
/// (x_n, sqrt(2n+5)) and its mirror. Bisection then Newton.
std::vector<double> tau_points(int n);
std::vector<double> tau_points(const NodeSet& nodes);

/// nodes(n) together with +-sqrt(2n+3), since psi''_{n+1} = (x^2-(2n+3)) psi_{n+1}.
/// Verifies |psi''_{n+1}(eta_j)| <= 1e-10 through the ladder evaluation.
std::vector<double> eta_points(int n);
std::vector<double> eta_points(const NodeSet& nodes);

SuperconPoints supercon_points(int n);

/// CSV rows (index, kind, value, weight) at 17 significant digits; weight is
/// left empty for tau and eta.
void write_points_csv(std::ostream& os, const NodeSet& nodes, const SuperconPoints& points);

}  // namespace hermite
