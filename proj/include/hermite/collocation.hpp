#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hermite/functions.hpp"
#include "hermite/interpolation.hpp"
#include "hermite/nodes.hpp"
#include "hermite/numkit.hpp"

namespace hermite {

/// Model1: u'' + (alpha - x^2) u = f.  Model2: -u'' + alpha u = f.
/// Both with u -> 0 at +-infinity.
enum class Model { Model1, Model2 };

const char* to_string(Model m);
Model parse_model(const std::string& s);

struct CollocationProblem {
  Model model = Model::Model1;
  double alpha = 0.0;
  Sampler rhs;
  int n = 0;
};

/// Throws InputError if alpha is 1, 3, 5, ... for Model1, or n is out of range.
/// The Model2 exclusion alpha = -mu_j^2 is detected by the condition threshold.
void validate(const CollocationProblem& p);

/// Systems whose one-norm condition estimate exceeds this are rejected.
inline constexpr double kConditionLimit = 1e12;

struct DiffMatrix {
  int n = 0;
  numkit::DenseMatrix entries;  // (i,j) = sigma_j''(x_i)
};

/// sigma_j''(x_i) for the cardinal functions on the zeros of psi_{n+1}:
/// -2 psi'(x_i) / (psi'(x_j) (x_i-x_j)^2) off the diagonal, (x_j^2-(2n+3))/3 on it.
double cardinal_second_derivative(const NodeSet& nodes, int i, int j);
double cardinal_second_derivative(int n, int i, int j);

DiffMatrix diff_matrix(const NodeSet& nodes);
DiffMatrix diff_matrix(int n);

struct CollocationSolution {
  Model model = Model::Model1;
  double alpha = 0.0;
  NodeSet nodes;
  std::vector<double> nodal_values;
  HermiteExpansion expansion;
  std::vector<double> residuals;  // A u - f at the nodes
  double residual_norm = 0.0;     // ||A u - f||_2 / ||f||_2 (0 when f = 0)
  double condition = 0.0;
};

/// Collocation at the zeros of psi_{n+1}: (D+S) u = f or (-D + alpha I) u = f by
/// LU with partial pivoting. Throws SolvabilityError when the condition
/// estimate exceeds kConditionLimit.
CollocationSolution solve(const CollocationProblem& p);

/// Right-hand side f = L u for a built-in exact solution u (needs u'').
Sampler manufactured_rhs(Model model, double alpha, const TestFunction& exact);

struct ExactnessReport {
  bool passed = false;
  Model model = Model::Model1;
  double alpha = 0.0;
  int n = 0;
  std::uint64_t seed = 0;
  double leading = 0.0;        // a_{n+1}
  double coeff_error = 0.0;    // max_k |(u-u_n)_k - a_{n+1} delta_{k,n+1}|
  double node_error = 0.0;     // max |u-u_n| at nodes / (|a_{n+1}| ||psi_{n+1}||)
  double tau_error = 0.0;      // max |(u-u_n)'| at tau / (|a_{n+1}| ||psi'_{n+1}||)
  double eta_error = 0.0;      // max |(u-u_n)''| at eta / (|a_{n+1}| ||psi''_{n+1}||)
  std::string worst;           // description of the worst offender on failure
};

/// Draws u in span{psi_0..psi_{n+1}}, manufactures f, solves, and checks
/// u - u_n = a_{n+1} psi_{n+1} coefficientwise (1e-9) and that the error and
/// its first two derivatives vanish at nodes, tau and eta (1e-9 scaled).
ExactnessReport verify_exactness(Model model, double alpha, int n, std::uint64_t seed);

struct SpectrumReport {
  bool passed = false;
  int n = 0;
  std::vector<double> eigenvalues;  // real parts, ascending
  std::vector<double> expected;     // -mu_j^2, ascending
  double max_relative_mismatch = 0.0;
  double max_imaginary = 0.0;
  double min_gap = 0.0;
  std::vector<std::string> unmatched;
};

/// Compares the spectrum of D with {-mu^2}, mu over the positive zeros of
/// psi_{n+1} and psi'_{n+1}. n <= 40.
SpectrumReport spectrum_check(int n);

}  // namespace hermite
