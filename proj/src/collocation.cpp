#include "hermite/collocation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <random>
#include <sstream>

#include "hermite/basis.hpp"
#include "hermite/errors.hpp"
#include "hermite/io.hpp"
#include "hermite/kernels.hpp"

namespace hermite {

namespace {

// Uniform on [-1, 1) from the raw engine bits; independent of the standard
// library's distribution implementations so seeds reproduce everywhere.
double uniform_pm1(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

numkit::DenseMatrix system_matrix(Model model, double alpha, const NodeSet& ns,
                                  const numkit::DenseMatrix& d) {
  const std::size_t size = ns.nodes.size();
  numkit::DenseMatrix a(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    for (std::size_t j = 0; j < size; ++j) a(i, j) = model == Model::Model1 ? d(i, j) : -d(i, j);
    const double x = ns.nodes[i];
    a(i, i) += model == Model::Model1 ? alpha - x * x : alpha;
  }
  return a;
}

}  // namespace

const char* to_string(Model m) {
  return m == Model::Model1 ? "model1" : "model2";
}

Model parse_model(const std::string& s) {
  if (s == "model1" || s == "1" || s == "Model1") return Model::Model1;
  if (s == "model2" || s == "2" || s == "Model2") return Model::Model2;
  throw InputError("unknown model '" + s + "' (expected model1 or model2)");
}

void validate(const CollocationProblem& p) {
  if (p.n < 0 || p.n + 2 > kMaxDegree) throw InputError("collocation: degree out of range");
  if (!std::isfinite(p.alpha)) throw InputError("collocation: alpha must be finite");
  if (!p.rhs) throw InputError("collocation: missing right-hand side");
  if (p.model == Model::Model1 && p.alpha >= 1.0 && p.alpha == std::floor(p.alpha) &&
      std::fmod(p.alpha, 2.0) == 1.0) {
    throw InputError("collocation: Model1 requires alpha != 1, 3, 5, ... (got " +
                     io::fmt17(p.alpha) + ")");
  }
}

double cardinal_second_derivative(const NodeSet& ns, int i, int j) {
  const int deg = ns.n + 1;
  const double xi = ns.nodes.at(i);
  if (i == j) return (xi * xi - (2.0 * deg + 1.0)) / 3.0;
  const double xj = ns.nodes.at(j);
  const double d = xi - xj;
  return -2.0 * psi_derivative(deg, 1, xi) / (psi_derivative(deg, 1, xj) * d * d);
}

double cardinal_second_derivative(int n, int i, int j) {
  return cardinal_second_derivative(gauss_hermite_nodes(n), i, j);
}

DiffMatrix diff_matrix(const NodeSet& ns) {
  return {ns.n, kernels::omp::cardinal_second_derivatives(ns.nodes)};
}

DiffMatrix diff_matrix(int n) {
  return diff_matrix(gauss_hermite_nodes(n));
}

CollocationSolution solve(const CollocationProblem& p) {
  validate(p);
  CollocationSolution s;
  s.model = p.model;
  s.alpha = p.alpha;
  s.nodes = gauss_hermite_nodes(p.n);
  const DiffMatrix d = diff_matrix(s.nodes);
  const numkit::DenseMatrix a = system_matrix(p.model, p.alpha, s.nodes, d.entries);

  std::vector<double> f(s.nodes.nodes.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    f[j] = p.rhs(s.nodes.nodes[j]);
    if (!std::isfinite(f[j])) {
      throw InputError("collocation: right-hand side not finite at node #" + std::to_string(j));
    }
  }

  numkit::LuSolution lu;
  try {
    lu = numkit::lu_solve(a, f);
  } catch (const SolvabilityError& e) {
    throw SolvabilityError(std::string("collocation system is singular: ") + e.what(),
                           e.condition());
  }
  s.condition = lu.condition;
  if (!(lu.condition <= kConditionLimit)) {
    std::ostringstream msg;
    msg << "collocation system too ill-conditioned (condition estimate "
        << io::fmt17(lu.condition) << " > " << kConditionLimit << "); alpha = "
        << io::fmt17(p.alpha) << " is at or near a forbidden value for " << to_string(p.model);
    throw SolvabilityError(msg.str(), lu.condition);
  }
  s.nodal_values = std::move(lu.x);
  s.expansion = interpolate(s.nodes, s.nodal_values);
  s.residuals = a.multiply(s.nodal_values);
  for (std::size_t j = 0; j < f.size(); ++j) s.residuals[j] -= f[j];
  const double fn = numkit::norm2(f);
  s.residual_norm = fn > 0.0 ? numkit::norm2(s.residuals) / fn : numkit::norm2(s.residuals);
  return s;
}

Sampler manufactured_rhs(Model model, double alpha, const TestFunction& exact) {
  const Sampler u = exact.derivative(0);
  const Sampler u2 = exact.derivative(2);
  if (model == Model::Model1) {
    return [u, u2, alpha](double x) { return u2(x) + (alpha - x * x) * u(x); };
  }
  return [u, u2, alpha](double x) { return -u2(x) + alpha * u(x); };
}

ExactnessReport verify_exactness(Model model, double alpha, int n, std::uint64_t seed) {
  ExactnessReport r;
  r.model = model;
  r.alpha = alpha;
  r.n = n;
  r.seed = seed;

  std::mt19937_64 rng(seed);
  HermiteExpansion u{std::vector<double>(n + 2)};
  for (int k = 0; k <= n; ++k) u.coeffs[k] = uniform_pm1(rng);
  // Keep the leading coefficient away from zero so the scaled checks are meaningful.
  const double lead = uniform_pm1(rng);
  u.coeffs[n + 1] = std::copysign(0.5 + 0.5 * std::abs(lead), lead);
  r.leading = u.coeffs[n + 1];

  HermiteExpansion f;
  if (model == Model::Model1) {
    f.coeffs.resize(n + 2);
    for (int k = 0; k <= n + 1; ++k) f.coeffs[k] = u.coeffs[k] * (alpha - 2.0 * k - 1.0);
  } else {
    const HermiteExpansion u2 = differentiate(u, 2);
    f.coeffs.resize(u2.coeffs.size());
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) {
      f.coeffs[k] = -u2.coeffs[k] + (k < u.coeffs.size() ? alpha * u.coeffs[k] : 0.0);
    }
  }
  CollocationProblem p{model, alpha, [f](double x) { return evaluate(f, x); }, n};
  const CollocationSolution s = solve(p);

  HermiteExpansion diff = u;
  for (int k = 0; k <= n; ++k) diff.coeffs[k] -= s.expansion.coeffs[k];
  std::ostringstream worst;
  for (int k = 0; k <= n + 1; ++k) {
    const double target = k == n + 1 ? r.leading : 0.0;
    const double e = std::abs(diff.coeffs[k] - target);
    if (e > r.coeff_error) {
      r.coeff_error = e;
      worst.str("");
      worst << "coefficient " << k << " off by " << io::fmt17(e);
    }
  }

  const double lead_abs = std::abs(r.leading);
  auto scaled_max = [&](const HermiteExpansion& e, const std::vector<double>& pts, int order) {
    const std::vector<double> v = evaluate(e, pts);
    const double scale = lead_abs * sup_norm_estimate(n + 1, order);
    double best = 0.0;
    for (double x : v) best = std::max(best, std::abs(x) / scale);
    return best;
  };
  const HermiteExpansion d1 = differentiate(diff);
  const HermiteExpansion d2 = differentiate(d1);
  r.node_error = scaled_max(diff, s.nodes.nodes, 0);
  r.tau_error = scaled_max(d1, tau_points(s.nodes), 1);
  r.eta_error = scaled_max(d2, eta_points(s.nodes), 2);

  constexpr double tol = 1e-9;
  r.passed = r.coeff_error <= tol && r.node_error <= tol && r.tau_error <= tol &&
             r.eta_error <= tol;
  if (!r.passed) {
    if (r.coeff_error <= tol) {
      worst.str("");
      worst << "scaled errors node=" << io::fmt17(r.node_error)
            << " tau=" << io::fmt17(r.tau_error) << " eta=" << io::fmt17(r.eta_error);
    }
    r.worst = worst.str();
  }
  return r;
}

SpectrumReport spectrum_check(int n) {
  if (n < 0) throw InputError("spectrum_check: negative degree");
  if (n > 40) throw CapabilityError("spectrum_check: dense eigensolve limited to n <= 40");
  SpectrumReport r;
  r.n = n;
  const NodeSet ns = gauss_hermite_nodes(n);
  const DiffMatrix d = diff_matrix(ns);
  const auto eig = numkit::dense_eigenvalues(d.entries);
  for (const auto& z : eig) {
    r.eigenvalues.push_back(z.real());
    r.max_imaginary = std::max(r.max_imaginary, std::abs(z.imag()));
  }
  std::sort(r.eigenvalues.begin(), r.eigenvalues.end());

  for (double x : ns.nodes)
    if (x > 0.0) r.expected.push_back(-x * x);
  for (double t : tau_points(ns))
    if (t > 0.0) r.expected.push_back(-t * t);
  std::sort(r.expected.begin(), r.expected.end());

  if (r.expected.size() != r.eigenvalues.size()) {
    r.unmatched.push_back("count mismatch: " + std::to_string(r.eigenvalues.size()) +
                          " eigenvalues vs " + std::to_string(r.expected.size()) + " roots");
  } else {
    for (std::size_t i = 0; i < r.expected.size(); ++i) {
      const double rel = std::abs(r.eigenvalues[i] - r.expected[i]) / std::abs(r.expected[i]);
      r.max_relative_mismatch = std::max(r.max_relative_mismatch, rel);
      if (rel > 1e-7) {
        r.unmatched.push_back(io::fmt17(r.eigenvalues[i]) + " vs " + io::fmt17(r.expected[i]));
      }
    }
  }
  r.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < r.eigenvalues.size(); ++i) {
    r.min_gap = std::min(r.min_gap, r.eigenvalues[i] - r.eigenvalues[i - 1]);
  }
  r.passed = r.unmatched.empty() && r.max_imaginary <= 1e-8 && r.min_gap >= 1e-6;
  return r;
}

}  // namespace hermite
