#include "hermite/basis.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numbers>
#include <string>

#include "hermite/errors.hpp"
#include "hermite/kernels.hpp"

namespace hermite {

namespace {

// Stored recurrence values are rescaled once they pass this magnitude; the
// true value is stored * exp(log_scale).
constexpr double kRescaleAt = 1e150;
constexpr double kRescaleBy = 1e-150;
const double kLogRescale = 150.0 * std::numbers::ln10;

}  // namespace

void validate(const EvalRequest& req) {
  if (req.n < 0 || req.k < 0) {
    throw InputError("EvalRequest: degree and derivative order must be nonnegative");
  }
  if (req.n > kMaxDegree) {
    throw CapabilityError("EvalRequest: degree " + std::to_string(req.n) +
                          " exceeds configured maximum " + std::to_string(kMaxDegree));
  }
  if (req.k > kMaxOrder) {
    throw CapabilityError("EvalRequest: derivative order " + std::to_string(req.k) +
                          " exceeds configured maximum " + std::to_string(kMaxOrder));
  }
  for (std::size_t i = 0; i < req.xs.size(); ++i) {
    if (!std::isfinite(req.xs[i])) {
      throw InputError("EvalRequest: abscissa #" + std::to_string(i) + " is not finite");
    }
  }
}

double NormConstantTable::constant(int k) {
  const double pi_q = std::pow(std::numbers::pi, -0.25);
  switch (k) {
    case 0:
      return std::pow(2.0, 19.0 / 12.0) * std::exp(-1.25) * pi_q;
    case 1:
      return std::numbers::sqrt2 * pi_q;
    case 2:
      return 5.0 * std::pow(2.0, -1.25) * pi_q;
    case 3:
      return 3.0 * std::numbers::sqrt2 * pi_q;
    default:
      throw CapabilityError("NormConstantTable: optimal constant known only for k <= 3");
  }
}

double NormConstantTable::exponent(int k) {
  if (k < 0) throw InputError("NormConstantTable: negative derivative order");
  return k == 0 ? -1.0 / 12.0 : 0.5 * k - 0.25;
}

TurningPointInfo turning_point(int n) {
  return {n, std::sqrt(2.0 * n + 1.0)};
}

void psi_range(int lo, int hi, double x, std::span<double> out) {
  assert(lo >= 0 && hi >= lo && out.size() == static_cast<std::size_t>(hi - lo + 1));
  double log_scale = -0.5 * x * x;
  double factor = std::exp(log_scale);
  double prev = 0.0;
  double cur = kPsiPeak;
  for (int m = 0; m <= hi; ++m) {
    if (m >= lo) out[m - lo] = cur * factor;
    if (m == hi) break;
    const double next = std::sqrt(2.0 / (m + 1)) * x * cur - std::sqrt(double(m) / (m + 1)) * prev;
    prev = cur;
    cur = next;
    if (std::abs(cur) > kRescaleAt) {
      cur *= kRescaleBy;
      prev *= kRescaleBy;
      log_scale += kLogRescale;
      factor = std::exp(log_scale);
    }
  }
}

double psi(int n, double x) {
  double v = 0.0;
  psi_range(n, n, x, {&v, 1});
  return v;
}

std::vector<double> psi_all(int n, double x) {
  std::vector<double> out(n + 1);
  psi_range(0, n, x, out);
  return out;
}

std::vector<double> ladder_apply(std::span<const double> coeffs) {
  std::vector<double> out(coeffs.size() + 1, 0.0);
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    const double a = coeffs[k];
    if (a == 0.0) continue;
    if (k > 0) out[k - 1] += a * std::sqrt(0.5 * k);
    out[k + 1] -= a * std::sqrt(0.5 * (k + 1));
  }
  return out;
}

std::vector<double> ladder_coefficients(int n, int k) {
  std::vector<double> c(n + 1, 0.0);
  c[n] = 1.0;
  for (int i = 0; i < k; ++i) c = ladder_apply(c);
  return c;
}

double psi_derivative(int n, int k, double x) {
  if (k == 0) return psi(n, x);
  const std::vector<double> c = ladder_coefficients(n, k);
  const int lo = std::max(0, n - k);
  const int hi = n + k;
  double buf[2 * kMaxOrder + 1];
  std::span<double> vals(buf, hi - lo + 1);
  psi_range(lo, hi, x, vals);
  double s = 0.0;
  for (int j = lo; j <= hi; ++j) s += c[j] * vals[j - lo];
  return s;
}

double psi_series(std::span<const double> coeffs, double x) {
  if (coeffs.empty()) return 0.0;
  double log_scale = 0.0;
  double inv_factor = 1.0;  // exp(-log_scale)
  double b1 = 0.0;          // b_{k+1}
  double b2 = 0.0;          // b_{k+2}
  for (std::size_t k = coeffs.size(); k-- > 0;) {
    const double a_k = std::sqrt(2.0 / (k + 1)) * x;
    const double b_k1 = -std::sqrt(double(k + 1) / (k + 2));
    const double bk = coeffs[k] * inv_factor + a_k * b1 + b_k1 * b2;
    b2 = b1;
    b1 = bk;
    if (std::abs(b1) > kRescaleAt) {
      b1 *= kRescaleBy;
      b2 *= kRescaleBy;
      log_scale += kLogRescale;
      inv_factor = std::exp(-log_scale);
    }
  }
  return kPsiPeak * b1 * std::exp(log_scale - 0.5 * x * x);
}

std::vector<double> eval_psi(const EvalRequest& req) {
  validate(req);
  if (req.k != 0) throw InputError("eval_psi: derivative order must be 0");
  std::vector<double> out(req.xs.size());
  kernels::omp::psi_derivative_values(req.n, 0, req.xs, out);
  return out;
}

std::vector<double> eval_psi_derivative(const EvalRequest& req) {
  validate(req);
  std::vector<double> out(req.xs.size());
  kernels::omp::psi_derivative_values(req.n, req.k, req.xs, out);
  return out;
}

std::vector<double> eval_hermite_poly(int n, std::span<const double> xs) {
  if (n < 0) throw InputError("eval_hermite_poly: negative degree");
  if (n > kMaxRawDegree) {
    throw CapabilityError("eval_hermite_poly: raw H_n limited to degree " +
                          std::to_string(kMaxRawDegree));
  }
  std::vector<double> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    double prev = 1.0;
    double cur = 2.0 * x;
    if (n == 0) cur = 1.0;
    for (int m = 1; m < n; ++m) {
      const double next = 2.0 * x * cur - 2.0 * m * prev;
      prev = cur;
      cur = next;
    }
    out[i] = cur;
  }
  return out;
}

namespace {

double golden_max_abs(int n, int k, double a, double b) {
  constexpr double inv_phi = 0.6180339887498949;
  auto g = [&](double x) { return std::abs(psi_derivative(n, k, x)); };
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double gc = g(c);
  double gd = g(d);
  for (int it = 0; it < 200 && (b - a) > 1e-14 * std::max(1.0, std::abs(a)); ++it) {
    if (gc > gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - inv_phi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + inv_phi * (b - a);
      gd = g(d);
    }
  }
  return std::max({gc, gd, g(0.5 * (a + b))});
}

}  // namespace

double sup_norm_estimate(int n, int k) {
  validate(EvalRequest{n, k, {}});
  const double half = std::sqrt(2.0 * n + 3.0) + 2.0;
  const int points = 20 * (n + 1) + 1;
  std::vector<double> xs(points);
  const double h = 2.0 * half / (points - 1);
  for (int i = 0; i < points; ++i) xs[i] = -half + h * i;
  std::vector<double> vals(points);
  kernels::omp::psi_derivative_values(n, k, xs, vals);

  std::vector<std::pair<double, int>> peaks;
  double best = 0.0;
  for (int i = 0; i < points; ++i) {
    const double v = std::abs(vals[i]);
    best = std::max(best, v);
    const double left = i > 0 ? std::abs(vals[i - 1]) : -1.0;
    const double right = i + 1 < points ? std::abs(vals[i + 1]) : -1.0;
    if (v >= left && v >= right) peaks.emplace_back(v, i);
  }
  std::sort(peaks.begin(), peaks.end(), [](auto& p, auto& q) { return p.first > q.first; });
  // Refine every grid peak within 5% of the top; adjacent lobes of psi_n^{(k)}
  // can differ by less than the grid resolution.
  const std::size_t max_refine = 16;
  for (std::size_t r = 0; r < std::min(peaks.size(), max_refine); ++r) {
    const auto [v, i] = peaks[r];
    if (v < 0.95 * peaks.front().first) break;
    const double a = xs[std::max(i - 1, 0)];
    const double b = xs[std::min(i + 1, points - 1)];
    best = std::max(best, golden_max_abs(n, k, a, b));
  }
  return best;
}

}  // namespace hermite
