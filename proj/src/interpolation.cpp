#include "hermite/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <ostream>
#include <string>

#include "hermite/basis.hpp"
#include "hermite/errors.hpp"
#include "hermite/io.hpp"
#include "hermite/kernels.hpp"

namespace hermite {

namespace {

// Below this fraction of max |f^{(m)}| an error curve is treated as roundoff.
constexpr double kDegenerateRelative = 1e-12;

}  // namespace

HermiteExpansion interpolate(const NodeSet& ns, std::span<const double> samples) {
  const std::size_t size = ns.nodes.size();
  if (samples.size() != size) {
    throw InputError("interpolate: expected " + std::to_string(size) + " samples, got " +
                     std::to_string(samples.size()));
  }
  for (std::size_t j = 0; j < size; ++j) {
    if (!std::isfinite(samples[j])) {
      throw InputError("interpolate: sample at node #" + std::to_string(j) + " (x = " +
                       io::fmt17(ns.nodes[j]) + ") is not finite");
    }
  }
  const numkit::DenseMatrix table = kernels::omp::psi_table(ns.n, ns.nodes);
  HermiteExpansion e{std::vector<double>(size, 0.0)};
  for (std::size_t j = 0; j < size; ++j) {
    const double wf = ns.weights[j] * samples[j];
    const auto row = table.row(j);
    for (std::size_t k = 0; k < size; ++k) e.coeffs[k] += wf * row[k];
  }
  return e;
}

HermiteExpansion interpolate(const Sampler& f, int n) {
  const NodeSet ns = gauss_hermite_nodes(n);
  std::vector<double> samples(ns.nodes.size());
  for (std::size_t j = 0; j < samples.size(); ++j) samples[j] = f(ns.nodes[j]);
  return interpolate(ns, samples);
}

HermiteExpansion differentiate(const HermiteExpansion& e) {
  return {ladder_apply(e.coeffs)};
}

HermiteExpansion differentiate(const HermiteExpansion& e, int times) {
  HermiteExpansion out = e;
  for (int i = 0; i < times; ++i) out = differentiate(out);
  return out;
}

std::vector<double> evaluate(const HermiteExpansion& e, std::span<const double> xs) {
  std::vector<double> out(xs.size());
  kernels::omp::expansion_values(e.coeffs, xs, out);
  return out;
}

double evaluate(const HermiteExpansion& e, double x) {
  return psi_series(e.coeffs, x);
}

const char* to_string(PointKind kind) {
  switch (kind) {
    case PointKind::Node: return "node";
    case PointKind::Tau: return "tau";
    case PointKind::Eta: return "eta";
  }
  return "?";
}

std::vector<double> make_grid(int n, const GridSpec& spec) {
  if (spec.points < 2) throw InputError("grid needs at least 2 points");
  if (!(spec.pad >= 0.0)) throw InputError("grid pad must be nonnegative");
  const double half = std::sqrt(2.0 * n + 3.0) + spec.pad;
  std::vector<double> xs(spec.points);
  const double h = 2.0 * half / (spec.points - 1);
  for (int i = 0; i < spec.points; ++i) xs[i] = -half + h * i;
  xs.back() = half;
  return xs;
}

double ErrorCurve::max_marked() const {
  double best = 0.0;
  for (const auto& m : marked) best = std::max(best, std::abs(m.error));
  return best;
}

ErrorCurve error_curve_of(const Sampler& exact_m, const HermiteExpansion& approx_m,
                          std::span<const double> grid, std::span<const double> marks,
                          PointKind kind) {
  ErrorCurve c;
  c.abscissae.assign(grid.begin(), grid.end());
  c.values = evaluate(approx_m, grid);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    c.values[i] = exact_m(grid[i]) - c.values[i];
    c.sup_estimate = std::max(c.sup_estimate, std::abs(c.values[i]));
  }
  const std::vector<double> at_marks = evaluate(approx_m, marks);
  c.marked.reserve(marks.size());
  for (std::size_t j = 0; j < marks.size(); ++j) {
    c.marked.push_back({marks[j], exact_m(marks[j]) - at_marks[j], kind});
  }
  return c;
}

ErrorCurve error_curve(const TestFunction& f, int m, int n, const GridSpec& grid) {
  if (m < 0 || m > 2) throw InputError("error_curve: derivative order must be 0, 1 or 2");
  const Sampler& exact = f.derivative(m);
  const NodeSet ns = gauss_hermite_nodes(n);
  std::vector<double> samples(ns.nodes.size());
  for (std::size_t j = 0; j < samples.size(); ++j) samples[j] = f.value(ns.nodes[j]);
  const HermiteExpansion dh = differentiate(interpolate(ns, samples), m);
  const std::vector<double> xs = make_grid(n, grid);
  switch (m) {
    case 0:
      return error_curve_of(exact, dh, xs, ns.nodes, PointKind::Node);
    case 1:
      return error_curve_of(exact, dh, xs, tau_points(ns), PointKind::Tau);
    default:
      return error_curve_of(exact, dh, xs, eta_points(ns), PointKind::Eta);
  }
}

RatioEntry ratio_entry(const TestFunction& f, int n, const GridSpec& grid) {
  const Sampler& d1 = f.derivative(1);
  const Sampler& d2 = f.derivative(2);
  const NodeSet ns = gauss_hermite_nodes(n);
  std::vector<double> samples(ns.nodes.size());
  for (std::size_t j = 0; j < samples.size(); ++j) samples[j] = f.value(ns.nodes[j]);
  const HermiteExpansion h = interpolate(ns, samples);
  const HermiteExpansion dh = differentiate(h);
  const HermiteExpansion ddh = differentiate(dh);
  const std::vector<double> xs = make_grid(n, grid);

  auto ratio = [&](const Sampler& exact, const HermiteExpansion& approx,
                   const std::vector<double>& marks, PointKind kind, bool& degenerate) {
    const ErrorCurve c = error_curve_of(exact, approx, xs, marks, kind);
    double scale = 0.0;
    for (double x : xs) scale = std::max(scale, std::abs(exact(x)));
    const double marked = c.max_marked();
    const double denom = std::max(c.sup_estimate, marked);
    degenerate = denom <= kDegenerateRelative * scale;
    if (degenerate) return std::numeric_limits<double>::quiet_NaN();
    return marked / denom;
  };

  RatioEntry e;
  e.n = n;
  e.r1 = ratio(d1, dh, tau_points(ns), PointKind::Tau, e.degenerate1);
  e.r2 = ratio(d2, ddh, eta_points(ns), PointKind::Eta, e.degenerate2);
  return e;
}

RatioSeries ratio_series(const TestFunction& f, int n_min, int n_max, const GridSpec& grid) {
  if (n_min < 0 || n_max < n_min) throw InputError("ratio_series: bad degree range");
  const int count = n_max - n_min + 1;
  RatioSeries s;
  s.entries.resize(count);
  std::vector<std::exception_ptr> failures(count);
#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < count; ++i) {
    try {
      s.entries[i] = ratio_entry(f, n_min + i, grid);
    } catch (...) {
      failures[i] = std::current_exception();
    }
  }
  for (const auto& ex : failures) {
    if (ex) std::rethrow_exception(ex);
  }
  return s;
}

void write_curve_csv(std::ostream& os, const ErrorCurve& curve) {
  os << "x,error\n";
  for (std::size_t i = 0; i < curve.abscissae.size(); ++i) {
    os << io::fmt17(curve.abscissae[i]) << ',' << io::fmt17(curve.values[i]) << '\n';
  }
}

void write_marks_csv(std::ostream& os, const ErrorCurve& curve) {
  os << "point,kind,error\n";
  for (const auto& m : curve.marked) {
    os << io::fmt17(m.x) << ',' << to_string(m.kind) << ',' << io::fmt17(m.error) << '\n';
  }
}

void write_ratio_csv(std::ostream& os, const RatioSeries& series) {
  os << "n,R1,R2,sqrt_n_R1,sqrt_n_R2,degenerate\n";
  for (const auto& e : series.entries) {
    const double rn = std::sqrt(static_cast<double>(e.n));
    os << e.n << ',' << io::fmt17(e.r1) << ',' << io::fmt17(e.r2) << ',' << io::fmt17(rn * e.r1)
       << ',' << io::fmt17(rn * e.r2) << ','
       << (e.degenerate1 || e.degenerate2 ? 1 : 0) << '\n';
  }
}

}  // namespace hermite
