#pragma once

#include <iosfwd>
#include <span>
#include <vector>

#include "hermite/functions.hpp"
#include "hermite/nodes.hpp"

namespace hermite {

/// sum_k coeffs[k] psi_k; degree = coeffs.size() - 1.
struct HermiteExpansion {
  std::vector<double> coeffs;

  int degree() const noexcept { return static_cast<int>(coeffs.size()) - 1; }
};

/// h_n in span{psi_0..psi_n} with h_n(x_j) = f(x_j) at the zeros of psi_{n+1}:
/// a_k = sum_j w_j psi_k(x_j) f(x_j). Throws InputError naming the node if a
/// sample is not finite.
HermiteExpansion interpolate(const Sampler& f, int n);
HermiteExpansion interpolate(const NodeSet& nodes, std::span<const double> samples);

/// Exact derivative through the ladder relation; degree grows by one.
HermiteExpansion differentiate(const HermiteExpansion& e);
HermiteExpansion differentiate(const HermiteExpansion& e, int times);

std::vector<double> evaluate(const HermiteExpansion& e, std::span<const double> xs);
double evaluate(const HermiteExpansion& e, double x);

enum class PointKind { Node, Tau, Eta };
const char* to_string(PointKind kind);

/// Plotting/sup-norm grid: `points` equispaced samples on
/// [-(sqrt(2n+3)+pad), sqrt(2n+3)+pad].
struct GridSpec {
  int points = 4000;
  double pad = 2.0;
};

std::vector<double> make_grid(int n, const GridSpec& spec);

struct MarkedPoint {
  double x = 0.0;
  double error = 0.0;
  PointKind kind = PointKind::Node;
};

struct ErrorCurve {
  std::vector<double> abscissae;
  std::vector<double> values;
  std::vector<MarkedPoint> marked;
  double sup_estimate = 0.0;  // max |values|

  double max_marked() const;
};

/// exact_m - approx_m on `grid`, with errors at `marks` tagged `kind`.
ErrorCurve error_curve_of(const Sampler& exact_m, const HermiteExpansion& approx_m,
                          std::span<const double> grid, std::span<const double> marks,
                          PointKind kind);

/// (f - h_n)^{(m)} for m in {0,1,2}, marked at nodes (m=0), tau (m=1) or
/// eta (m=2).
ErrorCurve error_curve(const TestFunction& f, int m, int n, const GridSpec& grid = {});

struct RatioEntry {
  int n = 0;
  double r1 = 0.0;
  double r2 = 0.0;
  bool degenerate1 = false;  // sup |(f-h_n)'| is at roundoff level
  bool degenerate2 = false;
};

struct RatioSeries {
  std::vector<RatioEntry> entries;
};

/// R1(n) = max_j |(f-h_n)'(tau_j)| / sup |(f-h_n)'| and R2 likewise at eta.
/// The denominator includes the marked errors, so 0 <= R <= 1.
RatioEntry ratio_entry(const TestFunction& f, int n, const GridSpec& grid = {});
RatioSeries ratio_series(const TestFunction& f, int n_min, int n_max, const GridSpec& grid = {});

void write_curve_csv(std::ostream& os, const ErrorCurve& curve);
void write_marks_csv(std::ostream& os, const ErrorCurve& curve);
void write_ratio_csv(std::ostream& os, const RatioSeries& series);

}  // namespace hermite
