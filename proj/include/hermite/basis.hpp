#pragma once

// Hermite polynomials H_n and normalized Hermite functions
//   psi_n(x) = exp(-x^2/2) H_n(x) / sqrt(2^n n! sqrt(pi)),
// evaluated through the normalized three-term recurrence with a running
// exponent so that neither H_n nor exp(-x^2/2) is ever formed on its own.

#include <cmath>
#include <numbers>
#include <span>
#include <vector>

namespace hermite {

inline constexpr int kMaxDegree = 2000;
inline constexpr int kMaxOrder = 4;
inline constexpr int kMaxRawDegree = 60;

/// pi^{-1/4} = psi_0(0) = sup |psi_n|.
inline const double kPsiPeak = 1.0 / std::sqrt(std::sqrt(std::numbers::pi));

/// Identifies psi_n^{(k)} sampled at `xs`.
struct EvalRequest {
  int n = 0;
  int k = 0;
  std::vector<double> xs;
};

/// Throws CapabilityError for n > kMaxDegree or k > kMaxOrder, InputError for
/// negative indices or non-finite abscissae.
void validate(const EvalRequest& req);

/// Smallest constants C_k with ||psi_n^{(k)}||_inf <= C_k n^{e(k)} for all n >= 1,
/// where e(0) = -1/12 and e(k) = k/2 - 1/4 otherwise.
struct NormConstantTable {
  static double constant(int k);
  static double exponent(int k);
};

struct TurningPointInfo {
  int n = 0;
  double xi = 0.0;  // sqrt(2n+1)
};

TurningPointInfo turning_point(int n);

// Single-point evaluators; no bounds checks beyond debug asserts.
double psi(int n, double x);
double psi_derivative(int n, int k, double x);

/// sum_j coeffs[j] psi_j(x) by Clenshaw's backward recurrence, rescaled like
/// psi_range so large |x| neither overflows nor loses the tail.
double psi_series(std::span<const double> coeffs, double x);

/// psi_lo(x), ..., psi_hi(x) written to out (size hi-lo+1).
void psi_range(int lo, int hi, double x, std::span<double> out);

/// psi_0(x), ..., psi_n(x).
std::vector<double> psi_all(int n, double x);

/// Coefficients of the ladder map d/dx on a psi-expansion: input
/// (a_0..a_N) returns (b_0..b_{N+1}).
std::vector<double> ladder_apply(std::span<const double> coeffs);

/// psi_n^{(k)} expanded as sum_j c_j psi_j, j = 0..n+k (entries below n-k are 0).
std::vector<double> ladder_coefficients(int n, int k);

std::vector<double> eval_psi(const EvalRequest& req);
std::vector<double> eval_psi_derivative(const EvalRequest& req);

/// Raw Hermite polynomial values; n <= kMaxRawDegree. Cross-checks only.
std::vector<double> eval_hermite_poly(int n, std::span<const double> xs);

/// Sup norm of psi_n^{(k)} over the real line: dense grid on
/// [-(sqrt(2n+3)+2), sqrt(2n+3)+2] with 20(n+1)+1 points, then golden-section
/// refinement around the leading grid maxima.
double sup_norm_estimate(int n, int k);

}  // namespace hermite
