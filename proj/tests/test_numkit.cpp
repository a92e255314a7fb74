#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "hermite/errors.hpp"
#include "hermite/numkit.hpp"

using namespace hermite;
using namespace hermite::numkit;

namespace {

double uniform(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

DenseMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c) {
  DenseMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = uniform(rng);
  return a;
}

// Solves the square system by Gaussian elimination without pivoting on a
// diagonally dominant matrix; used as an independent oracle.
std::vector<double> naive_solve(DenseMatrix a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  std::vector<double> x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

}  // namespace

TEST_CASE("tridiagonal eigenvalues: small closed forms") {
  CHECK(tridiag_eigenvalues({{0.0}, {}}) == std::vector<double>{0.0});

  const auto e2 = tridiag_eigenvalues({{0.0, 0.0}, {std::sqrt(0.5)}});
  REQUIRE(e2.size() == 2);
  CHECK(e2[0] == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-15));
  CHECK(e2[1] == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));

  const auto e3 = tridiag_eigenvalues({{0.0, 0.0, 0.0}, {std::sqrt(0.5), 1.0}});
  REQUIRE(e3.size() == 3);
  CHECK(e3[0] == doctest::Approx(-std::sqrt(1.5)).epsilon(1e-14));
  CHECK(std::abs(e3[1]) < 1e-15);
  CHECK(e3[2] == doctest::Approx(std::sqrt(1.5)).epsilon(1e-14));
}

TEST_CASE("tridiagonal eigenvalues agree with the dense solver") {
  std::mt19937_64 rng(7);
  SymTridiag t;
  DenseMatrix a(30, 30);
  for (int i = 0; i < 30; ++i) {
    t.diagonal.push_back(uniform(rng));
    a(i, i) = t.diagonal.back();
    if (i > 0) {
      t.off_diagonal.push_back(uniform(rng));
      a(i, i - 1) = a(i - 1, i) = t.off_diagonal.back();
    }
  }
  const auto tri = tridiag_eigenvalues(t);
  CHECK(std::is_sorted(tri.begin(), tri.end()));
  std::vector<double> dense;
  for (auto z : dense_eigenvalues(a)) dense.push_back(z.real());
  std::sort(dense.begin(), dense.end());
  for (int i = 0; i < 30; ++i) CHECK(std::abs(tri[i] - dense[i]) < 1e-12);
}

TEST_CASE("lu_solve: identity, diagonal, manufactured 50x50") {
  const std::vector<double> b{1.0, -2.0, 3.5};
  const LuSolution id = lu_solve(DenseMatrix::identity(3), b);
  CHECK(id.x == b);
  CHECK(id.condition == doctest::Approx(1.0));

  DenseMatrix d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  const LuSolution s = lu_solve(d, std::vector<double>{2.0, 8.0});
  CHECK(s.x[0] == doctest::Approx(1.0));
  CHECK(s.x[1] == doctest::Approx(2.0));

  std::mt19937_64 rng(42);
  const DenseMatrix a = random_matrix(rng, 50, 50);
  std::vector<double> x(50);
  for (double& v : x) v = uniform(rng);
  const LuSolution r = lu_solve(a, a.multiply(x));
  for (int i = 0; i < 50; ++i) CHECK(std::abs(r.x[i] - x[i]) < 1e-10);
  CHECK(r.condition > 1.0);
  CHECK(std::isfinite(r.condition));
}

TEST_CASE("lu_solve matches unpivoted elimination on a dominant matrix") {
  std::mt19937_64 rng(3);
  DenseMatrix a = random_matrix(rng, 20, 20);
  for (int i = 0; i < 20; ++i) a(i, i) += 25.0;
  std::vector<double> b(20);
  for (double& v : b) v = uniform(rng);
  const auto want = naive_solve(a, b);
  const auto got = lu_solve(a, b).x;
  for (int i = 0; i < 20; ++i) CHECK(std::abs(got[i] - want[i]) < 1e-13);
}

TEST_CASE("lu_solve: condition estimate is close to the true one-norm condition") {
  // diag(1, 1e-6): kappa_1 = 1e6 exactly.
  DenseMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(1, 1) = 1e-6;
  CHECK(lu_solve(a, std::vector<double>{1.0, 1.0}).condition == doctest::Approx(1e6));
}

TEST_CASE("lu_solve: exact singularity raises") {
  DenseMatrix a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 2.0;
  a(1, 0) = 2.0;
  a(1, 1) = 4.0;
  CHECK_THROWS_AS(lu_solve(a, std::vector<double>{1.0, 1.0}), SolvabilityError);
  CHECK_THROWS_AS(lu_solve(a, std::vector<double>{1.0}), InputError);
}

TEST_CASE("dense eigenvalues: diagonal, rotation, symmetric 2x2") {
  DenseMatrix d(3, 3);
  d(0, 0) = 3.0;
  d(1, 1) = -1.0;
  d(2, 2) = 0.5;
  std::vector<double> re;
  for (auto z : dense_eigenvalues(d)) {
    CHECK(z.imag() == 0.0);
    re.push_back(z.real());
  }
  std::sort(re.begin(), re.end());
  CHECK(re == std::vector<double>{-1.0, 0.5, 3.0});

  DenseMatrix rot(2, 2);
  rot(0, 1) = -1.0;
  rot(1, 0) = 1.0;
  auto ev = dense_eigenvalues(rot);
  REQUIRE(ev.size() == 2);
  std::sort(ev.begin(), ev.end(), [](auto a, auto b) { return a.imag() < b.imag(); });
  CHECK(std::abs(ev[0] - std::complex<double>(0, -1)) < 1e-14);
  CHECK(std::abs(ev[1] - std::complex<double>(0, 1)) < 1e-14);

  DenseMatrix s(2, 2);
  s(0, 0) = s(1, 1) = -1.5;
  s(0, 1) = s(1, 0) = 1.0;
  re.clear();
  for (auto z : dense_eigenvalues(s)) re.push_back(z.real());
  std::sort(re.begin(), re.end());
  CHECK(re[0] == doctest::Approx(-2.5).epsilon(1e-14));
  CHECK(re[1] == doctest::Approx(-0.5).epsilon(1e-14));
}

TEST_CASE("dense eigenvalues: trace and determinant of a random nonsymmetric matrix") {
  std::mt19937_64 rng(99);
  const DenseMatrix a = random_matrix(rng, 12, 12);
  const auto ev = dense_eigenvalues(a);
  std::complex<double> sum = 0.0;
  for (auto z : ev) sum += z;
  double trace = 0.0;
  for (int i = 0; i < 12; ++i) trace += a(i, i);
  CHECK(std::abs(sum.real() - trace) < 1e-12);
  CHECK(std::abs(sum.imag()) < 1e-12);
  // Every eigenvalue makes A - lambda I singular: check via smallest pivot growth.
  for (auto z : ev) {
    if (z.imag() != 0.0) continue;
    DenseMatrix b = a;
    for (int i = 0; i < 12; ++i) b(i, i) -= z.real();
    bool singularish = false;
    try {
      singularish = lu_solve(b, std::vector<double>(12, 1.0)).condition > 1e10;
    } catch (const SolvabilityError&) {
      singularish = true;
    }
    CHECK(singularish);
  }
}

TEST_CASE("lstsq: stacked identity, mean, normal-equations oracle") {
  DenseMatrix a(6, 3);
  for (int i = 0; i < 3; ++i) a(i, i) = 1.0;
  const std::vector<double> b{1.0, -2.0, 3.0, 0.0, 0.0, 0.0};
  const LstsqSolution s = lstsq(a, b);
  CHECK(s.rank == 3);
  for (int i = 0; i < 3; ++i) CHECK(s.x[i] == doctest::Approx(b[i]).epsilon(1e-15));
  CHECK(s.residual_norm < 1e-15);

  DenseMatrix ones(3, 1, 1.0);
  const LstsqSolution m = lstsq(ones, std::vector<double>{0.0, 1.0, 2.0});
  CHECK(m.x[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.residual_norm == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  std::mt19937_64 rng(5);
  const DenseMatrix r = random_matrix(rng, 40, 10);
  std::vector<double> rb(40);
  for (double& v : rb) v = uniform(rng);
  const DenseMatrix rt = r.transpose();
  DenseMatrix normal(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      for (int k = 0; k < 40; ++k) normal(i, j) += rt(i, k) * r(k, j);
  const auto want = lu_solve(normal, rt.multiply(rb)).x;
  const auto got = lstsq(r, rb);
  CHECK(got.rank == 10);
  for (int i = 0; i < 10; ++i) CHECK(std::abs(got.x[i] - want[i]) < 1e-8);
}

TEST_CASE("lstsq: rank deficiency is reported") {
  DenseMatrix a(4, 2);
  for (int i = 0; i < 4; ++i) {
    a(i, 0) = i + 1.0;
    a(i, 1) = 2.0 * (i + 1.0);
  }
  CHECK(lstsq(a, std::vector<double>{1, 2, 3, 4}).rank == 1);
}

TEST_CASE("norms") {
  const std::vector<double> v{3.0, -4.0};
  CHECK(norm2(v) == doctest::Approx(5.0));
  CHECK(norm_inf(v) == 4.0);
  const std::vector<double> big{1e300, 1e300};
  CHECK(norm2(big) == doctest::Approx(std::sqrt(2.0) * 1e300));
  const std::vector<double> tiny{1e-300, 1e-300};
  CHECK(norm2(tiny) == doctest::Approx(std::sqrt(2.0) * 1e-300));
}

TEST_CASE("matrix helpers") {
  DenseMatrix a(2, 3);
  a(0, 0) = 1;
  a(0, 2) = -2;
  a(1, 1) = 3;
  const DenseMatrix t = a.transpose();
  CHECK(t.rows() == 3);
  CHECK(t(2, 0) == -2);
  CHECK(a.norm_one() == 3.0);
  CHECK(a.all_finite());
  a(1, 2) = NAN;
  CHECK_FALSE(a.all_finite());
}
