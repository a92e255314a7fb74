#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "hermite/basis.hpp"
#include "hermite/errors.hpp"
#include "hermite/interpolation.hpp"
#include "hermite/io.hpp"

using namespace hermite;

namespace {

double uniform(std::mt19937_64& rng) {
  return 2.0 * static_cast<double>(rng() >> 11) * 0x1.0p-53 - 1.0;
}

}  // namespace

TEST_CASE("interpolation reproduces psi_3 and annihilates psi_{n+1}") {
  const HermiteExpansion e = interpolate(functions::hermite_function(3).value, 3);
  REQUIRE(e.degree() == 3);
  for (int k = 0; k < 3; ++k) CHECK(std::abs(e.coeffs[k]) < 1e-12);
  CHECK(std::abs(e.coeffs[3] - 1.0) < 1e-12);

  for (int n : {0, 4, 17, 60}) {
    const HermiteExpansion z = interpolate(functions::hermite_function(n + 1).value, n);
    for (double c : z.coeffs) CHECK(std::abs(c) < 1e-12);
  }
}

TEST_CASE("interpolation condition at the nodes, pole n=55") {
  const TestFunction f = functions::by_id("pole");
  const NodeSet ns = gauss_hermite_nodes(55);
  const HermiteExpansion e = interpolate(f.value, 55);
  const auto v = evaluate(e, ns.nodes);
  for (int j = 0; j <= 55; ++j) CHECK(std::abs(v[j] - f.value(ns.nodes[j])) <= 1e-12);
}

TEST_CASE("non-finite sample names the node") {
  const NodeSet ns = gauss_hermite_nodes(3);
  std::vector<double> s(4, 1.0);
  s[2] = NAN;
  try {
    interpolate(ns, s);
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(std::string(e.what()).find("#2") != std::string::npos);
  }
  CHECK_THROWS_AS(interpolate(ns, std::vector<double>(3, 1.0)), InputError);
}

TEST_CASE("reproduction of random members of H_n (property)") {
  std::mt19937_64 rng(8);
  for (int n : {5, 20, 60}) {
    const NodeSet ns = gauss_hermite_nodes(n);
    for (int t = 0; t < 10; ++t) {
      HermiteExpansion g{std::vector<double>(n + 1)};
      for (double& c : g.coeffs) c = uniform(rng);
      const HermiteExpansion h = interpolate(ns, evaluate(g, ns.nodes));
      for (int k = 0; k <= n; ++k) CHECK(std::abs(h.coeffs[k] - g.coeffs[k]) < 1e-12);
    }
  }
}

TEST_CASE("differentiate: ladder examples and degree growth") {
  const HermiteExpansion d0 = differentiate(HermiteExpansion{{1.0}});
  REQUIRE(d0.coeffs.size() == 2);
  CHECK(d0.coeffs[0] == 0.0);
  CHECK(d0.coeffs[1] == doctest::Approx(-std::sqrt(0.5)));

  const HermiteExpansion d1 = differentiate(HermiteExpansion{{0.0, 1.0}});
  REQUIRE(d1.coeffs.size() == 3);
  CHECK(d1.coeffs[0] == doctest::Approx(std::sqrt(0.5)));
  CHECK(d1.coeffs[1] == 0.0);
  CHECK(d1.coeffs[2] == doctest::Approx(-1.0));

  CHECK(differentiate(HermiteExpansion{{0.0, 0.0, 1.0}}, 3).degree() == 5);
}

TEST_CASE("differentiate twice on psi_2 plus x^2 psi_2 gives 5 psi_2") {
  const HermiteExpansion p2{{0.0, 0.0, 1.0}};
  const HermiteExpansion d2 = differentiate(p2, 2);
  for (double x = -5.0; x <= 5.0; x += 0.25) {
    const double lhs = -evaluate(d2, x) + x * x * evaluate(p2, x);
    CHECK(std::abs(lhs - 5.0 * psi(2, x)) < 1e-10);
  }
}

TEST_CASE("differentiate agrees with finite differences of evaluate (oracle)") {
  std::mt19937_64 rng(4);
  HermiteExpansion g{std::vector<double>(15)};
  for (double& c : g.coeffs) c = uniform(rng);
  const HermiteExpansion d = differentiate(g);
  for (double x = -4.0; x <= 4.0; x += 0.3) {
    const double h = 1e-5;
    const double fd = (evaluate(g, x + h) - evaluate(g, x - h)) / (2 * h);
    CHECK(std::abs(evaluate(d, x) - fd) < 1e-7);
  }
}

TEST_CASE("evaluate: unit vectors and naive summation") {
  CHECK(evaluate(HermiteExpansion{{1.0}}, 0.0) == doctest::Approx(kPsiPeak));
  const NodeSet ns4 = gauss_hermite_nodes(4);
  const HermiteExpansion e5{{0, 0, 0, 0, 0, 1}};
  for (double x : ns4.nodes) CHECK(std::abs(evaluate(e5, x)) < 1e-13);

  std::mt19937_64 rng(21);
  HermiteExpansion r{std::vector<double>(21)};
  for (double& c : r.coeffs) c = uniform(rng);
  double naive = 0.0;
  for (int j = 0; j <= 20; ++j) naive += r.coeffs[j] * psi(j, 0.3);
  CHECK(evaluate(r, 0.3) == doctest::Approx(naive).epsilon(1e-13));
}

TEST_CASE("linearity of interpolation (property)") {
  const TestFunction f = functions::by_id("pole");
  const TestFunction g = functions::by_id("twin-gauss");
  for (int n : {7, 30}) {
    const auto hf = interpolate(f.value, n);
    const auto hg = interpolate(g.value, n);
    const auto hc = interpolate([&](double x) { return 2.0 * f.value(x) - 0.5 * g.value(x); }, n);
    for (int k = 0; k <= n; ++k) {
      CHECK(std::abs(hc.coeffs[k] - (2.0 * hf.coeffs[k] - 0.5 * hg.coeffs[k])) < 1e-12);
    }
  }
}

TEST_CASE("grid") {
  const auto g = make_grid(10, {101, 1.0});
  REQUIRE(g.size() == 101);
  CHECK(g.front() == doctest::Approx(-(std::sqrt(23.0) + 1.0)));
  CHECK(g.back() == doctest::Approx(std::sqrt(23.0) + 1.0));
  CHECK_THROWS_AS(make_grid(3, {1, 1.0}), InputError);
  CHECK_THROWS_AS(make_grid(3, {10, -1.0}), InputError);
}

TEST_CASE("error curve of a member of H_n vanishes") {
  for (int m = 0; m <= 2; ++m) {
    const ErrorCurve c = error_curve(functions::hermite_function(2), m, 10);
    CHECK(c.sup_estimate <= 1e-10);
  }
}

TEST_CASE("error curves mark the right point sets") {
  const ErrorCurve c1 = error_curve(functions::by_id("pole"), 1, 55);
  CHECK(c1.marked.size() == 57);
  CHECK(c1.max_marked() < c1.sup_estimate);
  for (const auto& p : c1.marked) CHECK(p.kind == PointKind::Tau);

  const ErrorCurve c2 = error_curve(functions::by_id("wavepacket"), 2, 62);
  CHECK(c2.marked.size() == 65);
  CHECK(c2.max_marked() < c2.sup_estimate);
  for (const auto& p : c2.marked) CHECK(p.kind == PointKind::Eta);

  const ErrorCurve c0 = error_curve(functions::by_id("pole"), 0, 20);
  CHECK(c0.marked.size() == 21);
  for (const auto& p : c0.marked) CHECK(std::abs(p.error) < 1e-14);
  CHECK_THROWS_AS(error_curve(functions::by_id("pole"), 3, 20), InputError);
}

TEST_CASE("ratios: degenerate entries are flagged") {
  const RatioSeries rs = ratio_series(functions::hermite_function(3), 3, 5);
  REQUIRE(rs.entries.size() == 3);
  for (const auto& e : rs.entries) {
    CHECK(e.degenerate1);
    CHECK(e.degenerate2);
    CHECK(std::isnan(e.r1));
  }
}

TEST_CASE("ratios lie in [0,1] and match recomputation") {
  const TestFunction f = functions::by_id("pole");
  const RatioSeries rs = ratio_series(f, 20, 26);
  for (const auto& e : rs.entries) {
    CHECK(e.r1 >= 0.0);
    CHECK(e.r1 <= 1.0);
    CHECK(e.r2 <= 1.0);
    const RatioEntry again = ratio_entry(f, e.n);
    CHECK(again.r1 == e.r1);
    CHECK(again.r2 == e.r2);
  }
}

TEST_CASE("ratio regression baseline, pole n=100") {
  // Frozen from the first verified run on the default 4000-point grid.
  const RatioEntry e = ratio_entry(functions::by_id("pole"), 100);
  CHECK(e.r1 == doctest::Approx(0.13624662159940262).epsilon(1e-6));
  CHECK(e.r2 == doctest::Approx(0.2805310073783942).epsilon(1e-6));
}

TEST_CASE("CSV writers") {
  const ErrorCurve c = error_curve(functions::by_id("pole"), 1, 5, {11, 1.0});
  std::ostringstream a, b, r;
  write_curve_csv(a, c);
  write_marks_csv(b, c);
  write_ratio_csv(r, ratio_series(functions::by_id("pole"), 4, 5));
  const std::string curve = a.str();
  CHECK(curve.rfind("x,error\n", 0) == 0);
  CHECK(std::count(curve.begin(), curve.end(), '\n') == 12);
  CHECK(b.str().rfind("point,kind,error\n", 0) == 0);
  CHECK(b.str().find(",tau,") != std::string::npos);
  CHECK(r.str().rfind("n,R1,R2,sqrt_n_R1,sqrt_n_R2,degenerate\n", 0) == 0);
  CHECK(io::fmt17(0.1) == "0.10000000000000001");
}
