#include "hermite/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <numeric>
#include <random>
#include <sstream>
#include <utility>

#include "hermite/basis.hpp"
#include "hermite/collocation.hpp"
#include "hermite/errors.hpp"
#include "hermite/interpolation.hpp"
#include "hermite/io.hpp"
#include "hermite/nodes.hpp"
#include "hermite/postprocess.hpp"

namespace hermite::verify {

namespace {

using Clock = std::chrono::steady_clock;

struct Measured {
  double value = 0.0;
  std::string detail;
};

class Suite {
 public:
  Suite(std::string name, Report& report) : name_(std::move(name)), report_(report) {}

  // Passes when value <= limit; NaN fails.
  void check(const std::string& name, double limit, const std::function<Measured()>& fn) {
    const auto t0 = Clock::now();
    CheckResult r;
    r.suite = name_;
    r.name = name;
    r.limit = limit;
    try {
      Measured m = fn();
      r.value = m.value;
      r.detail = std::move(m.detail);
      r.passed = m.value <= limit;
    } catch (const std::exception& e) {
      r.passed = false;
      r.value = std::numeric_limits<double>::quiet_NaN();
      r.detail = std::string("exception: ") + e.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    report_.checks.push_back(std::move(r));
  }

 private:
  std::string name_;
  Report& report_;
};

double uniform(std::mt19937_64& rng, double lo, double hi) {
  return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

HermiteExpansion random_expansion(std::mt19937_64& rng, int degree) {
  HermiteExpansion e{std::vector<double>(degree + 1)};
  for (double& c : e.coeffs) c = uniform(rng, -1.0, 1.0);
  return e;
}

void basis_suite(Report& report, std::uint64_t seed) {
  Suite s("basis", report);

  s.check("ladder consistency n<=40", 1e-12, [seed] {
    std::mt19937_64 rng(seed + 11);
    Measured m;
    for (int n = 0; n <= 40; ++n) {
      for (int t = 0; t < 100; ++t) {
        const double x = uniform(rng, -10.0, 10.0);
        const double lower = n > 0 ? std::sqrt(0.5 * n) * psi(n - 1, x) : 0.0;
        const double expected = lower - std::sqrt(0.5 * (n + 1)) * psi(n + 1, x);
        m.value = std::max(m.value, std::abs(psi_derivative(n, 1, x) - expected));
      }
    }
    return m;
  });

  s.check("harmonic oscillator identity n<=40 (scaled by 2n+1)", 1e-9, [] {
    Measured m;
    for (int n = 0; n <= 40; ++n) {
      for (int i = 0; i <= 400; ++i) {
        const double x = -12.0 + 0.06 * i;
        const double p = psi(n, x);
        const double r = -psi_derivative(n, 2, x) + x * x * p - (2.0 * n + 1.0) * p;
        m.value = std::max(m.value, std::abs(r) / (2.0 * n + 1.0));
      }
    }
    return m;
  });

  // Relative error divided by the evaluation condition number 1 + |x psi'/psi|,
  // which blows up near the zeros of psi_n.
  s.check("psi_n vs exp(-x^2/2) H_n / sqrt(gamma_n), n<=30 (condition-scaled relative)", 1e-12, [] {
    Measured m;
    std::vector<double> xs;
    for (int i = 0; i <= 200; ++i) xs.push_back(-9.0 + 0.09 * i);
    for (int n = 0; n <= 30; ++n) {
      const std::vector<double> h = eval_hermite_poly(n, xs);
      const double log_norm =
          0.5 * (n * std::numbers::ln2 + std::lgamma(n + 1.0) + 0.5 * std::log(std::numbers::pi));
      for (std::size_t i = 0; i < xs.size(); ++i) {
        const double p = psi(n, xs[i]);
        if (std::abs(p) <= 1e-8) continue;
        const double raw = std::exp(-0.5 * xs[i] * xs[i] - log_norm) * h[i];
        const double kappa = 1.0 + std::abs(xs[i] * psi_derivative(n, 1, xs[i]) / p);
        m.value = std::max(m.value, std::abs(p - raw) / std::abs(p) / kappa);
      }
    }
    return m;
  });

  s.check("psi_n parity is exact", 0.0, [] {
    Measured m;
    for (int n = 0; n <= 60; ++n) {
      for (int i = 0; i <= 100; ++i) {
        const double x = 0.137 * i;
        const double sign = n % 2 == 0 ? 1.0 : -1.0;
        m.value = std::max(m.value, std::abs(psi(n, -x) - sign * psi(n, x)));
      }
    }
    return m;
  });

  s.check("optimal constants C0..C3 at their witnesses", 1e-9, [] {
    Measured m;
    const int witness[4] = {2, 1, 2, 1};
    std::ostringstream d;
    for (int k = 0; k <= 3; ++k) {
      const int n = witness[k];
      const double scaled = sup_norm_estimate(n, k) * std::pow(n, -NormConstantTable::exponent(k));
      m.value = std::max(m.value, std::abs(scaled - NormConstantTable::constant(k)));
      d << "C" << k << "=" << io::fmt17(scaled) << ' ';
    }
    m.detail = d.str();
    return m;
  });

  s.check("scaled sup norms never exceed C_k, 1<=n<=200 (relative excess)", 1e-9, [] {
    Measured m;
    for (int k = 0; k <= 3; ++k) {
      for (int n = 1; n <= 200; ++n) {
        const double scaled = sup_norm_estimate(n, k) * std::pow(n, -NormConstantTable::exponent(k));
        const double excess = scaled / NormConstantTable::constant(k) - 1.0;
        if (excess > m.value) {
          m.value = excess;
          m.detail = "k=" + std::to_string(k) + " n=" + std::to_string(n);
        }
      }
    }
    return m;
  });
}

void nodes_suite(Report& report, std::uint64_t) {
  Suite s("nodes", report);

  s.check("discrete orthogonality n<=60", 1e-10, [] {
    Measured m;
    for (int n = 0; n <= 60; ++n) {
      const NodeSet ns = gauss_hermite_nodes(n);
      std::vector<std::vector<double>> table;
      for (double x : ns.nodes) table.push_back(psi_all(n, x));
      for (int k = 0; k <= n; ++k) {
        for (int l = 0; l <= k; ++l) {
          double sum = 0.0;
          for (int j = 0; j <= n; ++j) sum += ns.weights[j] * table[j][k] * table[j][l];
          m.value = std::max(m.value, std::abs(sum - (k == l ? 1.0 : 0.0)));
        }
      }
    }
    return m;
  });

  s.check("node residuals |psi_{n+1}(x_j)| n<=200", 1e-13, [] {
    Measured m;
    for (int n = 0; n <= 200; ++n) {
      for (double x : gauss_hermite_nodes(n).nodes) {
        m.value = std::max(m.value, std::abs(psi(n + 1, x)));
      }
    }
    return m;
  });

  s.check("node and weight symmetry n<=200", 1e-14, [] {
    Measured m;
    for (int n = 0; n <= 200; ++n) {
      const NodeSet ns = gauss_hermite_nodes(n);
      for (int j = 0; j <= n; ++j) {
        m.value = std::max(m.value, std::abs(ns.nodes[j] + ns.nodes[n - j]));
        m.value = std::max(m.value, std::abs(ns.weights[j] - ns.weights[n - j]) / ns.weights[j]);
      }
    }
    return m;
  });

  s.check("tau interlaces nodes n<=100 (violations)", 0.0, [] {
    Measured m;
    for (int n = 0; n <= 100; ++n) {
      const NodeSet ns = gauss_hermite_nodes(n);
      const std::vector<double> tau = tau_points(ns);
      if (tau.size() != static_cast<std::size_t>(n + 2)) m.value += 1.0;
      if (!(tau.front() < ns.nodes.front() && tau.back() > ns.nodes.back())) m.value += 1.0;
      for (int j = 0; j < n; ++j) {
        if (!(ns.nodes[j] < tau[j + 1] && tau[j + 1] < ns.nodes[j + 1])) m.value += 1.0;
      }
    }
    return m;
  });

  s.check("eta = nodes + {+-sqrt(2n+3)}, |psi''_{n+1}(eta)| n<=100", 1e-10, [] {
    Measured m;
    double deviation = 0.0;
    for (int n = 1; n <= 100; ++n) {
      const NodeSet ns = gauss_hermite_nodes(n);
      const std::vector<double> eta = eta_points(ns);
      std::vector<double> expected(ns.nodes);
      expected.push_back(std::sqrt(2.0 * n + 3.0));
      expected.push_back(-std::sqrt(2.0 * n + 3.0));
      std::sort(expected.begin(), expected.end());
      for (std::size_t j = 0; j < eta.size(); ++j) {
        deviation = std::max(deviation, std::abs(eta[j] - expected[j]));
        m.value = std::max(m.value, std::abs(psi_derivative(n + 1, 2, eta[j])));
      }
    }
    if (deviation > 1e-12) m.value = std::max(m.value, 1.0);
    m.detail = "max deviation " + io::fmt17(deviation);
    return m;
  });
}

void interp_suite(Report& report, std::uint64_t seed) {
  Suite s("interp", report);

  s.check("reproduction of random g in H_n, n in {5,20,60}", 1e-10, [seed] {
    std::mt19937_64 rng(seed + 5);
    Measured m;
    for (int n : {5, 20, 60}) {
      const NodeSet ns = gauss_hermite_nodes(n);
      const std::vector<double> grid = make_grid(n, {1000, 2.0});
      for (int t = 0; t < 50; ++t) {
        const HermiteExpansion g = random_expansion(rng, n);
        const HermiteExpansion h = interpolate(ns, evaluate(g, ns.nodes));
        const std::vector<double> vg = evaluate(g, grid);
        const std::vector<double> vh = evaluate(h, grid);
        double err = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i) err = std::max(err, std::abs(vg[i] - vh[i]));
        m.value = std::max(m.value, err / numkit::norm2(g.coeffs));
      }
    }
    return m;
  });

  s.check("interpolation condition at nodes n<=40", 1e-10, [] {
    Measured m;
    for (const auto& f : {functions::by_id("pole"), functions::by_id("wavepacket")}) {
      for (int n = 0; n <= 40; ++n) {
        const NodeSet ns = gauss_hermite_nodes(n);
        std::vector<double> fx(ns.nodes.size());
        for (std::size_t j = 0; j < fx.size(); ++j) fx[j] = f.value(ns.nodes[j]);
        const std::vector<double> hx = evaluate(interpolate(ns, fx), ns.nodes);
        double err = 0.0;
        for (std::size_t j = 0; j < fx.size(); ++j) err = std::max(err, std::abs(hx[j] - fx[j]));
        m.value = std::max(m.value, err / numkit::norm_inf(fx));
      }
    }
    return m;
  });

  s.check("linearity of interpolate", 1e-12, [] {
    const TestFunction f = functions::by_id("pole");
    const TestFunction g = functions::by_id("wavepacket");
    const double a = 0.7;
    const double b = -1.3;
    Measured m;
    for (int n : {10, 35, 80}) {
      const HermiteExpansion hf = interpolate(f.value, n);
      const HermiteExpansion hg = interpolate(g.value, n);
      const HermiteExpansion hc =
          interpolate([&](double x) { return a * f.value(x) + b * g.value(x); }, n);
      for (int k = 0; k <= n; ++k) {
        m.value = std::max(m.value, std::abs(hc.coeffs[k] - (a * hf.coeffs[k] + b * hg.coeffs[k])));
      }
    }
    return m;
  });

  s.check("decay slope of log||f-h_n|| vs sqrt(2n), pole, n=20..120 (distance to [-1.2,-0.8])",
          0.0, [] {
            const TestFunction f = functions::by_id("pole");
            std::vector<double> xs;
            std::vector<double> ys;
            for (int n = 20; n <= 120; n += 10) {
              xs.push_back(std::sqrt(2.0 * n));
              ys.push_back(std::log(error_curve(f, 0, n).sup_estimate));
            }
            const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
            const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
            double sxy = 0.0;
            double sxx = 0.0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
              sxy += (xs[i] - mx) * (ys[i] - my);
              sxx += (xs[i] - mx) * (xs[i] - mx);
            }
            const double slope = sxy / sxx;
            Measured m;
            m.value = slope < -1.2 ? -1.2 - slope : slope > -0.8 ? slope + 0.8 : 0.0;
            m.detail = "slope " + io::fmt17(slope);
            return m;
          });

  s.check("marked errors below sup: pole n=55 (tau), wavepacket n=62 (eta) (max ratio)", 1.0,
          [] {
            const ErrorCurve c1 = error_curve(functions::by_id("pole"), 1, 55);
            const ErrorCurve c2 = error_curve(functions::by_id("wavepacket"), 2, 62);
            Measured m;
            m.value = std::max(c1.max_marked() / c1.sup_estimate, c2.max_marked() / c2.sup_estimate);
            // strict inequality: equality counts as failure
            if (m.value >= 1.0) m.value = 2.0;
            m.detail = "pole tau ratio " + io::fmt17(c1.max_marked() / c1.sup_estimate) +
                       ", wavepacket eta ratio " + io::fmt17(c2.max_marked() / c2.sup_estimate);
            return m;
          });

  // For an even f the odd-n and even-n subsequences settle to different
  // constants (about a factor 3 apart), so the band is checked per parity.
  s.check("sqrt(n) R1, sqrt(n) R2 bounded per parity, pole, n=20..200 (max/min)", 3.0, [] {
    const RatioSeries rs = ratio_series(functions::by_id("pole"), 20, 200);
    struct Band {
      double lo = INFINITY, hi = 0.0;
      void add(double v) { lo = std::min(lo, v), hi = std::max(hi, v); }
      double spread() const { return hi / lo; }
    };
    Band all[2], whole[2][2], upper[2][2];  // [series][parity]
    for (const auto& e : rs.entries) {
      const double r[2] = {std::sqrt(double(e.n)) * e.r1, std::sqrt(double(e.n)) * e.r2};
      for (int k = 0; k < 2; ++k) {
        if (!std::isfinite(r[k]) || r[k] <= 0.0) return Measured{INFINITY, "degenerate entry"};
        all[k].add(r[k]);
        whole[k][e.n % 2].add(r[k]);
        if (e.n >= 110) upper[k][e.n % 2].add(r[k]);
      }
    }
    Measured m;
    bool upper_ok = true;
    for (int k = 0; k < 2; ++k) {
      for (int p = 0; p < 2; ++p) {
        m.value = std::max(m.value, whole[k][p].spread());
        upper_ok = upper_ok && upper[k][p].spread() <= 2.0;
      }
    }
    if (!upper_ok) m.value = INFINITY;
    m.detail = "even n: sqrt(n)R1 in [" + io::fmt17(whole[0][0].lo) + ", " + io::fmt17(whole[0][0].hi) +
               "], sqrt(n)R2 in [" + io::fmt17(whole[1][0].lo) + ", " + io::fmt17(whole[1][0].hi) +
               "]; odd n: sqrt(n)R1 in [" + io::fmt17(whole[0][1].lo) + ", " +
               io::fmt17(whole[0][1].hi) + "], sqrt(n)R2 in [" + io::fmt17(whole[1][1].lo) + ", " +
               io::fmt17(whole[1][1].hi) + "]; all n spread " + io::fmt17(all[0].spread()) + ", " +
               io::fmt17(all[1].spread());
    return m;
  });
}

void colloc_suite(Report& report, std::uint64_t seed) {
  Suite s("colloc", report);

  s.check("exactness for u in H_{n+1}: 20 seeds x n in {4,8,16,32} x both models", 1e-9, [seed] {
    Measured m;
    for (Model model : {Model::Model1, Model::Model2}) {
      const double alpha = model == Model::Model1 ? 0.5 : 2.0;
      for (int n : {4, 8, 16, 32}) {
        for (std::uint64_t s = seed; s < seed + 20; ++s) {
          const ExactnessReport r = verify_exactness(model, alpha, n, s);
          const double worst = std::max({r.coeff_error, r.node_error, r.tau_error, r.eta_error});
          if (worst > m.value || !r.passed) {
            m.value = std::max(m.value, worst);
            m.detail = std::string(to_string(model)) + " n=" + std::to_string(n) +
                       " seed=" + std::to_string(s) + (r.passed ? "" : " " + r.worst);
          }
        }
      }
    }
    return m;
  });

  s.check("spectrum of D = {-mu^2}, n=1..25 (failures)", 0.0, [] {
    Measured m;
    double worst = 0.0;
    for (int n = 1; n <= 25; ++n) {
      const SpectrumReport r = spectrum_check(n);
      worst = std::max(worst, r.max_relative_mismatch);
      if (!r.passed) {
        m.value += 1.0;
        m.detail += "n=" + std::to_string(n) + " ";
      }
    }
    m.detail += "max relative mismatch " + io::fmt17(worst);
    return m;
  });

  s.check("D reproduces g'' at nodes for g in H_n, n<=40 (relative)", 1e-8, [seed] {
    std::mt19937_64 rng(seed + 3);
    Measured m;
    for (int n = 0; n <= 40; ++n) {
      const NodeSet ns = gauss_hermite_nodes(n);
      const DiffMatrix d = diff_matrix(ns);
      const HermiteExpansion g = random_expansion(rng, n);
      const std::vector<double> dg = d.entries.multiply(evaluate(g, ns.nodes));
      const std::vector<double> exact = evaluate(differentiate(g, 2), ns.nodes);
      const double scale = std::max(1.0, numkit::norm_inf(exact));
      for (std::size_t j = 0; j < dg.size(); ++j) {
        m.value = std::max(m.value, std::abs(dg[j] - exact[j]) / scale);
      }
    }
    return m;
  });

  s.check("non-H_{n+1} examples: node error / sup error (Model1 a=1/2, Model2 a=2, n=45)", 1.0,
          [] {
            Measured m;
            const std::pair<Model, double> cases[] = {{Model::Model1, 0.5}, {Model::Model2, 2.0}};
            const TestFunction exact[] = {functions::by_id("gauss-rational2"),
                                          functions::by_id("gauss-log")};
            for (int c = 0; c < 2; ++c) {
              const auto [model, alpha] = cases[c];
              const CollocationSolution sol =
                  solve({model, alpha, manufactured_rhs(model, alpha, exact[c]), 45});
              const ErrorCurve curve = error_curve_of(exact[c].value, sol.expansion,
                                                      make_grid(45, {}), sol.nodes.nodes,
                                                      PointKind::Node);
              double ratio = curve.max_marked() / curve.sup_estimate;
              if (ratio >= 1.0 || sol.residual_norm > 1e-9) ratio = 2.0;
              m.value = std::max(m.value, ratio);
              m.detail += std::string(to_string(model)) + " ratio " + io::fmt17(ratio) +
                          " residual " + io::fmt17(sol.residual_norm) + "; ";
            }
            return m;
          });

  s.check("forbidden alpha rejected (Model1 a=3, Model2 a=-mu_0^2+1e-12) (misses)", 0.0, [] {
    Measured m;
    try {
      solve({Model::Model1, 3.0, [](double) { return 1.0; }, 8});
      m.value += 1.0;
    } catch (const InputError&) {
    }
    // eigenvalue of D closest to zero: -mu_0^2
    const double lambda0 = spectrum_check(8).expected.back();
    try {
      solve({Model::Model2, lambda0 + 1e-12, [](double x) { return std::exp(-x * x); }, 8});
      m.value += 1.0;
    } catch (const SolvabilityError& e) {
      m.detail = "condition " + io::fmt17(e.condition());
    }
    return m;
  });
}

void post_suite(Report& report, std::uint64_t seed) {
  Suite s("post", report);

  s.check("consistent data in H_m recovered (coefficient error)", 1e-10, [seed] {
    std::mt19937_64 rng(seed + 17);
    Measured m;
    for (int n : {5, 12, 30}) {
      for (int deg : {n, n + 1, std::min(n + 11, 2 * n + 1)}) {
        const HermiteExpansion g = random_expansion(rng, deg);
        const NodeSet xs = gauss_hermite_nodes(n);
        const NodeSet ys = gauss_hermite_nodes(n + 1);
        const MergeResult r =
            merge_samples(xs, evaluate(g, xs.nodes), ys, evaluate(g, ys.nodes), {n, deg});
        for (int k = 0; k <= deg; ++k) {
          m.value = std::max(m.value, std::abs(r.phi.coeffs[k] - g.coeffs[k]));
        }
        if (r.residual_norm > 1e-12) m.value = std::max(m.value, 1.0);
      }
    }
    return m;
  });

  const TestFunction u = functions::by_id("twin-gauss");
  auto run = [u](int n, int m_deg, WindowedError& phi, WindowedError& un, WindowedError& un1) {
    const Sampler f = manufactured_rhs(Model::Model2, 1.0, u);
    const CollocationSolution s0 = solve({Model::Model2, 1.0, f, n});
    const CollocationSolution s1 = solve({Model::Model2, 1.0, f, n + 1});
    const MergeResult r = merge(s0, s1, {n, m_deg});
    const double window = std::sqrt(2.0 * (n + 1) + 3.0) + 2.0;
    phi = windowed_error_report(r, u.value, window);
    un = windowed_error_report(s0.expansion, u.value, r.hull_lo, r.hull_hi, window);
    un1 = windowed_error_report(s1.expansion, u.value, r.hull_lo, r.hull_hi, window);
  };

  s.check("merge improves inside hull, Model2 a=1, n=40, m=41 (phi / min input)", 1.0, [run] {
    WindowedError phi, un, un1;
    run(40, 41, phi, un, un1);
    Measured m;
    m.value = phi.inside / std::min(un.inside, un1.inside);
    m.detail = "phi " + io::fmt17(phi.inside) + ", u_n " + io::fmt17(un.inside) + ", u_n+1 " +
               io::fmt17(un1.inside);
    return m;
  });

  s.check("merge with m=51 deteriorates outside hull (inside / outside)", 1.0, [run] {
    WindowedError phi, un, un1;
    run(40, 51, phi, un, un1);
    Measured m;
    m.value = phi.inside / phi.outside;
    if (m.value >= 1.0) m.value = 2.0;
    m.detail = "inside " + io::fmt17(phi.inside) + ", outside " + io::fmt17(phi.outside);
    return m;
  });
}

}  // namespace

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

std::vector<std::string> suite_ids() {
  return {"basis", "nodes", "interp", "colloc", "post", "all"};
}

Report run(const std::string& suite, std::uint64_t seed) {
  const auto t0 = Clock::now();
  Report report;
  const bool all = suite == "all";
  bool known = all;
  if (all || suite == "basis") known = true, basis_suite(report, seed);
  if (all || suite == "nodes") known = true, nodes_suite(report, seed);
  if (all || suite == "interp") known = true, interp_suite(report, seed);
  if (all || suite == "colloc") known = true, colloc_suite(report, seed);
  if (all || suite == "post") known = true, post_suite(report, seed);
  if (!known) throw InputError("unknown verify suite '" + suite + "'");
  report.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return report;
}

}  // namespace hermite::verify
