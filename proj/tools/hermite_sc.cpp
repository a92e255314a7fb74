// hermite-sc: CSV experiments and invariant checks for Hermite interpolation,
// collocation and post-processing.
//
// Exit codes: 0 ok, 1 verification failure, 2 bad arguments, 3 numerical failure.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hermite/basis.hpp"
#include "hermite/collocation.hpp"
#include "hermite/errors.hpp"
#include "hermite/interpolation.hpp"
#include "hermite/io.hpp"
#include "hermite/nodes.hpp"
#include "hermite/postprocess.hpp"
#include "hermite/verify.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace hermite;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kBadArgs = 2, kNumerical = 3 };

struct Common {
  std::string out_dir = "out";
  int grid_points = 4000;
  double window_pad = 2.0;
  std::uint64_t seed = 1;
};

// Collects outputs of one command and writes the sibling manifest.
class Run {
 public:
  Run(std::string command, const Common& common)
      : command_(std::move(command)), dir_(common.out_dir), t0_(std::chrono::steady_clock::now()) {
    params_["grid_points"] = common.grid_points;
    params_["window_pad"] = common.window_pad;
    params_["seed"] = common.seed;
  }

  json& params() { return params_; }
  json& results() { return results_; }

  fs::path emit(const std::string& name, const std::string& body) {
    const fs::path path = dir_ / name;
    io::write_atomic(path, body);
    outputs_.push_back(path.string());
    return path;
  }

  fs::path finish(const std::string& stem) {
    json m;
    m["command"] = command_;
    m["parameters"] = params_;
    m["outputs"] = outputs_;
    if (!results_.is_null()) m["results"] = results_;
    m["wall_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
    m["version"] = HERMITE_VERSION;
    const fs::path path = dir_ / (stem + ".manifest.json");
    io::write_atomic(path, m.dump(2) + "\n");
    std::cout << "wrote";
    for (const auto& o : outputs_) std::cout << ' ' << o;
    std::cout << ' ' << path.string() << '\n';
    return path;
  }

 private:
  std::string command_;
  fs::path dir_;
  std::chrono::steady_clock::time_point t0_;
  json params_ = json::object();
  json results_;
  std::vector<std::string> outputs_;
};

template <class F>
std::string render(F&& write) {
  std::ostringstream os;
  write(os);
  return os.str();
}

GridSpec grid_of(const Common& c) {
  return {c.grid_points, c.window_pad};
}

// "lo:hi" or a single "hi" (meaning 1:hi).
std::pair<int, int> parse_range(const std::string& s) {
  const auto colon = s.find(':');
  try {
    std::size_t used = 0;
    if (colon == std::string::npos) {
      const int hi = std::stoi(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return {1, hi};
    }
    const std::string a = s.substr(0, colon);
    const std::string b = s.substr(colon + 1);
    const int lo = std::stoi(a, &used);
    if (used != a.size()) throw std::invalid_argument(s);
    const int hi = std::stoi(b, &used);
    if (used != b.size()) throw std::invalid_argument(s);
    return {lo, hi};
  } catch (const std::logic_error&) {
    throw InputError("bad range '" + s + "' (expected lo:hi)");
  }
}

std::string alpha_tag(double a) {
  std::string s = io::fmt17(a);
  for (char& ch : s)
    if (ch == '.') ch = 'p';
  return s;
}

int cmd_psi_norms(const Common& c, const std::string& range, const std::vector<int>& ks) {
  const auto [lo, hi] = parse_range(range);
  if (lo < 1 || hi < lo || hi + 2 > kMaxDegree) throw InputError("psi-norms: need 1 <= n_lo <= n_hi");
  for (int k : ks)
    if (k < 0 || k > 3) throw InputError("psi-norms: k must be in {0,1,2,3}");

  Run run("psi-norms", c);
  run.params()["n_range"] = {lo, hi};
  run.params()["k"] = ks;
  std::ostringstream os;
  os << "n,k,sup_norm,scaled\n";
  for (int n = lo; n <= hi; ++n) {
    for (int k : ks) {
      const double s = sup_norm_estimate(n, k);
      const double scaled = s * std::pow(n, -NormConstantTable::exponent(k));
      os << n << ',' << k << ',' << io::fmt17(s) << ',' << io::fmt17(scaled) << '\n';
    }
  }
  run.emit("psi_norms.csv", os.str());
  json constants = json::object();
  for (int k : ks) constants["C" + std::to_string(k)] = NormConstantTable::constant(k);
  run.results()["constants"] = constants;
  run.finish("psi_norms");
  return kOk;
}

int cmd_supercon(const Common& c, const std::string& fid, int n, int m,
                 const std::optional<std::string>& ratios) {
  const TestFunction f = functions::by_id(fid);
  if (m < 1 || m > 2) throw InputError("supercon: --m must be 1 or 2");
  if (n < 0 || n + 3 > kMaxDegree) throw InputError("supercon: --n out of range");

  Run run("supercon", c);
  run.params()["function"] = fid;
  run.params()["n"] = n;
  run.params()["m"] = m;
  const std::string stem = "supercon_" + fid + "_n" + std::to_string(n) + "_m" + std::to_string(m);
  const ErrorCurve curve = error_curve(f, m, n, grid_of(c));
  run.emit(stem + "_curve.csv", render([&](std::ostream& os) { write_curve_csv(os, curve); }));
  run.emit(stem + "_marks.csv", render([&](std::ostream& os) { write_marks_csv(os, curve); }));
  run.results()["sup_error"] = curve.sup_estimate;
  run.results()["max_marked_error"] = curve.max_marked();
  run.results()["marked_points"] = curve.marked.size();

  if (ratios) {
    const auto [lo, hi] = parse_range(*ratios);
    if (lo < 0 || hi < lo || hi + 3 > kMaxDegree) throw InputError("supercon: bad --ratios range");
    run.params()["ratios"] = {lo, hi};
    const RatioSeries rs = ratio_series(f, lo, hi, grid_of(c));
    run.emit("ratios_" + fid + "_" + std::to_string(lo) + "_" + std::to_string(hi) + ".csv",
             render([&](std::ostream& os) { write_ratio_csv(os, rs); }));
  }
  run.finish(stem);
  return kOk;
}

int cmd_collocate(const Common& c, const std::string& model_id, double alpha,
                  const std::string& fid, int n) {
  const Model model = parse_model(model_id);
  const TestFunction u = functions::by_id(fid);

  Run run("collocate", c);
  run.params()["model"] = to_string(model);
  run.params()["alpha"] = alpha;
  run.params()["function"] = fid;
  run.params()["n"] = n;
  const CollocationSolution s = solve({model, alpha, manufactured_rhs(model, alpha, u), n});

  const std::string stem = std::string("collocate_") + to_string(model) + "_a" + alpha_tag(alpha) +
                           "_" + fid + "_n" + std::to_string(n);
  const std::vector<double> grid = make_grid(n, grid_of(c));
  const ErrorCurve e0 = error_curve_of(u.value, s.expansion, grid, s.nodes.nodes, PointKind::Node);
  const ErrorCurve e1 = error_curve_of(u.derivative(1), differentiate(s.expansion), grid,
                                       tau_points(s.nodes), PointKind::Tau);
  run.emit(stem + "_m0_curve.csv", render([&](std::ostream& os) { write_curve_csv(os, e0); }));
  run.emit(stem + "_m0_marks.csv", render([&](std::ostream& os) { write_marks_csv(os, e0); }));
  run.emit(stem + "_m1_curve.csv", render([&](std::ostream& os) { write_curve_csv(os, e1); }));
  run.emit(stem + "_m1_marks.csv", render([&](std::ostream& os) { write_marks_csv(os, e1); }));
  run.results() = {{"condition_estimate", s.condition},
                   {"residual_norm", s.residual_norm},
                   {"sup_error", e0.sup_estimate},
                   {"max_node_error", e0.max_marked()},
                   {"node_ratio", e0.max_marked() / e0.sup_estimate},
                   {"sup_error_d1", e1.sup_estimate},
                   {"max_tau_error_d1", e1.max_marked()},
                   {"tau_ratio_d1", e1.max_marked() / e1.sup_estimate}};
  run.finish(stem);
  return kOk;
}

int cmd_postprocess(const Common& c, double alpha, const std::string& fid, int n, int m) {
  const TestFunction u = functions::by_id(fid);
  const MergeSpec spec{n, m};
  validate(spec);

  Run run("postprocess", c);
  run.params()["model"] = to_string(Model::Model2);
  run.params()["alpha"] = alpha;
  run.params()["function"] = fid;
  run.params()["n"] = n;
  run.params()["m"] = m;
  const Sampler f = manufactured_rhs(Model::Model2, alpha, u);
  const CollocationSolution s0 = solve({Model::Model2, alpha, f, n});
  const CollocationSolution s1 = solve({Model::Model2, alpha, f, n + 1});
  const MergeResult r = merge(s0, s1, spec);

  const std::vector<double> grid = make_grid(n + 1, grid_of(c));
  const std::vector<double> v0 = evaluate(s0.expansion, grid);
  const std::vector<double> v1 = evaluate(s1.expansion, grid);
  const std::vector<double> vp = evaluate(r.phi, grid);
  std::ostringstream os;
  os << "x,err_u_n,err_u_n1,err_phi\n";
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double ux = u.value(grid[i]);
    os << io::fmt17(grid[i]) << ',' << io::fmt17(ux - v0[i]) << ',' << io::fmt17(ux - v1[i])
       << ',' << io::fmt17(ux - vp[i]) << '\n';
  }
  const std::string stem = "postprocess_a" + alpha_tag(alpha) + "_" + fid + "_n" +
                           std::to_string(n) + "_m" + std::to_string(m);
  run.emit(stem + ".csv", os.str());

  const double window = grid.back();
  const WindowedError wp = windowed_error_report(r, u.value, window, c.grid_points);
  const WindowedError w0 =
      windowed_error_report(s0.expansion, u.value, r.hull_lo, r.hull_hi, window, c.grid_points);
  const WindowedError w1 =
      windowed_error_report(s1.expansion, u.value, r.hull_lo, r.hull_hi, window, c.grid_points);
  std::ostringstream sum;
  sum << "region,err_u_n,err_u_n1,err_phi\n";
  sum << "inside," << io::fmt17(w0.inside) << ',' << io::fmt17(w1.inside) << ','
      << io::fmt17(wp.inside) << '\n';
  sum << "outside," << io::fmt17(w0.outside) << ',' << io::fmt17(w1.outside) << ','
      << io::fmt17(wp.outside) << '\n';
  run.emit(stem + "_summary.csv", sum.str());

  const bool improves = wp.inside <= std::min(w0.inside, w1.inside);
  const bool deteriorates = wp.outside > wp.inside;
  run.results() = {{"hull", {r.hull_lo, r.hull_hi}},
                   {"rank", r.rank},
                   {"residual_norm", r.residual_norm},
                   {"inside", {{"u_n", w0.inside}, {"u_n1", w1.inside}, {"phi", wp.inside}}},
                   {"outside", {{"u_n", w0.outside}, {"u_n1", w1.outside}, {"phi", wp.outside}}},
                   {"improves_inside_hull", improves},
                   {"deteriorates_outside_hull", deteriorates}};
  std::cout << "inside hull: phi " << io::fmt17(wp.inside) << ", u_n " << io::fmt17(w0.inside)
            << ", u_n+1 " << io::fmt17(w1.inside) << (improves ? " (improved)" : "") << '\n';
  std::cout << "outside hull: phi " << io::fmt17(wp.outside)
            << (deteriorates ? " (deteriorates outside hull)" : "") << '\n';
  run.finish(stem);
  return kOk;
}

int cmd_verify(const Common& c, const std::string& suite) {
  Run run("verify", c);
  run.params()["suite"] = suite;
  const verify::Report report = verify::run(suite, c.seed);
  json checks = json::array();
  for (const auto& ch : report.checks) {
    std::cout << (ch.passed ? "PASS " : "FAIL ") << ch.suite << ": " << ch.name << "  value "
              << io::fmt17(ch.value) << " limit " << io::fmt17(ch.limit);
    if (!ch.detail.empty()) std::cout << "  [" << ch.detail << ']';
    std::cout << '\n';
    checks.push_back({{"suite", ch.suite},
                      {"name", ch.name},
                      {"passed", ch.passed},
                      {"value", std::isfinite(ch.value) ? json(ch.value) : json(nullptr)},
                      {"limit", ch.limit},
                      {"detail", ch.detail},
                      {"seconds", ch.seconds}});
  }
  json rep = {{"suite", suite},
              {"passed", report.passed()},
              {"seconds", report.seconds},
              {"checks", checks}};
  run.emit("verify_" + suite + ".json", rep.dump(2) + "\n");
  run.results() = {{"passed", report.passed()}, {"checks", report.checks.size()}};
  run.finish("verify_" + suite);
  std::cout << (report.passed() ? "all checks passed" : "verification FAILED") << " in "
            << report.seconds << " s\n";
  return report.passed() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hermite spectral interpolation, collocation and superconvergence experiments"};
  app.set_version_flag("--version", HERMITE_VERSION);
  app.require_subcommand(1);

  Common c;
  app.add_option("--out-dir", c.out_dir, "Directory for CSV and manifest output")
      ->capture_default_str();
  app.add_option("--grid-points", c.grid_points, "Samples on the error grid")
      ->check(CLI::Range(2, 10000000))
      ->capture_default_str();
  app.add_option("--window-pad", c.window_pad, "Grid half-width beyond sqrt(2n+3)")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--seed", c.seed, "Base seed for randomized checks")->capture_default_str();

  auto* norms = app.add_subcommand("psi-norms", "Sup norms of psi_n^(k) and their scaled values");
  std::string n_range = "1:60";
  std::vector<int> ks{0, 1, 2, 3};
  norms->add_option("--n", n_range, "Degree range lo:hi")->capture_default_str();
  norms->add_option("--k", ks, "Derivative orders")->delimiter(',')->capture_default_str();

  auto* sc = app.add_subcommand("supercon", "Interpolation error curve with superconvergence marks");
  std::string sc_fn = "pole";
  int sc_n = 55;
  int sc_m = 1;
  std::string ratio_range = "1:200";
  sc->add_option("--function", sc_fn, "Built-in function id")->capture_default_str();
  sc->add_option("--n", sc_n, "Interpolation degree")->capture_default_str();
  sc->add_option("--m", sc_m, "Derivative order (1: tau marks, 2: eta marks)")
      ->capture_default_str();
  auto* ratios_opt = sc->add_option("--ratios", ratio_range, "Also emit R1, R2 over n in lo:hi")
                         ->expected(0, 1)
                         ->default_str("1:200");

  auto* col = app.add_subcommand("collocate", "Solve a manufactured problem by collocation");
  std::string col_model = "model1";
  double col_alpha = 0.5;
  std::string col_fn = "gauss-rational2";
  int col_n = 45;
  col->add_option("--model", col_model, "model1 or model2")->capture_default_str();
  col->add_option("--alpha", col_alpha, "Model parameter")->capture_default_str();
  col->add_option("--function", col_fn, "Exact solution id")->capture_default_str();
  col->add_option("--n", col_n, "Degree")->capture_default_str();

  auto* post = app.add_subcommand("postprocess", "Least-squares merge of u_n and u_{n+1} (model2)");
  double pp_alpha = 1.0;
  std::string pp_fn = "twin-gauss";
  int pp_n = 90;
  int pp_m = 0;
  post->add_option("--alpha", pp_alpha, "Model parameter")->capture_default_str();
  post->add_option("--function", pp_fn, "Exact solution id")->capture_default_str();
  post->add_option("--n", pp_n, "Degree of the first solution")->capture_default_str();
  post->add_option("--m", pp_m, "Degree of the merged expansion (m <= 2n+1)")->required();

  auto* ver = app.add_subcommand("verify", "Run invariant suites");
  std::string suite = "all";
  ver->add_option("--suite", suite, "basis, nodes, interp, colloc, post or all")
      ->check(CLI::IsMember(verify::suite_ids()))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadArgs;
  }

  try {
    if (*norms) return cmd_psi_norms(c, n_range, ks);
    if (*sc) {
      std::optional<std::string> ratios;
      if (ratios_opt->count() > 0) ratios = ratio_range.empty() ? "1:200" : ratio_range;
      return cmd_supercon(c, sc_fn, sc_n, sc_m, ratios);
    }
    if (*col) return cmd_collocate(c, col_model, col_alpha, col_fn, col_n);
    if (*post) return cmd_postprocess(c, pp_alpha, pp_fn, pp_n, pp_m);
    if (*ver) return cmd_verify(c, suite);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArgs;
  } catch (const CapabilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kBadArgs;
  } catch (const SolvabilityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const ConditioningError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const NumericalError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kNumerical;
  }
  return kBadArgs;
}
