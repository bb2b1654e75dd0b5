// Command-line front end: LP tables, optimality certificates, tradeoff
// sweeps, game simulation and the randomized ratio.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "turnsearch/io.hpp"
#include "turnsearch/tables.hpp"
#include "turnsearch/turnsearch.hpp"

namespace ts = turnsearch;
using ts::io::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
  std::string d = "1";
  int m = 2;
  int n = 0;
  std::string c = "9";
  std::string c_range;
  std::string sizes;
  std::string epsilon = "1e-8";
  std::string mode = "float";
  double tolerance = 1e-9;
  std::uint64_t seed = 0;
  std::string format = "csv";
  std::string output;
  // simulate
  std::string strategy = "closed-form";
  std::string strategy_file;
  int ray = 0;
  std::string distance;
  bool audit = false;
  std::string bound;
  std::string ratio;
  int extra_probes = 0;
  // solve-lp
  std::string input = "-";
};

ts::ArithmeticMode parse_mode(const RunConfig& cfg) {
  if (cfg.mode == "rational") return ts::ArithmeticMode::exact();
  if (cfg.mode == "float") return ts::ArithmeticMode::float64(cfg.tolerance);
  throw ts::InputError("mode must be 'float' or 'rational'");
}

std::vector<int> parse_sizes(const std::string& text, const std::vector<int>& fallback) {
  if (text == "default") return fallback;
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    int v = 0;
    try {
      v = std::stoi(item);
    } catch (const std::exception&) {
      throw ts::InputError("bad size '" + item + "'");
    }
    if (v < 1) throw ts::InputError("sizes must be positive integers");
    out.push_back(v);
  }
  return out;
}

// "start:stop:step" inclusive, or a comma separated list.
template <class T>
std::vector<T> parse_c_values(const RunConfig& cfg) {
  if (cfg.c_range.empty()) return {ts::num::parse_scalar<T>(cfg.c)};
  std::vector<T> out;
  if (cfg.c_range.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(cfg.c_range);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw ts::InputError("--c-range expects start:stop:step");
    T start = ts::num::parse_scalar<T>(parts[0]);
    T stop = ts::num::parse_scalar<T>(parts[1]);
    T step = ts::num::parse_scalar<T>(parts[2]);
    if (!(step > 0)) throw ts::InputError("--c-range step must be positive");
    for (T c = start; c <= stop; c += step) out.push_back(c);
    return out;
  }
  std::stringstream ss(cfg.c_range);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(ts::num::parse_scalar<T>(item));
  }
  return out;
}

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty() && path != "-") {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw ts::InputError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void print_json(std::ostream& os, const ordered_json& doc) { os << doc.dump(2) << '\n'; }

template <class T>
int cmd_table1(const RunConfig& cfg, std::ostream& os) {
  const T d = ts::num::parse_scalar<T>(cfg.d);
  const auto tol = ts::tolerance_for<T>(parse_mode(cfg));
  const std::vector<int> sizes = parse_sizes(cfg.sizes, ts::tables::table1_sizes());
  int failures = 0;
  if (cfg.format == "json") {
    ordered_json rows = ordered_json::array();
    for (int n : sizes) {
      try {
        auto row = ts::tables::table1_row(n, d, tol);
        ordered_json r;
        r["n"] = n;
        r["lambda"] = ts::num::to_double(row.lambda);
        r["lambda_trunc4"] = ts::num::truncate4(row.lambda);
        ordered_json xs = ordered_json::array();
        for (const auto& v : row.x) xs.push_back(ts::num::truncate4(v));
        ordered_json ys = ordered_json::array();
        for (const auto& v : row.y) ys.push_back(ts::num::truncate4(v));
        r["x_trunc4"] = xs;
        r["y_trunc4"] = ys;
        rows.push_back(r);
      } catch (const std::exception& e) {
        ++failures;
        rows.push_back({{"n", n}, {"error", e.what()}});
      }
    }
    print_json(os, rows);
  } else {
    os << ts::tables::table1_header() << '\n';
    for (int n : sizes) {
      try {
        os << ts::tables::table1_csv_line(ts::tables::table1_row(n, d, tol)) << '\n';
      } catch (const std::exception& e) {
        ++failures;
        std::cerr << "table1: depth " << n << " failed: " << e.what() << '\n';
      }
    }
  }
  return failures == 0 ? kExitOk : kExitFailed;
}

template <class T>
int cmd_verify_line(const RunConfig& cfg, std::ostream& os) {
  const T d = ts::num::parse_scalar<T>(cfg.d);
  const int n = cfg.n > 0 ? cfg.n : 100;
  const auto cert = ts::certify_line_optimality(d, n, ts::tolerance_for<T>(parse_mode(cfg)));
  ordered_json doc;
  doc["target"] = "line";
  doc["d"] = ts::num::to_double(d);
  doc["N"] = n;
  doc["mode"] = cfg.mode;
  if (cert.certified()) doc["summary"] = "primal=dual=2d";
  doc["certificate"] = ts::io::certificate_to_json(cert);
  print_json(os, doc);
  return cert.certified() ? kExitOk : kExitFailed;
}

template <class T>
int cmd_verify_star(const RunConfig& cfg, std::ostream& os) {
  ts::StarInstance<T> inst{cfg.m, ts::num::parse_scalar<T>(cfg.d)};
  inst.validate();
  const int n = cfg.n > 0 ? cfg.n : 60;
  const auto cert = ts::certify_star_optimality(inst, n, ts::tolerance_for<T>(parse_mode(cfg)));
  ordered_json doc;
  doc["target"] = "star";
  doc["m"] = cfg.m;
  doc["d"] = ts::num::to_double(inst.d);
  doc["N"] = n;
  doc["mode"] = cfg.mode;
  doc["M"] = ts::io::scalar_json(inst.M());
  doc["B"] = ts::io::scalar_json(ts::star_additive_term(inst));
  if (cert.certified()) doc["summary"] = "primal=dual=(M-m)d";
  // Skip the structural zeros below index m-1 in the printed prefix.
  ordered_json prefix = ordered_json::array();
  for (std::size_t j = static_cast<std::size_t>(cfg.m - 2); j < cert.dual_values.size() && prefix.size() < 8; ++j) {
    prefix.push_back(ts::io::scalar_json(cert.dual_values[j]));
  }
  doc["dual_prefix_from_m_minus_1"] = prefix;
  doc["certificate"] = ts::io::certificate_to_json(cert);
  print_json(os, doc);
  return cert.certified() ? kExitOk : kExitFailed;
}

template <class T>
int cmd_tradeoff(const RunConfig& cfg, std::ostream& os) {
  const T d = ts::num::parse_scalar<T>(cfg.d);
  const int n = cfg.n > 0 ? cfg.n : 400;
  const auto points = ts::tradeoff_curve(d, parse_c_values<T>(cfg), n, ts::tolerance_for<T>(parse_mode(cfg)));
  if (cfg.format == "json") {
    ordered_json rows = ordered_json::array();
    for (const auto& p : points) {
      rows.push_back({{"c", ts::num::to_double(p.c)},
                      {"n", p.n},
                      {"lower_bound", ts::num::to_double(p.lower_bound)},
                      {"extrapolated", ts::num::to_double(p.extrapolated)}});
    }
    print_json(os, rows);
  } else {
    ts::tables::write_tradeoff_csv(os, points);
  }
  return kExitOk;
}

template <class T>
ts::SearchStrategy<T> build_strategy(const RunConfig& cfg, const T& d) {
  const int n = cfg.n > 0 ? cfg.n : 20;
  if (!cfg.strategy_file.empty() || cfg.strategy == "file") {
    if (cfg.strategy_file.empty()) throw ts::InputError("--strategy file needs --strategy-file PATH");
    std::ifstream in(cfg.strategy_file);
    if (!in) throw ts::InputError("cannot open strategy file '" + cfg.strategy_file + "'");
    ts::SearchStrategy<T> s{cfg.m, d, ts::io::read_strategy_steps<T>(in)};
    s.validate();
    return s;
  }
  if (cfg.strategy == "closed-form") {
    if (cfg.m == 2) return ts::closed_form_line_strategy(d, n);
    return ts::closed_form_star_strategy(ts::StarInstance<T>{cfg.m, d}, n);
  }
  if (cfg.strategy == "lp") {
    const auto tol = ts::tolerance_for<T>(parse_mode(cfg));
    ts::SearchStrategy<T> s;
    s.m = cfg.m;
    s.d = d;
    if (cfg.m == 2) {
      s.steps = ts::solve_line_lp(ts::LineInstance<T>{d, T(9)}, n, tol).x;
    } else {
      auto res = ts::solve_star_lp(ts::StarInstance<T>{cfg.m, d}, n, tol);
      s.steps.assign(res.solution.primal.begin(), res.solution.primal.end() - 1);
    }
    for (auto& x : s.steps) {
      if (x < 0) x = T(0);
    }
    return s;
  }
  throw ts::InputError("--strategy must be closed-form, lp or file");
}

template <class T>
int cmd_simulate(const RunConfig& cfg, std::ostream& os) {
  const T d = ts::num::parse_scalar<T>(cfg.d);
  if (cfg.m < 2) throw ts::InputError("--m must be at least 2");
  const ts::SearchStrategy<T> strat = build_strategy(cfg, d);
  const T eps = ts::num::parse_scalar<T>(cfg.epsilon);

  if (cfg.audit) {
    const ts::StarInstance<T> inst{cfg.m, d};
    const T c = cfg.ratio.empty() ? inst.competitive_ratio() : ts::num::parse_scalar<T>(cfg.ratio);
    const T B = cfg.bound.empty() ? ts::star_additive_term(inst) : ts::num::parse_scalar<T>(cfg.bound);
    const auto audit = ts::audit_guarantee(strat, c, B, eps, cfg.extra_probes, cfg.seed);
    if (cfg.format == "csv") {
      ts::io::write_audit_csv(os, audit);
    } else {
      print_json(os, ts::io::audit_to_json(audit, d, cfg.m));
    }
    return kExitOk;
  }

  if (cfg.distance.empty()) throw ts::InputError("simulate needs --distance (or --audit)");
  const T distance = ts::num::parse_scalar<T>(cfg.distance) + eps;
  const ts::HiderPlacement<T> hider{cfg.ray, distance};
  const auto outcome = ts::simulate(strat, hider);
  ordered_json doc;
  doc["m"] = cfg.m;
  doc["d"] = ts::num::to_double(d);
  doc["steps"] = strat.size();
  doc["hider"] = {{"ray", hider.ray}, {"distance", ts::num::to_double(hider.distance)}};
  doc["outcome"] = ts::io::outcome_to_json(outcome);
  print_json(os, doc);
  return kExitOk;
}

int cmd_randomized(const RunConfig& cfg, std::ostream& os) {
  const double tol = cfg.tolerance;
  const double d = ts::num::parse_scalar<double>(cfg.d);
  const auto r = ts::solve_randomized_ratio(tol);
  ordered_json doc;
  doc["a"] = r.a;
  doc["q"] = r.q;
  doc["residual"] = r.residual;
  doc["d"] = d;
  doc["additive_bound"] = ts::randomized_additive_bound(r.q, d);
  doc["additive_bound_text"] = ts::num::format_fixed(ts::randomized_additive_bound(r.q, d), 6);
  print_json(os, doc);
  return kExitOk;
}

template <class T>
int cmd_solve_lp(const RunConfig& cfg, std::ostream& os) {
  ts::io::json doc;
  try {
    if (cfg.input == "-") {
      doc = ts::io::json::parse(std::cin);
    } else {
      std::ifstream in(cfg.input);
      if (!in) throw ts::InputError("cannot open LP file '" + cfg.input + "'");
      doc = ts::io::json::parse(in);
    }
  } catch (const ts::io::json::parse_error& e) {
    throw ts::InputError(std::string("malformed LP JSON: ") + e.what());
  }
  const auto lp = ts::io::lp_from_json<T>(doc);
  const auto sol = ts::solve(lp, ts::tolerance_for<T>(parse_mode(cfg)));
  print_json(os, ts::io::solution_to_json(sol));
  return kExitOk;
}

template <class T>
int cmd_star_lp(const RunConfig& cfg, std::ostream& os) {
  ts::StarInstance<T> inst{cfg.m, ts::num::parse_scalar<T>(cfg.d)};
  inst.validate();
  const auto rows = ts::tables::star_convergence(inst, parse_sizes(cfg.sizes, {50, 100, 200, 400}),
                                                 ts::tolerance_for<T>(parse_mode(cfg)));
  ts::tables::write_star_convergence_csv(os, rows);
  return kExitOk;
}

template <class T>
int cmd_star_duals(const RunConfig& cfg, std::ostream& os) {
  ts::StarInstance<T> inst{cfg.m, T(1)};
  inst.validate();
  const int n = cfg.n > 0 ? cfg.n : 2 * cfg.m + 4;
  const auto seq = ts::star_dual_sequence(inst, n);
  ts::tables::write_dual_sequence_csv(os, seq, cfg.m - 1);
  return kExitOk;
}

template <template <class> class Fn>
int dispatch(const RunConfig& cfg, std::ostream& os) {
  if (parse_mode(cfg).is_exact()) return Fn<ts::Rational>{}(cfg, os);
  return Fn<double>{}(cfg, os);
}

#define TS_COMMAND(name)                                                                   \
  template <class T>                                                                      \
  struct name##_fn {                                                                      \
    int operator()(const RunConfig& cfg, std::ostream& os) const { return name<T>(cfg, os); } \
  };
TS_COMMAND(cmd_table1)
TS_COMMAND(cmd_verify_line)
TS_COMMAND(cmd_verify_star)
TS_COMMAND(cmd_tradeoff)
TS_COMMAND(cmd_simulate)
TS_COMMAND(cmd_solve_lp)
TS_COMMAND(cmd_star_lp)
TS_COMMAND(cmd_star_duals)
#undef TS_COMMAND

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"turnsearch: online search with turn cost via LP truncations and duality certificates"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--d", cfg.d, "turn cost d (decimal or p/q)")->capture_default_str();
    sub->add_option("--mode", cfg.mode, "arithmetic: float or rational")
        ->check(CLI::IsMember({"float", "rational"}))
        ->capture_default_str();
    sub->add_option("--tolerance", cfg.tolerance, "float-mode tolerance")->capture_default_str();
    sub->add_option("--output", cfg.output, "write to PATH instead of stdout");
  };

  auto* table1 = app.add_subcommand("table1", "LP truncations of the line program: lambda_n, x_1..x_5, y_1..y_5");
  common(table1);
  cfg.sizes = "default";
  table1->add_option("--sizes", cfg.sizes, "comma separated depths, 'default' for the reference depths, '' for none");
  table1->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  auto* verify_line = app.add_subcommand("verify-line", "certify 9 OPT + 2d optimality of x_i = d(2^i-1)/2");
  common(verify_line);
  verify_line->add_option("--n", cfg.n, "constraints checked (default 100)");

  auto* verify_star = app.add_subcommand("verify-star", "certify the closed-form star strategy on m rays");
  common(verify_star);
  verify_star->add_option("--m", cfg.m, "ray count (>= 2)")->capture_default_str();
  verify_star->add_option("--n", cfg.n, "constraints checked (default 60)");

  auto* tradeoff = app.add_subcommand("tradeoff", "B/d as a function of the competitive ratio c");
  common(tradeoff);
  tradeoff->add_option("--c", cfg.c, "single ratio c >= 9")->capture_default_str();
  tradeoff->add_option("--c-range", cfg.c_range, "start:stop:step or comma list");
  tradeoff->add_option("--n", cfg.n, "truncation depth, even (default 400)");
  tradeoff->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  auto* simulate = app.add_subcommand("simulate", "play a strategy against a hider, or audit a guarantee");
  common(simulate);
  simulate->add_option("--m", cfg.m, "ray count")->capture_default_str();
  simulate->add_option("--n", cfg.n, "strategy length or LP depth (default 20)");
  simulate->add_option("--strategy", cfg.strategy, "closed-form, lp or file")->capture_default_str();
  simulate->add_option("--strategy-file", cfg.strategy_file, "one step length per line, '#' comments");
  simulate->add_option("--ray", cfg.ray, "hider ray in [0, m)")->capture_default_str();
  simulate->add_option("--distance", cfg.distance, "hider distance; epsilon is added");
  simulate->add_option("--epsilon", cfg.epsilon, "probe offset")->capture_default_str();
  simulate->add_flag("--audit", cfg.audit, "audit c OPT + B over adversarial probes");
  simulate->add_option("--c", cfg.ratio, "audit ratio (default 1 + 2M)");
  simulate->add_option("--B", cfg.bound, "audit additive term (default (M - m) d)");
  simulate->add_option("--extra-probes", cfg.extra_probes, "random probes added to the audit");
  simulate->add_option("--seed", cfg.seed, "random probe seed")->capture_default_str();
  simulate->add_option("--format", cfg.format)->check(CLI::IsMember({"csv", "json"}));

  auto* randomized = app.add_subcommand("randomized", "optimal randomized ratio q and its additive term");
  randomized->add_option("--tolerance", cfg.tolerance, "root tolerance")->capture_default_str();
  randomized->add_option("--d", cfg.d, "turn cost d")->capture_default_str();
  randomized->add_option("--output", cfg.output, "write to PATH instead of stdout");

  auto* solve_lp = app.add_subcommand("solve-lp", "solve an LP given as JSON {sense, objective, rows, var_count}");
  common(solve_lp);
  solve_lp->add_option("--input", cfg.input, "LP JSON file, '-' for stdin")->capture_default_str();

  auto* star_lp = app.add_subcommand("star-lp", "B_n/d of the star program with Richardson estimates");
  common(star_lp);
  star_lp->add_option("--m", cfg.m, "ray count (>= 2)")->capture_default_str();
  star_lp->add_option("--sizes", cfg.sizes, "comma separated depths");

  auto* star_duals = app.add_subcommand("star-duals", "recursive dual sequence of the star program");
  star_duals->add_option("--m", cfg.m, "ray count (>= 2)")->capture_default_str();
  star_duals->add_option("--n", cfg.n, "last index");
  star_duals->add_option("--mode", cfg.mode)->check(CLI::IsMember({"float", "rational"}))->capture_default_str();
  star_duals->add_option("--output", cfg.output, "write to PATH instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    Output out(cfg.output);
    std::ostream& os = out.stream();
    if (*table1) return dispatch<cmd_table1_fn>(cfg, os);
    if (*verify_line) return dispatch<cmd_verify_line_fn>(cfg, os);
    if (*verify_star) return dispatch<cmd_verify_star_fn>(cfg, os);
    if (*tradeoff) return dispatch<cmd_tradeoff_fn>(cfg, os);
    if (*simulate) return dispatch<cmd_simulate_fn>(cfg, os);
    if (*randomized) return cmd_randomized(cfg, os);
    if (*solve_lp) return dispatch<cmd_solve_lp_fn>(cfg, os);
    if (*star_lp) return dispatch<cmd_star_lp_fn>(cfg, os);
    if (*star_duals) return dispatch<cmd_star_duals_fn>(cfg, os);
  } catch (const ts::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailed;
  }
  return kExitUsage;
}
