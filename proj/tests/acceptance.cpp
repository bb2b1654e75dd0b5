// Acceptance gate: one PASS/FAIL line per criterion.
//   acceptance               run every criterion
//   acceptance --criterion K run criterion K only

#include <sys/wait.h>

#include <chrono>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "turnsearch/tables.hpp"
#include "turnsearch/turnsearch.hpp"

namespace ts = turnsearch;
using ts::Rational;

namespace {

const ts::Tolerance<Rational> kExact{};
const ts::Tolerance<double> kFloat{1e-9};

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Reference line-search truncations at d = 1, four decimals truncated:
// lambda, x1..x5, y1..y5. Empty strings are blank cells.
struct ReferenceRow {
  int n;
  std::vector<std::string> cells;
};

const std::vector<ReferenceRow>& reference_rows() {
  static const std::vector<ReferenceRow> rows = {
      {1, {"1.0000", "0.0000", "", "", "", "", "", "", "", "", ""}},
      {2, {"1.2500", "0.1250", "0.0000", "", "", "", "0.7500", "0.2500", "", "", ""}},
      {3, {"1.4166", "0.2083", "0.3333", "0.0000", "", "", "0.6666", "0.2500", "0.0833", "", ""}},
      {4, {"1.5312", "0.2656", "0.5625", "0.6875", "0.0000", "", "0.0625", "0.2500", "0.0937", "0.0312", ""}},
      {5, {"1.6125", "0.3062", "0.7250", "1.1750", "1.3000", "0.0000", "0.6000", "0.2500", "0.1000", "0.0375", "0.0125"}},
      {6, {"1.6718", "0.3359", "0.8437", "1.5312", "2.2500", "2.3750", "0.5833", "0.2500", "0.1041", "0.0416", "0.0156"}},
      {7, {"1.7165", "0.3582", "0.9330", "1.7991", "2.9642", "4.1607", "0.5714", "0.2500", "0.1071", "0.0446", "0.0178"}},
      {8, {"1.7509", "0.3754", "1.0019", "2.0058", "3.5156", "5.5930", "0.5625", "0.2500", "0.1093", "0.0468", "0.0195"}},
      {9, {"1.7782", "0.3891", "1.0563", "2.1692", "3.9130", "6.6284", "0.5555", "0.2500", "0.1111", "0.0486", "0.0208"}},
      {10, {"1.8001", "0.4000", "1.1003", "2.3011", "4.3031", "7.5078", "0.5500", "0.2500", "0.1125", "0.0500", "0.0218"}},
      {20, {"1.9000", "0.4500", "1.3000", "2.9000", "5.9000", "11.5000", "0.5250", "0.2500", "0.1187", "0.0562", "0.0265"}},
      {30, {"1.9333", "0.4666", "1.3666", "3.1000", "6.4333", "12.8333", "0.5166", "0.2500", "0.1208", "0.0583", "0.0281"}},
      {40, {"1.9500", "0.4750", "1.4000", "3.2000", "6.7000", "13.5000", "0.5125", "0.2500", "0.1218", "0.0593", "0.0289"}},
      {50, {"1.9600", "0.4800", "1.4200", "3.2600", "6.8600", "13.9000", "0.5100", "0.2500", "0.1225", "0.0600", "0.0293"}},
      {100, {"1.9800", "0.4900", "1.4600", "3.3800", "7.1800", "14.7000", "0.5050", "0.2500", "0.1237", "0.0612", "0.0303"}},
      {200, {"1.9900", "0.4950", "1.4800", "3.4400", "7.3400", "15.1000", "0.5025", "0.2500", "0.1243", "0.0618", "0.0307"}},
      {400, {"1.9950", "0.4975", "1.4900", "3.4700", "7.4200", "15.3000", "0.5012", "0.2500", "0.1245", "0.0621", "0.0310"}},
  };
  return rows;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(TURNSEARCH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

void criterion_table(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  static const char* names[] = {"lambda", "x1", "x2", "x3", "x4", "x5", "y1", "y2", "y3", "y4", "y5"};
  int compared = 0;
  int mismatched = 0;
  std::ostringstream diffs;
  for (const auto& ref : reference_rows()) {
    const auto row = ts::tables::table1_row(ref.n, 1.0, kFloat);
    std::vector<std::string> got{ts::num::truncate4(row.lambda)};
    for (int i = 0; i < 5; ++i) got.push_back(i < static_cast<int>(row.x.size()) ? ts::num::truncate4(row.x[i]) : "");
    for (int i = 0; i < 5; ++i) got.push_back(i < static_cast<int>(row.y.size()) ? ts::num::truncate4(row.y[i]) : "");
    for (std::size_t k = 0; k < ref.cells.size(); ++k) {
      if (ref.cells[k].empty()) continue;
      ++compared;
      if (got[k] != ref.cells[k]) {
        ++mismatched;
        diffs << " n=" << ref.n << ' ' << names[k] << " computed " << got[k] << " reference " << ref.cells[k]
              << ';';
      }
    }
  }
  const double secs = seconds_since(t0);
  o.detail << reference_rows().size() << " rows, " << compared << " cells compared, " << mismatched << " mismatched, "
           << ts::num::format_fixed(secs, 2) << " s";
  if (mismatched > 0) o.detail << ":" << diffs.str();
  o.require(mismatched == 0, "truncated values differ from reference");
  o.require(secs < 10.0, "runtime over 10 s");
}

void criterion_line_certificate(Outcome& o) {
  for (int N : {3, 10, 50, 100, 200, 400}) {
    const auto cert = ts::certify_line_optimality(Rational(1), N, kExact);
    o.require(cert.certified(), "rational certificate N=" + std::to_string(N) + ": " + cert.reason);
    bool tight = true;
    for (const auto& r : cert.constraint_residuals) tight = tight && r == 0;
    bool cols = true;
    for (const auto& r : cert.dual_column_residuals) cols = cols && r == 0;
    o.require(tight, "exact tightness N=" + std::to_string(N));
    o.require(cols, "exact column residuals N=" + std::to_string(N));
    o.require(cert.dual_objective == 2, "sum j y_j = 2 N=" + std::to_string(N));
  }
  double worst = 0.0;
  for (double d : {1.0, 0.37, 12.5}) {
    const auto s = ts::closed_form_line_strategy(d, 400);
    for (int j = 1; j <= 400; ++j) {
      const double r = ts::line_row_residual(s.steps, j, d, 9.0, 2.0 * d);
      const double scale = 2.0 * s.step(static_cast<std::size_t>(j)) + j * d;
      worst = std::max(worst, std::abs(r) / scale);
    }
  }
  o.require(worst <= 1e-12, "float relative tightness");
  const int status = run_cli("verify-line --n 400 --mode rational");
  o.require(status == 0, "CLI exit status " + std::to_string(status));
  o.detail << "rational certificates N in {3,...,400}; float worst relative residual "
           << ts::num::format_double(worst) << "; CLI exit " << status;
}

void criterion_extrapolation(Outcome& o) {
  const auto seq = ts::lambda_sequence(ts::LineInstance<double>{}, {200, 400}, kFloat);
  const double est = ts::extrapolate_limit(seq);
  o.detail << "2*lambda_400 - lambda_200 = " << ts::num::format_fixed(est, 8);
  o.require(std::abs(est - 2.0) <= 5e-4, "outside 2.0000 +- 5e-4");
}

void criterion_star_certificates(Outcome& o) {
  for (int m = 2; m <= 6; ++m) {
    const ts::StarInstance<Rational> inst{m, 1};
    const auto cert = ts::certify_star_optimality(inst, 60, kExact);
    o.require(cert.certified(), "m=" + std::to_string(m) + ": " + cert.reason);
    o.require(cert.primal_objective == inst.M() - m, "B = (M-m)d, m=" + std::to_string(m));
    // Direct check of LHS = RHS = (q^(n+m) - q)/(q-1) d outside the certificate.
    const auto s = ts::closed_form_star_strategy(inst, 60 + m - 1);
    const Rational q = inst.q();
    for (int n = 1; n <= 60; ++n) {
      const auto ev = ts::evaluate_star_row(inst, s.steps, n, inst.M() - m);
      const Rational target = (ts::num::pow(q, n + m) - q) / (q - 1);
      if (ev.lhs != target || ev.rhs != target) {
        o.require(false, "row value m=" + std::to_string(m) + " n=" + std::to_string(n));
        break;
      }
    }
    ts::CertificateCheck mass, weighted;
    for (const auto& c : cert.checks) {
      if (c.name.find("partial mass") != std::string::npos) mass = c;
      if (c.name.find("weighted sum") != std::string::npos) weighted = c;
    }
    o.require(mass.passed && weighted.passed, "envelope m=" + std::to_string(m));
  }
  const auto seq = ts::star_dual_sequence(ts::StarInstance<Rational>{3, 1}, 60);
  const std::vector<Rational> expected{Rational(4, 9), Rational(4, 27), Rational(4, 27), Rational(20, 243),
                                       Rational(44, 729)};
  for (std::size_t k = 0; k < expected.size(); ++k) {
    o.require(seq.y(k + 2) == expected[k], "m=3 prefix y_" + std::to_string(k + 2));
  }
  for (int j = 2; j <= 60; ++j) {
    // 4 (2^(j-1) + (-1)^j) / 3^(j+1), evaluated here without the library helper.
    mpz_class two, three;
    mpz_ui_pow_ui(two.get_mpz_t(), 2, static_cast<unsigned long>(j - 1));
    mpz_ui_pow_ui(three.get_mpz_t(), 3, static_cast<unsigned long>(j + 1));
    Rational closed(4 * (two + (j % 2 == 0 ? 1 : -1)), three);
    closed.canonicalize();
    if (seq.y(static_cast<std::size_t>(j)) != closed) {
      o.require(false, "m=3 closed form j=" + std::to_string(j));
      break;
    }
  }
  o.detail << "m=2..6 certified at N=60 (rational); m=3 prefix 4/9, 4/27, 4/27, 20/243, 44/729";
}

void criterion_star_convergence(Outcome& o) {
  for (int m = 3; m <= 6; ++m) {
    const ts::StarInstance<double> inst{m, 1.0};
    const double b200 = ts::solve_star_lp(inst, 200, kFloat).ratio_to_d;
    const double b400 = ts::solve_star_lp(inst, 400, kFloat).ratio_to_d;
    const double est = 2.0 * b400 - b200;
    const double target = ts::star_additive_term(inst);
    const double rel = std::abs(est - target) / target;
    o.detail << "m=" << m << " est " << ts::num::format_fixed(est, 6) << " vs " << ts::num::format_fixed(target, 6)
             << " (rel " << ts::num::format_double(rel) << "); ";
    o.require(rel <= 0.01, "m=" + std::to_string(m) + " off by more than 1%");
  }
}

void criterion_two_ray_reduction(Outcome& o) {
  const ts::StarInstance<Rational> star{2, Rational(3, 2)};
  const ts::LineInstance<Rational> line{Rational(3, 2), 9};
  for (int n = 1; n <= 40; ++n) {
    if (ts::build_star_lp(star, n) != ts::build_line_lp(line, n + 1)) {
      o.require(false, "LP rows differ at n=" + std::to_string(n));
      break;
    }
  }
  for (int n : {1, 5, 20, 60}) {
    const auto s = ts::solve_star_lp(star, n, kExact);
    const auto l = ts::solve_line_lp(line, n + 1, kExact);
    o.require(s.B == l.B && s.solution.dual == l.y, "LP solutions differ at n=" + std::to_string(n));
  }
  o.require(ts::closed_form_star_strategy(star, 64) == ts::closed_form_line_strategy(Rational(3, 2), 64),
            "strategies differ");
  const auto sd = ts::star_dual_sequence(star, 64);
  const auto ld = ts::line_dual_sequence<Rational>(64);
  o.require(sd.values == ld.values && sd.tail_mass == ld.tail_mass && sd.tail_weighted == ld.tail_weighted,
            "dual sequences differ");
  o.require(ts::star_additive_term(star) == 2 * line.d, "additive term differs");
  const auto sc = ts::certify_star_optimality(star, 60, kExact);
  const auto lc = ts::certify_line_optimality(line.d, 61, kExact);
  o.require(sc.certified() && lc.certified() && sc.primal_objective == lc.primal_objective &&
                sc.dual_objective == lc.dual_objective && sc.dual_values == lc.dual_values &&
                sc.constraint_residuals == lc.constraint_residuals &&
                sc.dual_column_residuals == lc.dual_column_residuals,
            "certificates differ");
  o.detail << "LP rows n=1..40, LP solutions, strategies, duals and certificates identical at m=2";
}

void criterion_audit(Outcome& o) {
  const auto line = ts::closed_form_line_strategy(1.0, 20);
  const auto ok = ts::audit_guarantee(line, 9.0, 2.0, 1e-8);
  const auto bad = ts::audit_guarantee(line, 9.0, 2.0 - 1e-3, 1e-8);
  const auto star = ts::closed_form_star_strategy(ts::StarInstance<double>{3, 1.0}, 30);
  const auto st = ts::audit_guarantee(star, 14.5, 3.75, 1e-8);
  o.detail << "line worst_slack " << ts::num::format_double(ok.worst_slack) << ", with B-1e-3 "
           << ts::num::format_double(bad.worst_slack) << ", m=3 worst_slack " << ts::num::format_double(st.worst_slack);
  o.require(ok.worst_slack >= -1e-6 && ok.worst_slack <= 0.0, "line slack outside [-1e-6, 0]");
  o.require(bad.worst_slack > 0.0, "reduced B not violated");
  o.require(st.worst_slack >= -1e-6 && st.worst_slack <= 0.0, "m=3 slack outside [-1e-6, 0]");
}

void criterion_cross_check(Outcome& o) {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> pick_m(2, 5);
  std::uniform_int_distribution<int> pick_len(8, 16);
  std::uniform_int_distribution<int> pick_num(1, 50);
  int probes = 0;
  int mismatches = 0;
  for (int trial = 0; trial < 100; ++trial) {
    ts::SearchStrategy<Rational> s;
    s.m = pick_m(rng);
    s.d = ts::num::ratio<Rational>(pick_num(rng), 7);
    Rational x(0);
    const int len = pick_len(rng);
    for (int i = 0; i < len; ++i) {
      x += ts::num::ratio<Rational>(pick_num(rng), 3);
      s.steps.push_back(x);
    }
    const Rational c = 9 + ts::num::ratio<Rational>(pick_num(rng), 4);
    const Rational B = ts::num::ratio<Rational>(pick_num(rng), 6);
    const Rational eps(1, 100000);
    const auto audit = ts::audit_guarantee(s, c, B, eps);
    for (const auto& p : audit.probes) {
      if (p.kind != ts::ProbeKind::BeyondTip) continue;
      ++probes;
      // LP row built by hand: 2 sum_{j <= i+m-1} x_j + (i+m-1) d + (1 - c) x_i - B.
      const std::size_t last = p.tip + static_cast<std::size_t>(s.m) - 1;
      Rational row = Rational(static_cast<long>(last)) * s.d + (1 - c) * s.step(p.tip) - B;
      for (std::size_t j = 1; j <= last; ++j) row += 2 * s.step(j);
      if (p.slack != row + (1 - c) * eps) ++mismatches;
    }
  }
  o.detail << "100 seeded strategies, " << probes << " beyond-tip probes, " << mismatches << " mismatches";
  o.require(mismatches == 0 && probes > 0, "simulator and LP rows disagree");
}

void criterion_randomized(Outcome& o) {
  const auto r = ts::solve_randomized_ratio(1e-9);
  const double add = ts::randomized_additive_bound(r.q, 1.0);
  o.detail << "q = " << ts::num::format_fixed(r.q, 9) << ", additive bound " << ts::num::format_fixed(add, 6);
  o.require(std::abs(r.q - 4.591121) <= 1e-6, "q off");
  o.require(std::abs(add - 1.795560) <= 1e-5, "additive bound off");
}

void criterion_tradeoff(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<double> cs;
  for (int c = 9; c <= 23; ++c) cs.push_back(c);
  const auto pts = ts::tradeoff_curve(1.0, cs, 400, kFloat);
  const double secs = seconds_since(t0);
  bool decreasing = true;
  bool in_range = true;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (i > 0 && !(pts[i].lower_bound < pts[i - 1].lower_bound)) decreasing = false;
    if (!(pts[i].lower_bound > 1.0 && pts[i].lower_bound <= 2.0)) in_range = false;
  }
  o.detail << "c=9 lower " << ts::num::format_fixed(pts.front().lower_bound, 6) << " extrapolated "
           << ts::num::format_fixed(pts.front().extrapolated, 6) << "; c=23 lower "
           << ts::num::format_fixed(pts.back().lower_bound, 6) << "; " << ts::num::format_fixed(secs, 2) << " s";
  o.require(decreasing, "not strictly decreasing");
  o.require(in_range, "value outside (1, 2]");
  o.require(std::abs(pts.front().extrapolated - 2.0) <= 1e-3, "c=9 endpoint not 2.000 +- 0.001");
  o.require(secs < 120.0, "sweep over 2 minutes");
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Outcome&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "truncated line LP table", criterion_table},
      {2, "line optimality certificate", criterion_line_certificate},
      {3, "Richardson extrapolation", criterion_extrapolation},
      {4, "star certificates", criterion_star_certificates},
      {5, "star LP convergence", criterion_star_convergence},
      {6, "m=2 reduction", criterion_two_ray_reduction},
      {7, "guarantee audit", criterion_audit},
      {8, "simulator/LP cross-check", criterion_cross_check},
      {9, "randomized ratio", criterion_randomized},
      {10, "tradeoff curve", criterion_tradeoff},
  };
  return all;
}

bool run_one(const Criterion& c) {
  Outcome o;
  try {
    c.run(o);
  } catch (const std::exception& e) {
    o.require(false, std::string("exception: ") + e.what());
  }
  std::cout << "criterion " << c.id << " " << (o.pass ? "PASS" : "FAIL") << " " << c.title << ": " << o.detail.str()
            << std::endl;
  return o.pass;
}

}  // namespace

int main(int argc, char** argv) {
  int only = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--criterion" && i + 1 < argc) {
      only = std::atoi(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion K]\n";
      return 2;
    }
  }
  bool all_pass = true;
  bool ran = false;
  for (const auto& c : criteria()) {
    if (only != 0 && c.id != only) continue;
    ran = true;
    all_pass = run_one(c) && all_pass;
  }
  if (!ran) {
    std::cerr << "no criterion " << only << '\n';
    return 2;
  }
  return all_pass ? 0 : 1;
}
