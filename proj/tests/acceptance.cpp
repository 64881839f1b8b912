// Acceptance gate: one PASS/FAIL line per criterion, non-zero exit on any failure.

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "scanplan/analytic.hpp"
#include "scanplan/cli.hpp"
#include "scanplan/geometry.hpp"
#include "scanplan/montecarlo.hpp"
#include "scanplan/report.hpp"
#include "scanplan/sonar.hpp"

using namespace scanplan;

namespace {

constexpr double kPi = std::numbers::pi;

class Gate {
 public:
  explicit Gate(std::string name) : name_(std::move(name)) {}

  void check(bool ok, const std::string& what) {
    if (!ok) {
      ok_ = false;
      details_.push_back("FAILED: " + what);
    }
  }
  void note(const std::string& s) { details_.push_back(s); }
  bool ok() const { return ok_; }
  const std::string& name() const { return name_; }
  const std::vector<std::string>& details() const { return details_; }

 private:
  std::string name_;
  bool ok_ = true;
  std::vector<std::string> details_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    rows.push_back(std::move(cells));
  }
  return rows;
}

const std::string kConfigDir = SCANPLAN_CONFIG_DIR;

// 1. Analytic exactness.
void analytic_exactness(Gate& g) {
  const double q = 0.0392699;
  const double p30 = analytic_detection_probability(q, 30);
  const double p31 = analytic_detection_probability(q, 31);
  const int n = min_scans(0.7, q);
  g.note(fmt::format("P(30)={:.6f} P(31)={:.6f} min_scans={}", p30, p31, n));
  g.check(std::abs(p30 - 0.69939) <= 1e-4, "P(30) = 0.69939 +- 1e-4");
  g.check(n == 31, "min_scans(0.7, q) = 31");
  g.check(p30 < 0.7 && 0.7 <= p31, "P(30) < 0.7 <= P(31)");
}

// 2. MC vs closed form for two disjoint contained discs.
void mc_vs_analytic(Gate& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const SurveillanceRegion region(40.0);
  const auto schedule = make_schedule({{-20, 0}, {20, 0}});
  g.check(overlap_check(schedule, 5.0), "overlap_check true");
  g.check(containment_check(schedule, 5.0, region), "containment_check true");
  const auto est = estimate_detection_probability(schedule, 5.0, region, UniformInRegion{},
                                                  {100000, 1, 0});
  const double secs = seconds_since(t0);
  g.note(fmt::format("p_hat={:.6f} std_err={:.6f} |diff|={:.6f} ({:.2f}s)", est.p_hat, est.std_err,
                     std::abs(est.p_hat - 0.0245437), secs));
  g.check(std::abs(est.p_hat - 0.0245437) <= 3.0 * est.std_err, "|p_hat - 0.0245437| <= 3 std_err");
  g.check(secs < 5.0, "runtime < 5 s");
}

// 3. MC vs grid oracle on the reference path.
void mc_vs_grid(Gate& g) {
  const auto t0 = std::chrono::steady_clock::now();
  const SurveillanceRegion region(40.0);
  const SurveillancePath path = TwoLobeLemniscate{20.0};
  for (int n : {5, 15}) {
    const auto schedule = build_schedule(path, n);
    for (double eps : {5.0, 10.0, 20.0}) {
      const auto est = estimate_detection_probability(schedule, eps, region, UniformInRegion{},
                                                      {100000, 1, 0});
      const double grid = coverage_fraction_grid(schedule, eps, region, 2000);
      const double diff = std::abs(est.p_hat - grid);
      const double tol = 3.0 * est.std_err + 0.005;
      g.note(fmt::format("eps={:>4} N={:>2}: p_hat={:.6f} grid={:.6f} |diff|={:.6f} tol={:.6f}", eps, n,
                         est.p_hat, grid, diff, tol));
      g.check(diff <= tol, fmt::format("eps={} N={} within tolerance", eps, n));
    }
  }
  const double secs = seconds_since(t0);
  g.note(fmt::format("runtime {:.2f}s", secs));
  g.check(secs < 60.0, "runtime < 60 s");
}

// 4. Sonar scalar oracles.
void sonar_scalars(Gate& g) {
  const SonarParameters p;
  const double alpha = absorption_coefficient(10.0);
  const double dt = detection_threshold(25.0, 100.0);
  const double ts = target_strength(p.cylinder_length, p.cylinder_radius,
                                    wavelength(p.sound_speed_mph, p.frequency), p.aspect_angle_rad);
  const double se = signal_excess(p, 10.0);
  g.note(fmt::format("alpha(10)={:.7f} DT={:.5f} TS={:.4f} SE(10)={:.4f}", alpha, dt, ts, se));
  g.check(std::abs(alpha - 1.081891) <= 1e-5, "alpha(10) = 1.081891 +- 1e-5");
  g.check(std::abs(dt + 9.0309) <= 1e-4, "DT(25,100) = -9.0309 +- 1e-4");
  g.check(std::abs(ts - 12.16) <= 0.05, "TS = 12.16 +- 0.05 dB");
  g.check(std::abs(se - 50.915) <= 0.05, "SE(R=10) = 50.915 +- 0.05 dB");
}

// 5. Root finder.
void root_finder(Gate& g) {
  SonarParameters synth;
  synth.source_level_db = 172.0;
  synth.frequency = 0.0;
  synth.absorption_override = 0.0;
  synth.wavelength_override_ft = 0.5;
  synth.cylinder_length = 1.0;
  synth.cylinder_radius = 1.0;
  synth.aspect_angle_rad = 0.0;
  synth.detection_index = 2.0;
  synth.pulse_duration_s = 1.0;
  synth.rl_factor = 0.0;
  const auto root = effective_range(synth, 1.0, 1000.0, 1e-6);
  g.check(root.has_value() && !root->range_limited, "synthetic root found");
  if (root) {
    const double residual = signal_excess(synth, root->range_nmi);
    g.note(fmt::format("synthetic R*={:.9f} residual={:.3g} dB", root->range_nmi, residual));
    g.check(std::abs(root->range_nmi - 100.0) / 100.0 <= 1e-6, "R* = 100 within 1e-6 relative");
    g.check(std::abs(residual) < 1e-6, "|SE(R*)| < 1e-6 dB");
  }
  const SonarParameters ref;
  const auto r = effective_range(ref, 1.0, 400.0, 1e-6);
  g.check(r.has_value() && !r->range_limited, "reference root found");
  if (r) {
    const double residual = signal_excess(ref, r->range_nmi);
    g.note(fmt::format("reference R*={:.4f} nmi residual={:.3g} dB", r->range_nmi, residual));
    g.check(std::abs(r->range_nmi - 20.35) < 0.05, "reference R* ~ 20.35 nmi");
    g.check(std::abs(residual) < 1e-6, "substitution check |SE(R*)| < 1e-6");
  }
}

// 6. Property suites.
void properties(Gate& g) {
  std::mt19937_64 rng(2024);
  const SurveillanceRegion region(40.0);

  {
    const auto schedule = build_schedule(TwoLobeLemniscate{20.0}, 15);
    std::uint64_t prev = 0;
    bool mono = true;
    for (double eps = 0.5; eps <= 30.0; eps += 0.5) {
      const auto est = estimate_detection_probability(schedule, eps, region, UniformInRegion{}, {20000, 5, 0});
      mono = mono && est.detected >= prev;
      prev = est.detected;
    }
    g.check(mono, "CRN monotonicity of p_hat in epsilon (exact)");
  }
  {
    std::vector<Point2D> pts{{0, 0}};
    std::uniform_real_distribution<double> c(-40.0, 40.0);
    std::uint64_t prev = 0;
    bool mono = true;
    for (int i = 0; i < 20; ++i) {
      const auto est = estimate_detection_probability(make_schedule(pts), 6.0, region, UniformInRegion{},
                                                      {20000, 6, 0});
      mono = mono && est.detected >= prev;
      prev = est.detected;
      pts.push_back({c(rng), c(rng)});
    }
    g.check(mono, "superset-schedule monotonicity (exact)");
  }
  {
    std::uniform_real_distribution<double> r(0.01, 500.0), a(0.0, 3.0);
    bool ok = true;
    for (int i = 0; i < 2000; ++i) {
      double r1 = r(rng), r2 = r(rng);
      if (r1 == r2) continue;
      if (r1 > r2) std::swap(r1, r2);
      const double alpha = a(rng);
      ok = ok && transmission_loss(r1, alpha) < transmission_loss(r2, alpha);
    }
    g.check(ok, "TL strictly increasing in R");
  }
  {
    const SonarParameters ref;
    bool ok = true;
    double prev = signal_excess(ref, 0.1);
    for (double rr = 0.2; rr <= 500.0; rr += 0.1) {
      const double se = signal_excess(ref, rr);
      ok = ok && se < prev;
      prev = se;
    }
    g.check(ok, "SE strictly decreasing in R");
  }
  {
    const double lambda = wavelength(3355.0, 10.0);
    std::uniform_real_distribution<double> psi(-1.5, 1.5);
    bool even = true;
    for (int i = 0; i < 2000; ++i) {
      const double p = psi(rng);
      even = even && target_strength(300.0, 15.0, lambda, p) == target_strength(300.0, 15.0, lambda, -p);
    }
    g.check(even, "TS even in psi (exact)");
    const double jump = std::abs(target_strength(300.0, 15.0, lambda, 1e-8) - target_strength(300.0, 15.0, lambda, 0.0));
    g.note(fmt::format("|TS(1e-8) - TS(0)| = {:.3g} dB", jump));
    g.check(jump < 1e-6, "TS continuous at beta = 0");
  }
  {
    bool minimal = true;
    for (int i = 1; i <= 10; ++i) {
      for (int j = 1; j <= 10; ++j) {
        const double p = i / 11.0;
        const double q = std::pow(j / 10.5, 2);
        const int n = min_scans(p, q);
        minimal = minimal && analytic_detection_probability(q, n) >= p &&
                  (n == 1 || analytic_detection_probability(q, n - 1) < p);
      }
    }
    g.check(minimal, "min_scans minimality on a 100-point (p, q) grid");
  }
}

// 7 and 9 share the CLI runs.
struct FigureRuns {
  CliRun sweep_t1, sweep_t1_again, sweep_t4;
  CliRun mission_t1, mission_t1_again, mission_t4;
  double sweep_seconds = 0.0;
};

FigureRuns run_figures() {
  FigureRuns f;
  const std::string sweep_cfg = kConfigDir + "/sweep.cfg";
  const std::string mission_cfg = kConfigDir + "/mission.cfg";
  const auto t0 = std::chrono::steady_clock::now();
  f.sweep_t1 = cli({"sweep", "--config", sweep_cfg, "--threads", "1"});
  f.sweep_seconds = seconds_since(t0);
  f.sweep_t1_again = cli({"sweep", "--config", sweep_cfg, "--threads", "1"});
  f.sweep_t4 = cli({"sweep", "--config", sweep_cfg, "--threads", "4"});
  f.mission_t1 = cli({"mission", "--config", mission_cfg, "--threads", "1"});
  f.mission_t1_again = cli({"mission", "--config", mission_cfg, "--threads", "1"});
  f.mission_t4 = cli({"mission", "--config", mission_cfg, "--threads", "4"});
  return f;
}

void determinism(Gate& g, const FigureRuns& f) {
  g.check(f.sweep_t1.code == 0 && f.mission_t1.code == 0, "subcommands exit 0");
  g.check(f.sweep_t1.out == f.sweep_t1_again.out, "sweep identical across runs");
  g.check(f.sweep_t1.out == f.sweep_t4.out, "sweep identical at 1 and 4 threads");
  g.check(f.mission_t1.out == f.mission_t1_again.out, "mission identical across runs");
  g.check(f.mission_t1.out == f.mission_t4.out, "mission identical at 1 and 4 threads");
  g.note(fmt::format("sweep {} bytes, mission {} bytes", f.sweep_t1.out.size(), f.mission_t1.out.size()));
}

// 8. Concordance report.
void concordance_report(Gate& g) {
  const auto run = cli({"concordance"});
  g.check(run.code == 0, "concordance exits 0");
  for (int i = 1; i <= 10; ++i) {
    const std::string id = fmt::format("A{:<3}", i);
    g.check(run.out.find(id) != std::string::npos, "anchor A" + std::to_string(i) + " present");
  }
  const auto report = concordance(reference_bundle({100000, 1, 0}));
  g.check(report.rows.size() == 10, "exactly 10 rows");
  for (const auto& row : report.rows) {
    g.check(!row.source.empty() && !row.published.empty() && !row.notes.empty(),
            row.id + " has citation, published value and notes");
    g.note(fmt::format("{:<4} published {:<24} computed {:>12}", row.id, row.published, format_fixed(row.computed)));
  }
  const auto& a10 = report.rows.back();
  g.check(a10.id == "A10" && std::abs(a10.computed - 100.53) < 0.01 && a10.published_value == 402.0,
          "A10 arc length ~100.53 vs 402");
  g.check(a10.notes.find("enclosed area") != std::string::npos, "A10 explains the enclosed-area match");
}

void figure_data(Gate& g, const FigureRuns& f) {
  g.note(fmt::format("sweep runtime {:.2f}s", f.sweep_seconds));
  g.check(f.sweep_seconds < 600.0, "sweep under 10 minutes");

  const auto sweep = parse_csv(f.sweep_t1.out);
  g.check(!sweep.empty() && fmt::format("{}", fmt::join(sweep[0], ",")) ==
                                "epsilon,pd_N5,se_N5,pd_N10,se_N10,pd_N15,se_N15,pd_N20,se_N20,pd_N25,se_N25",
          "sweep header");
  g.check(sweep.size() == 32, "sweep has 31 epsilon rows");
  if (sweep.size() == 32) g.check(sweep.back()[0] == "30.000000", "epsilon grid reaches 30");

  const auto mission = parse_csv(f.mission_t1.out);
  g.check(!mission.empty() && fmt::format("{}", fmt::join(mission[0], ",")) ==
                                  "range,se_db,pd_N5,pd_N10,pd_N15,pd_N20,pd_N25",
          "mission header");
  const double m = 100000.0;
  bool se_decreasing = true;
  bool pd_monotone = true;
  for (std::size_t i = 2; i < mission.size(); ++i) {
    se_decreasing = se_decreasing && std::stod(mission[i][1]) < std::stod(mission[i - 1][1]);
    for (std::size_t c = 2; c < mission[i].size(); ++c) {
      const double p0 = std::stod(mission[i - 1][c]);
      const double p1 = std::stod(mission[i][c]);
      const double se0 = std::sqrt(p0 * (1 - p0) / m);
      const double se1 = std::sqrt(p1 * (1 - p1) / m);
      pd_monotone = pd_monotone && p1 >= p0 - 2.0 * (se0 + se1);
    }
  }
  g.check(mission.size() == 61, "mission has 60 range rows");
  g.check(se_decreasing, "SE column strictly decreasing");
  g.check(pd_monotone, "pd columns monotone in R within 2 standard errors");
}

}  // namespace

int main() {
  std::vector<Gate> gates;
  auto run = [&](const std::string& name, const std::function<void(Gate&)>& fn) {
    Gate g(name);
    const auto t0 = std::chrono::steady_clock::now();
    try {
      fn(g);
    } catch (const std::exception& e) {
      g.check(false, std::string("exception: ") + e.what());
    }
    g.note(fmt::format("({:.2f}s)", seconds_since(t0)));
    gates.push_back(std::move(g));
    const auto& last = gates.back();
    std::cout << (last.ok() ? "[PASS] " : "[FAIL] ") << last.name() << '\n';
    for (const auto& d : last.details()) std::cout << "         " << d << '\n';
    std::cout.flush();
  };

  run("C1 analytic exactness", analytic_exactness);
  run("C2 Monte Carlo vs closed form (disjoint contained discs)", mc_vs_analytic);
  run("C3 Monte Carlo vs grid oracle", mc_vs_grid);
  run("C4 sonar scalar oracles", sonar_scalars);
  run("C5 root finder", root_finder);
  run("C6 property suites", properties);
  FigureRuns figures;
  run("C7 determinism of sweep and mission output", [&](Gate& g) {
    figures = run_figures();
    determinism(g, figures);
  });
  run("C8 concordance report", concordance_report);
  run("C9 end-to-end figure data", [&](Gate& g) { figure_data(g, figures); });

  const auto failed = std::count_if(gates.begin(), gates.end(), [](const Gate& g) { return !g.ok(); });
  std::cout << fmt::format("{} of {} criteria passed\n", gates.size() - failed, gates.size());
  return failed == 0 ? 0 : 1;
}
