#include "scanplan/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "scanplan/analytic.hpp"
#include "scanplan/config.hpp"
#include "scanplan/errors.hpp"
#include "scanplan/report.hpp"

namespace scanplan {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CommonOptions {
  std::string config_path;
  std::string out_path;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
  unsigned threads = 0;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* trials_opt = nullptr;
  CLI::Option* threads_opt = nullptr;
};

void add_common(CLI::App* sub, CommonOptions& o) {
  sub->add_option("--config", o.config_path, "Configuration file (key = value)");
  sub->add_option("--out", o.out_path, "Output file (default: stdout)");
  o.seed_opt = sub->add_option("--seed", o.seed, "Override mc.seed");
  o.trials_opt = sub->add_option("--trials", o.trials, "Override mc.trials")->check(CLI::PositiveNumber);
  o.threads_opt = sub->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

std::optional<MissionConfig> load_config(const CommonOptions& o) {
  if (o.config_path.empty()) return std::nullopt;
  std::ifstream in(o.config_path, std::ios::binary);
  if (!in) throw UsageError(fmt::format("cannot open config '{}'", o.config_path));
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

MissionConfig require_config(const CommonOptions& o) {
  auto config = load_config(o);
  if (!config) throw UsageError("this subcommand needs --config <path>");
  return *config;
}

template <typename T>
const T& require_section(const std::optional<T>& section, const char* name) {
  if (!section) throw ParseError(0, fmt::format("configuration lacks the '{}' section", name));
  return *section;
}

MonteCarloConfig mc_settings(const std::optional<MissionConfig>& config, const CommonOptions& o) {
  MonteCarloConfig mc;
  if (config && config->mc) mc = *config->mc;
  if (*o.seed_opt) mc.seed = o.seed;
  if (*o.trials_opt) mc.trials = o.trials;
  if (*o.threads_opt) mc.threads = o.threads;
  return mc;
}

void write_output(const CommonOptions& o, const std::string& text, std::ostream& out) {
  if (o.out_path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(o.out_path, std::ios::binary | std::ios::trunc);
  if (!file) throw UsageError(fmt::format("cannot open output '{}'", o.out_path));
  file << text;
  if (!file) throw std::runtime_error(fmt::format("failed writing '{}'", o.out_path));
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Scan-count planning for cookie-cutter search and active sonar missions",
               "scanplan"};
  app.require_subcommand(1);

  CommonOptions sweep_o, rot_o, curve_o, mission_o, conc_o;

  auto* sweep = app.add_subcommand("sweep", "Detection probability over epsilon for each scan count");
  add_common(sweep, sweep_o);

  auto* rot = app.add_subcommand("rule-of-thumb", "Minimum scan count from the closed-form rule");
  add_common(rot, rot_o);
  double ratio_squared = 0.0, target = 0.0;
  int n_max = 0;
  auto* ratio_opt = rot->add_option("--ratio-squared", ratio_squared, "(eps/delta)^2");
  auto* target_opt = rot->add_option("--target", target, "Desired detection probability");
  auto* n_max_opt = rot->add_option("--n-max", n_max, "Also print the curve for N = 1..n_max");

  auto* curve = app.add_subcommand("sonar-curve", "Signal excess as a function of range");
  add_common(curve, curve_o);
  double range_min = 0.0, range_max = 0.0;
  int range_steps = 0;
  auto* rmin_opt = curve->add_option("--range-min", range_min, "First range (nmi)");
  auto* rmax_opt = curve->add_option("--range-max", range_max, "Last range (nmi)");
  auto* rsteps_opt = curve->add_option("--range-steps", range_steps, "Number of ranges");

  auto* mission = app.add_subcommand("mission", "SE and detection probability per range");
  add_common(mission, mission_o);

  auto* conc = app.add_subcommand("concordance", "Compare computed values with the published anchors");
  add_common(conc, conc_o);
  std::string format = "text";
  conc->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::vector<const char*> argv{"scanplan"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (sweep->parsed()) {
      const auto config = require_config(sweep_o);
      const auto& region = require_section(config.region, "region");
      const auto& path = require_section(config.path, "path");
      const auto& settings = require_section(config.sweep, "sweep");
      const auto grid = sweep_detection(path, settings.scans, settings.epsilon, region,
                                        UniformInRegion{}, mc_settings(config, sweep_o));
      write_output(sweep_o, emit_sweep_csv(grid), out);
    } else if (rot->parsed()) {
      const auto config = load_config(rot_o);
      std::optional<RuleOfThumbSettings> settings;
      if (config) settings = config->rule_of_thumb;
      if (*ratio_opt || *target_opt || *n_max_opt) {
        if (!settings) settings = RuleOfThumbSettings{};
        if (*ratio_opt) settings->ratio_squared = ratio_squared;
        if (*target_opt) settings->target = target;
        if (*n_max_opt) settings->n_max = n_max;
      }
      if (!settings || settings->ratio_squared == 0.0 || settings->target == 0.0) {
        throw UsageError("rule-of-thumb needs --ratio-squared and --target (or a config section)");
      }
      const auto input = RuleOfThumbInput::from_ratio_squared(settings->ratio_squared);
      const int n_min = min_scans(settings->target, input.hit_probability());
      std::string text = fmt::format("q = {}\nn_min = {}\n", format_fixed(input.hit_probability()), n_min);
      if (settings->n_max) text += emit_rule_of_thumb_csv(rule_of_thumb_curve(input, *settings->n_max));
      write_output(rot_o, text, out);
    } else if (curve->parsed()) {
      const auto config = require_config(curve_o);
      const auto& params = require_section(config.sonar, "sonar");
      LinearGrid grid;
      if (config.mission) grid = config.mission->range;
      if (*rmin_opt) grid.min = range_min;
      if (*rmax_opt) grid.max = range_max;
      if (*rsteps_opt) grid.steps = range_steps;
      if (!config.mission && !(*rmin_opt && *rmax_opt && *rsteps_opt)) {
        throw UsageError("sonar-curve needs a mission section or --range-min/--range-max/--range-steps");
      }
      const auto se = se_curve(params, grid);
      write_output(curve_o, emit_se_curve_csv(se), out);
      if (const auto r = effective_range(params, grid.min, grid.max, 1e-6)) {
        err << fmt::format("effective_range = {:.6f} nmi{}\n", r->range_nmi,
                           r->range_limited ? " (range-limited)" : "");
      } else {
        err << "effective_range: no detection in range grid\n";
      }
    } else if (mission->parsed()) {
      const auto config = require_config(mission_o);
      const auto& region = require_section(config.region, "region");
      const auto& path = require_section(config.path, "path");
      const auto& params = require_section(config.sonar, "sonar");
      const auto& settings = require_section(config.mission, "mission");
      const auto report = mission_report(params, path, region, settings.scans, settings.range,
                                         mc_settings(config, mission_o));
      write_output(mission_o, emit_mission_csv(report), out);
    } else if (conc->parsed()) {
      const auto config = load_config(conc_o);
      const auto report = concordance(reference_bundle(mc_settings(config, conc_o)));
      write_output(conc_o, format == "json" ? emit_concordance_json(report) : emit_concordance_text(report), out);
    }
  } catch (const ParseError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace scanplan
