#include "scanplan/config.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>

#include "scanplan/errors.hpp"

namespace scanplan {

namespace {

struct Entry {
  std::string value;
  std::size_t line = 0;
};

const std::set<std::string, std::less<>> kKnownKeys = {
    "region.delta",
    "path.type",
    "path.amplitude",
    "path.waypoints",
    "mc.trials",
    "mc.seed",
    "mc.threads",
    "sweep.epsilon_min",
    "sweep.epsilon_max",
    "sweep.epsilon_steps",
    "sweep.scans",
    "rule_of_thumb.ratio_squared",
    "rule_of_thumb.target",
    "rule_of_thumb.n_max",
    "sonar.source_level_db",
    "sonar.frequency",
    "sonar.detection_index",
    "sonar.pulse_duration_s",
    "sonar.cylinder_length",
    "sonar.cylinder_radius",
    "sonar.aspect_angle_rad",
    "sonar.sound_speed_mph",
    "sonar.rl_factor",
    "sonar.absorption_db_per_nmi",
    "sonar.wavelength_ft",
    "mission.range_min",
    "mission.range_max",
    "mission.range_steps",
    "mission.scans",
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto comma = s.find(',', start);
    out.push_back(trim(s.substr(start, comma == std::string_view::npos ? s.size() - start
                                                                        : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

class Reader {
 public:
  explicit Reader(std::map<std::string, Entry, std::less<>> entries)
      : entries_(std::move(entries)) {}

  bool has_section(std::string_view prefix) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const auto& kv) { return kv.first.starts_with(prefix); });
  }

  bool has(std::string_view key) const { return entries_.find(key) != entries_.end(); }

  const Entry& entry(std::string_view key) const {
    const auto it = entries_.find(key);
    if (it == entries_.end()) throw ParseError(0, fmt::format("missing required key '{}'", key));
    return it->second;
  }

  std::size_t line(std::string_view key) const { return has(key) ? entry(key).line : 0; }

  double real(std::string_view key) const {
    const auto& e = entry(key);
    return parse_real(e.value, e.line, key);
  }

  template <typename Int>
  Int integer(std::string_view key) const {
    const auto& e = entry(key);
    return parse_integer<Int>(e.value, e.line, key);
  }

  std::vector<int> int_list(std::string_view key) const {
    const auto& e = entry(key);
    std::vector<int> out;
    for (auto item : split_list(e.value)) out.push_back(parse_integer<int>(item, e.line, key));
    return out;
  }

  std::vector<double> real_list(std::string_view key) const {
    const auto& e = entry(key);
    std::vector<double> out;
    for (auto item : split_list(e.value)) out.push_back(parse_real(item, e.line, key));
    return out;
  }

  const std::string& text(std::string_view key) const { return entry(key).value; }

 private:
  static double parse_real(std::string_view s, std::size_t line, std::string_view key) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw ParseError(line, fmt::format("'{}' expects a number, got '{}'", key, s));
    }
    return v;
  }

  template <typename Int>
  static Int parse_integer(std::string_view s, std::size_t line, std::string_view key) {
    Int v{};
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
      throw ParseError(line, fmt::format("'{}' expects an integer, got '{}'", key, s));
    }
    return v;
  }

  std::map<std::string, Entry, std::less<>> entries_;
};

// Runs `build`, converting argument errors into a ParseError at `line`.
template <typename F>
auto at_line(std::size_t line, F&& build) {
  try {
    return build();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ParseError(line, e.what());
  }
}

void require_keys(const Reader& r, std::initializer_list<std::string_view> keys) {
  for (auto key : keys) r.entry(key);
}

std::vector<int> positive_scans(const Reader& r, std::string_view key) {
  auto scans = r.int_list(key);
  for (int n : scans) {
    if (n < 1) throw ParseError(r.line(key), fmt::format("'{}' entries must be >= 1", key));
  }
  return scans;
}

LinearGrid grid(const Reader& r, std::string_view min_key, std::string_view max_key,
                std::string_view steps_key) {
  LinearGrid g{r.real(min_key), r.real(max_key), r.integer<int>(steps_key)};
  at_line(r.line(steps_key), [&] { return g.values(); });
  return g;
}

}  // namespace

MissionConfig parse_config(std::string_view text) {
  std::map<std::string, Entry, std::less<>> entries;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    std::string_view line =
        text.substr(start, nl == std::string_view::npos ? text.size() - start : nl - start);
    start = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ParseError(line_no, "missing key before '='");
    if (!kKnownKeys.contains(key)) throw ParseError(line_no, fmt::format("unknown key '{}'", key));
    if (value.empty()) throw ParseError(line_no, fmt::format("missing value for '{}'", key));
    if (!entries.emplace(key, Entry{value, line_no}).second) {
      throw ParseError(line_no, fmt::format("duplicate key '{}'", key));
    }
  }
  if (entries.empty()) throw ParseError(0, "configuration contains no keys");

  const Reader r(std::move(entries));
  MissionConfig config;

  if (r.has_section("region.")) {
    const double delta = r.real("region.delta");
    config.region = at_line(r.line("region.delta"), [&] { return SurveillanceRegion(delta); });
  }

  if (r.has_section("path.")) {
    const auto& type = r.text("path.type");
    SurveillancePath path;
    if (type == "lemniscate") {
      if (r.has("path.waypoints")) {
        throw ParseError(r.line("path.waypoints"), "'path.waypoints' needs path.type = waypoints");
      }
      path = TwoLobeLemniscate{r.real("path.amplitude")};
    } else if (type == "waypoints") {
      if (r.has("path.amplitude")) {
        throw ParseError(r.line("path.amplitude"), "'path.amplitude' needs path.type = lemniscate");
      }
      const auto coords = r.real_list("path.waypoints");
      if (coords.size() % 2 != 0) {
        throw ParseError(r.line("path.waypoints"), "waypoints need an even number of coordinates");
      }
      ExplicitWaypoints wp;
      for (std::size_t i = 0; i < coords.size(); i += 2) wp.points.push_back({coords[i], coords[i + 1]});
      path = std::move(wp);
    } else {
      throw ParseError(r.line("path.type"), fmt::format("unknown path type '{}'", type));
    }
    const auto line = r.line(type == "lemniscate" ? "path.amplitude" : "path.waypoints");
    at_line(line, [&] { validate_path(path); return 0; });
    config.path = std::move(path);
  }

  if (r.has_section("mc.")) {
    MonteCarloConfig mc;
    mc.trials = r.integer<std::uint64_t>("mc.trials");
    mc.seed = r.integer<std::uint64_t>("mc.seed");
    if (r.has("mc.threads")) mc.threads = r.integer<unsigned>("mc.threads");
    if (mc.trials < 1) throw ParseError(r.line("mc.trials"), "'mc.trials' must be >= 1");
    config.mc = mc;
  }

  if (r.has_section("sweep.")) {
    require_keys(r, {"sweep.epsilon_min", "sweep.epsilon_max", "sweep.epsilon_steps", "sweep.scans"});
    SweepSettings s;
    s.epsilon = grid(r, "sweep.epsilon_min", "sweep.epsilon_max", "sweep.epsilon_steps");
    if (s.epsilon.min < 0.0) throw ParseError(r.line("sweep.epsilon_min"), "epsilon must be >= 0");
    s.scans = positive_scans(r, "sweep.scans");
    config.sweep = std::move(s);
  }

  if (r.has_section("rule_of_thumb.")) {
    RuleOfThumbSettings s;
    s.ratio_squared = r.real("rule_of_thumb.ratio_squared");
    s.target = r.real("rule_of_thumb.target");
    if (r.has("rule_of_thumb.n_max")) {
      s.n_max = r.integer<int>("rule_of_thumb.n_max");
      if (*s.n_max < 1) throw ParseError(r.line("rule_of_thumb.n_max"), "'n_max' must be >= 1");
    }
    if (!(s.ratio_squared > 0.0)) {
      throw ParseError(r.line("rule_of_thumb.ratio_squared"), "'ratio_squared' must be positive");
    }
    if (!(s.target > 0.0 && s.target < 1.0)) {
      throw ParseError(r.line("rule_of_thumb.target"), "'target' must lie in (0, 1)");
    }
    config.rule_of_thumb = s;
  }

  if (r.has_section("sonar.")) {
    SonarParameters p;
    p.source_level_db = r.real("sonar.source_level_db");
    p.frequency = r.real("sonar.frequency");
    p.detection_index = r.real("sonar.detection_index");
    p.pulse_duration_s = r.real("sonar.pulse_duration_s");
    p.cylinder_length = r.real("sonar.cylinder_length");
    p.cylinder_radius = r.real("sonar.cylinder_radius");
    p.aspect_angle_rad = r.real("sonar.aspect_angle_rad");
    p.sound_speed_mph = r.real("sonar.sound_speed_mph");
    p.rl_factor = r.real("sonar.rl_factor");
    if (r.has("sonar.absorption_db_per_nmi")) p.absorption_override = r.real("sonar.absorption_db_per_nmi");
    if (r.has("sonar.wavelength_ft")) p.wavelength_override_ft = r.real("sonar.wavelength_ft");
    at_line(r.line("sonar.source_level_db"), [&] { p.validate(); return 0; });
    config.sonar = p;
  }

  if (r.has_section("mission.")) {
    require_keys(r, {"mission.range_min", "mission.range_max", "mission.range_steps", "mission.scans"});
    MissionSettings s;
    s.range = grid(r, "mission.range_min", "mission.range_max", "mission.range_steps");
    if (!(s.range.min > 0.0)) throw ParseError(r.line("mission.range_min"), "ranges must be positive");
    s.scans = positive_scans(r, "mission.scans");
    config.mission = std::move(s);
  }

  return config;
}

namespace {

std::string join_ints(const std::vector<int>& v) {
  return fmt::format("{}", fmt::join(v, ", "));
}

}  // namespace

std::string emit_config(const MissionConfig& c) {
  std::string out;
  auto put = [&](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  if (c.region) put("region.delta", c.region->delta());
  if (c.path) {
    if (const auto* lem = std::get_if<TwoLobeLemniscate>(&*c.path)) {
      put("path.type", "lemniscate");
      put("path.amplitude", lem->amplitude);
    } else {
      std::vector<double> coords;
      for (const auto& p : std::get<ExplicitWaypoints>(*c.path).points) {
        coords.push_back(p.x);
        coords.push_back(p.y);
      }
      put("path.type", "waypoints");
      put("path.waypoints", fmt::format("{}", fmt::join(coords, ", ")));
    }
  }
  if (c.mc) {
    put("mc.trials", c.mc->trials);
    put("mc.seed", c.mc->seed);
    put("mc.threads", c.mc->threads);
  }
  if (c.sweep) {
    put("sweep.epsilon_min", c.sweep->epsilon.min);
    put("sweep.epsilon_max", c.sweep->epsilon.max);
    put("sweep.epsilon_steps", c.sweep->epsilon.steps);
    put("sweep.scans", join_ints(c.sweep->scans));
  }
  if (c.rule_of_thumb) {
    put("rule_of_thumb.ratio_squared", c.rule_of_thumb->ratio_squared);
    put("rule_of_thumb.target", c.rule_of_thumb->target);
    if (c.rule_of_thumb->n_max) put("rule_of_thumb.n_max", *c.rule_of_thumb->n_max);
  }
  if (c.sonar) {
    const auto& p = *c.sonar;
    put("sonar.source_level_db", p.source_level_db);
    put("sonar.frequency", p.frequency);
    put("sonar.detection_index", p.detection_index);
    put("sonar.pulse_duration_s", p.pulse_duration_s);
    put("sonar.cylinder_length", p.cylinder_length);
    put("sonar.cylinder_radius", p.cylinder_radius);
    put("sonar.aspect_angle_rad", p.aspect_angle_rad);
    put("sonar.sound_speed_mph", p.sound_speed_mph);
    put("sonar.rl_factor", p.rl_factor);
    if (p.absorption_override) put("sonar.absorption_db_per_nmi", *p.absorption_override);
    if (p.wavelength_override_ft) put("sonar.wavelength_ft", *p.wavelength_override_ft);
  }
  if (c.mission) {
    put("mission.range_min", c.mission->range.min);
    put("mission.range_max", c.mission->range.max);
    put("mission.range_steps", c.mission->range.steps);
    put("mission.scans", join_ints(c.mission->scans));
  }
  return out;
}

}  // namespace scanplan
