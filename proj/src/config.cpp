#include "swarmfold/config.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>

#include "swarmfold/error.hpp"

namespace swarmfold {

namespace {

[[noreturn]] void reject(std::string_view key, const std::string& why) {
  throw Error("config", "key '" + std::string(key) + "': " + why);
}

double to_double(std::string_view key, std::string_view value) {
  const std::string s(value);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || errno == ERANGE || !std::isfinite(v)) {
    reject(key, "'" + s + "' is not a number");
  }
  return v;
}

int to_int(std::string_view key, std::string_view value) {
  const double v = to_double(key, value);
  if (v != std::floor(v) || std::abs(v) > 1e9) reject(key, "'" + std::string(value) + "' is not an integer");
  return static_cast<int>(v);
}

bool to_bool(std::string_view key, std::string_view value) {
  if (value == "1" || value == "true" || value == "yes" || value == "on") return true;
  if (value == "0" || value == "false" || value == "no" || value == "off") return false;
  reject(key, "'" + std::string(value) + "' is not a boolean");
}

const std::set<std::string, std::less<>>& sim_keys() {
  static const std::set<std::string, std::less<>> keys = {
      "agents",   "steps",     "half_width", "half_height", "dt",
      "radius",   "speed_jitter", "base_speed", "fast_speed", "calm_noise",
      "agitated_noise", "rotate_alignment", "fixed_speed_jitter"};
  return keys;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

void apply_setting(PipelineConfig& c, std::string_view key, std::string_view value) {
  if (key == "scenario") {
    c.scenario = std::string(value);
  } else if (key == "input") {
    c.input = std::string(value);
  } else if (key == "seed") {
    const std::string s(value);
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(s.c_str(), &end, 10);
    if (s.empty() || s.front() == '-' || end != s.c_str() + s.size() || errno == ERANGE) {
      reject(key, "'" + s + "' is not a non-negative integer");
    }
    c.seed = v;
  } else if (key == "xi1") {
    c.observables.weights.speed = to_double(key, value);
  } else if (key == "xi2") {
    c.observables.weights.polarization = to_double(key, value);
  } else if (key == "epsilon_mode" || key == "epsilon-mode") {
    if (value == "all_pairs" || value == "all-pairs") {
      c.observables.epsilon_mode = EpsilonMode::all_pairs;
    } else if (value == "nearest_neighbor" || value == "nearest-neighbor") {
      c.observables.epsilon_mode = EpsilonMode::nearest_neighbor;
    } else {
      reject(key, "expected all_pairs or nearest_neighbor");
    }
  } else if (key == "speed_normalization") {
    c.observables.speed_normalization = to_double(key, value);
  } else if (key == "k") {
    c.isomap.k = to_int(key, value);
  } else if (key == "dmax") {
    c.isomap.max_dimension = to_int(key, value);
  } else if (key == "threshold") {
    c.isomap.threshold = to_double(key, value);
  } else if (key == "min_len" || key == "min-len") {
    c.segments.min_length = to_int(key, value);
  } else if (key == "regimes") {
    c.segments.regimes = to_int(key, value);
  } else if (key == "merge_tol" || key == "merge-tol") {
    c.segments.merge_tolerance = to_double(key, value);
  } else if (key == "out") {
    c.out_dir = std::string(value);
  } else if (key == "sigmoid") {
    if (value == "normalized") {
      c.sigmoid = SigmoidArgument::normalized;
    } else if (value == "literal") {
      c.sigmoid = SigmoidArgument::literal;
    } else {
      reject(key, "expected normalized or literal");
    }
  } else if (key == "track") {
    if (value != "wrapped" && value != "unwrapped") reject(key, "expected wrapped or unwrapped");
    c.use_wrapped_track = value == "wrapped";
  } else if (key == "match_periodic") {
    c.periodic_matching = to_bool(key, value);
  } else if (key == "canonicalize") {
    c.canonicalize = to_bool(key, value);
  } else if (key == "dump_correspondence") {
    c.dump_correspondence = to_bool(key, value);
  } else if (sim_keys().contains(key)) {
    c.sim_overrides[std::string(key)] = to_double(key, value);
  } else {
    reject(key, "unknown setting");
  }
}

void apply_config_text(PipelineConfig& config, std::istream& in) {
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string text = trim(line);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw Error("config", "line " + std::to_string(line_no) + ": expected key = value");
    }
    apply_setting(config, trim(std::string_view(text).substr(0, eq)),
                  trim(std::string_view(text).substr(eq + 1)));
  }
}

void apply_config_file(PipelineConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("config", "cannot read '" + path.string() + "'");
  apply_config_text(config, in);
}

SimParams PipelineConfig::sim_params() const {
  SimParams p = scenario_defaults(scenario);
  for (const auto& [key, v] : sim_overrides) {
    auto as_int = [&] {
      if (v != std::floor(v)) reject(key, "must be an integer");
      return static_cast<int>(v);
    };
    if (key == "agents") p.agent_count = as_int();
    else if (key == "steps") p.step_count = as_int();
    else if (key == "half_width") p.half_width = v;
    else if (key == "half_height") p.half_height = v;
    else if (key == "dt") p.time_step = v;
    else if (key == "radius") p.interaction_radius = v;
    else if (key == "speed_jitter") p.speed_jitter = v;
    else if (key == "base_speed") p.base_speed = v;
    else if (key == "fast_speed") p.fast_speed = v;
    else if (key == "calm_noise") p.calm_noise = v;
    else if (key == "agitated_noise") p.agitated_noise = v;
    else if (key == "rotate_alignment") p.rotate_alignment = v != 0.0;
    else if (key == "fixed_speed_jitter") p.fixed_speed_jitter = v != 0.0;
  }
  p.seed = seed;
  return p;
}

void PipelineConfig::validate() const {
  const bool has_scenario = !scenario.empty(), has_input = !input.empty();
  if (has_scenario == has_input) {
    throw Error("config", "key 'scenario'/'input': exactly one must be set");
  }
  if (has_scenario && scenario != "speed-switch" && scenario != "noise-switch" &&
      scenario != "split-rejoin") {
    reject("scenario", "unknown scenario '" + scenario + "'");
  }
  if (!has_scenario && !sim_overrides.empty()) {
    reject(sim_overrides.begin()->first, "simulation settings need a scenario");
  }
  const Weights& w = observables.weights;
  if (!(w.speed >= 0.0 && w.speed <= 1.0)) reject("xi1", "must lie in [0, 1]");
  if (!(w.polarization >= 0.0 && w.polarization <= 1.0)) reject("xi2", "must lie in [0, 1]");
  if (!(w.speed + w.polarization <= 1.0 + 1e-12)) reject("xi2", "xi1 + xi2 must not exceed 1");
  if (observables.speed_normalization && !(*observables.speed_normalization > 0.0)) {
    reject("speed_normalization", "must be positive");
  }
  if (isomap.k < 1) reject("k", "must be >= 1");
  if (isomap.max_dimension < 1) reject("dmax", "must be >= 1");
  if (!(isomap.threshold > 0.0 && isomap.threshold < 1.0)) reject("threshold", "must lie in (0, 1)");
  if (segments.min_length < 1) reject("min_len", "must be >= 1");
  if (segments.regimes < 2) reject("regimes", "must be >= 2");
  if (!(segments.merge_tolerance >= 0.0)) reject("merge_tol", "must be non-negative");
  if (has_scenario) {
    const SimParams p = sim_params();
    if (p.agent_count < 1) reject("agents", "must be >= 1");
    if (p.step_count < 2) reject("steps", "must be >= 2");
    if (!(p.half_width > 0.0)) reject("half_width", "must be positive");
    if (!(p.half_height > 0.0)) reject("half_height", "must be positive");
    if (!(p.time_step > 0.0)) reject("dt", "must be positive");
    if (!(p.interaction_radius > 0.0)) reject("radius", "must be positive");
    if (!(p.speed_jitter >= 0.0)) reject("speed_jitter", "must be non-negative");
    if (!(p.calm_noise >= 0.0)) reject("calm_noise", "must be non-negative");
    if (!(p.agitated_noise >= 0.0)) reject("agitated_noise", "must be non-negative");
  }
}

}  // namespace swarmfold
