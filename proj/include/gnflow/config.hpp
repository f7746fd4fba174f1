#pragma once

// Scenario configuration: a flat INI-style key/value file with sections.
// Parsing is strict — unknown sections or keys are errors, because a typo'd
// tolerance would silently invalidate an acceptance run.

#include <cstdint>
#include <string>

#include "json.hpp"

namespace gnflow {

enum class ScenarioKind { equilibrium, solitary_wave, gaussian_hump, rough_data };
enum class ConvergeMode { temporal, spatial };

struct ScenarioConfig {
  // [scenario]
  ScenarioKind scenario = ScenarioKind::equilibrium;
  double a = 0.2;          // solitary-wave amplitude
  double u_scale = 1.0;    // multiplies the initial velocity
  double eps = 0.01;       // gaussian hump amplitude
  double width = 5.0;      // gaussian hump width
  double sigma = 0.6;      // rough-data regularity; also the diagnostics sigma
  double amplitude = 0.05; // rough-data Sobolev amplitude
  std::uint64_t seed = 1234;

  // [grid]
  double length = 80.0;
  int n = 1024;

  // [integrator]
  double dt = 0.0;  // 0 = auto
  double T = 1.0;
  double cfl_safety = 0.5;
  long max_steps = 2'000'000;

  // [output]
  int stride = 10;
  std::string directory = "out";
  bool write_csv = true;
  bool write_json = true;

  // [compare]
  double tolerance = 1e-4;

  // [converge]
  ConvergeMode mode = ConvergeMode::temporal;
  int levels = 3;
};

/// Parse + validate; `source` names the input in error messages.
ScenarioConfig parse_config(const std::string& text, const std::string& source);
ScenarioConfig load_config(const std::string& path);

/// Resolved configuration as JSON, suitable for bit-exact reruns.
nlohmann::json config_echo(const ScenarioConfig& cfg);

const char* to_string(ScenarioKind k);
const char* to_string(ConvergeMode m);

}  // namespace gnflow
