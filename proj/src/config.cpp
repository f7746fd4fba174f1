#include "gnflow/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "gnflow/errors.hpp"

namespace gnflow {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& source, int line,
                      const std::string& msg) {
  fail(ErrorKind::config_error,
       source + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& v, const std::string& source, int line) {
  try {
    size_t pos = 0;
    const double x = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    bad(source, line, "expected a number, got '" + v + "'");
  }
}

long parse_long(const std::string& v, const std::string& source, int line) {
  try {
    size_t pos = 0;
    const long x = std::stol(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    bad(source, line, "expected an integer, got '" + v + "'");
  }
}

}  // namespace

const char* to_string(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::equilibrium: return "equilibrium";
    case ScenarioKind::solitary_wave: return "solitary_wave";
    case ScenarioKind::gaussian_hump: return "gaussian_hump";
    case ScenarioKind::rough_data: return "rough_data";
  }
  return "unknown";
}

const char* to_string(ConvergeMode m) {
  return m == ConvergeMode::temporal ? "temporal" : "spatial";
}

ScenarioConfig parse_config(const std::string& text,
                            const std::string& source) {
  ScenarioConfig cfg;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find_first_of("#;");
    std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (s.empty()) continue;
    if (s.front() == '[') {
      if (s.back() != ']') bad(source, line, "unterminated section header");
      section = trim(s.substr(1, s.size() - 2));
      if (section != "scenario" && section != "grid" &&
          section != "integrator" && section != "output" &&
          section != "compare" && section != "converge")
        bad(source, line, "unknown section '" + section + "'");
      continue;
    }
    const auto eq = s.find('=');
    if (eq == std::string::npos) bad(source, line, "expected key = value");
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (section.empty()) bad(source, line, "key before any [section]");
    if (value.empty()) bad(source, line, "empty value for '" + key + "'");

    if (section == "scenario") {
      if (key == "name") {
        if (value == "equilibrium") cfg.scenario = ScenarioKind::equilibrium;
        else if (value == "solitary_wave") cfg.scenario = ScenarioKind::solitary_wave;
        else if (value == "gaussian_hump") cfg.scenario = ScenarioKind::gaussian_hump;
        else if (value == "rough_data") cfg.scenario = ScenarioKind::rough_data;
        else bad(source, line, "unknown scenario '" + value + "'");
      } else if (key == "a") cfg.a = parse_double(value, source, line);
      else if (key == "u_scale") cfg.u_scale = parse_double(value, source, line);
      else if (key == "eps") cfg.eps = parse_double(value, source, line);
      else if (key == "width") cfg.width = parse_double(value, source, line);
      else if (key == "sigma") cfg.sigma = parse_double(value, source, line);
      else if (key == "amplitude") cfg.amplitude = parse_double(value, source, line);
      else if (key == "seed") cfg.seed = std::uint64_t(parse_long(value, source, line));
      else bad(source, line, "unknown key 'scenario." + key + "'");
    } else if (section == "grid") {
      if (key == "length") cfg.length = parse_double(value, source, line);
      else if (key == "n") cfg.n = int(parse_long(value, source, line));
      else bad(source, line, "unknown key 'grid." + key + "'");
    } else if (section == "integrator") {
      if (key == "dt") cfg.dt = (value == "auto") ? 0.0 : parse_double(value, source, line);
      else if (key == "T") cfg.T = parse_double(value, source, line);
      else if (key == "cfl_safety") cfg.cfl_safety = parse_double(value, source, line);
      else if (key == "max_steps") cfg.max_steps = parse_long(value, source, line);
      else bad(source, line, "unknown key 'integrator." + key + "'");
    } else if (section == "output") {
      if (key == "stride") cfg.stride = int(parse_long(value, source, line));
      else if (key == "directory") cfg.directory = value;
      else if (key == "formats") {
        cfg.write_csv = false;
        cfg.write_json = false;
        std::istringstream fs(value);
        std::string tok;
        while (std::getline(fs, tok, ',')) {
          tok = trim(tok);
          if (tok == "csv") cfg.write_csv = true;
          else if (tok == "json") cfg.write_json = true;
          else bad(source, line, "unknown format '" + tok + "'");
        }
      } else bad(source, line, "unknown key 'output." + key + "'");
    } else if (section == "compare") {
      if (key == "tolerance") cfg.tolerance = parse_double(value, source, line);
      else bad(source, line, "unknown key 'compare." + key + "'");
    } else if (section == "converge") {
      if (key == "mode") {
        if (value == "temporal") cfg.mode = ConvergeMode::temporal;
        else if (value == "spatial") cfg.mode = ConvergeMode::spatial;
        else bad(source, line, "unknown converge mode '" + value + "'");
      } else if (key == "levels") cfg.levels = int(parse_long(value, source, line));
      else bad(source, line, "unknown key 'converge." + key + "'");
    }
  }

  // Range validation, mirroring the module preconditions downstream.
  const auto reject = [&](const std::string& msg) {
    fail(ErrorKind::config_error, source + ": " + msg);
  };
  if (!(cfg.length > 0.0)) reject("grid.length must be positive");
  if (cfg.n < 16 || cfg.n % 2 != 0) reject("grid.n must be even and >= 16");
  if (cfg.scenario == ScenarioKind::solitary_wave && !(cfg.a > 0.0 && cfg.a < 2.0))
    reject("scenario.a must lie in (0, 2)");
  if (cfg.scenario == ScenarioKind::rough_data && !(cfg.sigma > 0.0))
    reject("scenario.sigma must be positive");
  if (cfg.scenario == ScenarioKind::rough_data && cfg.amplitude < 0.0)
    reject("scenario.amplitude must be >= 0");
  if (cfg.dt < 0.0) reject("integrator.dt must be positive or auto");
  if (!(cfg.T >= 0.0)) reject("integrator.T must be >= 0");
  if (!(cfg.cfl_safety > 0.0 && cfg.cfl_safety <= 1.0))
    reject("integrator.cfl_safety must lie in (0, 1]");
  if (cfg.max_steps < 1) reject("integrator.max_steps must be >= 1");
  if (cfg.stride < 1) reject("output.stride must be >= 1");
  if (cfg.directory.empty()) reject("output.directory must not be empty");
  if (!(cfg.tolerance > 0.0)) reject("compare.tolerance must be positive");
  if (cfg.levels < 2) reject("converge.levels must be >= 2 (a refinement ladder)");
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::config_error, "cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path);
}

nlohmann::json config_echo(const ScenarioConfig& cfg) {
  nlohmann::json j;
  j["scenario"] = {{"name", to_string(cfg.scenario)},
                   {"a", cfg.a},
                   {"u_scale", cfg.u_scale},
                   {"eps", cfg.eps},
                   {"width", cfg.width},
                   {"sigma", cfg.sigma},
                   {"amplitude", cfg.amplitude},
                   {"seed", cfg.seed}};
  j["grid"] = {{"length", cfg.length}, {"n", cfg.n}};
  j["integrator"] = {{"dt", cfg.dt > 0.0 ? nlohmann::json(cfg.dt)
                                         : nlohmann::json("auto")},
                     {"T", cfg.T},
                     {"cfl_safety", cfg.cfl_safety},
                     {"max_steps", cfg.max_steps}};
  std::string formats;
  if (cfg.write_csv) formats += "csv";
  if (cfg.write_json) formats += formats.empty() ? "json" : ",json";
  j["output"] = {{"stride", cfg.stride},
                 {"directory", cfg.directory},
                 {"formats", formats}};
  j["compare"] = {{"tolerance", cfg.tolerance}};
  j["converge"] = {{"mode", to_string(cfg.mode)}, {"levels", cfg.levels}};
  return j;
}

}  // namespace gnflow
