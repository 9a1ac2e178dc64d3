#include "filsim/runspec.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace filsim {

namespace {

std::string trim(const std::string& s) {
  auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

const std::set<std::string> kStickSlipKeys = {
    "m", "M1", "M2", "k", "Fc1", "Fc2", "amp", "omega", "phi", "x0"};
const std::set<std::string> kBeltKeys = {
    "m1", "m2", "m3", "k1", "k2", "k3", "k12", "k13", "k23",
    "Fc1", "Fc2", "Fc3", "v_d", "amp", "omega", "x0"};

std::array<double, 6> parse_x0(const std::string& value) {
  std::array<double, 6> out{};
  std::stringstream ss(value);
  std::string tok;
  std::size_t i = 0;
  while (std::getline(ss, tok, ',')) {
    if (i >= out.size())
      throw usage_error("x0 expects 6 comma-separated values, got more");
    out[i++] = parse_real("x0", trim(tok));
  }
  if (i != out.size())
    throw usage_error("x0 expects 6 comma-separated values, got " +
                      std::to_string(i));
  return out;
}

}  // namespace

double parse_real(const std::string& key, const std::string& value) {
  const std::string v = trim(value);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || ptr != v.data() + v.size())
    throw usage_error("invalid number for '" + key + "': '" + value + "'");
  return out;
}

std::map<std::string, std::string> parse_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw usage_error("config line " + std::to_string(lineno) +
                        ": expected 'key = value', got '" + line + "'");
    std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw usage_error("config line " + std::to_string(lineno) +
                        ": empty key");
    kv[key] = value;
  }
  return kv;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw usage_error("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

void apply_config(RunSpec& spec, const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    if (key == "model") {
      spec.model = value;
    } else if (key == "t_end") {
      spec.config.t_end = parse_real(key, value);
    } else if (key == "dt_init") {
      spec.config.dt_init = parse_real(key, value);
    } else if (key == "dt_min") {
      spec.config.dt_min = parse_real(key, value);
    } else if (key == "dt_max") {
      spec.config.dt_max = parse_real(key, value);
    } else if (key == "atol") {
      spec.config.atol = parse_real(key, value);
    } else if (key == "rtol") {
      spec.config.rtol = parse_real(key, value);
    } else if (key == "trace") {
      spec.trace_path = value;
    } else if (key == "events") {
      spec.events_path = value;
    } else if (key == "plot") {
      spec.plot_path = value;
    } else if (key == "plot_vars") {
      spec.plot_vars.clear();
      std::stringstream ss(value);
      std::string tok;
      while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (!tok.empty()) spec.plot_vars.push_back(tok);
      }
    } else if (key == "seed") {
      spec.seed = static_cast<unsigned>(parse_real(key, value));
    } else {
      // Remaining keys are model parameter overrides; checked against the
      // chosen model in build_run once the model name is final.
      spec.params[key] = value;
    }
  }
}

RunSpec run_spec_from_config(const std::string& text) {
  RunSpec spec;
  apply_config(spec, parse_config_text(text));
  return spec;
}

std::string RunSpec::to_config_string() const {
  std::ostringstream out;
  out.precision(17);
  out << "model = " << model << "\n";
  out << "t_end = " << config.t_end << "\n";
  out << "dt_init = " << config.dt_init << "\n";
  out << "dt_min = " << config.dt_min << "\n";
  out << "dt_max = " << config.dt_max << "\n";
  out << "atol = " << config.atol << "\n";
  out << "rtol = " << config.rtol << "\n";
  out << "trace = " << trace_path << "\n";
  out << "events = " << events_path << "\n";
  if (!plot_path.empty()) out << "plot = " << plot_path << "\n";
  if (!plot_vars.empty()) {
    out << "plot_vars = ";
    for (std::size_t i = 0; i < plot_vars.size(); ++i)
      out << (i ? "," : "") << plot_vars[i];
    out << "\n";
  }
  if (seed != 0) out << "seed = " << seed << "\n";
  for (const auto& [key, value] : params) out << key << " = " << value << "\n";
  return out.str();
}

BuiltRun build_run(const RunSpec& spec) {
  if (spec.model == "stickslip2") {
    StickSlip2Params p;
    for (const auto& [key, value] : spec.params) {
      if (!kStickSlipKeys.count(key))
        throw usage_error("unknown parameter '" + key +
                          "' for model stickslip2");
      if (key == "m") p.m = parse_real(key, value);
      else if (key == "M1") p.M1 = parse_real(key, value);
      else if (key == "M2") p.M2 = parse_real(key, value);
      else if (key == "k") p.k = parse_real(key, value);
      else if (key == "Fc1") p.Fc1 = parse_real(key, value);
      else if (key == "Fc2") p.Fc2 = parse_real(key, value);
      else if (key == "amp") p.A_amp = parse_real(key, value);
      else if (key == "omega") p.omega = parse_real(key, value);
      else if (key == "phi") p.phi = parse_real(key, value);
      else if (key == "x0") p.x0 = parse_x0(value);
    }
    return {make_case_study_1(p), initial_state(p)};
  }
  if (spec.model == "belt3") {
    Belt3Params p;
    for (const auto& [key, value] : spec.params) {
      if (!kBeltKeys.count(key))
        throw usage_error("unknown parameter '" + key + "' for model belt3");
      if (key == "m1") p.m1 = parse_real(key, value);
      else if (key == "m2") p.m2 = parse_real(key, value);
      else if (key == "m3") p.m3 = parse_real(key, value);
      else if (key == "k1") p.k1 = parse_real(key, value);
      else if (key == "k2") p.k2 = parse_real(key, value);
      else if (key == "k3") p.k3 = parse_real(key, value);
      else if (key == "k12") p.k12 = parse_real(key, value);
      else if (key == "k13") p.k13 = parse_real(key, value);
      else if (key == "k23") p.k23 = parse_real(key, value);
      else if (key == "Fc1") p.Fc1 = parse_real(key, value);
      else if (key == "Fc2") p.Fc2 = parse_real(key, value);
      else if (key == "Fc3") p.Fc3 = parse_real(key, value);
      else if (key == "v_d") p.v_d = parse_real(key, value);
      else if (key == "amp") p.amp = parse_real(key, value);
      else if (key == "omega") p.omega = parse_real(key, value);
      else if (key == "x0") p.x0 = parse_x0(value);
    }
    return {make_case_study_2(p), initial_state(p)};
  }
  if (spec.model.empty())
    throw usage_error("no model selected; available: stickslip2, belt3");
  throw usage_error("unknown model '" + spec.model +
                    "'; available: stickslip2, belt3");
}

}  // namespace filsim
