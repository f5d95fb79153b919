#include "optokerr/harness/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "optokerr/constants.hpp"
#include "optokerr/error.hpp"

namespace optokerr::harness {

using nlohmann::json;

namespace {

[[noreturn]] void config_error(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

const std::map<std::string, double>& defaults() {
  static const std::map<std::string, double> d = {
      {"omega_m_hz", 10e6},         {"mass_kg", 10e-12},          {"q_factor", 5e5},
      {"length_m", 1e-3},           {"wavelength_m", 1064e-9},    {"power_w", 6.9e-3},
      {"kappa_over_omega_m", 0.1},  {"detuning_over_omega_m", 1.0}, {"gain_hz", 0.0},
      {"theta_rad", constants::pi / 2.0}, {"eta_hz", 0.0},        {"temperature_k", 0.4},
  };
  return d;
}

const std::vector<std::pair<TaskKind, std::string_view>>& task_names() {
  static const std::vector<std::pair<TaskKind, std::string_view>> t = {
      {TaskKind::SteadyState, "steady-state"},
      {TaskKind::StabilityMap, "stability-map"},
      {TaskKind::DisplacementSpectrum, "displacement-spectrum"},
      {TaskKind::EffectiveResponse, "effective-response"},
      {TaskKind::CoolingSweep, "cooling-sweep"},
      {TaskKind::OutputSpectra, "output-spectra"},
      {TaskKind::EntanglementSweep, "entanglement-sweep"},
  };
  return t;
}

double number_at(const json& j, const std::string& key, const std::string& where) {
  if (!j.is_number()) config_error(where + key + ": expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) config_error(where + key + ": not finite");
  return v;
}

std::size_t count_at(const json& j, const std::string& key) {
  if (!j.is_number_integer() || j.get<long long>() < 0) config_error(key + ": expected a nonnegative integer");
  return j.get<std::size_t>();
}

SweepAxis sweep_from_json(const json& j) {
  if (j.is_string()) return SweepAxis::parse(j.get<std::string>());
  if (!j.is_object()) config_error("sweep: expected an object or 'name:min:max:n[:log]'");
  SweepAxis a;
  for (const auto& [k, v] : j.items()) {
    if (k == "axis") {
      if (!v.is_string()) config_error("sweep.axis: expected a string");
      a.name = v.get<std::string>();
    } else if (k == "min") {
      a.min = number_at(v, k, "sweep.");
    } else if (k == "max") {
      a.max = number_at(v, k, "sweep.");
    } else if (k == "count") {
      a.count = count_at(v, "sweep.count");
    } else if (k == "scale") {
      const std::string s = v.is_string() ? v.get<std::string>() : "";
      if (s != "linear" && s != "log") config_error("sweep.scale: expected 'linear' or 'log'");
      a.log = s == "log";
    } else {
      config_error("sweep: unknown key '" + k + "'");
    }
  }
  return a;
}

}  // namespace

std::string_view to_string(TaskKind t) noexcept {
  for (const auto& [k, name] : task_names())
    if (k == t) return name;
  return "unknown";
}

TaskKind parse_task(const std::string& text) {
  for (const auto& [k, name] : task_names())
    if (name == text) return k;
  config_error("task: unknown task '" + text + "'");
}

ConfigParams::ConfigParams() : values_(defaults()) {}

const std::vector<std::string>& ConfigParams::names() {
  static const std::vector<std::string> n = [] {
    std::vector<std::string> v;
    for (const auto& [k, _] : defaults()) v.push_back(k);
    v.push_back("gain_over_kappa");
    return v;
  }();
  return n;
}

bool ConfigParams::known(const std::string& name) {
  for (const auto& n : names())
    if (n == name) return true;
  return false;
}

double ConfigParams::get(const std::string& name) const {
  if (name == "gain_over_kappa") {
    const double k = values_.at("kappa_over_omega_m") * constants::two_pi * values_.at("omega_m_hz");
    return values_.at("gain_hz") / k;
  }
  const auto it = values_.find(name);
  if (it == values_.end()) config_error("unknown parameter '" + name + "'");
  return it->second;
}

void ConfigParams::set(const std::string& name, double value) {
  if (!std::isfinite(value)) config_error(name + ": not finite");
  if (name == "gain_over_kappa") {
    values_["gain_hz"] = value * values_.at("kappa_over_omega_m") * constants::two_pi * values_.at("omega_m_hz");
    return;
  }
  if (!values_.count(name)) config_error("unknown parameter '" + name + "'");
  values_[name] = value;
}

SystemParams ConfigParams::to_system() const {
  SystemParams p;
  p.omega_m = constants::two_pi * values_.at("omega_m_hz");
  p.mass = values_.at("mass_kg");
  p.q_factor = values_.at("q_factor");
  p.length = values_.at("length_m");
  p.wavelength = values_.at("wavelength_m");
  p.power = values_.at("power_w");
  p.kappa = values_.at("kappa_over_omega_m") * p.omega_m;
  p.detuning = values_.at("detuning_over_omega_m") * p.omega_m;
  p.gain = values_.at("gain_hz");
  p.theta = values_.at("theta_rad");
  p.eta = values_.at("eta_hz");
  p.temperature = values_.at("temperature_k");
  return p;
}

SweepAxis SweepAxis::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4 && parts.size() != 5) config_error("axis: expected name:min:max:n[:log], got '" + text + "'");
  SweepAxis a;
  a.name = parts[0];
  try {
    std::size_t used = 0;
    a.min = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("min");
    a.max = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("max");
    const long long n = std::stoll(parts[3], &used);
    if (used != parts[3].size() || n < 0) throw std::invalid_argument("n");
    a.count = static_cast<std::size_t>(n);
  } catch (const std::exception&) {
    config_error("axis: bad number in '" + text + "'");
  }
  if (parts.size() == 5) {
    if (parts[4] == "log") {
      a.log = true;
    } else if (parts[4] != "linear") {
      config_error("axis: scale must be 'log' or 'linear'");
    }
  }
  return a;
}

VectorX SweepAxis::values() const {
  validate();
  const auto n = static_cast<Eigen::Index>(count);
  if (!log) return VectorX::LinSpaced(n, min, max);
  VectorX v = VectorX::LinSpaced(n, std::log10(min), std::log10(max));
  for (Eigen::Index i = 0; i < n; ++i) v[i] = std::pow(10.0, v[i]);
  v[0] = min;
  v[n - 1] = max;
  return v;
}

void SweepAxis::validate() const {
  if (name.empty()) config_error("sweep: empty axis name");
  if (!ConfigParams::known(name)) config_error("sweep: unknown parameter '" + name + "'");
  if (count < 2) config_error("sweep: count must be >= 2");
  if (!(min < max)) config_error("sweep: min must be < max");
  if (log && !(min > 0.0)) config_error("sweep: log scale needs min > 0");
}

void GridSpec::validate() const {
  if (count < 16) config_error("grid: count must be >= 16");
  if (!(min_over_omega_m < max_over_omega_m)) config_error("grid: min must be < max");
}

void ExperimentConfig::validate() const {
  grid.validate();
  if (sweep) sweep->validate();
  const bool needs_sweep = task == TaskKind::StabilityMap || task == TaskKind::CoolingSweep ||
                           task == TaskKind::EntanglementSweep;
  if (needs_sweep && !sweep) config_error(std::string("task ") + std::string(to_string(task)) + " needs a sweep axis");
  for (const Curve& c : curves) {
    for (const auto& [k, _] : c.overrides)
      if (!ConfigParams::known(k)) config_error("curve '" + c.label + "': unknown parameter '" + k + "'");
  }
  std::vector<std::string> labels;
  for (const Curve& c : curves) {
    for (const auto& l : labels)
      if (l == c.label) config_error("duplicate curve label '" + c.label + "'");
    labels.push_back(c.label);
  }
}

std::vector<Curve> ExperimentConfig::effective_curves() const {
  if (!curves.empty()) return curves;
  return {Curve{"base", {}}};
}

ConfigParams ExperimentConfig::curve_params(const Curve& c) const {
  ConfigParams p = params;
  // kappa first so that gain_over_kappa sees the curve's kappa
  if (c.overrides.count("kappa_over_omega_m")) p.set("kappa_over_omega_m", c.overrides.at("kappa_over_omega_m"));
  for (const auto& [k, v] : c.overrides)
    if (k != "kappa_over_omega_m") p.set(k, v);
  return p;
}

ExperimentConfig config_from_json_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("config: top level must be an object");

  ExperimentConfig c;
  std::vector<std::pair<std::string, double>> params;
  for (const auto& [k, v] : j.items()) {
    if (k == "name") {
      if (!v.is_string()) config_error("name: expected a string");
      c.name = v.get<std::string>();
    } else if (k == "description") {
      if (!v.is_string()) config_error("description: expected a string");
      c.description = v.get<std::string>();
    } else if (k == "task") {
      if (!v.is_string()) config_error("task: expected a string");
      c.task = parse_task(v.get<std::string>());
    } else if (k == "branch_policy") {
      if (!v.is_string()) config_error("branch_policy: expected a string");
      c.branch = BranchSelection::parse(v.get<std::string>());
    } else if (k == "output") {
      if (!v.is_string()) config_error("output: expected a string");
      c.output = v.get<std::string>();
    } else if (k == "sweep") {
      if (!v.is_null()) c.sweep = sweep_from_json(v);
    } else if (k == "grid") {
      if (!v.is_object()) config_error("grid: expected an object");
      for (const auto& [gk, gv] : v.items()) {
        if (gk == "min_over_omega_m") {
          c.grid.min_over_omega_m = number_at(gv, gk, "grid.");
        } else if (gk == "max_over_omega_m") {
          c.grid.max_over_omega_m = number_at(gv, gk, "grid.");
        } else if (gk == "count") {
          c.grid.count = count_at(gv, "grid.count");
        } else {
          config_error("grid: unknown key '" + gk + "'");
        }
      }
    } else if (k == "curves") {
      if (!v.is_array()) config_error("curves: expected an array");
      for (const auto& item : v) {
        if (!item.is_object()) config_error("curves: each entry must be an object");
        Curve cv;
        cv.label = "curve" + std::to_string(c.curves.size());
        for (const auto& [ck, cvv] : item.items()) {
          if (ck == "label") {
            if (!cvv.is_string()) config_error("curves.label: expected a string");
            cv.label = cvv.get<std::string>();
          } else {
            if (!ConfigParams::known(ck)) config_error("curves: unknown parameter '" + ck + "'");
            cv.overrides[ck] = number_at(cvv, ck, "curves.");
          }
        }
        c.curves.push_back(cv);
      }
    } else if (ConfigParams::known(k)) {
      params.emplace_back(k, number_at(v, k, ""));
    } else {
      config_error("unknown key '" + k + "'");
    }
  }
  // as in curve_params, kappa before gain_over_kappa
  for (const auto& [k, v] : params)
    if (k == "kappa_over_omega_m" || k == "omega_m_hz") c.params.set(k, v);
  for (const auto& [k, v] : params)
    if (k != "kappa_over_omega_m" && k != "omega_m_hz") c.params.set(k, v);
  c.validate();
  return c;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return config_from_json_text(buf.str());
}

std::string config_to_json_text(const ExperimentConfig& c) {
  json j;
  j["name"] = c.name;
  if (!c.description.empty()) j["description"] = c.description;
  j["task"] = std::string(to_string(c.task));
  for (const auto& [k, v] : c.params.values()) j[k] = v;
  if (!c.curves.empty()) {
    json arr = json::array();
    for (const Curve& cv : c.curves) {
      json o;
      o["label"] = cv.label;
      for (const auto& [k, v] : cv.overrides) o[k] = v;
      arr.push_back(o);
    }
    j["curves"] = arr;
  }
  if (c.sweep) {
    j["sweep"] = {{"axis", c.sweep->name},
                  {"min", c.sweep->min},
                  {"max", c.sweep->max},
                  {"count", c.sweep->count},
                  {"scale", c.sweep->log ? "log" : "linear"}};
  }
  j["grid"] = {{"min_over_omega_m", c.grid.min_over_omega_m},
               {"max_over_omega_m", c.grid.max_over_omega_m},
               {"count", c.grid.count}};
  j["branch_policy"] = c.branch.to_string();
  j["output"] = c.output;
  return j.dump(2);
}

}  // namespace optokerr::harness
