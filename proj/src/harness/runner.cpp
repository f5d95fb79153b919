#include "optokerr/harness/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <thread>

#include <json.hpp>

#include "optokerr/constants.hpp"
#include "optokerr/entangle.hpp"
#include "optokerr/error.hpp"
#include "optokerr/linearized.hpp"
#include "optokerr/mechspectra.hpp"
#include "optokerr/outfield.hpp"
#include "optokerr/steadystate.hpp"

#ifndef OPTOKERR_VERSION
#define OPTOKERR_VERSION "unknown"
#endif

namespace optokerr::harness {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& t : pool) t.join();
}

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10e", v);
  return buf;
}

VectorX omega_grid(const ExperimentConfig& c, double omega_m) {
  return linear_grid(c.grid.min_over_omega_m * omega_m, c.grid.max_over_omega_m * omega_m, c.grid.count);
}

BranchSelection map_policy(const ExperimentConfig& c) {
  // a stability map must be allowed to land on unstable branches
  if (c.task == TaskKind::StabilityMap && c.branch.policy == BranchPolicy::LowestStable)
    return BranchSelection{BranchPolicy::Lowest, 0};
  return c.branch;
}

std::vector<std::string> point_columns(TaskKind task) {
  switch (task) {
    case TaskKind::SteadyState:
      return {"branch_count", "intensity", "re_amplitude", "im_amplitude", "detuning_eff_over_omega_m",
              "beta1_over_beta0"};
    case TaskKind::StabilityMap:
      return {"branch_count", "max_re_lambda_over_omega_m", "stable", "routh_stable", "s1", "s2", "s3"};
    case TaskKind::DisplacementSpectrum:
      return {"peak_count", "peak1_over_omega_m", "peak2_over_omega_m", "omega_plus_over_omega_m",
              "omega_minus_over_omega_m"};
    case TaskKind::EffectiveResponse:
      return {"omega_eff_at_omega_m_over_omega_m", "gamma_phys_at_omega_m_over_gamma_m",
              "gamma_phys_max_over_gamma_m"};
    case TaskKind::CoolingSweep:
      return {"n_m", "t_eff_k", "omega_eff_over_omega_m", "gamma_phys_over_gamma_m"};
    case TaskKind::OutputSpectra:
      return {"min_s_opt", "omega_at_min_s_opt_over_omega_m", "max_s_intensity",
              "omega_at_max_s_intensity_over_omega_m"};
    case TaskKind::EntanglementSweep:
      return {"E_N", "eta_minus", "lyapunov_residual"};
  }
  return {};
}

// Observables of one parameter point, in the order of point_columns().
std::vector<double> evaluate_point(const ExperimentConfig& c, const ConfigParams& cp) {
  const DerivedParams d = derive_params(cp.to_system());
  const double wm = d.input.omega_m;
  const BranchSet branches = solve_branches(d);
  const SteadyState ss = steady_state(branches, map_policy(c));

  switch (c.task) {
    case TaskKind::SteadyState: {
      const SusceptibilityParams sp = coupling_params(d, ss);
      return {static_cast<double>(branches.size()), ss.intensity, ss.amplitude.real(), ss.amplitude.imag(),
              ss.detuning_eff / wm, sp.beta0 != 0.0 ? sp.beta1 / sp.beta0 : kNaN};
    }
    case TaskKind::StabilityMap: {
      const StabilityReport r = stability(d, ss);
      return {static_cast<double>(branches.size()), r.max_real / wm, r.stable ? 1.0 : 0.0,
              r.routh_stable ? 1.0 : 0.0, r.printed->s1, r.printed->s2, r.printed->s3};
    }
    case TaskKind::DisplacementSpectrum: {
      const SpectrumGrid s = displacement_spectrum(omega_grid(c, wm), d, ss);
      const auto peaks = find_peaks(s);
      std::vector<double> top;
      for (const Peak& p : peaks) top.push_back(p.omega / wm);
      double plus = kNaN, minus = kNaN;
      try {
        const NormalModes nm = normal_modes(coupling_params(d, ss), wm);
        plus = nm.omega_plus / wm;
        minus = nm.omega_minus / wm;
      } catch (const Error&) {
      }
      return {static_cast<double>(peaks.size()), top.size() > 0 ? top[0] : kNaN, top.size() > 1 ? top[1] : kNaN,
              plus, minus};
    }
    case TaskKind::EffectiveResponse: {
      if (!stability(drift_matrix(d, ss)).stable) throw Error(ErrorKind::UnstableSystem, "unstable");
      const SusceptibilityParams sp = coupling_params(d, ss);
      VectorX at(1);
      at << wm;
      const EffectiveResponse r0 = effective_response(at, sp);
      const EffectiveResponse r = effective_response(omega_grid(c, wm), sp);
      return {r0.omega_eff[0] / wm, r0.gamma_phys[0] / d.gamma_m, r.gamma_phys.maxCoeff() / d.gamma_m};
    }
    case TaskKind::CoolingSweep: {
      const CoolingResult cr = cooling_figures(d, ss);
      return {cr.n_m, cr.t_eff, cr.omega_eff / wm, cr.gamma_phys / d.gamma_m};
    }
    case TaskKind::OutputSpectra: {
      const DriftMatrix m = drift_matrix(d, ss);
      const NoiseModel noise = NoiseModel::from(d);
      const TransferTable t = transfer_table(omega_grid(c, wm), m, d);
      const SpectrumGrid si = intensity_spectrum(t, noise);
      const QuadratureSpectrum so = optimal_squeezing(t, noise);
      Eigen::Index imin = 0, imax = 0;
      const double smin = so.s_phi.minCoeff(&imin);
      const double smax = si.values.maxCoeff(&imax);
      return {smin, t.omega[imin] / wm, smax, t.omega[imax] / wm};
    }
    case TaskKind::EntanglementSweep: {
      const DriftMatrix m = drift_matrix(d, ss);
      const CovarianceMatrix cm = solve_lyapunov(nondimensionalize(m, d));
      const EntanglementResult e = log_negativity(cm);
      return {e.log_negativity, e.eta_minus, cm.relative_residual()};
    }
  }
  return {};
}

Row guarded_point(const ExperimentConfig& c, const ConfigParams& cp, std::size_t width) {
  Row r;
  try {
    r.values = evaluate_point(c, cp);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config || e.kind() == ErrorKind::Io) throw;
    r.values.assign(width, kNaN);
    r.status = std::string(optokerr::to_string(e.kind()));
  }
  return r;
}

std::vector<std::string> param_comments(const ConfigParams& cp) {
  std::vector<std::string> out;
  for (const auto& [k, v] : cp.values()) out.push_back(k + " = " + fmt(v));
  return out;
}

json params_json(const ConfigParams& cp) {
  json j = json::object();
  for (const auto& [k, v] : cp.values()) j[k] = v;
  return j;
}

json derived_json(const ConfigParams& cp) {
  json j = json::object();
  try {
    const DerivedParams d = derive_params(cp.to_system());
    const SystemParams& p = d.input;
    j["omega_m_rad_s"] = p.omega_m;
    j["kappa_rad_s"] = p.kappa;
    j["detuning_rad_s"] = p.detuning;
    j["gain_rad_s"] = p.gain;
    j["eta_rad_s"] = p.eta;
    j["gamma_m_rad_s"] = d.gamma_m;
    j["omega_cav_rad_s"] = d.omega_cav;
    j["g_m_rad_s_per_m"] = d.g_m;
    j["g0_rad_s"] = d.g0;
    j["drive_per_s"] = d.drive;
    j["nbar"] = d.nbar;
    json warnings = json::array();
    for (const auto& w : validate(p).warnings) warnings.push_back(w.field + ": " + w.message);
    j["warnings"] = warnings;
  } catch (const Error& e) {
    j["error"] = e.what();
  }
  return j;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  out << text;
  if (!out) throw Error(ErrorKind::Io, "write failed for '" + path.string() + "'");
}

struct CurveOutput {
  Table table;
  std::vector<std::string> comments;
  json meta = json::object();
  bool failed = false;
};

// Grid output for one curve (no sweep axis).
CurveOutput curve_spectrum(const ExperimentConfig& c, const Curve& curve) {
  CurveOutput out;
  out.table.curve = curve.label;
  const ConfigParams cp = c.curve_params(curve);
  try {
    const DerivedParams d = derive_params(cp.to_system());
    const double wm = d.input.omega_m;
    const BranchSet branches = solve_branches(d);

    if (c.task == TaskKind::SteadyState) {
      out.table.columns = {"intensity", "re_amplitude", "im_amplitude", "detuning_eff_over_omega_m", "stable",
                           "usable", "fixed_point_residual"};
      for (const Branch& b : branches.branches)
        out.table.rows.push_back(Row{{b.intensity, b.state.amplitude.real(), b.state.amplitude.imag(),
                                      b.state.detuning_eff / wm, b.state.stable ? 1.0 : 0.0,
                                      b.state.usable ? 1.0 : 0.0, b.fixed_point_residual},
                                     "ok"});
      out.comments.push_back("one row per nonnegative intensity root, ascending");
      return out;
    }

    const SteadyState ss = steady_state(branches, c.branch);
    out.meta["steady_state"] = {{"branch", ss.branch},
                                {"intensity", ss.intensity},
                                {"re_amplitude", ss.amplitude.real()},
                                {"im_amplitude", ss.amplitude.imag()},
                                {"detuning_eff_over_omega_m", ss.detuning_eff / wm}};
    const VectorX w = omega_grid(c, wm);

    if (c.task == TaskKind::DisplacementSpectrum) {
      const SpectrumGrid s = displacement_spectrum(w, d, ss);
      const SpectrumGrid o = displacement_spectrum_oracle(w, drift_matrix(d, ss), NoiseModel::from(d));
      out.table.columns = {"omega_over_omega_m", "S_q", "S_q_oracle"};
      for (Eigen::Index i = 0; i < w.size(); ++i)
        out.table.rows.push_back(Row{{w[i] / wm, s.values[i], o.values[i]}, "ok"});
      out.comments.push_back("S_q: symmetrized mirror displacement spectrum in m^2 s");
      out.comments.push_back("S_q_oracle: same quantity from the direct 4x4 frequency-domain solve");
      json peaks = json::array();
      for (const Peak& p : find_peaks(s)) peaks.push_back({{"omega_over_omega_m", p.omega / wm}, {"S_q", p.value}});
      out.meta["peaks"] = peaks;
      try {
        const NormalModes nm = normal_modes(coupling_params(d, ss), wm);
        out.meta["normal_modes_over_omega_m"] = {nm.omega_minus / wm, nm.omega_plus / wm};
      } catch (const Error& e) {
        out.meta["normal_modes_over_omega_m"] = std::string(optokerr::to_string(e.kind()));
      }
    } else if (c.task == TaskKind::EffectiveResponse) {
      if (!stability(drift_matrix(d, ss)).stable) throw Error(ErrorKind::UnstableSystem, "steady state unstable");
      const EffectiveResponse r = effective_response(w, coupling_params(d, ss));
      out.table.columns = {"omega_over_omega_m", "omega_eff_over_omega_m", "gamma_phys_over_gamma_m",
                           "gamma_paper_kg_per_s"};
      for (Eigen::Index i = 0; i < w.size(); ++i)
        out.table.rows.push_back(
            Row{{w[i] / wm, r.omega_eff[i] / wm, r.gamma_phys[i] / d.gamma_m, r.gamma_paper[i]}, "ok"});
      out.comments.push_back("gamma_phys: effective damping rate; gamma_paper = mass * gamma_phys");
    } else if (c.task == TaskKind::OutputSpectra) {
      const NoiseModel noise = NoiseModel::from(d);
      const TransferTable t = transfer_table(w, drift_matrix(d, ss), d);
      const SpectrumGrid si = intensity_spectrum(t, noise);
      const QuadratureSpectrum so = optimal_squeezing(t, noise);
      out.table.columns = {"omega_over_omega_m", "S_intensity", "S_opt", "phi_opt_rad"};
      for (Eigen::Index i = 0; i < w.size(); ++i)
        out.table.rows.push_back(Row{{w[i] / wm, si.values[i], so.s_phi[i], so.phi_opt[i]}, "ok"});
      out.comments.push_back("shot-noise level: S_opt = 1 for vacuum; S_intensity = 0 for vacuum");
      out.meta["shot_noise_level"] = 1.0;
      out.meta["transfer_residual"] = t.max_residual;
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Config || e.kind() == ErrorKind::Io) throw;
    out.failed = true;
    out.meta["error"] = {{"kind", std::string(optokerr::to_string(e.kind()))}, {"message", e.what()}};
  }
  return out;
}

std::string safe_label(const std::string& s) {
  std::string out = s;
  for (char& ch : out)
    if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '_' || ch == '-')) ch = '_';
  return out;
}

}  // namespace

std::string table_to_csv(const Table& t, const std::vector<std::string>& header_comments) {
  std::string out;
  for (const auto& line : header_comments) out += "# " + line + "\n";
  for (std::size_t i = 0; i < t.columns.size(); ++i) out += (i ? "," : "") + t.columns[i];
  out += ",status\n";
  for (const Row& r : t.rows) {
    for (std::size_t i = 0; i < r.values.size(); ++i) out += (i ? "," : "") + fmt(r.values[i]);
    out += "," + r.status + "\n";
  }
  return out;
}

std::vector<Table> sweep(const ExperimentConfig& config, const SweepAxis& axis, unsigned threads) {
  axis.validate();
  const VectorX values = axis.values();
  const std::vector<Curve> curves = config.effective_curves();
  const std::vector<std::string> cols = point_columns(config.task);
  const std::size_t n = static_cast<std::size_t>(values.size());

  std::vector<Table> tables(curves.size());
  for (std::size_t k = 0; k < curves.size(); ++k) {
    tables[k].curve = curves[k].label;
    tables[k].columns = {axis.name};
    tables[k].columns.insert(tables[k].columns.end(), cols.begin(), cols.end());
    tables[k].rows.resize(n);
  }
  parallel_for(curves.size() * n, threads, [&](std::size_t job) {
    const std::size_t k = job / n, i = job % n;
    ConfigParams cp = config.curve_params(curves[k]);
    cp.set(axis.name, values[static_cast<Eigen::Index>(i)]);
    Row r = guarded_point(config, cp, cols.size());
    r.values.insert(r.values.begin(), values[static_cast<Eigen::Index>(i)]);
    tables[k].rows[i] = std::move(r);
  });
  return tables;
}

RunResult run(const ExperimentConfig& config, const RunOptions& options) {
  config.validate();
  const fs::path dir = options.output_dir.empty() ? fs::path(config.output) : fs::path(options.output_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorKind::Io, "cannot create output directory '" + dir.string() + "': " + ec.message());

  const std::vector<Curve> curves = config.effective_curves();
  RunResult result;
  json meta;
  meta["name"] = config.name;
  meta["description"] = config.description;
  meta["task"] = std::string(to_string(config.task));
  meta["version"] = OPTOKERR_VERSION;
  meta["branch_policy"] = config.branch.to_string();
  meta["units"] = "angular frequencies in rad/s; omega_m_hz is an ordinary frequency; gain_hz and eta_hz are "
                  "angular rates";
  meta["grid"] = {{"min_over_omega_m", config.grid.min_over_omega_m},
                  {"max_over_omega_m", config.grid.max_over_omega_m},
                  {"count", config.grid.count}};
  json curves_meta = json::array();

  if (config.sweep) {
    const SweepAxis& axis = *config.sweep;
    meta["sweep"] = {{"axis", axis.name}, {"min", axis.min}, {"max", axis.max}, {"count", axis.count},
                     {"scale", axis.log ? "log" : "linear"}};
    const std::vector<Table> tables = sweep(config, axis, options.threads);
    for (std::size_t k = 0; k < tables.size(); ++k) {
      const ConfigParams cp = config.curve_params(curves[k]);
      std::vector<std::string> comments = {"name: " + config.name, "curve: " + curves[k].label,
                                           "task: " + std::string(to_string(config.task)),
                                           "branch_policy: " + map_policy(config).to_string(),
                                           "sweep axis: " + axis.name + " (overrides the value below)"};
      for (const auto& line : param_comments(cp)) comments.push_back(line);
      const fs::path file = dir / (config.name + "_" + safe_label(curves[k].label) + ".csv");
      write_file(file, table_to_csv(tables[k], comments));
      result.artifacts.push_back(file.string());

      std::size_t failed = 0;
      json statuses = json::object();
      for (const Row& r : tables[k].rows) {
        if (r.status != "ok") ++failed;
        statuses[r.status] = statuses.value(r.status, 0) + 1;
      }
      result.evaluated += tables[k].rows.size();
      result.failed += failed;
      curves_meta.push_back({{"label", curves[k].label},
                             {"params", params_json(cp)},
                             {"derived", derived_json(cp)},
                             {"artifact", file.filename().string()},
                             {"status_counts", statuses}});
    }
    meta["columns"] = tables.empty() ? json::array() : json(tables.front().columns);
  } else {
    if (config.task == TaskKind::StabilityMap || config.task == TaskKind::CoolingSweep ||
        config.task == TaskKind::EntanglementSweep)
      throw Error(ErrorKind::Config, "task needs a sweep axis");
    std::vector<CurveOutput> outs(curves.size());
    parallel_for(curves.size(), options.threads,
                 [&](std::size_t k) { outs[k] = curve_spectrum(config, curves[k]); });
    for (std::size_t k = 0; k < curves.size(); ++k) {
      const ConfigParams cp = config.curve_params(curves[k]);
      json cm = outs[k].meta;
      cm["label"] = curves[k].label;
      cm["params"] = params_json(cp);
      cm["derived"] = derived_json(cp);
      ++result.evaluated;
      if (outs[k].failed) {
        ++result.failed;
        result.messages.push_back(curves[k].label + ": " + cm["error"]["message"].get<std::string>());
      } else {
        std::vector<std::string> comments = {"name: " + config.name, "curve: " + curves[k].label,
                                             "task: " + std::string(to_string(config.task)),
                                             "branch_policy: " + config.branch.to_string()};
        for (const auto& line : outs[k].comments) comments.push_back(line);
        for (const auto& line : param_comments(cp)) comments.push_back(line);
        const fs::path file = dir / (config.name + "_" + safe_label(curves[k].label) + ".csv");
        write_file(file, table_to_csv(outs[k].table, comments));
        result.artifacts.push_back(file.string());
        cm["artifact"] = file.filename().string();
        cm["rows"] = outs[k].table.rows.size();
      }
      curves_meta.push_back(cm);
    }
  }
  meta["curves"] = curves_meta;
  meta["evaluated"] = result.evaluated;
  meta["failed"] = result.failed;
  const fs::path sidecar = dir / (config.name + ".json");
  write_file(sidecar, meta.dump(2) + "\n");
  result.artifacts.push_back(sidecar.string());
  return result;
}

}  // namespace optokerr::harness
