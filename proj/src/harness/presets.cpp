#include "optokerr/harness/presets.hpp"

#include "optokerr/error.hpp"

namespace optokerr::harness {

namespace {

// Mirror, laser and bath shared by every figure; the figure functions below
// override what differs.
ExperimentConfig base(const std::string& id, TaskKind task) {
  ExperimentConfig c;
  c.name = id;
  c.task = task;
  c.output = "out/" + id;
  c.params.set("omega_m_hz", 10e6);
  c.params.set("mass_kg", 10e-12);
  c.params.set("q_factor", 5e5);
  c.params.set("wavelength_m", 1064e-9);
  c.params.set("theta_rad", 1.5707963267948966);
  c.params.set("temperature_k", 0.4);
  c.params.set("detuning_over_omega_m", 1.0);
  return c;
}

Curve curve(const std::string& label, double eta, double gain) {
  return Curve{label, {{"eta_hz", eta}, {"gain_hz", gain}}};
}

SweepAxis detuning_sweep() { return SweepAxis{"detuning_over_omega_m", 0.01, 2.0, 200, false}; }

ExperimentConfig fig2() {
  ExperimentConfig c = base("fig2", TaskKind::SteadyState);
  c.description = "steady-state intensity and beta_1/beta_0 versus G/kappa";
  c.params.set("length_m", 1e-3);
  c.params.set("power_w", 6.9e-3);
  c.params.set("kappa_over_omega_m", 0.1);
  c.curves = {Curve{"eta_0.01", {{"eta_hz", 0.01}}}, Curve{"eta_0.05", {{"eta_hz", 0.05}}}};
  c.sweep = SweepAxis{"gain_over_kappa", 0.0, 0.45, 200, false};
  return c;
}

ExperimentConfig fig3() {
  ExperimentConfig c = base("fig3", TaskKind::DisplacementSpectrum);
  c.description = "displacement spectrum, bare cavity and each nonlinearity alone and combined";
  c.params.set("length_m", 3e-3);
  c.params.set("mass_kg", 12e-12);
  c.params.set("power_w", 9e-3);
  c.params.set("kappa_over_omega_m", 0.02);
  c.curves = {curve("bare", 0.0, 0.0), curve("kerr", 0.01, 0.0), curve("gain", 0.0, 8e6),
              curve("kerr_gain", 0.01, 8e6)};
  c.grid = GridSpec{0.5, 1.5, 4000};
  return c;
}

ExperimentConfig fig4() {
  ExperimentConfig c = base("fig4", TaskKind::DisplacementSpectrum);
  c.description = "displacement spectrum versus gain at eta = 0.01 and versus eta at G = 1e6";
  c.params.set("length_m", 1e-3);
  c.params.set("power_w", 30e-3);
  c.params.set("kappa_over_omega_m", 0.01);
  c.curves = {curve("gain_0", 0.01, 0.0),      curve("gain_1e5", 0.01, 1e5), curve("gain_1e7", 0.01, 1e7),
              curve("eta_0.01", 0.01, 1e6), curve("eta_0.03", 0.03, 1e6), curve("eta_0.06", 0.06, 1e6)};
  c.grid = GridSpec{0.5, 1.5, 4000};
  return c;
}

ExperimentConfig response(const std::string& id, const std::string& what) {
  ExperimentConfig c = base(id, TaskKind::EffectiveResponse);
  c.description = "effective mirror " + what + " versus frequency";
  c.params.set("length_m", 2e-3);
  c.params.set("power_w", 6.9e-3);
  c.params.set("kappa_over_omega_m", 0.01);
  c.curves = {curve("eta_0.01_gain_0", 0.01, 0.0), curve("eta_0.01_gain_1e6", 0.01, 1e6),
              curve("eta_0_gain_1e6", 0.0, 1e6)};
  c.grid = GridSpec{0.5, 1.5, 4000};
  return c;
}

ExperimentConfig fig7() {
  ExperimentConfig c = base("fig7", TaskKind::OutputSpectra);
  c.description = "transmitted-field intensity and optimized squeezing spectra versus G and eta";
  c.params.set("length_m", 10e-3);
  c.params.set("power_w", 6.9e-3);
  c.params.set("kappa_over_omega_m", 0.7);
  c.curves = {curve("gain_1e7", 0.01, 1e7), curve("gain_2e7", 0.01, 2e7), curve("gain_3e7", 0.01, 3e7),
              curve("eta_0.03", 0.03, 1e7), curve("eta_0.05", 0.05, 1e7)};
  c.grid = GridSpec{-2.0, 2.0, 2000};
  return c;
}

ExperimentConfig fig8() {
  ExperimentConfig c = base("fig8", TaskKind::CoolingSweep);
  c.description = "phonon number and effective temperature versus detuning";
  c.params.set("length_m", 10e-3);
  c.params.set("power_w", 6.9e-3);
  c.params.set("kappa_over_omega_m", 0.7);
  c.curves = {curve("gain_2e7_eta_0.05", 0.05, 2e7), curve("gain_2e7_eta_0.01", 0.01, 2e7),
              curve("gain_0_eta_0.01", 0.01, 0.0)};
  c.sweep = detuning_sweep();
  return c;
}

ExperimentConfig entanglement(const std::string& id) {
  ExperimentConfig c = base(id, TaskKind::EntanglementSweep);
  c.params.set("length_m", 1e-3);
  c.params.set("power_w", 15e-3);
  c.params.set("kappa_over_omega_m", 0.9);
  c.sweep = detuning_sweep();
  return c;
}

ExperimentConfig fig9() {
  ExperimentConfig c = entanglement("fig9");
  c.description = "logarithmic negativity versus detuning, bare cavity and each nonlinearity";
  c.curves = {curve("bare", 0.0, 0.0), curve("kerr", 0.01, 0.0), curve("gain", 0.0, 6e6),
              curve("kerr_gain", 0.01, 6e6)};
  return c;
}

ExperimentConfig fig10() {
  ExperimentConfig c = entanglement("fig10");
  c.description = "logarithmic negativity versus detuning for increasing gain";
  c.curves = {curve("gain_1e3", 0.01, 1e3), curve("gain_1e6", 0.01, 1e6), curve("gain_1e7", 0.01, 1e7)};
  return c;
}

}  // namespace

const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids = {"fig2", "fig3", "fig4", "fig5", "fig6",
                                               "fig7", "fig8", "fig9", "fig10"};
  return ids;
}

ExperimentConfig preset(const std::string& id) {
  if (id == "fig2") return fig2();
  if (id == "fig3") return fig3();
  if (id == "fig4") return fig4();
  if (id == "fig5") return response("fig5", "frequency");
  if (id == "fig6") return response("fig6", "damping");
  if (id == "fig7") return fig7();
  if (id == "fig8") return fig8();
  if (id == "fig9") return fig9();
  if (id == "fig10") return fig10();
  throw Error(ErrorKind::Config, "unknown preset '" + id + "'");
}

}  // namespace optokerr::harness
