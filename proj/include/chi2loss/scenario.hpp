#ifndef CHI2LOSS_SCENARIO_HPP
#define CHI2LOSS_SCENARIO_HPP

#include <complex>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "chi2loss/observables.hpp"

namespace chi2loss {

/// One input field as written in a scenario file.
struct FieldSpec {
  double z_mag = 0.0;
  double z_phase = 0.0;
  WaveformKind kind = WaveformKind::Gaussian;
  double center = 0.0;
  double sigma = 0.0;

  std::complex<double> z() const { return std::polar(z_mag, z_phase); }
  Waveform waveform(Band band) const {
    return kind == WaveformKind::Gaussian ? Waveform::gaussian(band, center, sigma)
                                          : Waveform::grid_delta(band, center);
  }
  CoherentInput input(Band band) const { return CoherentInput{waveform(band), z()}; }
};

/// Parsed scenario file, prior to grid binding. All values validated; every violation
/// is reported at once through ConfigError.
struct ScenarioConfig {
  UnitMode units = UnitMode::Nondimensional;

  double v_f = 0.0, v_sh = 0.0;
  double k_f0 = 0.0, k_sh0 = 0.0;
  double omega_f0 = 0.0, omega_sh0 = 0.0;

  std::variant<double, LossTable> loss_f = 0.0;
  std::variant<double, LossTable> loss_sh = 0.0;

  double s0 = 1.0;
  EnvelopeKind envelope = EnvelopeKind::Constant;
  double envelope_param = 0.0;  // gaussian width or sinc length
  double envelope_offset = 0.0;

  std::optional<double> window_T;
  std::optional<std::pair<double, double>> window_L_vin;

  double f_min = 0.0, f_max = 0.0;
  int f_n = 0;
  double sh_min = 0.0, sh_max = 0.0;
  int sh_n = 0;

  QuadratureConfig quad;

  std::optional<FieldSpec> spdc_pump;
  std::optional<std::pair<FieldSpec, FieldSpec>> dfg;  // seed (F), pump (SH)
  std::optional<std::pair<FieldSpec, FieldSpec>> sfg;  // a (F), b (F)
};

ScenarioConfig parse_config(const std::filesystem::path& path);

/// A fully built scenario: model, grids, sampled process inputs, reporting bins.
struct Scenario {
  WaveguideModel model;
  Grid1D grid_f;
  Grid1D grid_sh;
  QuadratureConfig quad;
  std::optional<ProcessInputs> spdc;
  std::optional<ProcessInputs> dfg;
  std::optional<ProcessInputs> sfg;
  std::optional<double> ks, ki, kp;  // ratio reporting bins, from input centers
  std::vector<std::string> narrowness_warnings;
  ScenarioConfig config;  // retained for grid/t refinement rebuilds
};

Scenario build_scenario(const ScenarioConfig& config);

/// Rebuild with k-grids refined by k_scale (same spans) and t_nodes scaled by t_scale.
/// Grid-delta fields keep their physical base-grid bin and forbid k refinement.
Scenario refine_scenario(const ScenarioConfig& config, int k_scale, int t_scale);

/// All defined scalar densities and totals of a scenario, computed by the main engine.
NumberDensityReport engine_densities(const Scenario& scenario);

}  // namespace chi2loss

#endif
