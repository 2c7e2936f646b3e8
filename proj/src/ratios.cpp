#include "chi2loss/ratios.hpp"

#include <cmath>

namespace chi2loss {

namespace {

constexpr double kPairDensityFloor = 1e-30;

void require_process(const ProcessInputs& inputs, Process p, const char* op) {
  if (inputs.process() != p)
    throw InvalidProcessError(std::string(op) + ": inputs tagged " +
                              process_name(inputs.process()));
}

void require_center(const SampledField& field, double k, const char* what) {
  if (std::abs(field.input.waveform.center() - k) > 0.5 * field.grid.delta())
    throw InvalidParameterError(std::string(what) + " must be centered at the requested bin");
}

double checked_pair_density(const BiphotonAmplitude& biphoton, double ks, double ki) {
  const double density = pair_density(biphoton, ks, ki);
  if (density < kPairDensityFloor)
    throw UndefinedRatioError("pair density below 1e-30; ratio undefined");
  return density;
}

}  // namespace

double delta_pm(double x, double T) {
  if (!(T > 0.0)) throw InvalidParameterError("delta_pm: T must be positive");
  const double u = std::abs(x) * T;  // even in x, computed as such
  if (u < 1e-8) {
    const double c = 4.0 * T * T;
    return c * (1.0 + u * u / 3.0);
  }
  const double s = std::sinh(u);
  return 4.0 * s * s / (x * x);
}

double I_integral(const WaveguideModel& model, const SampledField& pump, double ks, double ki,
                  double x, const QuadratureConfig& quad) {
  const Grid1D& grid = pump.grid;
  const double w_si =
      model.dispersion.omega(Band::F, ks) + model.dispersion.omega(Band::F, ki);
  std::vector<double> phi_s(static_cast<std::size_t>(grid.n));
  std::vector<double> detune(static_cast<std::size_t>(grid.n));
  for (int l = 0; l < grid.n; ++l) {
    const double k = grid.point(l);
    phi_s[l] = pump.samples[l] * grid.weight(l) * model.coupling.value(ks, ki, k);
    detune[l] = w_si - model.dispersion.omega(Band::SH, k);
  }
  auto integrand = [&](double t) {
    std::complex<double> inner{0.0, 0.0};
    for (int l = 0; l < grid.n; ++l)
      if (phi_s[l] != 0.0) inner += phi_s[l] * std::polar(1.0, detune[l] * t);
    return inner * std::exp(x * t);
  };
  const IntegralResult res = integrate_t_window(integrand, model.window, quad);
  return std::norm(res.value);
}

RatioReport ratio_dfg(const WaveguideModel& model, const ProcessInputs& spdc_inputs,
                      const ProcessInputs& dfg_inputs, double ks, double ki,
                      const QuadratureConfig& quad) {
  require_process(spdc_inputs, Process::SPDC, "ratio_dfg");
  require_process(dfg_inputs, Process::DFG, "ratio_dfg");
  const SampledField& seed = dfg_inputs.field(0);
  const SampledField& dfg_pump = dfg_inputs.field(1);
  const SampledField& spdc_pump = spdc_inputs.field(0);
  require_center(seed, ks, "ratio_dfg: DFG seed");
  if (!dfg_pump.input.waveform.same_shape(spdc_pump.input.waveform))
    throw ConfigError("ratio_dfg: DFG and SPDC must share the SH pump waveform");
  if (std::abs(std::abs(dfg_pump.input.amplitude) - std::abs(spdc_pump.input.amplitude)) >
      1e-12 * std::abs(spdc_pump.input.amplitude))
    throw ConfigError("ratio_dfg: DFG and SPDC pump |z| must match");

  SpectrumMeta meta_dfg, meta_spdc;
  const SpectralAmplitude spectrum = dfg_spectrum(model, dfg_inputs, quad, &meta_dfg);
  const BiphotonAmplitude biphoton = spdc_biphoton(model, spdc_inputs, quad, &meta_spdc);

  const double n_single = photon_density(spectrum, ki);
  const double n_pair = checked_pair_density(biphoton, ks, ki);
  const double dk_s = seed.effective_width;

  RatioReport report;
  report.process = Process::DFG;
  report.ratio = n_single / (n_pair * dk_s);
  report.ideal = seed.input.mean_photon_number();
  report.correction_factor = report.ideal > 0.0 ? report.ratio / report.ideal : 0.0;
  report.achieved_tolerance = std::max(meta_dfg.achieved, meta_spdc.achieved);
  report.ks = ks;
  report.ki = ki;
  report.kp = spdc_pump.input.waveform.center();
  report.dk_s = dk_s;
  report.dk_i = dfg_inputs.grid_f().delta();
  report.dk_p = spdc_pump.effective_width;

  // Loss-integral estimate: ideal * I[beta_F- - beta_SH(kp)] / I[beta_F+ - beta_SH(kp)].
  const double beta_s = model.loss.rate(Band::F, ks);
  const double beta_i = model.loss.rate(Band::F, ki);
  const double beta_p = model.loss.rate(Band::SH, report.kp);
  const double i_minus =
      I_integral(model, spdc_pump, ks, ki, (beta_i - beta_s) - beta_p, quad);
  const double i_plus = I_integral(model, spdc_pump, ks, ki, (beta_i + beta_s) - beta_p, quad);
  report.closed_form_estimate = i_plus > 0.0 ? report.ideal * i_minus / i_plus : 0.0;
  return report;
}

RatioReport ratio_sfg(const WaveguideModel& model, const ProcessInputs& spdc_inputs,
                      const ProcessInputs& sfg_inputs, double ks, double ki, double kp,
                      const QuadratureConfig& quad) {
  require_process(spdc_inputs, Process::SPDC, "ratio_sfg");
  require_process(sfg_inputs, Process::SFG, "ratio_sfg");
  const SampledField& fa = sfg_inputs.field(0);
  const SampledField& fb = sfg_inputs.field(1);
  const SampledField& pump = spdc_inputs.field(0);
  require_center(fa, ks, "ratio_sfg: input a");
  require_center(fb, ki, "ratio_sfg: input b");
  require_center(pump, kp, "ratio_sfg: SPDC pump");

  SpectrumMeta meta_sfg, meta_spdc;
  const SpectralAmplitude spectrum = sfg_spectrum(model, sfg_inputs, quad, &meta_sfg);
  const BiphotonAmplitude biphoton = spdc_biphoton(model, spdc_inputs, quad, &meta_spdc);

  const double n_single = photon_density(spectrum, kp);
  const double n_pair = checked_pair_density(biphoton, ks, ki);

  RatioReport report;
  report.process = Process::SFG;
  report.dk_s = fa.effective_width;
  report.dk_i = fb.effective_width;
  report.dk_p = pump.effective_width;
  report.ratio = n_single * report.dk_p / (n_pair * report.dk_s * report.dk_i);
  const double zp2 = pump.input.mean_photon_number();
  if (!(zp2 > 0.0)) throw UndefinedRatioError("ratio_sfg: SPDC pump |z|^2 is zero");
  report.ideal = fa.input.mean_photon_number() * fb.input.mean_photon_number() / zp2;
  report.correction_factor = report.ideal > 0.0 ? report.ratio / report.ideal : 0.0;
  report.closed_form_estimate = report.ideal;  // the narrow-pump limit
  report.achieved_tolerance = std::max(meta_sfg.achieved, meta_spdc.achieved);
  report.ks = ks;
  report.ki = ki;
  report.kp = kp;
  return report;
}

DeltaCurve figure2_curve(double beta_sh, double T, const std::vector<double>& sweep) {
  if (!(beta_sh > 0.0)) throw InvalidParameterError("figure2_curve: beta_sh must be positive");
  if (!(T > 0.0)) throw InvalidParameterError("figure2_curve: T must be positive");
  DeltaCurve curve;
  curve.beta_sh = beta_sh;
  curve.T = T;
  curve.beta_ratio.reserve(sweep.size());
  for (double r : sweep) {
    if (!(r >= 0.0)) throw InvalidParameterError("figure2_curve: sweep values must be >= 0");
    // beta_F(ks) = beta_F(ki) = beta, so beta_F- = 0 and beta_F+ = 2 beta.
    const double dm = delta_pm(-beta_sh, T);
    const double dp = delta_pm((2.0 * r - 1.0) * beta_sh, T);
    curve.beta_ratio.push_back(r);
    curve.delta_minus.push_back(dm);
    curve.delta_plus.push_back(dp);
    curve.scaled_abs_difference.push_back(beta_sh * beta_sh * std::abs(dm - dp));
  }
  return curve;
}

}  // namespace chi2loss
