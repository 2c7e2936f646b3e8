#ifndef CHI2LOSS_RATIOS_HPP
#define CHI2LOSS_RATIOS_HPP

#include <vector>

#include "chi2loss/observables.hpp"

namespace chi2loss {

/// Quantum-classical number ratio for one classical process, with the ideal lossless
/// prediction and the closed-form loss estimate carried as diagnostics.
struct RatioReport {
  Process process;
  double ratio = 0.0;
  double ideal = 0.0;              // DFG: |z_s|^2;  SFG: |z_s|^2 |z_i|^2 / |z_p|^2
  double correction_factor = 0.0;  // ratio / ideal
  double closed_form_estimate = 0.0;
  double achieved_tolerance = 0.0;
  double ks = 0.0, ki = 0.0, kp = 0.0;
  double dk_s = 0.0, dk_i = 0.0, dk_p = 0.0;  // effective bandwidth elements
};

/// |integral_{-T}^{T} dt integral dk phi_pump(k) S(ks,ki,k;t) e^{x t}|^2.
double I_integral(const WaveguideModel& model, const SampledField& pump, double ks, double ki,
                  double x, const QuadratureConfig& quad);

/// 4 sinh^2(xT)/x^2, with the series limit 4T^2 (1 + (xT)^2/3) for |xT| < 1e-8.
double delta_pm(double x, double T);

/// R^DFG = N_dfg(ki) dk_i / (N_pair(ks,ki) dk_s dk_i) from full simulated spectra.
/// Requires the DFG pump to share the SPDC pump waveform and |z|.
RatioReport ratio_dfg(const WaveguideModel& model, const ProcessInputs& spdc_inputs,
                      const ProcessInputs& dfg_inputs, double ks, double ki,
                      const QuadratureConfig& quad);

/// R^SFG = N_sfg(kp) dk_p / (N_pair(ks,ki) dk_s dk_i) from full simulated spectra.
RatioReport ratio_sfg(const WaveguideModel& model, const ProcessInputs& spdc_inputs,
                      const ProcessInputs& sfg_inputs, double ks, double ki, double kp,
                      const QuadratureConfig& quad);

/// One sweep of the loss-rate discrepancy between the DFG- and SFG-relevant time integrals,
/// with beta_F(ks) = beta_F(ki) = beta: emits beta_sh^2 |Delta(-beta_sh) - Delta(2 beta - beta_sh)|.
struct DeltaCurve {
  double beta_sh = 0.0;
  double T = 0.0;
  std::vector<double> beta_ratio;  // beta / beta_sh
  std::vector<double> delta_minus;
  std::vector<double> delta_plus;
  std::vector<double> scaled_abs_difference;
};

DeltaCurve figure2_curve(double beta_sh, double T, const std::vector<double>& sweep);

}  // namespace chi2loss

#endif
