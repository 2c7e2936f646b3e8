#ifndef CHI2LOSS_OBSERVABLES_HPP
#define CHI2LOSS_OBSERVABLES_HPP

#include <complex>
#include <limits>
#include <vector>

#include "chi2loss/kernels.hpp"

namespace chi2loss {

/// Generated-field spectral amplitude A(k); |A(k)|^2 is photons per unit k.
struct SpectralAmplitude {
  Band band;
  Grid1D grid;
  std::vector<std::complex<double>> amplitude;

  double total_photons() const;
};

/// Two-photon amplitude G(k1,k2) (the bare time-integrated kernel, without the 1/sqrt(2)
/// ket prefactor); symmetric for symmetric coupling. Pair density is 2|G|^2.
struct BiphotonAmplitude {
  Grid1D grid;
  std::vector<std::complex<double>> values;  // row-major, n*n

  std::complex<double> at(int i, int j) const { return values[static_cast<std::size_t>(i) * grid.n + j]; }
  /// Total mean pair number: double integral of |G|^2 over the full (k1,k2) plane.
  double total_pairs() const;
};

struct SpectrumMeta {
  double achieved = 0.0;
  int t_nodes = 0;
};

/// Scalar densities of a scenario at its reporting bins, plus grid totals.
/// Entries stay NaN when the scenario does not define the corresponding process/bins.
struct NumberDensityReport {
  double dfg_idler_density = std::numeric_limits<double>::quiet_NaN();  // photons per unit k at k_i
  double sfg_pump_density = std::numeric_limits<double>::quiet_NaN();   // photons per unit k at k_p
  double spdc_pair_density = std::numeric_limits<double>::quiet_NaN();  // pairs per unit k^2
  double dfg_total = std::numeric_limits<double>::quiet_NaN();
  double sfg_total = std::numeric_limits<double>::quiet_NaN();
  double spdc_total = std::numeric_limits<double>::quiet_NaN();
};

/// A(k) = integral over [t0,t1] of Phi_DFG(k;t) exp(-beta_F(k)(t1-t)); F-band output.
SpectralAmplitude dfg_spectrum(const WaveguideModel& model, const ProcessInputs& inputs,
                               const QuadratureConfig& quad, SpectrumMeta* meta = nullptr);

/// A(k) = integral of Phi_SFG(k;t) exp(-beta_SH(k)(t1-t)); SH-band output.
SpectralAmplitude sfg_spectrum(const WaveguideModel& model, const ProcessInputs& inputs,
                               const QuadratureConfig& quad, SpectrumMeta* meta = nullptr);

/// G(k1,k2) = integral of phi(k1,k2;t) exp(-(beta_F(k1)+beta_F(k2))(t1-t)).
BiphotonAmplitude spdc_biphoton(const WaveguideModel& model, const ProcessInputs& inputs,
                                const QuadratureConfig& quad, SpectrumMeta* meta = nullptr);

/// Photon number density |A(k)|^2; k must be a grid point.
double photon_density(const SpectralAmplitude& spectrum, double k);

/// Pair number density 2|G(ks,ki)|^2 for distinct bins (throws DegenerateBinError
/// when ks and ki land in the same bin). The normalization is the one fixed by the
/// explicit two-mode Fock oracle.
double pair_density(const BiphotonAmplitude& biphoton, double ks, double ki);

}  // namespace chi2loss

#endif
