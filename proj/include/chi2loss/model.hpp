#ifndef CHI2LOSS_MODEL_HPP
#define CHI2LOSS_MODEL_HPP

#include <complex>
#include <optional>
#include <variant>
#include <vector>

#include "chi2loss/grid.hpp"

namespace chi2loss {

enum class Band { F, SH };

enum class UnitMode { SI, Nondimensional };

inline constexpr double kHbarSI = 1.054571817e-34;  // J s

inline int band_index(Band b) { return b == Band::F ? 0 : 1; }

/// Linear dispersion per band: omega(k) = omega0 + v (k - k0).
class DispersionRelation {
public:
  DispersionRelation(double k_f0, double omega_f0, double v_f, double k_sh0, double omega_sh0,
                     double v_sh)
      : k0_{k_f0, k_sh0}, omega0_{omega_f0, omega_sh0}, v_{v_f, v_sh} {
    if (!(v_f > 0.0) || !(v_sh > 0.0))
      throw InvalidParameterError("DispersionRelation: group velocities must be positive");
  }

  double omega(Band band, double k) const {
    int m = band_index(band);
    return omega0_[m] + v_[m] * (k - k0_[m]);
  }
  double velocity(Band band) const { return v_[band_index(band)]; }
  double center_k(Band band) const { return k0_[band_index(band)]; }
  double center_omega(Band band) const { return omega0_[band_index(band)]; }

private:
  double k0_[2];
  double omega0_[2];
  double v_[2];
};

/// Piecewise-linear loss-rate table over k; clamped outside its knots.
struct LossTable {
  std::vector<double> k;
  std::vector<double> beta;
};

/// Per-band scattering loss rate beta_mk >= 0; constant or tabulated.
class LossProfile {
public:
  static LossProfile constant(double beta_f, double beta_sh);
  static LossProfile tables(std::variant<double, LossTable> f, std::variant<double, LossTable> sh);

  double rate(Band band, double k) const;

  /// Narrowest spacing between table knots with differing values, if any band is tabulated.
  std::optional<double> feature_scale() const;

private:
  LossProfile() = default;
  std::variant<double, LossTable> entry_[2];
};

enum class EnvelopeKind { Constant, Gaussian, Sinc };

/// Phenomenological nonlinear coupling S(k1,k2,k) = s0 * pm(k1 + k2 - k - offset).
/// k1, k2 index the F band, k the SH band; S is symmetric in (k1, k2) by construction.
/// The sinc envelope changes sign and is provided as a flagged extension; constant and
/// gaussian keep S >= 0.
class CouplingModel {
public:
  CouplingModel(double s0, EnvelopeKind kind, double width_or_length, double offset);

  static CouplingModel constant(double s0, double offset = 0.0) {
    return CouplingModel(s0, EnvelopeKind::Constant, 0.0, offset);
  }
  static CouplingModel gaussian(double s0, double width, double offset = 0.0) {
    return CouplingModel(s0, EnvelopeKind::Gaussian, width, offset);
  }
  static CouplingModel sinc(double s0, double length, double offset = 0.0) {
    return CouplingModel(s0, EnvelopeKind::Sinc, length, offset);
  }

  double value(double k1, double k2, double k) const { return s0_ * envelope(k1 + k2 - k - offset_); }
  double envelope(double mismatch) const;

  double strength() const { return s0_; }
  double offset() const { return offset_; }
  EnvelopeKind kind() const { return kind_; }
  /// Characteristic mismatch scale of the envelope, if finite.
  std::optional<double> feature_scale() const;

private:
  double s0_;
  EnvelopeKind kind_;
  double param_;  // gaussian width or sinc length
  double offset_;
};

enum class WaveformKind { Gaussian, GridDelta };

/// Normalized spectral pulse shape: integral of |phi|^2 over k equals 1.
class Waveform {
public:
  static Waveform gaussian(Band band, double center, double sigma);
  static Waveform grid_delta(Band band, double center);

  Band band() const { return band_; }
  WaveformKind kind() const { return kind_; }
  double center() const { return center_; }
  double sigma() const { return sigma_; }  // gaussian only

  /// Spectral width used by narrowness checks: sigma, or one grid bin for a delta.
  double width(const Grid1D& grid) const;

  /// Sample on a grid. Gaussian shapes require the grid to resolve sigma and to extend
  /// at least 6 sigma past the center; delta shapes occupy exactly one interior bin
  /// with amplitude 1/sqrt(delta k). Normalization is checked to 1e-6 relative.
  std::vector<double> sample(const Grid1D& grid) const;

  bool same_shape(const Waveform& other) const;

private:
  Waveform(Band band, WaveformKind kind, double center, double sigma)
      : band_(band), kind_(kind), center_(center), sigma_(sigma) {}
  Band band_;
  WaveformKind kind_;
  double center_;
  double sigma_;
};

/// Coherent input field: waveform plus complex amplitude z; mean photon number |z|^2.
struct CoherentInput {
  Waveform waveform;
  std::complex<double> amplitude;

  double mean_photon_number() const { return std::norm(amplitude); }
};

/// Interaction time window [t0, t1]; the nonlinear interaction runs for t1 - t0 = L/v_in.
class InteractionWindow {
public:
  static InteractionWindow symmetric(double half_width) {
    if (!(half_width > 0.0)) throw InvalidParameterError("InteractionWindow: T must be positive");
    return InteractionWindow(2.0 * half_width);
  }
  static InteractionWindow from_length(double length, double v_in) {
    if (!(length > 0.0) || !(v_in > 0.0))
      throw InvalidParameterError("InteractionWindow: L and v_in must be positive");
    return InteractionWindow(length / v_in);
  }

  double t0() const { return -0.5 * duration_; }
  double t1() const { return 0.5 * duration_; }
  double duration() const { return duration_; }
  double half_width() const { return 0.5 * duration_; }

private:
  explicit InteractionWindow(double duration) : duration_(duration) {}
  double duration_;
};

/// Full physical configuration. Immutable after construction; safe to share across threads.
struct WaveguideModel {
  DispersionRelation dispersion;
  LossProfile loss;
  CouplingModel coupling;
  InteractionWindow window;
  UnitMode units = UnitMode::Nondimensional;

  double hbar() const { return units == UnitMode::SI ? kHbarSI : 1.0; }
};

double eval_dispersion(const WaveguideModel& model, Band band, double k);
double eval_loss(const WaveguideModel& model, Band band, double k);
double eval_coupling(const WaveguideModel& model, double k1, double k2, double k);

/// Spatial attenuation coefficient alpha = 2 beta / v.
double alpha_from_beta(double beta, double v);

}  // namespace chi2loss

#endif
