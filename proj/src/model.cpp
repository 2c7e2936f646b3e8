#include "chi2loss/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace chi2loss {

namespace {

void validate_table(const LossTable& table, const char* band) {
  std::vector<std::string> bad;
  if (table.k.size() != table.beta.size() || table.k.size() < 2)
    bad.push_back(std::string("loss table (") + band + "): need >= 2 rows of k beta");
  for (std::size_t i = 0; i + 1 < table.k.size(); ++i)
    if (!(table.k[i + 1] > table.k[i])) {
      bad.push_back(std::string("loss table (") + band + "): k knots must be strictly increasing");
      break;
    }
  for (double b : table.beta)
    if (!(b >= 0.0)) {
      bad.push_back(std::string("loss table (") + band + "): beta must be nonnegative");
      break;
    }
  if (!bad.empty()) throw ConfigError(bad);
}

double eval_entry(const std::variant<double, LossTable>& entry, double k) {
  if (std::holds_alternative<double>(entry)) return std::get<double>(entry);
  const LossTable& t = std::get<LossTable>(entry);
  if (k <= t.k.front()) return t.beta.front();
  if (k >= t.k.back()) return t.beta.back();
  auto it = std::upper_bound(t.k.begin(), t.k.end(), k);
  std::size_t j = static_cast<std::size_t>(it - t.k.begin());
  const double frac = (k - t.k[j - 1]) / (t.k[j] - t.k[j - 1]);
  return t.beta[j - 1] + frac * (t.beta[j] - t.beta[j - 1]);
}

}  // namespace

LossProfile LossProfile::constant(double beta_f, double beta_sh) {
  if (!(beta_f >= 0.0) || !(beta_sh >= 0.0))
    throw ConfigError("loss: constant beta must be nonnegative");
  LossProfile p;
  p.entry_[0] = beta_f;
  p.entry_[1] = beta_sh;
  return p;
}

LossProfile LossProfile::tables(std::variant<double, LossTable> f,
                                std::variant<double, LossTable> sh) {
  if (std::holds_alternative<LossTable>(f)) validate_table(std::get<LossTable>(f), "F");
  else if (!(std::get<double>(f) >= 0.0)) throw ConfigError("loss: beta_F must be nonnegative");
  if (std::holds_alternative<LossTable>(sh)) validate_table(std::get<LossTable>(sh), "SH");
  else if (!(std::get<double>(sh) >= 0.0)) throw ConfigError("loss: beta_SH must be nonnegative");
  LossProfile p;
  p.entry_[0] = std::move(f);
  p.entry_[1] = std::move(sh);
  return p;
}

double LossProfile::rate(Band band, double k) const { return eval_entry(entry_[band_index(band)], k); }

std::optional<double> LossProfile::feature_scale() const {
  std::optional<double> scale;
  for (const auto& entry : entry_) {
    if (!std::holds_alternative<LossTable>(entry)) continue;
    const LossTable& t = std::get<LossTable>(entry);
    for (std::size_t i = 0; i + 1 < t.k.size(); ++i) {
      if (t.beta[i + 1] == t.beta[i]) continue;  // flat segment, no feature
      const double dk = t.k[i + 1] - t.k[i];
      if (!scale || dk < *scale) scale = dk;
    }
  }
  return scale;
}

CouplingModel::CouplingModel(double s0, EnvelopeKind kind, double width_or_length, double offset)
    : s0_(s0), kind_(kind), param_(width_or_length), offset_(offset) {
  if (!(s0 > 0.0)) throw InvalidParameterError("CouplingModel: s0 must be positive");
  if (kind != EnvelopeKind::Constant && !(param_ > 0.0))
    throw InvalidParameterError("CouplingModel: envelope width/length must be positive");
}

double CouplingModel::envelope(double mismatch) const {
  switch (kind_) {
    case EnvelopeKind::Constant:
      return 1.0;
    case EnvelopeKind::Gaussian:
      return std::exp(-0.5 * (mismatch / param_) * (mismatch / param_));
    case EnvelopeKind::Sinc: {
      const double x = 0.5 * mismatch * param_;
      if (std::abs(x) < 1e-8) return 1.0 - x * x / 6.0;
      return std::sin(x) / x;
    }
  }
  return 0.0;
}

std::optional<double> CouplingModel::feature_scale() const {
  switch (kind_) {
    case EnvelopeKind::Constant:
      return std::nullopt;
    case EnvelopeKind::Gaussian:
      return param_;
    case EnvelopeKind::Sinc:
      return 2.0 * M_PI / param_;  // first lobe width
  }
  return std::nullopt;
}

Waveform Waveform::gaussian(Band band, double center, double sigma) {
  if (!(sigma > 0.0)) throw InvalidParameterError("Waveform: gaussian sigma must be positive");
  return Waveform(band, WaveformKind::Gaussian, center, sigma);
}

Waveform Waveform::grid_delta(Band band, double center) {
  return Waveform(band, WaveformKind::GridDelta, center, 0.0);
}

double Waveform::width(const Grid1D& grid) const {
  return kind_ == WaveformKind::Gaussian ? sigma_ : grid.delta();
}

std::vector<double> Waveform::sample(const Grid1D& grid) const {
  std::vector<double> out(static_cast<std::size_t>(grid.n), 0.0);
  if (kind_ == WaveformKind::GridDelta) {
    const int i = grid.index_of(center_);
    if (i == 0 || i == grid.n - 1)
      throw ConfigError("grid-delta waveform must sit on an interior grid point");
    out[static_cast<std::size_t>(i)] = 1.0 / std::sqrt(grid.delta());
    return out;
  }
  // Gaussian: amplitude (2 pi sigma^2)^{-1/4} exp(-(k-kc)^2 / (4 sigma^2)).
  if (grid.lo > center_ - 6.0 * sigma_ || grid.hi < center_ + 6.0 * sigma_)
    throw ConfigError("grid must extend at least 6 sigma beyond every gaussian waveform center");
  const double norm = std::pow(2.0 * M_PI * sigma_ * sigma_, -0.25);
  for (int i = 0; i < grid.n; ++i) {
    const double d = grid.point(i) - center_;
    out[static_cast<std::size_t>(i)] = norm * std::exp(-d * d / (4.0 * sigma_ * sigma_));
  }
  double total = 0.0;
  for (int i = 0; i < grid.n; ++i)
    total += grid.weight(i) * out[static_cast<std::size_t>(i)] * out[static_cast<std::size_t>(i)];
  if (std::abs(total - 1.0) > 1e-6)
    throw ConfigError("waveform normalization off by more than 1e-6 on the grid (refine the grid)");
  return out;
}

bool Waveform::same_shape(const Waveform& other) const {
  if (band_ != other.band_ || kind_ != other.kind_ || center_ != other.center_) return false;
  return kind_ == WaveformKind::GridDelta || sigma_ == other.sigma_;
}

double eval_dispersion(const WaveguideModel& model, Band band, double k) {
  if (!std::isfinite(k)) throw InvalidParameterError("eval_dispersion: k must be finite");
  return model.dispersion.omega(band, k);
}

double eval_loss(const WaveguideModel& model, Band band, double k) {
  if (!std::isfinite(k)) throw InvalidParameterError("eval_loss: k must be finite");
  return model.loss.rate(band, k);
}

double eval_coupling(const WaveguideModel& model, double k1, double k2, double k) {
  return model.coupling.value(k1, k2, k);
}

double alpha_from_beta(double beta, double v) {
  if (!(v > 0.0)) throw InvalidParameterError("alpha_from_beta: group velocity must be positive");
  if (!(beta >= 0.0)) throw InvalidParameterError("alpha_from_beta: beta must be nonnegative");
  return 2.0 * beta / v;
}

}  // namespace chi2loss
