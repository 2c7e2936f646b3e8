#include "chi2loss/fock.hpp"

#include <cmath>

namespace chi2loss {

namespace {
constexpr int kMaxModes = 3;
constexpr double kNormFloor = 1.0 - 1e-8;
}  // namespace

DiscreteModeSystem::DiscreteModeSystem(int modes, int cutoff) : modes_(modes), cutoff_(cutoff) {
  if (modes < 1 || modes > kMaxModes)
    throw InvalidParameterError("DiscreteModeSystem: 1..3 modes supported");
  if (cutoff < 1) throw InvalidParameterError("DiscreteModeSystem: cutoff must be >= 1");
  state_.assign(dim(), {0.0, 0.0});
}

std::size_t DiscreteModeSystem::dim() const {
  std::size_t d = 1;
  for (int m = 0; m < modes_; ++m) d *= static_cast<std::size_t>(cutoff_ + 1);
  return d;
}

DiscreteModeSystem DiscreteModeSystem::coherent(const std::vector<std::complex<double>>& z,
                                                int cutoff) {
  DiscreteModeSystem sys(static_cast<int>(z.size()), cutoff);
  // Per-mode coherent amplitudes e^{-|z|^2/2} z^n / sqrt(n!), tensored by index arithmetic.
  std::vector<std::vector<std::complex<double>>> mode_amps;
  for (const auto& zm : z) {
    std::vector<std::complex<double>> amps(static_cast<std::size_t>(cutoff + 1));
    amps[0] = std::exp(-0.5 * std::norm(zm));
    for (int n = 1; n <= cutoff; ++n) amps[n] = amps[n - 1] * zm / std::sqrt(double(n));
    mode_amps.push_back(std::move(amps));
  }
  const int d1 = cutoff + 1;
  for (std::size_t idx = 0; idx < sys.state_.size(); ++idx) {
    std::complex<double> amp{1.0, 0.0};
    std::size_t rest = idx;
    for (int m = sys.modes_ - 1; m >= 0; --m) {
      amp *= mode_amps[m][rest % d1];
      rest /= d1;
    }
    sys.state_[idx] = amp;
  }
  const double norm = sys.norm();
  if (norm < kNormFloor)
    throw TruncationError("coherent state lost more than 1e-8 norm under truncation");
  return sys;
}

DiscreteModeSystem DiscreteModeSystem::two_photon(int modes,
                                                  const std::vector<std::complex<double>>& f,
                                                  int cutoff) {
  if (f.size() != static_cast<std::size_t>(modes) * modes)
    throw InvalidParameterError("two_photon: F must be modes x modes");
  for (int i = 0; i < modes; ++i)
    for (int j = 0; j < modes; ++j)
      if (std::abs(f[i * modes + j] - f[j * modes + i]) >
          1e-12 * (1.0 + std::abs(f[i * modes + j])))
        throw InvalidParameterError("two_photon: F must be symmetric");
  DiscreteModeSystem sys(modes, cutoff);
  // (1/sqrt(2)) sum_ij F(i,j) adag_i adag_j |vac>
  const int d1 = cutoff + 1;
  std::size_t stride[kMaxModes] = {0, 0, 0};
  std::size_t s = 1;
  for (int m = modes - 1; m >= 0; --m) {
    stride[m] = s;
    s *= static_cast<std::size_t>(d1);
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < modes; ++i) {
    for (int j = 0; j < modes; ++j) {
      const std::complex<double> fij = f[i * modes + j];
      if (fij == std::complex<double>{0.0, 0.0}) continue;
      if (i == j) {
        // adag^2 |0> = sqrt(2) |2>
        sys.state_[2 * stride[i]] += inv_sqrt2 * fij * std::sqrt(2.0);
      } else {
        sys.state_[stride[i] + stride[j]] += inv_sqrt2 * fij;
      }
    }
  }
  return sys;
}

double DiscreteModeSystem::norm() const {
  double n = 0.0;
  for (const auto& c : state_) n += std::norm(c);
  return std::sqrt(n);
}

std::vector<std::complex<double>> DiscreteModeSystem::annihilate(
    const std::vector<std::complex<double>>& v, int mode) const {
  if (mode < 0 || mode >= modes_) throw InvalidParameterError("annihilate: bad mode index");
  const int d1 = cutoff_ + 1;
  std::size_t stride = 1;
  for (int m = modes_ - 1; m > mode; --m) stride *= static_cast<std::size_t>(d1);
  std::vector<std::complex<double>> out(v.size(), {0.0, 0.0});
  for (std::size_t idx = 0; idx < v.size(); ++idx) {
    const int n = static_cast<int>((idx / stride) % static_cast<std::size_t>(d1));
    if (n == 0) continue;
    // a |n> = sqrt(n) |n-1>
    out[idx - stride] += std::sqrt(double(n)) * v[idx];
  }
  return out;
}

double coherent_number_expectation(const DiscreteModeSystem& system, int mode) {
  const auto lowered = system.annihilate(system.state(), mode);
  double acc = 0.0;
  for (const auto& c : lowered) acc += std::norm(c);
  return acc;
}

double pair_number_expectation(const DiscreteModeSystem& system, int i, int j) {
  const auto once = system.annihilate(system.state(), i);
  const auto twice = system.annihilate(once, j);
  double acc = 0.0;
  for (const auto& c : twice) acc += std::norm(c);
  return acc;
}

}  // namespace chi2loss
