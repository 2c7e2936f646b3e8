#ifndef CHI2LOSS_FOCK_HPP
#define CHI2LOSS_FOCK_HPP

#include <complex>
#include <vector>

#include "chi2loss/errors.hpp"

namespace chi2loss {

/// Brute-force truncated Fock space on a few discretized modes. The state vector is
/// built explicitly and number expectations are taken by applying ladder operators,
/// independent of any kernel/quadrature path. Grid-free: pins normalization
/// conventions without integration error.
class DiscreteModeSystem {
public:
  /// Tensor product of coherent states |z_m>. Truncation must keep the norm
  /// within 1e-8 of 1 (throws TruncationError otherwise).
  static DiscreteModeSystem coherent(const std::vector<std::complex<double>>& z, int cutoff);

  /// Two-photon ket (1/sqrt(2)) sum_{ij} F(i,j) adag_i adag_j |vac>; F must be
  /// symmetric (row-major modes x modes).
  static DiscreteModeSystem two_photon(int modes, const std::vector<std::complex<double>>& f,
                                       int cutoff);

  int modes() const { return modes_; }
  int cutoff() const { return cutoff_; }
  double norm() const;

  const std::vector<std::complex<double>>& state() const { return state_; }

  /// Apply the annihilation operator of one mode in place semantics (returns new vector).
  std::vector<std::complex<double>> annihilate(const std::vector<std::complex<double>>& v,
                                               int mode) const;

private:
  DiscreteModeSystem(int modes, int cutoff);
  std::size_t dim() const;
  int modes_;
  int cutoff_;
  std::vector<std::complex<double>> state_;
};

/// <adag_m a_m> on the truncated basis.
double coherent_number_expectation(const DiscreteModeSystem& system, int mode);

/// <adag_i adag_j a_j a_i> = ||a_j a_i psi||^2 (also valid for i == j).
double pair_number_expectation(const DiscreteModeSystem& system, int i, int j);

}  // namespace chi2loss

#endif
