#ifndef CHI2LOSS_QUADRATURE_HPP
#define CHI2LOSS_QUADRATURE_HPP

#include <complex>
#include <functional>
#include <vector>

#include "chi2loss/grid.hpp"
#include "chi2loss/model.hpp"

namespace chi2loss {

struct QuadratureConfig {
  double tolerance = 1e-4;
  int max_doublings = 6;
  int t_nodes = 64;
};

struct IntegralResult {
  std::complex<double> value{0.0, 0.0};
  double achieved = 0.0;
  int nodes = 0;
};

/// Gauss-Legendre nodes/weights on [-1, 1], cached per order.
const std::vector<double>& gauss_legendre_nodes(int n);
const std::vector<double>& gauss_legendre_weights(int n);

/// Trapezoid rule over a uniform grid. Exact for constants and linear functions.
/// Throws NumericalDomainError (with the abscissa) on a non-finite sample.
std::complex<double> integrate_1d(const std::function<std::complex<double>(double)>& f,
                                  const Grid1D& grid);

/// Gauss-Legendre over [t0, t1], node count doubled from config.t_nodes until the
/// relative change drops below config.tolerance (relative to max(|I|, tolerance * L1 norm)).
/// Throws ConvergenceError carrying the best estimate when doublings are exhausted.
IntegralResult integrate_t_window(const std::function<std::complex<double>(double)>& f,
                                  const InteractionWindow& window, const QuadratureConfig& config);

}  // namespace chi2loss

#endif
