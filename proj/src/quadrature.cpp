#include "chi2loss/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace chi2loss {

namespace {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Newton iteration on the Legendre recurrence; standard construction, ~1e-15 accurate.
GaussRule make_gauss_rule(int n) {
  GaussRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      pp = n * (x * p1 - p0) / (x * x - 1.0);
      double dx = p1 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    double w = 2.0 / ((1.0 - x * x) * pp * pp);
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const GaussRule& cached_rule(int n) {
  if (n < 1) throw InvalidParameterError("gauss_legendre: order must be positive");
  static std::map<int, GaussRule> cache;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_rule(n)).first;
  return it->second;
}

}  // namespace

const std::vector<double>& gauss_legendre_nodes(int n) { return cached_rule(n).nodes; }
const std::vector<double>& gauss_legendre_weights(int n) { return cached_rule(n).weights; }

std::complex<double> integrate_1d(const std::function<std::complex<double>(double)>& f,
                                  const Grid1D& grid) {
  std::complex<double> acc{0.0, 0.0};
  for (int i = 0; i < grid.n; ++i) {
    const double k = grid.point(i);
    const std::complex<double> v = f(k);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalDomainError("integrate_1d: non-finite sample", k);
    acc += grid.weight(i) * v;
  }
  return acc;
}

namespace {

// One Gauss-Legendre pass over [t0, t1]; also returns the L1 norm for the
// absolute-scale part of the convergence test.
std::pair<std::complex<double>, double> gauss_pass(
    const std::function<std::complex<double>(double)>& f, double t0, double t1, int n) {
  const auto& xs = gauss_legendre_nodes(n);
  const auto& ws = gauss_legendre_weights(n);
  const double mid = 0.5 * (t0 + t1);
  const double half = 0.5 * (t1 - t0);
  std::complex<double> acc{0.0, 0.0};
  double l1 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double t = mid + half * xs[i];
    const std::complex<double> v = f(t);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalDomainError("integrate_t_window: non-finite sample", t);
    acc += ws[i] * v;
    l1 += ws[i] * std::abs(v);
  }
  return {half * acc, half * l1};
}

}  // namespace

IntegralResult integrate_t_window(const std::function<std::complex<double>(double)>& f,
                                  const InteractionWindow& window,
                                  const QuadratureConfig& config) {
  if (!(config.tolerance > 0.0))
    throw InvalidParameterError("integrate_t_window: tolerance must be positive");
  if (config.max_doublings < 0)
    throw InvalidParameterError("integrate_t_window: max_doublings must be nonnegative");

  int n = config.t_nodes;
  auto [prev, prev_l1] = gauss_pass(f, window.t0(), window.t1(), n);
  double achieved = std::numeric_limits<double>::infinity();
  for (int d = 0; d < config.max_doublings; ++d) {
    n *= 2;
    // Change measured against |I| + L1 norm: oscillatory cancellation can push |I|
    // far below the integrand scale, where a pure relative test is unreachable.
    auto [cur, l1] = gauss_pass(f, window.t0(), window.t1(), n);
    const double scale = std::abs(cur) + l1;
    achieved = scale > 0.0 ? std::abs(cur - prev) / scale : 0.0;
    prev = cur;
    if (achieved <= config.tolerance) return IntegralResult{cur, achieved, n};
  }
  if (config.max_doublings == 0) {
    // No refinement requested: accept the base pass as-is.
    return IntegralResult{prev, 0.0, n};
  }
  throw ConvergenceError("integrate_t_window: tolerance not reached within max doublings", prev,
                         achieved);
}

}  // namespace chi2loss
