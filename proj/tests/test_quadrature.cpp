#include <doctest.h>

#include <cmath>
#include <complex>

#include "chi2loss/quadrature.hpp"

using namespace chi2loss;
using cd = std::complex<double>;

TEST_CASE("grid invariants") {
  CHECK_THROWS_AS(Grid1D(0.0, 1.0, 1), InvalidParameterError);
  CHECK_THROWS_AS(Grid1D(1.0, 1.0, 4), InvalidParameterError);
  Grid1D g(-2.0, 2.0, 5);
  CHECK(g.delta() == doctest::Approx(1.0));
  CHECK(g.point(0) == -2.0);
  CHECK(g.point(4) == 2.0);
  CHECK(g.weight(0) == doctest::Approx(0.5));
  CHECK(g.weight(2) == doctest::Approx(1.0));
  CHECK(g.index_of(1.0) == 3);
  CHECK_THROWS_AS(g.index_of(1.6), InvalidParameterError);
}

TEST_CASE("trapezoid: zero and constant are exact") {
  Grid1D g(0.0, 1.0, 7);
  CHECK(std::abs(integrate_1d([](double) { return cd{0.0, 0.0}; }, g)) == 0.0);
  for (int n : {2, 3, 11, 64}) {
    Grid1D gn(0.0, 1.0, n);
    const cd one = integrate_1d([](double) { return cd{1.0, 0.0}; }, gn);
    CHECK(one.real() == doctest::Approx(1.0).epsilon(1e-15));
  }
}

TEST_CASE("trapezoid: linear functions are exact on any grid") {
  for (int n : {2, 5, 17}) {
    Grid1D g(-1.5, 2.5, n);
    const cd v = integrate_1d([](double x) { return cd{3.0 * x - 0.7, -x}; }, g);
    // integral of 3x - 0.7 over [-1.5, 2.5] = 3.2; of -x is -2
    CHECK(v.real() == doctest::Approx(3.2).epsilon(1e-14));
    CHECK(v.imag() == doctest::Approx(-2.0).epsilon(1e-14));
  }
}

TEST_CASE("trapezoid: exponential converges to 2 sinh(1) under refinement") {
  const double expected = 2.0 * std::sinh(1.0);  // 2.3504023872876028
  double prev_err = 1.0;
  for (int n : {9, 17, 33, 65, 129, 257}) {
    Grid1D g(-1.0, 1.0, n);
    const cd v = integrate_1d([](double t) { return cd{std::exp(t), 0.0}; }, g);
    const double err = std::abs(v.real() - expected);
    CHECK(err < 0.27 * prev_err);  // second-order rule: each halving gains ~4x
    prev_err = err;
  }
  CHECK(prev_err < 5e-5);
}

TEST_CASE("trapezoid: non-finite sample reports the abscissa") {
  Grid1D g(0.0, 1.0, 5);
  try {
    integrate_1d([](double x) { return cd{x == 0.5 ? INFINITY : 1.0, 0.0}; }, g);
    FAIL("expected NumericalDomainError");
  } catch (const NumericalDomainError& e) {
    CHECK(e.abscissa() == doctest::Approx(0.5));
  }
}

TEST_CASE("gauss-legendre: polynomial exactness up to degree 2n-1") {
  const auto& xs = gauss_legendre_nodes(4);
  const auto& ws = gauss_legendre_weights(4);
  for (int deg = 0; deg <= 7; ++deg) {
    double acc = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) acc += ws[i] * std::pow(xs[i], deg);
    const double exact = (deg % 2 == 0) ? 2.0 / (deg + 1) : 0.0;
    CHECK(acc == doctest::Approx(exact).epsilon(1e-13));
  }
}

TEST_CASE("t window: exponential equals 2 sinh(1)") {
  const auto window = InteractionWindow::symmetric(1.0);
  QuadratureConfig quad;
  const IntegralResult res =
      integrate_t_window([](double t) { return cd{std::exp(t), 0.0}; }, window, quad);
  CHECK(res.value.real() == doctest::Approx(2.0 * std::sinh(1.0)).epsilon(1e-12));
  CHECK(res.achieved <= quad.tolerance);
  CHECK(res.nodes >= 2 * quad.t_nodes);
}

TEST_CASE("t window: full oscillation integrates to zero") {
  const auto window = InteractionWindow::symmetric(1.0);
  QuadratureConfig quad;
  const double omega = M_PI;  // omega T = pi
  const IntegralResult res =
      integrate_t_window([&](double t) { return std::polar(1.0, omega * t); }, window, quad);
  CHECK(std::abs(res.value) < quad.tolerance);
}

TEST_CASE("t window: constant is exact at the base node count") {
  const auto window = InteractionWindow::symmetric(2.5);
  QuadratureConfig quad;
  quad.max_doublings = 0;
  const IntegralResult res =
      integrate_t_window([](double) { return cd{1.5, -0.5}; }, window, quad);
  CHECK(res.value.real() == doctest::Approx(1.5 * 5.0).epsilon(1e-15));
  CHECK(res.value.imag() == doctest::Approx(-0.5 * 5.0).epsilon(1e-15));
}

TEST_CASE("t window: convergence failure carries the best estimate") {
  const auto window = InteractionWindow::symmetric(1.0);
  QuadratureConfig quad;
  quad.t_nodes = 4;
  quad.max_doublings = 1;
  quad.tolerance = 1e-12;
  try {
    integrate_t_window([](double t) { return std::polar(1.0, 400.0 * t); }, window, quad);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.achieved_tolerance() > 1e-12);
    CHECK(std::isfinite(e.best_estimate().real()));
  }
}

TEST_CASE("t window: achieved tolerance never exceeds the request on success") {
  const auto window = InteractionWindow::symmetric(1.0);
  for (double tol : {1e-3, 1e-6, 1e-10}) {
    QuadratureConfig quad;
    quad.tolerance = tol;
    const IntegralResult res = integrate_t_window(
        [](double t) { return cd{std::exp(0.3 * t) * std::cos(2.0 * t), 0.0}; }, window, quad);
    CHECK(res.achieved <= tol);
  }
}
