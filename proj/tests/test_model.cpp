#include <doctest.h>

#include <cmath>
#include <random>

#include "chi2loss/model.hpp"

using namespace chi2loss;

namespace {

WaveguideModel simple_model(double v_f = 1.0, double v_sh = 1.0) {
  return WaveguideModel{DispersionRelation(0.0, 1.0, v_f, 0.0, 2.0, v_sh),
                        LossProfile::constant(0.0, 0.0), CouplingModel::constant(1.0),
                        InteractionWindow::symmetric(1.0), UnitMode::Nondimensional};
}

}  // namespace

TEST_CASE("dispersion evaluation") {
  {
    WaveguideModel m{DispersionRelation(1.0, 5.0, 3.0, 0.0, 2.0, 1.0),
                     LossProfile::constant(0.0, 0.0), CouplingModel::constant(1.0),
                     InteractionWindow::symmetric(1.0), UnitMode::Nondimensional};
    CHECK(eval_dispersion(m, Band::F, 1.0) == doctest::Approx(5.0));  // center point
  }
  {
    WaveguideModel m{DispersionRelation(0.0, 0.0, 1.0, 0.0, 0.0, 1.0),
                     LossProfile::constant(0.0, 0.0), CouplingModel::constant(1.0),
                     InteractionWindow::symmetric(1.0), UnitMode::Nondimensional};
    CHECK(eval_dispersion(m, Band::F, 2.5) == doctest::Approx(2.5));
  }
  {
    WaveguideModel m{DispersionRelation(0.0, 0.0, 1.0, 1.0, 10.0, 2.0),
                     LossProfile::constant(0.0, 0.0), CouplingModel::constant(1.0),
                     InteractionWindow::symmetric(1.0), UnitMode::Nondimensional};
    CHECK(eval_dispersion(m, Band::SH, 3.0) == doctest::Approx(14.0));
  }
  CHECK_THROWS_AS(DispersionRelation(0.0, 0.0, 0.0, 0.0, 0.0, 1.0), InvalidParameterError);
}

TEST_CASE("loss profiles: constant, interpolation, clamping") {
  WaveguideModel m = simple_model();
  for (double k : {-10.0, 0.0, 3.7}) CHECK(eval_loss(m, Band::F, k) == 0.0);

  WaveguideModel mt{DispersionRelation(0.0, 1.0, 1.0, 0.0, 2.0, 1.0),
                    LossProfile::tables(LossTable{{0.0, 2.0}, {1.0, 3.0}}, 0.5),
                    CouplingModel::constant(1.0), InteractionWindow::symmetric(1.0),
                    UnitMode::Nondimensional};
  CHECK(eval_loss(mt, Band::F, 1.0) == doctest::Approx(2.0));   // midpoint interpolation
  CHECK(eval_loss(mt, Band::F, 5.0) == doctest::Approx(3.0));   // clamp above
  CHECK(eval_loss(mt, Band::F, -1.0) == doctest::Approx(1.0));  // clamp below
  CHECK(eval_loss(mt, Band::SH, 123.0) == doctest::Approx(0.5));

  CHECK_THROWS_AS(LossProfile::tables(LossTable{{0.0, 0.0}, {1.0, 2.0}}, 0.0), ConfigError);
  CHECK_THROWS_AS(LossProfile::tables(LossTable{{0.0, 1.0}, {1.0, -2.0}}, 0.0), ConfigError);
  CHECK_THROWS_AS(LossProfile::constant(-0.1, 0.0), ConfigError);
}

TEST_CASE("loss nonnegativity over a grid") {
  WaveguideModel mt{DispersionRelation(0.0, 1.0, 1.0, 0.0, 2.0, 1.0),
                    LossProfile::tables(LossTable{{-1.0, 0.0, 2.0}, {0.3, 0.0, 1.7}}, 0.2),
                    CouplingModel::constant(1.0), InteractionWindow::symmetric(1.0),
                    UnitMode::Nondimensional};
  Grid1D g(-3.0, 3.0, 121);
  for (int i = 0; i < g.n; ++i) {
    CHECK(eval_loss(mt, Band::F, g.point(i)) >= 0.0);
    CHECK(eval_loss(mt, Band::SH, g.point(i)) >= 0.0);
  }
}

TEST_CASE("attenuation coefficient") {
  CHECK(alpha_from_beta(0.0, 1.0) == doctest::Approx(0.0));
  CHECK(alpha_from_beta(0.5, 1.0) == doctest::Approx(1.0));
  CHECK(alpha_from_beta(3.0, 2.0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(alpha_from_beta(1.0, 0.0), InvalidParameterError);
  CHECK_THROWS_AS(alpha_from_beta(1.0, -2.0), InvalidParameterError);
}

TEST_CASE("coupling: constant, gaussian peak, exchange symmetry") {
  WaveguideModel m = simple_model();
  CHECK(eval_coupling(m, 0.3, -1.2, 0.9) == doctest::Approx(1.0));

  const double offset = 0.4;
  WaveguideModel mg{DispersionRelation(0.0, 1.0, 1.0, 0.0, 2.0, 1.0),
                    LossProfile::constant(0.0, 0.0), CouplingModel::gaussian(2.5, 0.7, offset),
                    InteractionWindow::symmetric(1.0), UnitMode::Nondimensional};
  // peak where k1 + k2 - k = offset
  CHECK(eval_coupling(mg, 0.9, 0.5, 1.0) == doctest::Approx(2.5));
  CHECK(eval_coupling(mg, 0.9, 0.5, 0.0) < 2.5);

  std::mt19937 rng(12345);
  std::uniform_real_distribution<double> dist(-5.0, 5.0);
  for (int trial = 0; trial < 1000; ++trial) {
    const double k1 = dist(rng), k2 = dist(rng), k = dist(rng);
    CHECK(eval_coupling(mg, k1, k2, k) == eval_coupling(mg, k2, k1, k));
  }

  CHECK_THROWS_AS(CouplingModel::constant(0.0), InvalidParameterError);
  CHECK_THROWS_AS(CouplingModel::gaussian(1.0, 0.0), InvalidParameterError);
}

TEST_CASE("sinc envelope: sign change and small-argument limit") {
  CouplingModel c = CouplingModel::sinc(1.0, 10.0);
  CHECK(c.envelope(0.0) == doctest::Approx(1.0));
  CHECK(c.envelope(1e-12) == doctest::Approx(1.0));
  // first zero at mismatch = 2 pi / L, negative lobe past it
  CHECK(c.envelope(2.0 * M_PI / 10.0 * 1.5) < 0.0);
}

TEST_CASE("waveform normalization on the grid") {
  Grid1D g(-8.0, 8.0, 161);
  std::mt19937 rng(777);
  std::uniform_real_distribution<double> sig(0.3, 1.1), cen(-0.5, 0.5);
  for (int trial = 0; trial < 20; ++trial) {
    const Waveform wf = Waveform::gaussian(Band::F, cen(rng), sig(rng));
    const auto phi = wf.sample(g);
    double total = 0.0;
    for (int i = 0; i < g.n; ++i) total += g.weight(i) * phi[i] * phi[i];
    CHECK(total == doctest::Approx(1.0).epsilon(1e-6));
  }
}

TEST_CASE("grid-delta waveform: one bin, amplitude 1/sqrt(dk)") {
  Grid1D g(-2.0, 2.0, 17);
  const Waveform wf = Waveform::grid_delta(Band::SH, 0.5);
  const auto phi = wf.sample(g);
  int nonzero = 0;
  for (int i = 0; i < g.n; ++i)
    if (phi[i] != 0.0) {
      ++nonzero;
      CHECK(g.point(i) == doctest::Approx(0.5));
      CHECK(phi[i] == doctest::Approx(1.0 / std::sqrt(g.delta())));
    }
  CHECK(nonzero == 1);
  // off-grid or edge centers are rejected
  CHECK_THROWS_AS(Waveform::grid_delta(Band::SH, 0.61).sample(g), InvalidParameterError);
  CHECK_THROWS_AS(Waveform::grid_delta(Band::SH, -2.0).sample(g), ConfigError);
}

TEST_CASE("gaussian waveform span rule") {
  Grid1D g(-2.0, 2.0, 41);
  CHECK_THROWS_AS(Waveform::gaussian(Band::F, 0.0, 1.0).sample(g), ConfigError);  // needs 6 sigma
  CHECK_NOTHROW(Waveform::gaussian(Band::F, 0.0, 0.3).sample(g));
}

TEST_CASE("interaction window: L/v_in held exactly") {
  const auto w = InteractionWindow::from_length(0.37, 1.7);
  CHECK(w.t1() - w.t0() == w.duration());
  CHECK(w.duration() == 0.37 / 1.7);  // bitwise: duration computed first, halved after
  CHECK(w.t0() == -w.t1());
  const auto ws = InteractionWindow::symmetric(2.0);
  CHECK(ws.duration() == doctest::Approx(4.0));
  CHECK_THROWS_AS(InteractionWindow::symmetric(0.0), InvalidParameterError);
  CHECK_THROWS_AS(InteractionWindow::from_length(1.0, 0.0), InvalidParameterError);
}

TEST_CASE("mean photon number is |z|^2") {
  CoherentInput in{Waveform::gaussian(Band::F, 0.0, 1.0), std::polar(1.3, 0.4)};
  CHECK(in.mean_photon_number() == doctest::Approx(1.69));
}

TEST_CASE("SI units expose the physical hbar") {
  WaveguideModel m = simple_model();
  CHECK(m.hbar() == 1.0);
  m.units = UnitMode::SI;
  CHECK(m.hbar() == doctest::Approx(1.054571817e-34));
}
