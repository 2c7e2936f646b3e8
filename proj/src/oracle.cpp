#include "chi2loss/oracle.hpp"

#include <cmath>

#include "chi2loss/fock.hpp"

// Independent re-evaluation path: direct nested trapezoid sums over refined inner
// k grids with a fixed refined Gauss-Legendre rule in t. No inner-sum caching is
// shared with the spectrum engine.

namespace chi2loss {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};
constexpr std::size_t kMaxInnerCells = 1000000;

struct Axis {
  Grid1D grid;
  std::vector<double> phi;     // waveform samples
  std::vector<double> omega;   // band dispersion on the axis
  std::vector<double> beta;    // band loss on the axis
  std::vector<double> weight;  // trapezoid weights
};

// Integration axis of one input field: gaussian waveforms are resampled on a
// refine-fold denser grid (same span); grid-delta fields keep their base grid, where
// the single-bin sum is already the exact collapse of the integral.
Axis make_axis(const WaveguideModel& model, const SampledField& field, Band band, int refine) {
  const Grid1D& base = field.grid;
  const bool is_delta = field.input.waveform.kind() == WaveformKind::GridDelta;
  Grid1D grid = is_delta ? base : Grid1D(base.lo, base.hi, refine * (base.n - 1) + 1);
  Axis axis{grid, field.input.waveform.sample(grid), {}, {}, {}};
  axis.omega.resize(static_cast<std::size_t>(grid.n));
  axis.beta.resize(axis.omega.size());
  axis.weight.resize(axis.omega.size());
  for (int i = 0; i < grid.n; ++i) {
    const double k = grid.point(i);
    axis.omega[i] = model.dispersion.omega(band, k);
    axis.beta[i] = model.loss.rate(band, k);
    axis.weight[i] = grid.weight(i);
  }
  return axis;
}

struct TimeRule {
  std::vector<double> t, wt;
};

TimeRule time_rule(const WaveguideModel& model, int nodes) {
  const auto& xs = gauss_legendre_nodes(nodes);
  const auto& ws = gauss_legendre_weights(nodes);
  const double mid = 0.5 * (model.window.t0() + model.window.t1());
  const double half = 0.5 * model.window.duration();
  TimeRule rule;
  rule.t.resize(xs.size());
  rule.wt.resize(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    rule.t[i] = mid + half * xs[i];
    rule.wt[i] = half * ws[i];
  }
  return rule;
}

// Per-time-node integration factors of one axis: phi * weight * e^{+-i omega t - beta (t - t0)}.
std::vector<std::complex<double>> axis_factors(const Axis& axis, const TimeRule& rule, double t0,
                                               double phase_sign) {
  std::vector<std::complex<double>> out(rule.t.size() * axis.phi.size());
  for (std::size_t it = 0; it < rule.t.size(); ++it) {
    const double t = rule.t[it];
    for (std::size_t j = 0; j < axis.phi.size(); ++j)
      out[it * axis.phi.size() + j] =
          axis.phi[j] * axis.weight[j] * std::exp(-axis.beta[j] * (t - t0)) *
          std::polar(1.0, phase_sign * axis.omega[j] * t);
  }
  return out;
}

// |A(k)|^2 for a two-input process at one output bin; `dfg` selects slot order and signs.
double two_input_density(const WaveguideModel& model, const Axis& a, const Axis& b,
                         const TimeRule& rule,
                         const std::vector<std::complex<double>>& fa,
                         const std::vector<std::complex<double>>& fb,
                         const std::complex<double>& pref, Band out_band, double k, bool dfg) {
  const double t1 = model.window.t1();
  const double w_out = model.dispersion.omega(out_band, k);
  const double b_out = model.loss.rate(out_band, k);
  const std::size_t nj = a.phi.size(), nl = b.phi.size();
  if (nj * nl > kMaxInnerCells)
    throw ResourceLimitError("oracle_recompute: refined inner grids exceed 1e6 cells");

  std::vector<double> pm(nj * nl);
  for (std::size_t j = 0; j < nj; ++j)
    for (std::size_t l = 0; l < nl; ++l)
      pm[j * nl + l] = dfg ? model.coupling.value(k, a.grid.point(static_cast<int>(j)),
                                                  b.grid.point(static_cast<int>(l)))
                           : model.coupling.value(a.grid.point(static_cast<int>(j)),
                                                  b.grid.point(static_cast<int>(l)), k);

  std::complex<double> acc{0.0, 0.0};
  for (std::size_t it = 0; it < rule.t.size(); ++it) {
    const double t = rule.t[it];
    std::complex<double> inner{0.0, 0.0};
    const std::complex<double>* ra = fa.data() + it * nj;
    const std::complex<double>* rb = fb.data() + it * nl;
    for (std::size_t j = 0; j < nj; ++j) {
      if (ra[j] == std::complex<double>{0.0, 0.0}) continue;
      std::complex<double> row{0.0, 0.0};
      const double* pmr = pm.data() + j * nl;
      for (std::size_t l = 0; l < nl; ++l) row += rb[l] * pmr[l];
      inner += ra[j] * row;
    }
    acc += rule.wt[it] * std::polar(1.0, w_out * t) * std::exp(-b_out * (t1 - t)) * inner;
  }
  return std::norm(pref * acc);
}

}  // namespace

NumberDensityReport oracle_recompute(const Scenario& scenario, int refine) {
  if (refine < 1) throw InvalidParameterError("oracle_recompute: refine must be >= 1");
  const WaveguideModel& model = scenario.model;
  const TimeRule rule = time_rule(model, scenario.quad.t_nodes * refine);
  const double t0 = model.window.t0(), t1 = model.window.t1();
  NumberDensityReport report;

  if (scenario.dfg) {
    const SampledField& seed = scenario.dfg->field(0);
    const SampledField& pump = scenario.dfg->field(1);
    const Axis a = make_axis(model, seed, Band::F, refine);
    const Axis b = make_axis(model, pump, Band::SH, refine);
    // seed enters conjugated (phases +omega t), pump direct (phases -omega t)
    const auto fa = axis_factors(a, rule, t0, +1.0);
    const auto fb = axis_factors(b, rule, t0, -1.0);
    const std::complex<double> pref =
        2.0 * kI * std::conj(seed.input.amplitude) * pump.input.amplitude / model.hbar();
    double total = 0.0;
    const Grid1D& out = scenario.grid_f;
    std::vector<double> dens(static_cast<std::size_t>(out.n));
    for (int i = 0; i < out.n; ++i) {
      dens[i] = two_input_density(model, a, b, rule, fa, fb, pref, Band::F, out.point(i), true);
      total += out.weight(i) * dens[i];
    }
    report.dfg_total = total;
    if (scenario.ki) report.dfg_idler_density = dens[static_cast<std::size_t>(out.index_of(*scenario.ki))];
  }

  if (scenario.sfg) {
    const SampledField& in_a = scenario.sfg->field(0);
    const SampledField& in_b = scenario.sfg->field(1);
    const Axis a = make_axis(model, in_a, Band::F, refine);
    const Axis b = make_axis(model, in_b, Band::F, refine);
    // conj(S(k1,k2,k;t)): both input phases -omega t, output phase +omega_SH t
    const auto fa = axis_factors(a, rule, t0, -1.0);
    const auto fb = axis_factors(b, rule, t0, -1.0);
    const std::complex<double> pref =
        2.0 * kI * in_a.input.amplitude * in_b.input.amplitude / model.hbar();
    double total = 0.0;
    const Grid1D& out = scenario.grid_sh;
    std::vector<double> dens(static_cast<std::size_t>(out.n));
    for (int i = 0; i < out.n; ++i) {
      dens[i] = two_input_density(model, a, b, rule, fa, fb, pref, Band::SH, out.point(i), false);
      total += out.weight(i) * dens[i];
    }
    report.sfg_total = total;
    if (scenario.kp) report.sfg_pump_density = dens[static_cast<std::size_t>(out.index_of(*scenario.kp))];
  }

  if (scenario.spdc) {
    const SampledField& pump = scenario.spdc->field(0);
    const Axis p = make_axis(model, pump, Band::SH, refine);
    const auto fp = axis_factors(p, rule, t0, -1.0);
    const std::complex<double> pref = std::sqrt(2.0) * kI * pump.input.amplitude / model.hbar();
    const Grid1D& out = scenario.grid_f;
    const std::size_t nl = p.phi.size();
    if (nl > kMaxInnerCells)
      throw ResourceLimitError("oracle_recompute: refined inner grid exceeds 1e6 cells");

    auto biphoton_value = [&](double k1, double k2) {
      const double w12 =
          model.dispersion.omega(Band::F, k1) + model.dispersion.omega(Band::F, k2);
      const double b12 = model.loss.rate(Band::F, k1) + model.loss.rate(Band::F, k2);
      std::vector<double> pm(nl);
      for (std::size_t l = 0; l < nl; ++l)
        pm[l] = model.coupling.value(k1, k2, p.grid.point(static_cast<int>(l)));
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t it = 0; it < rule.t.size(); ++it) {
        const double t = rule.t[it];
        std::complex<double> inner{0.0, 0.0};
        const std::complex<double>* rp = fp.data() + it * nl;
        for (std::size_t l = 0; l < nl; ++l) inner += rp[l] * pm[l];
        acc += rule.wt[it] * std::polar(1.0, w12 * t) * std::exp(-b12 * (t1 - t)) * inner;
      }
      return pref * acc;
    };

    double total = 0.0;
    for (int i = 0; i < out.n; ++i)
      for (int j = 0; j < out.n; ++j)
        total += out.weight(i) * out.weight(j) * std::norm(biphoton_value(out.point(i), out.point(j)));
    report.spdc_total = total;
    if (scenario.ks && scenario.ki && *scenario.ks != *scenario.ki)
      report.spdc_pair_density = 2.0 * std::norm(biphoton_value(*scenario.ks, *scenario.ki));
  }

  return report;
}

std::vector<OracleCheckLine> fock_check_table() {
  std::vector<OracleCheckLine> lines;
  auto push = [&](const std::string& name, double value, double expected, double tol) {
    OracleCheckLine line{name, value, expected, tol, std::abs(value - expected) <= tol};
    lines.push_back(line);
  };

  {
    const DiscreteModeSystem sys = DiscreteModeSystem::coherent({{0.5, 0.0}}, 20);
    push("coherent mean number, |z|^2 = 0.25, cutoff 20", coherent_number_expectation(sys, 0),
         0.25, 1e-10);
  }
  {
    const DiscreteModeSystem sys = DiscreteModeSystem::coherent({{0.0, 1.0}}, 20);
    push("coherent mean number, |z|^2 = 1, cutoff 20", coherent_number_expectation(sys, 0), 1.0,
         1e-10);
  }
  {
    const DiscreteModeSystem sys = DiscreteModeSystem::coherent({{0.5, 0.0}, {0.0, 0.3}}, 20);
    push("two-mode coherent factorization, mode 0", coherent_number_expectation(sys, 0), 0.25,
         1e-10);
    push("two-mode coherent factorization, mode 1", coherent_number_expectation(sys, 1), 0.09,
         1e-10);
  }
  {
    // ket (1/sqrt2) sum F adag adag |vac> with F(0,1) = F(1,0) = c/sqrt2: expectation 2|F01|^2.
    const std::complex<double> c = std::polar(0.3, 0.7);
    const std::complex<double> f01 = c / std::sqrt(2.0);
    const DiscreteModeSystem sys = DiscreteModeSystem::two_photon(2, {0.0, f01, f01, 0.0}, 4);
    push("two-photon cross pair count vs 2|F(1,2)|^2", pair_number_expectation(sys, 0, 1),
         2.0 * std::norm(f01), 1e-12);
  }
  {
    const std::complex<double> c = std::polar(0.4, -0.2);
    const DiscreteModeSystem sys = DiscreteModeSystem::two_photon(2, {c, 0.0, 0.0, 0.0}, 4);
    push("two-photon degenerate pair count vs 2|c|^2", pair_number_expectation(sys, 0, 0),
         2.0 * std::norm(c), 1e-12);
  }
  return lines;
}

}  // namespace chi2loss
