#include "chi2loss/observables.hpp"

#include <cmath>
#include <limits>

// Grid-batched spectrum evaluation. The t integral is Gauss-Legendre with node doubling;
// per node, the inner k integrals are accumulated through the combined-index table
// H[u] = sum_l g(l) PM[u,l], u = i + j over the (uniform, shared) F grid, which is valid
// because the coupling depends on its k arguments only through k1 + k2 - k. Pointwise
// kernels (kernels.cpp) evaluate the same sums directly; tests pin the two routes together.

namespace chi2loss {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

// PM[u*n_sh + l] = S-envelope value at mismatch U[u] - k_sh[l] - offset, times s0.
std::vector<double> pm_table(const WaveguideModel& model, const Grid1D& grid_f,
                             const Grid1D& grid_sh) {
  const int n_u = 2 * grid_f.n - 1;
  std::vector<double> pm(static_cast<std::size_t>(n_u) * grid_sh.n);
  const double base = 2.0 * grid_f.lo - model.coupling.offset();
  for (int u = 0; u < n_u; ++u) {
    const double uval = base + u * grid_f.delta();
    for (int l = 0; l < grid_sh.n; ++l)
      pm[static_cast<std::size_t>(u) * grid_sh.n + l] =
          model.coupling.strength() * model.coupling.envelope(uval - grid_sh.point(l));
  }
  return pm;
}

struct BandTables {
  std::vector<double> k, omega, beta, weight;
};

BandTables band_tables(const WaveguideModel& model, const Grid1D& grid, Band band) {
  BandTables t;
  t.k.resize(static_cast<std::size_t>(grid.n));
  t.omega.resize(t.k.size());
  t.beta.resize(t.k.size());
  t.weight.resize(t.k.size());
  for (int i = 0; i < grid.n; ++i) {
    t.k[i] = grid.point(i);
    t.omega[i] = model.dispersion.omega(band, t.k[i]);
    t.beta[i] = model.loss.rate(band, t.k[i]);
    t.weight[i] = grid.weight(i);
  }
  return t;
}

// Runs `pass` with doubled node counts until the max-norm relative change over the
// output grid is below tolerance.
template <typename Pass>
std::vector<std::complex<double>> refine_nodes(Pass&& pass, const QuadratureConfig& quad,
                                               SpectrumMeta* meta, const char* what) {
  if (!(quad.tolerance > 0.0)) throw InvalidParameterError("quadrature tolerance must be positive");
  int nodes = quad.t_nodes;
  std::vector<std::complex<double>> prev = pass(nodes);
  double achieved = std::numeric_limits<double>::infinity();
  for (int d = 0; d < quad.max_doublings; ++d) {
    nodes *= 2;
    std::vector<std::complex<double>> cur = pass(nodes);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      num = std::max(num, std::abs(cur[i] - prev[i]));
      den = std::max(den, std::abs(cur[i]));
    }
    achieved = den > 0.0 ? num / den : 0.0;
    prev = std::move(cur);
    if (achieved <= quad.tolerance) {
      if (meta) *meta = SpectrumMeta{achieved, nodes};
      return prev;
    }
  }
  if (quad.max_doublings == 0) {
    if (meta) *meta = SpectrumMeta{0.0, nodes};
    return prev;
  }
  std::complex<double> best{0.0, 0.0};
  for (const auto& v : prev)
    if (std::abs(v) > std::abs(best)) best = v;
  throw ConvergenceError(std::string(what) + ": t quadrature did not reach tolerance", best,
                         achieved);
}

struct TNode {
  double t, wt;
};

std::vector<TNode> t_nodes_for(const InteractionWindow& window, int n) {
  const auto& xs = gauss_legendre_nodes(n);
  const auto& ws = gauss_legendre_weights(n);
  const double mid = 0.5 * (window.t0() + window.t1());
  const double half = 0.5 * window.duration();
  std::vector<TNode> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out[i] = TNode{mid + half * xs[i], half * ws[i]};
  return out;
}

}  // namespace

double SpectralAmplitude::total_photons() const {
  double acc = 0.0;
  for (int i = 0; i < grid.n; ++i) acc += grid.weight(i) * std::norm(amplitude[i]);
  return acc;
}

double BiphotonAmplitude::total_pairs() const {
  double acc = 0.0;
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j)
      acc += grid.weight(i) * grid.weight(j) * std::norm(at(i, j));
  return acc;
}

SpectralAmplitude dfg_spectrum(const WaveguideModel& model, const ProcessInputs& inputs,
                               const QuadratureConfig& quad, SpectrumMeta* meta) {
  if (inputs.process() != Process::DFG)
    throw InvalidProcessError("dfg_spectrum: inputs not tagged DFG");
  const SampledField& seed = inputs.field(0);
  const SampledField& pump = inputs.field(1);
  const Grid1D& gf = inputs.grid_f();
  const Grid1D& gsh = inputs.grid_sh();
  const BandTables f = band_tables(model, gf, Band::F);
  const BandTables sh = band_tables(model, gsh, Band::SH);
  const std::vector<double> pm = pm_table(model, gf, gsh);
  const int n_u = 2 * gf.n - 1;
  const double t0 = model.window.t0(), t1 = model.window.t1();
  const std::complex<double> pref =
      2.0 * kI * std::conj(seed.input.amplitude) * pump.input.amplitude / model.hbar();

  auto pass = [&](int nodes) {
    std::vector<std::complex<double>> A(static_cast<std::size_t>(gf.n), {0.0, 0.0});
    std::vector<std::complex<double>> fa(static_cast<std::size_t>(gf.n));
    std::vector<std::complex<double>> gb(static_cast<std::size_t>(gsh.n));
    std::vector<std::complex<double>> H(static_cast<std::size_t>(n_u));
    for (const TNode& node : t_nodes_for(model.window, nodes)) {
      const double t = node.t;
      for (int j = 0; j < gf.n; ++j)
        fa[j] = seed.samples[j] * f.weight[j] * std::exp(-f.beta[j] * (t - t0)) *
                std::polar(1.0, f.omega[j] * t);
      for (int l = 0; l < gsh.n; ++l)
        gb[l] = pump.samples[l] * sh.weight[l] * std::exp(-sh.beta[l] * (t - t0)) *
                std::polar(1.0, -sh.omega[l] * t);
      for (int u = 0; u < n_u; ++u) {
        std::complex<double> acc{0.0, 0.0};
        const double* row = pm.data() + static_cast<std::size_t>(u) * gsh.n;
        for (int l = 0; l < gsh.n; ++l) acc += gb[l] * row[l];
        H[u] = acc;
      }
      for (int i = 0; i < gf.n; ++i) {
        std::complex<double> inner{0.0, 0.0};
        for (int j = 0; j < gf.n; ++j) inner += fa[j] * H[i + j];
        A[i] += node.wt * pref * std::polar(1.0, f.omega[i] * t) *
                std::exp(-f.beta[i] * (t1 - t)) * inner;
      }
    }
    return A;
  };

  return SpectralAmplitude{Band::F, gf, refine_nodes(pass, quad, meta, "dfg_spectrum")};
}

SpectralAmplitude sfg_spectrum(const WaveguideModel& model, const ProcessInputs& inputs,
                               const QuadratureConfig& quad, SpectrumMeta* meta) {
  if (inputs.process() != Process::SFG)
    throw InvalidProcessError("sfg_spectrum: inputs not tagged SFG");
  const SampledField& fa_in = inputs.field(0);
  const SampledField& fb_in = inputs.field(1);
  const Grid1D& gf = inputs.grid_f();
  const Grid1D& gsh = inputs.grid_sh();
  const BandTables f = band_tables(model, gf, Band::F);
  const BandTables sh = band_tables(model, gsh, Band::SH);
  const std::vector<double> pm = pm_table(model, gf, gsh);
  const int n_u = 2 * gf.n - 1;
  const double t0 = model.window.t0(), t1 = model.window.t1();
  const std::complex<double> pref =
      2.0 * kI * fa_in.input.amplitude * fb_in.input.amplitude / model.hbar();

  auto pass = [&](int nodes) {
    std::vector<std::complex<double>> A(static_cast<std::size_t>(gsh.n), {0.0, 0.0});
    std::vector<std::complex<double>> fa(static_cast<std::size_t>(gf.n));
    std::vector<std::complex<double>> fb(static_cast<std::size_t>(gf.n));
    std::vector<std::complex<double>> V(static_cast<std::size_t>(n_u));
    for (const TNode& node : t_nodes_for(model.window, nodes)) {
      const double t = node.t;
      for (int j = 0; j < gf.n; ++j) {
        const std::complex<double> common =
            std::exp(-f.beta[j] * (t - t0)) * std::polar(1.0, -f.omega[j] * t) * f.weight[j];
        fa[j] = fa_in.samples[j] * common;
        fb[j] = fb_in.samples[j] * common;
      }
      std::fill(V.begin(), V.end(), std::complex<double>{0.0, 0.0});
      for (int j = 0; j < gf.n; ++j) {
        if (fa[j] == std::complex<double>{0.0, 0.0}) continue;
        for (int l = 0; l < gf.n; ++l) V[j + l] += fa[j] * fb[l];
      }
      for (int m = 0; m < gsh.n; ++m) {
        std::complex<double> inner{0.0, 0.0};
        for (int u = 0; u < n_u; ++u) inner += V[u] * pm[static_cast<std::size_t>(u) * gsh.n + m];
        A[m] += node.wt * pref * std::polar(1.0, sh.omega[m] * t) *
                std::exp(-sh.beta[m] * (t1 - t)) * inner;
      }
    }
    return A;
  };

  return SpectralAmplitude{Band::SH, gsh, refine_nodes(pass, quad, meta, "sfg_spectrum")};
}

BiphotonAmplitude spdc_biphoton(const WaveguideModel& model, const ProcessInputs& inputs,
                                const QuadratureConfig& quad, SpectrumMeta* meta) {
  if (inputs.process() != Process::SPDC)
    throw InvalidProcessError("spdc_biphoton: inputs not tagged SPDC");
  const SampledField& pump = inputs.field(0);
  const Grid1D& gf = inputs.grid_f();
  const Grid1D& gsh = inputs.grid_sh();
  const BandTables f = band_tables(model, gf, Band::F);
  const BandTables sh = band_tables(model, gsh, Band::SH);
  const std::vector<double> pm = pm_table(model, gf, gsh);
  const int n_u = 2 * gf.n - 1;
  const double t0 = model.window.t0(), t1 = model.window.t1();
  const std::complex<double> pref = std::sqrt(2.0) * kI * pump.input.amplitude / model.hbar();

  auto pass = [&](int nodes) {
    std::vector<std::complex<double>> G(static_cast<std::size_t>(gf.n) * gf.n, {0.0, 0.0});
    std::vector<std::complex<double>> p(static_cast<std::size_t>(gsh.n));
    std::vector<std::complex<double>> P(static_cast<std::size_t>(n_u));
    std::vector<std::complex<double>> out_f(static_cast<std::size_t>(gf.n));
    for (const TNode& node : t_nodes_for(model.window, nodes)) {
      const double t = node.t;
      for (int l = 0; l < gsh.n; ++l)
        p[l] = pump.samples[l] * sh.weight[l] * std::exp(-sh.beta[l] * (t - t0)) *
               std::polar(1.0, -sh.omega[l] * t);
      for (int u = 0; u < n_u; ++u) {
        std::complex<double> acc{0.0, 0.0};
        const double* row = pm.data() + static_cast<std::size_t>(u) * gsh.n;
        for (int l = 0; l < gsh.n; ++l) acc += p[l] * row[l];
        P[u] = acc;
      }
      for (int j = 0; j < gf.n; ++j)
        out_f[j] = std::polar(1.0, f.omega[j] * t) * std::exp(-f.beta[j] * (t1 - t));
      for (int j = 0; j < gf.n; ++j) {
        const std::complex<double> left = node.wt * pref * out_f[j];
        std::complex<double>* rowG = G.data() + static_cast<std::size_t>(j) * gf.n;
        for (int m = 0; m < gf.n; ++m) rowG[m] += left * out_f[m] * P[j + m];
      }
    }
    return G;
  };

  return BiphotonAmplitude{gf, refine_nodes(pass, quad, meta, "spdc_biphoton")};
}

double photon_density(const SpectralAmplitude& spectrum, double k) {
  const int i = spectrum.grid.index_of(k);
  return std::norm(spectrum.amplitude[static_cast<std::size_t>(i)]);
}

double pair_density(const BiphotonAmplitude& biphoton, double ks, double ki) {
  const int i = biphoton.grid.index_of(ks);
  const int j = biphoton.grid.index_of(ki);
  if (i == j)
    throw DegenerateBinError("pair_density: signal and idler bins coincide");
  return 2.0 * std::norm(biphoton.at(i, j));
}

}  // namespace chi2loss
