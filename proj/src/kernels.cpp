#include "chi2loss/kernels.hpp"

#include <cmath>

namespace chi2loss {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};

void require_band(const CoherentInput& input, Band band, const char* role) {
  if (input.waveform.band() != band)
    throw InvalidProcessError(std::string("input band mismatch for ") + role);
}

void require_process(const ProcessInputs& inputs, Process p, const char* op) {
  if (inputs.process() != p)
    throw InvalidProcessError(std::string(op) + ": inputs tagged " +
                              process_name(inputs.process()));
}

void require_time(const WaveguideModel& model, double t) {
  if (!std::isfinite(t)) throw InvalidParameterError("kernel time must be finite");
  const double pad = 1e-12 * std::max(1.0, std::abs(model.window.duration()));
  if (t < model.window.t0() - pad || t > model.window.t1() + pad)
    throw InvalidParameterError("kernel time outside the interaction window");
}

}  // namespace

const char* process_name(Process p) {
  switch (p) {
    case Process::DFG: return "DFG";
    case Process::SFG: return "SFG";
    case Process::SPDC: return "SPDC";
  }
  return "?";
}

SampledField SampledField::make(const CoherentInput& input, const Grid1D& grid) {
  SampledField field{input, grid, input.waveform.sample(grid), 0.0};
  double s = 0.0;
  for (int i = 0; i < grid.n; ++i) s += grid.weight(i) * field.samples[static_cast<std::size_t>(i)];
  field.effective_width = s * s;  // |integral of phi|^2, phi real
  return field;
}

ProcessInputs ProcessInputs::dfg(const CoherentInput& seed, const CoherentInput& pump,
                                 const Grid1D& grid_f, const Grid1D& grid_sh) {
  require_band(seed, Band::F, "DFG seed");
  require_band(pump, Band::SH, "DFG pump");
  std::vector<SampledField> fields{SampledField::make(seed, grid_f),
                                   SampledField::make(pump, grid_sh)};
  return ProcessInputs(Process::DFG, std::move(fields), grid_f, grid_sh);
}

ProcessInputs ProcessInputs::sfg(const CoherentInput& a, const CoherentInput& b,
                                 const Grid1D& grid_f, const Grid1D& grid_sh) {
  require_band(a, Band::F, "SFG input a");
  require_band(b, Band::F, "SFG input b");
  std::vector<SampledField> fields{SampledField::make(a, grid_f), SampledField::make(b, grid_f)};
  return ProcessInputs(Process::SFG, std::move(fields), grid_f, grid_sh);
}

ProcessInputs ProcessInputs::spdc(const CoherentInput& pump, const Grid1D& grid_f,
                                  const Grid1D& grid_sh) {
  require_band(pump, Band::SH, "SPDC pump");
  std::vector<SampledField> fields{SampledField::make(pump, grid_sh)};
  return ProcessInputs(Process::SPDC, std::move(fields), grid_f, grid_sh);
}

std::complex<double> coupling_t(const WaveguideModel& model, double k1, double k2, double k,
                                double t) {
  if (!std::isfinite(t)) throw InvalidParameterError("coupling_t: t must be finite");
  const double phase = (model.dispersion.omega(Band::F, k1) + model.dispersion.omega(Band::F, k2) -
                        model.dispersion.omega(Band::SH, k)) *
                       t;
  return model.coupling.value(k1, k2, k) * std::polar(1.0, phase);
}

std::complex<double> dfg_kernel(const WaveguideModel& model, const ProcessInputs& inputs, double k,
                                double t) {
  require_process(inputs, Process::DFG, "dfg_kernel");
  require_time(model, t);
  const SampledField& seed = inputs.field(0);
  const SampledField& pump = inputs.field(1);
  const double t0 = model.window.t0();
  const double wk = model.dispersion.omega(Band::F, k);

  std::complex<double> acc{0.0, 0.0};
  for (int j = 0; j < seed.grid.n; ++j) {
    const double a = seed.samples[static_cast<std::size_t>(j)];
    if (a == 0.0) continue;
    const double k1 = seed.grid.point(j);
    const double w1 = model.dispersion.omega(Band::F, k1);
    const double b1 = model.loss.rate(Band::F, k1);
    const double wa = seed.grid.weight(j) * a;
    for (int l = 0; l < pump.grid.n; ++l) {
      const double b = pump.samples[static_cast<std::size_t>(l)];
      if (b == 0.0) continue;
      const double k2 = pump.grid.point(l);
      const double w2 = model.dispersion.omega(Band::SH, k2);
      const double b2 = model.loss.rate(Band::SH, k2);
      // generated k occupies the first coupling slot: S(k, k1, k2; t)
      const double s = model.coupling.value(k, k1, k2);
      const double decay = std::exp(-(b1 + b2) * (t - t0));
      acc += wa * pump.grid.weight(l) * b * s * decay * std::polar(1.0, (wk + w1 - w2) * t);
    }
  }
  const std::complex<double> pref =
      2.0 * kI * std::conj(seed.input.amplitude) * pump.input.amplitude / model.hbar();
  return pref * acc;
}

std::complex<double> sfg_kernel(const WaveguideModel& model, const ProcessInputs& inputs, double k,
                                double t) {
  require_process(inputs, Process::SFG, "sfg_kernel");
  require_time(model, t);
  const SampledField& fa = inputs.field(0);
  const SampledField& fb = inputs.field(1);
  const double t0 = model.window.t0();
  const double wk = model.dispersion.omega(Band::SH, k);

  std::complex<double> acc{0.0, 0.0};
  for (int j = 0; j < fa.grid.n; ++j) {
    const double a = fa.samples[static_cast<std::size_t>(j)];
    if (a == 0.0) continue;
    const double k1 = fa.grid.point(j);
    const double w1 = model.dispersion.omega(Band::F, k1);
    const double b1 = model.loss.rate(Band::F, k1);
    const double wa = fa.grid.weight(j) * a;
    for (int l = 0; l < fb.grid.n; ++l) {
      const double b = fb.samples[static_cast<std::size_t>(l)];
      if (b == 0.0) continue;
      const double k2 = fb.grid.point(l);
      const double w2 = model.dispersion.omega(Band::F, k2);
      const double b2 = model.loss.rate(Band::F, k2);
      // conj(S(k1,k2,k;t)): coupling real, phase sign flipped
      const double s = model.coupling.value(k1, k2, k);
      const double decay = std::exp(-(b1 + b2) * (t - t0));
      acc += wa * fb.grid.weight(l) * b * s * decay * std::polar(1.0, -(w1 + w2 - wk) * t);
    }
  }
  const std::complex<double> pref =
      2.0 * kI * fa.input.amplitude * fb.input.amplitude / model.hbar();
  return pref * acc;
}

std::complex<double> spdc_kernel(const WaveguideModel& model, const ProcessInputs& inputs,
                                 double k1, double k2, double t) {
  require_process(inputs, Process::SPDC, "spdc_kernel");
  require_time(model, t);
  const SampledField& pump = inputs.field(0);
  const double t0 = model.window.t0();
  const double w1 = model.dispersion.omega(Band::F, k1);
  const double w2 = model.dispersion.omega(Band::F, k2);

  std::complex<double> acc{0.0, 0.0};
  for (int l = 0; l < pump.grid.n; ++l) {
    const double p = pump.samples[static_cast<std::size_t>(l)];
    if (p == 0.0) continue;
    const double k = pump.grid.point(l);
    const double wk = model.dispersion.omega(Band::SH, k);
    const double bk = model.loss.rate(Band::SH, k);
    const double s = model.coupling.value(k1, k2, k);
    acc += pump.grid.weight(l) * p * s * std::exp(-bk * (t - t0)) *
           std::polar(1.0, (w1 + w2 - wk) * t);
  }
  const std::complex<double> pref = std::sqrt(2.0) * kI * pump.input.amplitude / model.hbar();
  return pref * acc;
}

}  // namespace chi2loss
