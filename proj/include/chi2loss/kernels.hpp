#ifndef CHI2LOSS_KERNELS_HPP
#define CHI2LOSS_KERNELS_HPP

#include <complex>
#include <vector>

#include "chi2loss/model.hpp"
#include "chi2loss/quadrature.hpp"

namespace chi2loss {

enum class Process { DFG, SFG, SPDC };

const char* process_name(Process p);

/// A coherent input bound to the band grid it integrates over.
struct SampledField {
  CoherentInput input;
  Grid1D grid;
  std::vector<double> samples;
  double effective_width;  // |integral of phi|^2: the mode-matched bandwidth element

  static SampledField make(const CoherentInput& input, const Grid1D& grid);
};

/// Inputs of one process, with band composition enforced at construction:
/// DFG one F seed + one SH pump, SFG two F fields, SPDC one SH pump.
class ProcessInputs {
public:
  static ProcessInputs dfg(const CoherentInput& seed, const CoherentInput& pump,
                           const Grid1D& grid_f, const Grid1D& grid_sh);
  static ProcessInputs sfg(const CoherentInput& a, const CoherentInput& b, const Grid1D& grid_f,
                           const Grid1D& grid_sh);
  static ProcessInputs spdc(const CoherentInput& pump, const Grid1D& grid_f,
                            const Grid1D& grid_sh);

  Process process() const { return process_; }
  const SampledField& field(std::size_t i) const { return fields_.at(i); }
  std::size_t field_count() const { return fields_.size(); }
  const Grid1D& grid_f() const { return grid_f_; }
  const Grid1D& grid_sh() const { return grid_sh_; }

private:
  ProcessInputs(Process p, std::vector<SampledField> fields, Grid1D f, Grid1D sh)
      : process_(p), fields_(std::move(fields)), grid_f_(f), grid_sh_(sh) {}
  Process process_;
  std::vector<SampledField> fields_;
  Grid1D grid_f_;
  Grid1D grid_sh_;
};

/// Time-dependent coupling S(k1,k2,k) * exp(i (omega_F(k1) + omega_F(k2) - omega_SH(k)) t).
std::complex<double> coupling_t(const WaveguideModel& model, double k1, double k2, double k,
                                double t);

/// Pointwise kernel evaluations; pure functions of (model, inputs, point, t).
/// dfg: k is the generated F wavenumber and occupies the first coupling slot.
std::complex<double> dfg_kernel(const WaveguideModel& model, const ProcessInputs& inputs, double k,
                                double t);
/// sfg: k is the generated SH wavenumber; the coupling enters conjugated.
std::complex<double> sfg_kernel(const WaveguideModel& model, const ProcessInputs& inputs, double k,
                                double t);
/// spdc: (k1, k2) are the generated F pair wavenumbers.
std::complex<double> spdc_kernel(const WaveguideModel& model, const ProcessInputs& inputs,
                                 double k1, double k2, double t);

}  // namespace chi2loss

#endif
