// Python bindings for the main operations: scenario loading, spectra, ratios,
// the loss-discrepancy sweep, and the Fock-space oracle helpers.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include "chi2loss/convergence.hpp"
#include "chi2loss/fock.hpp"
#include "chi2loss/oracle.hpp"
#include "chi2loss/ratios.hpp"
#include "chi2loss/scenario.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace chi2loss;

namespace {

py::array_t<double> grid_points(const Grid1D& grid) {
  py::array_t<double> out(grid.n);
  auto buf = out.mutable_unchecked<1>();
  for (int i = 0; i < grid.n; ++i) buf(i) = grid.point(i);
  return out;
}

py::array_t<std::complex<double>> amplitude_array(const std::vector<std::complex<double>>& v) {
  py::array_t<std::complex<double>> out(static_cast<py::ssize_t>(v.size()));
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

py::dict ratio_dict(const RatioReport& r) {
  py::dict bins("ks"_a = r.ks, "ki"_a = r.ki, "kp"_a = r.kp, "dk_s"_a = r.dk_s,
                "dk_i"_a = r.dk_i, "dk_p"_a = r.dk_p);
  return py::dict("process"_a = process_name(r.process), "ratio"_a = r.ratio,
                  "ideal"_a = r.ideal, "correction_factor"_a = r.correction_factor,
                  "closed_form_estimate"_a = r.closed_form_estimate,
                  "achieved_tolerance"_a = r.achieved_tolerance, "bins"_a = bins);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Classical and quantum chi(2) waveguide processes with scattering loss";

  py::register_exception<ConfigError>(m, "ConfigError");
  py::register_exception<ConvergenceError>(m, "ConvergenceFailure");
  py::register_exception<UndefinedRatioError>(m, "UndefinedRatio");

  m.def("delta_pm", &delta_pm, "x"_a, "T"_a,
        "Windowed exponential intensity 4 sinh^2(xT)/x^2 (limit 4T^2 at x=0)");
  m.def("alpha_from_beta", &alpha_from_beta, "beta"_a, "v"_a,
        "Attenuation coefficient alpha = 2 beta / v");

  m.def(
      "figure2_curve",
      [](double beta_sh_T, const std::vector<double>& sweep) {
        const DeltaCurve c = figure2_curve(beta_sh_T, 1.0, sweep);
        return py::dict("beta_over_betaSH"_a = c.beta_ratio, "delta_minus"_a = c.delta_minus,
                        "delta_plus"_a = c.delta_plus,
                        "scaled_abs_difference"_a = c.scaled_abs_difference);
      },
      "beta_sh_T"_a, "sweep"_a,
      "Loss-rate discrepancy sweep at T = 1 (nondimensional), beta/beta_SH on the x axis");

  m.def(
      "fock_coherent_mean",
      [](std::complex<double> z, int cutoff) {
        return coherent_number_expectation(DiscreteModeSystem::coherent({z}, cutoff), 0);
      },
      "z"_a, "cutoff"_a = 20, "Truncated-basis coherent-state mean photon number");

  m.def(
      "fock_pair_expectation",
      [](const std::vector<std::vector<std::complex<double>>>& f, int cutoff, int i, int j) {
        const int modes = static_cast<int>(f.size());
        std::vector<std::complex<double>> flat;
        for (const auto& row : f) {
          if (static_cast<int>(row.size()) != modes)
            throw InvalidParameterError("F must be square");
          flat.insert(flat.end(), row.begin(), row.end());
        }
        return pair_number_expectation(DiscreteModeSystem::two_photon(modes, flat, cutoff), i, j);
      },
      "F"_a, "cutoff"_a = 4, "i"_a = 0, "j"_a = 1,
      "<adag_i adag_j a_j a_i> for the ket (1/sqrt2) sum F adag adag |vac>");

  py::class_<Scenario>(m, "Scenario")
      .def_static("load",
                  [](const std::filesystem::path& path) {
                    return build_scenario(parse_config(path));
                  },
                  "path"_a)
      .def_property_readonly("warnings",
                             [](const Scenario& s) { return s.narrowness_warnings; })
      .def_property_readonly("ks", [](const Scenario& s) { return s.ks; })
      .def_property_readonly("ki", [](const Scenario& s) { return s.ki; })
      .def_property_readonly("kp", [](const Scenario& s) { return s.kp; })
      .def(
          "dfg_spectrum",
          [](const Scenario& s) {
            if (!s.dfg) throw ConfigError("scenario does not define [dfg]");
            const SpectralAmplitude a = dfg_spectrum(s.model, *s.dfg, s.quad);
            return py::make_tuple(grid_points(a.grid), amplitude_array(a.amplitude));
          },
          "Returns (k, A) with photon density |A|^2 per unit k")
      .def("sfg_spectrum",
           [](const Scenario& s) {
             if (!s.sfg) throw ConfigError("scenario does not define [sfg]");
             const SpectralAmplitude a = sfg_spectrum(s.model, *s.sfg, s.quad);
             return py::make_tuple(grid_points(a.grid), amplitude_array(a.amplitude));
           })
      .def(
          "spdc_biphoton",
          [](const Scenario& s) {
            if (!s.spdc) throw ConfigError("scenario does not define [spdc]");
            const BiphotonAmplitude g = spdc_biphoton(s.model, *s.spdc, s.quad);
            py::array_t<std::complex<double>> arr({g.grid.n, g.grid.n});
            std::copy(g.values.begin(), g.values.end(), arr.mutable_data());
            return py::make_tuple(grid_points(g.grid), arr);
          },
          "Returns (k, G) with pair density 2|G|^2 per unit k^2")
      .def("ratios",
           [](const Scenario& s) {
             if (!s.spdc || !s.dfg || !s.sfg)
               throw ConfigError("ratios need [spdc], [dfg] and [sfg]");
             py::dict out;
             out["dfg"] =
                 ratio_dict(ratio_dfg(s.model, *s.spdc, *s.dfg, *s.ks, *s.ki, s.quad));
             out["sfg"] = ratio_dict(
                 ratio_sfg(s.model, *s.spdc, *s.sfg, *s.ks, *s.ki, *s.kp, s.quad));
             out["warnings"] = s.narrowness_warnings;
             return out;
           })
      .def(
          "oracle_densities",
          [](const Scenario& s, int refine) {
            const NumberDensityReport r = oracle_recompute(s, refine);
            return py::dict("dfg_idler_density"_a = r.dfg_idler_density,
                            "sfg_pump_density"_a = r.sfg_pump_density,
                            "spdc_pair_density"_a = r.spdc_pair_density,
                            "dfg_total"_a = r.dfg_total, "sfg_total"_a = r.sfg_total,
                            "spdc_total"_a = r.spdc_total);
          },
          "refine"_a = 4)
      .def("engine_densities", [](const Scenario& s) {
        const NumberDensityReport r = engine_densities(s);
        return py::dict("dfg_idler_density"_a = r.dfg_idler_density,
                        "sfg_pump_density"_a = r.sfg_pump_density,
                        "spdc_pair_density"_a = r.spdc_pair_density, "dfg_total"_a = r.dfg_total,
                        "sfg_total"_a = r.sfg_total, "spdc_total"_a = r.spdc_total);
      });

#ifdef VERSION_INFO
  m.attr("__version__") = VERSION_INFO;
#else
  m.attr("__version__") = "0.1.0";
#endif
}
