// Command-line front end: config-driven spectra, quantum-classical ratios, the
// loss-discrepancy sweep, oracle checks, and quadrature refinement tables.
// Exit codes: 0 success, 2 config error, 3 convergence failure, 4 undefined ratio.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "chi2loss/convergence.hpp"
#include "chi2loss/fock.hpp"
#include "chi2loss/oracle.hpp"
#include "chi2loss/ratios.hpp"
#include "chi2loss/scenario.hpp"

namespace {

using namespace chi2loss;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file: " + path);
  return out;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

struct CommonOpts {
  std::string config_path;
  std::string out_path;
  double tolerance = 0.0;  // 0 = keep config value
  bool strict = false;
};

Scenario load_scenario(const CommonOpts& opts) {
  ScenarioConfig cfg = parse_config(opts.config_path);
  if (opts.tolerance > 0.0) cfg.quad.tolerance = opts.tolerance;
  return build_scenario(cfg);
}

int run_spectra(const CommonOpts& opts, const std::string& process) {
  const Scenario scenario = load_scenario(opts);
  std::ofstream out = open_out(opts.out_path);
  if (process == "dfg" || process == "sfg") {
    const ProcessInputs* inputs = process == "dfg" ? (scenario.dfg ? &*scenario.dfg : nullptr)
                                                   : (scenario.sfg ? &*scenario.sfg : nullptr);
    if (!inputs) throw ConfigError("config does not define [" + process + "]");
    const SpectralAmplitude a = process == "dfg"
                                    ? dfg_spectrum(scenario.model, *inputs, scenario.quad)
                                    : sfg_spectrum(scenario.model, *inputs, scenario.quad);
    out << "k,re_A,im_A,density\n";
    for (int i = 0; i < a.grid.n; ++i) {
      const auto v = a.amplitude[static_cast<std::size_t>(i)];
      out << fmt17(a.grid.point(i)) << ',' << fmt17(v.real()) << ',' << fmt17(v.imag()) << ','
          << fmt17(std::norm(v)) << '\n';
    }
  } else if (process == "spdc") {
    if (!scenario.spdc) throw ConfigError("config does not define [spdc]");
    const BiphotonAmplitude g = spdc_biphoton(scenario.model, *scenario.spdc, scenario.quad);
    out << "k1,k2,re_G,im_G,pair_density\n";
    for (int i = 0; i < g.grid.n; ++i)
      for (int j = 0; j < g.grid.n; ++j) {
        const auto v = g.at(i, j);
        out << fmt17(g.grid.point(i)) << ',' << fmt17(g.grid.point(j)) << ','
            << fmt17(v.real()) << ',' << fmt17(v.imag()) << ',' << fmt17(2.0 * std::norm(v))
            << '\n';
      }
  } else {
    throw ConfigError("unknown process '" + process + "' (expected spdc, dfg or sfg)");
  }
  return 0;
}

void write_ratio_json(std::ostream& out, const char* name, const RatioReport& r, bool comma) {
  out << "  \"" << name << "\": {\n"
      << "    \"ratio\": " << fmt17(r.ratio) << ",\n"
      << "    \"ideal\": " << fmt17(r.ideal) << ",\n"
      << "    \"correction_factor\": " << fmt17(r.correction_factor) << ",\n"
      << "    \"closed_form_estimate\": " << fmt17(r.closed_form_estimate) << ",\n"
      << "    \"achieved_tolerance\": " << fmt17(r.achieved_tolerance) << ",\n"
      << "    \"bins\": {\"ks\": " << fmt17(r.ks) << ", \"ki\": " << fmt17(r.ki)
      << ", \"kp\": " << fmt17(r.kp) << ", \"dk_s\": " << fmt17(r.dk_s)
      << ", \"dk_i\": " << fmt17(r.dk_i) << ", \"dk_p\": " << fmt17(r.dk_p) << "}\n"
      << "  }" << (comma ? ",\n" : "\n");
}

int run_ratios(const CommonOpts& opts) {
  const Scenario scenario = load_scenario(opts);
  std::vector<std::string> missing;
  if (!scenario.spdc) missing.push_back("config does not define [spdc]");
  if (!scenario.dfg) missing.push_back("config does not define [dfg]");
  if (!scenario.sfg) missing.push_back("config does not define [sfg]");
  if (!missing.empty()) throw ConfigError(missing);
  if (opts.strict && !scenario.narrowness_warnings.empty())
    throw ConfigError(scenario.narrowness_warnings);
  for (const auto& w : scenario.narrowness_warnings) std::cerr << "warning: " << w << "\n";

  const RatioReport dfg = ratio_dfg(scenario.model, *scenario.spdc, *scenario.dfg, *scenario.ks,
                                    *scenario.ki, scenario.quad);
  const RatioReport sfg = ratio_sfg(scenario.model, *scenario.spdc, *scenario.sfg, *scenario.ks,
                                    *scenario.ki, *scenario.kp, scenario.quad);

  std::ofstream out = open_out(opts.out_path);
  out << "{\n";
  write_ratio_json(out, "dfg", dfg, true);
  write_ratio_json(out, "sfg", sfg, true);
  out << "  \"warnings\": [";
  for (std::size_t i = 0; i < scenario.narrowness_warnings.size(); ++i)
    out << (i ? ", " : "") << '"' << json_escape(scenario.narrowness_warnings[i]) << '"';
  out << "]\n}\n";
  return 0;
}

int run_figure2(double beta_sh_T, const std::string& sweep_spec, const std::string& out_path) {
  double lo = 0.0, hi = 0.0;
  int n = 0;
  char trailing = 0;
  if (std::sscanf(sweep_spec.c_str(), "%lf:%lf:%d%c", &lo, &hi, &n, &trailing) != 3)
    throw ConfigError("malformed --sweep, expected MIN:MAX:N");
  if (n < 1) throw ConfigError("--sweep: N must be >= 1");
  if (lo < 0.0) throw ConfigError("--sweep: MIN must be >= 0");
  if (hi < lo) throw ConfigError("--sweep: MAX must be >= MIN");
  if (!(beta_sh_T > 0.0)) throw ConfigError("--beta-sh-T must be positive");

  std::vector<double> sweep;
  sweep.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    sweep.push_back(n == 1 ? lo : lo + (i * (hi - lo)) / (n - 1));

  // Nondimensional: T = 1, beta_SH = beta_sh_T / T.
  const DeltaCurve curve = figure2_curve(beta_sh_T, 1.0, sweep);
  std::ofstream out = open_out(out_path);
  out << "beta_over_betaSH,delta_minus,delta_plus,scaled_abs_difference\n";
  for (std::size_t i = 0; i < curve.beta_ratio.size(); ++i)
    out << fmt17(curve.beta_ratio[i]) << ',' << fmt17(curve.delta_minus[i]) << ','
        << fmt17(curve.delta_plus[i]) << ',' << fmt17(curve.scaled_abs_difference[i]) << '\n';
  return 0;
}

// Engine-vs-Fock normalization fixture: a small lossy SPDC scenario whose biphoton
// amplitude is loaded into an explicit two-mode system; the pair count from operator
// algebra must equal pair_density * dk^2.
OracleCheckLine engine_fock_line() {
  DispersionRelation dispersion(0.0, 1.0, 1.0, 0.0, 2.0, 1.0);
  WaveguideModel model{dispersion, LossProfile::constant(0.2, 0.4), CouplingModel::constant(1.3),
                       InteractionWindow::symmetric(1.0), UnitMode::Nondimensional};
  Grid1D grid_f(-1.0, 1.0, 9), grid_sh(-1.0, 1.0, 9);
  const double ks = -0.25, ki = 0.25;
  CoherentInput pump{Waveform::grid_delta(Band::SH, 0.0), std::polar(0.8, 0.3)};
  const ProcessInputs inputs = ProcessInputs::spdc(pump, grid_f, grid_sh);
  QuadratureConfig quad{1e-10, 6, 64};
  const BiphotonAmplitude g = spdc_biphoton(model, inputs, quad);
  const int is = grid_f.index_of(ks), ii = grid_f.index_of(ki);
  const double dk = grid_f.delta();
  const std::vector<std::complex<double>> f = {dk * g.at(is, is), dk * g.at(is, ii),
                                               dk * g.at(ii, is), dk * g.at(ii, ii)};
  const DiscreteModeSystem sys = DiscreteModeSystem::two_photon(2, f, 4);
  const double fock_count = pair_number_expectation(sys, 0, 1);
  const double engine_count = pair_density(g, ks, ki) * dk * dk;
  const double tol = 1e-12 * std::max(1.0, fock_count);
  return OracleCheckLine{"engine pair density vs two-mode operator algebra", engine_count,
                         fock_count, tol, std::abs(engine_count - fock_count) <= tol};
}

int run_oracle_check(const CommonOpts& opts) {
  std::vector<OracleCheckLine> lines = fock_check_table();
  lines.push_back(engine_fock_line());

  if (!opts.config_path.empty()) {
    const Scenario scenario = load_scenario(opts);
    const NumberDensityReport engine = engine_densities(scenario);
    const NumberDensityReport oracle = oracle_recompute(scenario, 4);
    auto push = [&](const char* name, double e, double o) {
      if (std::isnan(e) || std::isnan(o)) return;
      const double rel = std::abs(e - o) / std::max({std::abs(e), std::abs(o), 1e-300});
      lines.push_back(OracleCheckLine{std::string("4x quadrature recompute: ") + name, e, o,
                                      1e-4, rel <= 1e-4});
    };
    push("dfg_idler_density", engine.dfg_idler_density, oracle.dfg_idler_density);
    push("dfg_total_photons", engine.dfg_total, oracle.dfg_total);
    push("sfg_pump_density", engine.sfg_pump_density, oracle.sfg_pump_density);
    push("sfg_total_photons", engine.sfg_total, oracle.sfg_total);
    push("spdc_pair_density", engine.spdc_pair_density, oracle.spdc_pair_density);
    push("spdc_total_pairs", engine.spdc_total, oracle.spdc_total);
  }

  std::ostringstream table;
  bool all_pass = true;
  for (const auto& line : lines) {
    all_pass = all_pass && line.pass;
    table << (line.pass ? "PASS" : "FAIL") << "  " << line.name
          << "  value=" << fmt17(line.value) << " expected=" << fmt17(line.expected)
          << " tol=" << fmt17(line.tolerance) << "\n";
  }
  std::cout << table.str();
  if (!opts.out_path.empty()) {
    std::ofstream out = open_out(opts.out_path);
    out << table.str();
  }
  return all_pass ? 0 : 1;
}

int run_convergence(const CommonOpts& opts, int levels) {
  const Scenario scenario = load_scenario(opts);
  const auto rows = convergence_report(scenario, levels);
  std::ofstream out = open_out(opts.out_path);
  out << "level,k_scale,t_nodes,observable,value,rel_change\n";
  for (const auto& r : rows)
    out << r.level << ',' << r.k_scale << ',' << r.t_nodes << ',' << r.observable << ','
        << fmt17(r.value) << ',' << fmt17(r.rel_change) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical and quantum chi(2) waveguide processes with scattering loss"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string process = "spdc";
  double beta_sh_T = 1.0;
  std::string sweep_spec;
  int levels = 2;

  auto* spectra = app.add_subcommand("spectra", "Generated spectra / biphoton grid as CSV");
  spectra->add_option("--config", opts.config_path)->required();
  spectra->add_option("--out", opts.out_path)->required();
  spectra->add_option("--process", process, "spdc | dfg | sfg")->required();
  spectra->add_option("--tolerance", opts.tolerance);

  auto* ratios = app.add_subcommand("ratios", "Quantum-classical ratio report as JSON");
  ratios->add_option("--config", opts.config_path)->required();
  ratios->add_option("--out", opts.out_path)->required();
  ratios->add_option("--tolerance", opts.tolerance);
  ratios->add_flag("--strict", opts.strict, "escalate narrowness warnings to errors");

  auto* figure2 = app.add_subcommand("figure2", "Loss-rate discrepancy sweep as CSV");
  figure2->add_option("--beta-sh-T", beta_sh_T)->required();
  figure2->add_option("--sweep", sweep_spec, "MIN:MAX:N in beta/beta_SH")->required();
  figure2->add_option("--out", opts.out_path)->required();

  auto* oracle = app.add_subcommand("oracle-check", "Fock-space and quadrature oracle table");
  oracle->add_option("--config", opts.config_path,
                     "also recompute this scenario's densities at 4x resolution");
  oracle->add_option("--out", opts.out_path, "write the table to a file as well");
  oracle->add_option("--tolerance", opts.tolerance);

  auto* convergence = app.add_subcommand("convergence", "Grid/time refinement table as CSV");
  convergence->add_option("--config", opts.config_path)->required();
  convergence->add_option("--out", opts.out_path)->required();
  convergence->add_option("--levels", levels);
  convergence->add_option("--tolerance", opts.tolerance);

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectra->parsed()) return run_spectra(opts, process);
    if (ratios->parsed()) return run_ratios(opts);
    if (figure2->parsed()) return run_figure2(beta_sh_T, sweep_spec, opts.out_path);
    if (oracle->parsed()) return run_oracle_check(opts);
    if (convergence->parsed()) return run_convergence(opts, levels);
  } catch (const ConfigError& e) {
    for (const auto& v : e.violations()) std::cerr << "config error: " << v << "\n";
    return 2;
  } catch (const ConvergenceError& e) {
    std::cerr << "convergence failure: " << e.what()
              << " (achieved " << e.achieved_tolerance() << ")\n";
    return 3;
  } catch (const UndefinedRatioError& e) {
    std::cerr << "undefined ratio: " << e.what() << "\n";
    return 4;
  } catch (const DegenerateBinError& e) {
    std::cerr << "undefined ratio: " << e.what() << "\n";
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
