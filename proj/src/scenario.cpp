#include "chi2loss/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace chi2loss {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

// Flat-sectioned key = value document; '#' starts a comment.
struct RawConfig {
  std::map<std::string, std::map<std::string, std::string>> sections;
  std::vector<std::string> violations;
};

RawConfig read_raw(const std::filesystem::path& path) {
  RawConfig raw;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path.string());
  std::string line, section;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') {
        raw.violations.push_back("line " + std::to_string(lineno) + ": malformed section header");
        continue;
      }
      section = trim(line.substr(1, line.size() - 2));
      if (raw.sections.count(section))
        raw.violations.push_back("duplicate section [" + section + "]");
      raw.sections[section];
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      raw.violations.push_back("line " + std::to_string(lineno) + ": expected key = value");
      continue;
    }
    if (section.empty()) {
      raw.violations.push_back("line " + std::to_string(lineno) + ": key outside any section");
      continue;
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!raw.sections[section].emplace(key, value).second)
      raw.violations.push_back("duplicate key " + section + "." + key);
  }
  return raw;
}

// Tracks which keys were consumed so leftovers can be reported as unknown.
class SchemaReader {
public:
  SchemaReader(RawConfig raw, std::filesystem::path dir)
      : raw_(std::move(raw)), dir_(std::move(dir)), violations_(raw_.violations) {}

  bool has_section(const std::string& s) {
    if (raw_.sections.count(s)) {
      seen_sections_.insert(s);
      return true;
    }
    return false;
  }

  std::optional<std::string> get(const std::string& sec, const std::string& key) {
    auto si = raw_.sections.find(sec);
    if (si == raw_.sections.end()) return std::nullopt;
    auto ki = si->second.find(key);
    if (ki == si->second.end()) return std::nullopt;
    consumed_.insert(sec + "." + key);
    return ki->second;
  }

  double number(const std::string& sec, const std::string& key, double fallback) {
    auto v = get(sec, key);
    return v ? parse_number(sec, key, *v, fallback) : fallback;
  }

  double required_number(const std::string& sec, const std::string& key) {
    auto v = get(sec, key);
    if (!v) {
      violations_.push_back("missing required key " + sec + "." + key);
      return 0.0;
    }
    return parse_number(sec, key, *v, 0.0);
  }

  int integer(const std::string& sec, const std::string& key, int fallback) {
    const double d = number(sec, key, static_cast<double>(fallback));
    if (d != std::floor(d)) violations_.push_back(sec + "." + key + ": must be an integer");
    return static_cast<int>(d);
  }

  int required_integer(const std::string& sec, const std::string& key) {
    const double d = required_number(sec, key);
    if (d != std::floor(d)) violations_.push_back(sec + "." + key + ": must be an integer");
    return static_cast<int>(d);
  }

  void fail(const std::string& msg) { violations_.push_back(msg); }

  std::filesystem::path resolve(const std::string& rel) const {
    std::filesystem::path p(rel);
    return p.is_absolute() ? p : dir_ / p;
  }

  // Report unknown sections/keys and throw if anything went wrong.
  void finish() {
    for (const auto& [sec, kv] : raw_.sections) {
      if (!seen_sections_.count(sec)) {
        violations_.push_back("unknown section [" + sec + "]");
        continue;
      }
      for (const auto& [key, value] : kv)
        if (!consumed_.count(sec + "." + key))
          violations_.push_back("unknown key " + sec + "." + key);
    }
    if (!violations_.empty()) throw ConfigError(violations_);
  }

private:
  double parse_number(const std::string& sec, const std::string& key, const std::string& text,
                      double fallback) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0' || !std::isfinite(v)) {
      violations_.push_back(sec + "." + key + ": not a finite number: '" + text + "'");
      return fallback;
    }
    return v;
  }

  RawConfig raw_;
  std::filesystem::path dir_;
  std::set<std::string> seen_sections_;
  std::set<std::string> consumed_;
  std::vector<std::string>& violations_;

public:
  std::vector<std::string>& violations() { return violations_; }
};

LossTable read_loss_table(const std::filesystem::path& path, std::vector<std::string>& violations,
                          const std::string& keyname) {
  LossTable table;
  std::ifstream in(path);
  if (!in) {
    violations.push_back(keyname + ": cannot open table file " + path.string());
    return table;
  }
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    std::istringstream row(line);
    double k = 0.0, beta = 0.0;
    if (!(row >> k >> beta)) {
      violations.push_back(keyname + ": line " + std::to_string(lineno) +
                           ": expected two numbers 'k beta'");
      continue;
    }
    std::string extra;
    if (row >> extra) {
      violations.push_back(keyname + ": line " + std::to_string(lineno) + ": trailing content");
      continue;
    }
    table.k.push_back(k);
    table.beta.push_back(beta);
  }
  if (table.k.size() < 2) violations.push_back(keyname + ": table needs at least 2 rows");
  for (std::size_t i = 0; i + 1 < table.k.size(); ++i)
    if (!(table.k[i + 1] > table.k[i])) {
      violations.push_back(keyname + ": k column must be strictly increasing");
      break;
    }
  for (double b : table.beta)
    if (!(b >= 0.0)) {
      violations.push_back(keyname + ": beta must be nonnegative");
      break;
    }
  return table;
}

std::variant<double, LossTable> read_loss_entry(SchemaReader& reader, const char* value_key,
                                                const char* table_key) {
  const auto constant = reader.get("loss", value_key);
  const auto table = reader.get("loss", table_key);
  if (constant && table) {
    reader.fail(std::string("loss: give either ") + value_key + " or " + table_key + ", not both");
    return 0.0;
  }
  if (table) return read_loss_table(reader.resolve(*table), reader.violations(), table_key);
  if (!constant) return 0.0;
  char* end = nullptr;
  const double v = std::strtod(constant->c_str(), &end);
  if (end == constant->c_str() || *end != '\0' || !std::isfinite(v)) {
    reader.fail(std::string("loss.") + value_key + ": not a finite number");
    return 0.0;
  }
  if (!(v >= 0.0)) reader.fail(std::string("loss.") + value_key + ": must be nonnegative");
  return v;
}

FieldSpec read_field(SchemaReader& reader, const std::string& sec, const std::string& prefix) {
  FieldSpec f;
  f.z_mag = reader.required_number(sec, prefix + "_z");
  if (!(f.z_mag >= 0.0)) reader.fail(sec + "." + prefix + "_z: magnitude must be nonnegative");
  f.z_phase = reader.number(sec, prefix + "_phase", 0.0);
  const auto kind = reader.get(sec, prefix + "_kind");
  if (!kind) {
    reader.fail("missing required key " + sec + "." + prefix + "_kind");
  } else if (*kind == "gaussian") {
    f.kind = WaveformKind::Gaussian;
  } else if (*kind == "delta") {
    f.kind = WaveformKind::GridDelta;
  } else {
    reader.fail(sec + "." + prefix + "_kind: expected gaussian or delta, got '" + *kind + "'");
  }
  f.center = reader.required_number(sec, prefix + "_center");
  if (f.kind == WaveformKind::Gaussian) {
    f.sigma = reader.required_number(sec, prefix + "_sigma");
    if (!(f.sigma > 0.0)) reader.fail(sec + "." + prefix + "_sigma: must be positive");
  } else {
    // tolerate an unused sigma for delta fields only if absent
    if (reader.get(sec, prefix + "_sigma"))
      reader.fail(sec + "." + prefix + "_sigma: not applicable to a delta waveform");
  }
  return f;
}

}  // namespace

ScenarioConfig parse_config(const std::filesystem::path& path) {
  SchemaReader reader(read_raw(path), path.parent_path());
  ScenarioConfig cfg;

  if (reader.has_section("units")) {
    const auto mode = reader.get("units", "mode");
    if (mode) {
      if (*mode == "SI") cfg.units = UnitMode::SI;
      else if (*mode == "nondimensional") cfg.units = UnitMode::Nondimensional;
      else reader.fail("units.mode: expected SI or nondimensional, got '" + *mode + "'");
    }
  }

  if (!reader.has_section("dispersion")) {
    reader.fail("missing required section [dispersion]");
  } else {
    cfg.v_f = reader.required_number("dispersion", "v_F");
    cfg.v_sh = reader.required_number("dispersion", "v_SH");
    if (!(cfg.v_f > 0.0)) reader.fail("dispersion.v_F: must be positive");
    if (!(cfg.v_sh > 0.0)) reader.fail("dispersion.v_SH: must be positive");
    cfg.k_f0 = reader.required_number("dispersion", "k_F0");
    cfg.k_sh0 = reader.required_number("dispersion", "k_SH0");
    cfg.omega_f0 = reader.required_number("dispersion", "omega_F0");
    cfg.omega_sh0 = reader.required_number("dispersion", "omega_SH0");
  }

  if (reader.has_section("loss")) {
    cfg.loss_f = read_loss_entry(reader, "beta_F", "beta_F_table");
    cfg.loss_sh = read_loss_entry(reader, "beta_SH", "beta_SH_table");
  }

  if (!reader.has_section("coupling")) {
    reader.fail("missing required section [coupling]");
  } else {
    cfg.s0 = reader.required_number("coupling", "s0");
    if (!(cfg.s0 > 0.0)) reader.fail("coupling.s0: must be positive");
    const auto env = reader.get("coupling", "envelope");
    if (!env) {
      reader.fail("missing required key coupling.envelope");
    } else if (*env == "constant") {
      cfg.envelope = EnvelopeKind::Constant;
    } else if (*env == "gaussian") {
      cfg.envelope = EnvelopeKind::Gaussian;
      cfg.envelope_param = reader.required_number("coupling", "width");
      if (!(cfg.envelope_param > 0.0)) reader.fail("coupling.width: must be positive");
    } else if (*env == "sinc") {
      cfg.envelope = EnvelopeKind::Sinc;
      cfg.envelope_param = reader.required_number("coupling", "length");
      if (!(cfg.envelope_param > 0.0)) reader.fail("coupling.length: must be positive");
    } else {
      reader.fail("coupling.envelope: expected constant, gaussian or sinc, got '" + *env + "'");
    }
    cfg.envelope_offset = reader.number("coupling", "offset", 0.0);
  }

  if (!reader.has_section("window")) {
    reader.fail("missing required section [window]");
  } else {
    const bool has_T = reader.get("window", "T").has_value();
    const bool has_L = reader.get("window", "L").has_value();
    const bool has_v = reader.get("window", "v_in").has_value();
    // keys were consumed above; reread through the typed helpers
    if (has_T && (has_L || has_v)) {
      reader.fail("window: give either T or (L, v_in), not both");
    } else if (has_T) {
      const double T = reader.number("window", "T", 0.0);
      if (!(T > 0.0)) reader.fail("window.T: must be positive");
      cfg.window_T = T;
    } else if (has_L && has_v) {
      const double L = reader.number("window", "L", 0.0);
      const double v = reader.number("window", "v_in", 0.0);
      if (!(L > 0.0)) reader.fail("window.L: must be positive");
      if (!(v > 0.0)) reader.fail("window.v_in: must be positive");
      cfg.window_L_vin = std::make_pair(L, v);
    } else {
      reader.fail("window: requires T or both of L and v_in");
    }
  }

  for (const auto& [sec, lo, hi, n] :
       {std::tuple<const char*, double*, double*, int*>{"grid_F", &cfg.f_min, &cfg.f_max, &cfg.f_n},
        std::tuple<const char*, double*, double*, int*>{"grid_SH", &cfg.sh_min, &cfg.sh_max,
                                                        &cfg.sh_n}}) {
    if (!reader.has_section(sec)) {
      reader.fail(std::string("missing required section [") + sec + "]");
      continue;
    }
    *lo = reader.required_number(sec, "min");
    *hi = reader.required_number(sec, "max");
    *n = reader.required_integer(sec, "n");
    if (!(*hi > *lo)) reader.fail(std::string(sec) + ": max must exceed min");
    if (*n < 2) reader.fail(std::string(sec) + ".n: need at least 2 points");
  }

  if (reader.has_section("quadrature")) {
    cfg.quad.tolerance = reader.number("quadrature", "tolerance", cfg.quad.tolerance);
    cfg.quad.max_doublings = reader.integer("quadrature", "max_doublings", cfg.quad.max_doublings);
    cfg.quad.t_nodes = reader.integer("quadrature", "t_nodes", cfg.quad.t_nodes);
    if (!(cfg.quad.tolerance > 0.0)) reader.fail("quadrature.tolerance: must be positive");
    if (cfg.quad.max_doublings < 0) reader.fail("quadrature.max_doublings: must be >= 0");
    if (cfg.quad.t_nodes < 1) reader.fail("quadrature.t_nodes: must be >= 1");
  }

  if (reader.has_section("spdc")) cfg.spdc_pump = read_field(reader, "spdc", "pump");
  if (reader.has_section("dfg"))
    cfg.dfg = std::make_pair(read_field(reader, "dfg", "seed"), read_field(reader, "dfg", "pump"));
  if (reader.has_section("sfg"))
    cfg.sfg = std::make_pair(read_field(reader, "sfg", "a"), read_field(reader, "sfg", "b"));

  reader.finish();
  return cfg;
}

namespace {

// Grids must leave room for the coupling envelope: the reachable mismatch range
// k1 + k2 - k - offset over the grids has to cover +-6 envelope widths, unless the
// envelope is wider than the grids can resolve at all (then truncation is governed
// by the waveform 6-sigma rule instead).
void check_envelope_span(const CouplingModel& coupling, const Grid1D& gf, const Grid1D& gsh,
                         std::vector<std::string>& violations) {
  const auto width = coupling.feature_scale();
  if (!width) return;
  const double lo = 2.0 * gf.lo - gsh.hi - coupling.offset();
  const double hi = 2.0 * gf.hi - gsh.lo - coupling.offset();
  if (12.0 * *width > hi - lo) return;  // envelope wider than the reachable span
  if (lo > -6.0 * *width || hi < 6.0 * *width)
    violations.push_back(
        "grids must extend at least 6 envelope widths around the phase matching center");
}

double window_feature(const WaveguideModel& model, Band band) {
  return 2.0 * M_PI / (model.dispersion.velocity(band) * model.window.duration());
}

void narrowness_check(const WaveguideModel& model, const Grid1D& grid, const Waveform& wf,
                      const char* role, std::vector<std::string>& warnings) {
  // Grid-delta fields are single modes of the discrete model: their windowed time
  // integrals are exact at any bin width, so only envelope and loss features (which a
  // coarse bin can straddle) are compared. Gaussian fields also have to be narrow
  // against the window's spectral scale for the quasi-CW results to apply.
  double feature = std::numeric_limits<double>::infinity();
  if (wf.kind() == WaveformKind::Gaussian)
    feature = window_feature(model, wf.band());
  if (const auto env = model.coupling.feature_scale()) feature = std::min(feature, *env);
  if (const auto loss = model.loss.feature_scale()) feature = std::min(feature, *loss);
  const double width = wf.width(grid);
  if (width > feature / 20.0) {
    std::ostringstream msg;
    msg << role << ": width " << width << " exceeds 1/20 of the narrowest feature scale "
        << feature << "; quasi-CW assumptions degrade";
    warnings.push_back(msg.str());
  }
}

}  // namespace

Scenario build_scenario(const ScenarioConfig& config) {
  std::vector<std::string> violations;

  DispersionRelation dispersion(config.k_f0, config.omega_f0, config.v_f, config.k_sh0,
                                config.omega_sh0, config.v_sh);
  LossProfile loss = LossProfile::tables(config.loss_f, config.loss_sh);
  CouplingModel coupling(config.s0, config.envelope,
                         config.envelope == EnvelopeKind::Constant ? 1.0 : config.envelope_param,
                         config.envelope_offset);
  if (!config.window_T && !config.window_L_vin)
    throw ConfigError("window: requires T or both of L and v_in");
  InteractionWindow window =
      config.window_T ? InteractionWindow::symmetric(*config.window_T)
                      : InteractionWindow::from_length(config.window_L_vin->first,
                                                       config.window_L_vin->second);
  WaveguideModel model{dispersion, loss, coupling, window, config.units};

  Grid1D grid_f(config.f_min, config.f_max, config.f_n);
  Grid1D grid_sh(config.sh_min, config.sh_max, config.sh_n);
  check_envelope_span(coupling, grid_f, grid_sh, violations);
  if (!violations.empty()) throw ConfigError(violations);

  Scenario s{model,        grid_f,       grid_sh,      config.quad, std::nullopt,
             std::nullopt, std::nullopt, std::nullopt, std::nullopt, std::nullopt,
             {},           config};

  if (config.spdc_pump)
    s.spdc = ProcessInputs::spdc(config.spdc_pump->input(Band::SH), grid_f, grid_sh);
  if (config.dfg)
    s.dfg = ProcessInputs::dfg(config.dfg->first.input(Band::F),
                               config.dfg->second.input(Band::SH), grid_f, grid_sh);
  if (config.sfg)
    s.sfg = ProcessInputs::sfg(config.sfg->first.input(Band::F), config.sfg->second.input(Band::F),
                               grid_f, grid_sh);

  // Cross-process coherence.
  if (config.dfg && config.spdc_pump) {
    if (!config.dfg->second.input(Band::SH).waveform.same_shape(
            config.spdc_pump->input(Band::SH).waveform))
      violations.push_back("dfg pump and spdc pump must share the same waveform");
    if (std::abs(config.dfg->second.z_mag - config.spdc_pump->z_mag) >
        1e-12 * std::max(1.0, config.spdc_pump->z_mag))
      violations.push_back("dfg pump and spdc pump must share |z|");
  }
  if (config.dfg && config.sfg &&
      config.dfg->first.center != config.sfg->first.center)
    violations.push_back("dfg.seed_center must equal sfg.a_center (both are k_s)");
  if (!violations.empty()) throw ConfigError(violations);

  // Reporting bins from the input centers, snapped to the nearest grid points.
  if (config.dfg) s.ks = grid_f.point(grid_f.nearest_index(config.dfg->first.center));
  else if (config.sfg) s.ks = grid_f.point(grid_f.nearest_index(config.sfg->first.center));
  if (config.sfg) {
    s.ki = grid_f.point(grid_f.nearest_index(config.sfg->second.center));
  } else if (s.ks && (config.spdc_pump || config.dfg)) {
    // energy-matched idler: omega_F(ki) = omega_SH(kp) - omega_F(ks)
    const double kp_center =
        config.spdc_pump ? config.spdc_pump->center : config.dfg->second.center;
    const double w_target =
        dispersion.omega(Band::SH, kp_center) - dispersion.omega(Band::F, *s.ks);
    const double ki = config.k_f0 + (w_target - config.omega_f0) / config.v_f;
    s.ki = grid_f.point(grid_f.nearest_index(ki));
  }
  if (config.spdc_pump) s.kp = grid_sh.point(grid_sh.nearest_index(config.spdc_pump->center));
  else if (config.dfg) s.kp = grid_sh.point(grid_sh.nearest_index(config.dfg->second.center));
  else if (config.sfg && s.ks && s.ki) {
    const double w_target = dispersion.omega(Band::F, *s.ks) + dispersion.omega(Band::F, *s.ki);
    const double kp = config.k_sh0 + (w_target - config.omega_sh0) / config.v_sh;
    s.kp = grid_sh.point(grid_sh.nearest_index(kp));
  }

  if (config.dfg)
    narrowness_check(model, grid_f, config.dfg->first.waveform(Band::F), "dfg seed",
                     s.narrowness_warnings);
  if (config.sfg) {
    narrowness_check(model, grid_f, config.sfg->first.waveform(Band::F), "sfg input a",
                     s.narrowness_warnings);
    narrowness_check(model, grid_f, config.sfg->second.waveform(Band::F), "sfg input b",
                     s.narrowness_warnings);
  }
  if (config.spdc_pump)
    narrowness_check(model, grid_sh, config.spdc_pump->waveform(Band::SH), "spdc pump",
                     s.narrowness_warnings);

  return s;
}

Scenario refine_scenario(const ScenarioConfig& config, int k_scale, int t_scale) {
  if (k_scale < 1 || t_scale < 1)
    throw InvalidParameterError("refine_scenario: scales must be >= 1");
  ScenarioConfig refined = config;
  if (k_scale > 1) {
    auto is_delta = [](const FieldSpec& f) { return f.kind == WaveformKind::GridDelta; };
    const bool any_delta =
        (config.spdc_pump && is_delta(*config.spdc_pump)) ||
        (config.dfg && (is_delta(config.dfg->first) || is_delta(config.dfg->second))) ||
        (config.sfg && (is_delta(config.sfg->first) || is_delta(config.sfg->second)));
    if (any_delta)
      throw InvalidParameterError(
          "refine_scenario: grid-delta fields pin their bin width; k refinement not applicable");
    refined.f_n = k_scale * (config.f_n - 1) + 1;
    refined.sh_n = k_scale * (config.sh_n - 1) + 1;
  }
  refined.quad.t_nodes = config.quad.t_nodes * t_scale;
  return build_scenario(refined);
}

NumberDensityReport engine_densities(const Scenario& scenario) {
  NumberDensityReport report;
  if (scenario.dfg) {
    const SpectralAmplitude a = dfg_spectrum(scenario.model, *scenario.dfg, scenario.quad);
    report.dfg_total = a.total_photons();
    if (scenario.ki) report.dfg_idler_density = photon_density(a, *scenario.ki);
  }
  if (scenario.sfg) {
    const SpectralAmplitude a = sfg_spectrum(scenario.model, *scenario.sfg, scenario.quad);
    report.sfg_total = a.total_photons();
    if (scenario.kp) report.sfg_pump_density = photon_density(a, *scenario.kp);
  }
  if (scenario.spdc) {
    const BiphotonAmplitude g = spdc_biphoton(scenario.model, *scenario.spdc, scenario.quad);
    report.spdc_total = g.total_pairs();
    if (scenario.ks && scenario.ki && *scenario.ks != *scenario.ki)
      report.spdc_pair_density = pair_density(g, *scenario.ks, *scenario.ki);
  }
  return report;
}

}  // namespace chi2loss
