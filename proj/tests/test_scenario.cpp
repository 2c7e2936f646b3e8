#include <doctest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "chi2loss/scenario.hpp"

using namespace chi2loss;

namespace {

std::filesystem::path data_dir() {
  // tests run from the build tree; fixtures live next to the sources
  return std::filesystem::path(__FILE__).parent_path() / "data";
}

std::filesystem::path scenario_dir() {
  return std::filesystem::path(__FILE__).parent_path().parent_path() / "scenarios";
}

bool mentions(const ConfigError& e, const std::string& needle) {
  return std::any_of(e.violations().begin(), e.violations().end(),
                     [&](const std::string& v) { return v.find(needle) != std::string::npos; });
}

}  // namespace

TEST_CASE("bundled reference scenario parses") {
  const ScenarioConfig cfg = parse_config(scenario_dir() / "g1.scenario");
  CHECK(cfg.units == UnitMode::Nondimensional);
  REQUIRE(cfg.spdc_pump.has_value());
  CHECK(cfg.spdc_pump->kind == WaveformKind::Gaussian);
  CHECK(cfg.spdc_pump->sigma == 1.0);
  REQUIRE(cfg.dfg.has_value());
  CHECK(cfg.dfg->first.sigma == 1.0);
  REQUIRE(cfg.sfg.has_value());
  CHECK(cfg.sfg->second.center == 0.5);
  CHECK(std::get<double>(cfg.loss_f) == 0.0);

  const Scenario s = build_scenario(cfg);
  CHECK(*s.ks == doctest::Approx(-0.5));
  CHECK(*s.ki == doctest::Approx(0.5));
  CHECK(*s.kp == doctest::Approx(0.0));
  // sigma = 1 fields are far from quasi-CW for this window
  CHECK(!s.narrowness_warnings.empty());
}

TEST_CASE("bundled narrow ratio scenario parses without warnings") {
  const Scenario s = build_scenario(parse_config(scenario_dir() / "g1_ratio.scenario"));
  CHECK(s.narrowness_warnings.empty());
  CHECK(*s.ks == doctest::Approx(-0.5));
  CHECK(*s.ki == doctest::Approx(0.5));
  CHECK(*s.kp == doctest::Approx(0.0));
}

TEST_CASE("zero group velocity is rejected by name") {
  try {
    parse_config(data_dir() / "bad_v0.scenario");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "dispersion.v_F"));
  }
}

TEST_CASE("unknown sections and keys are rejected by name") {
  try {
    parse_config(data_dir() / "unknown_key.scenario");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "losss"));
  }
}

TEST_CASE("every violation is reported, not just the first") {
  try {
    parse_config(data_dir() / "bad_multi.scenario");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(e.violations().size() >= 6);
    CHECK(mentions(e, "units.mode"));
    CHECK(mentions(e, "dispersion.v_F"));
    CHECK(mentions(e, "dispersion.v_SH"));
    CHECK(mentions(e, "coupling.s0"));
    CHECK(mentions(e, "coupling.envelope"));
    CHECK(mentions(e, "window.T"));
    CHECK(mentions(e, "grid_F"));
    CHECK(mentions(e, "grid_SH.extra"));
  }
}

TEST_CASE("missing file is a config error") {
  CHECK_THROWS_AS(parse_config(data_dir() / "does_not_exist.scenario"), ConfigError);
}

TEST_CASE("window from length and a loss table resolve") {
  const ScenarioConfig cfg = parse_config(data_dir() / "window_length.scenario");
  REQUIRE(cfg.window_L_vin.has_value());
  const Scenario s = build_scenario(cfg);
  CHECK(s.model.window.duration() == 0.37 / 1.7);
  // table interpolation: beta_F(-1) halfway between 0.1 and 0.3
  CHECK(s.model.loss.rate(Band::F, -1.0) == doctest::Approx(0.2));
  CHECK(s.model.loss.rate(Band::F, 5.0) == doctest::Approx(0.3));  // clamped
  CHECK(s.model.loss.rate(Band::SH, 0.0) == doctest::Approx(0.2));
  CHECK(s.model.coupling.strength() == doctest::Approx(2.0));
}

TEST_CASE("sigma on a delta field is rejected") {
  try {
    parse_config(data_dir() / "delta_sigma.scenario");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(mentions(e, "pump_sigma"));
  }
}

TEST_CASE("cross-process coherence: pump shape and amplitude must match") {
  ScenarioConfig cfg = parse_config(scenario_dir() / "g1_ratio.scenario");
  cfg.dfg->second.sigma = 0.07;
  CHECK_THROWS_AS(build_scenario(cfg), ConfigError);
  cfg = parse_config(scenario_dir() / "g1_ratio.scenario");
  cfg.dfg->second.z_mag = 2.0;
  CHECK_THROWS_AS(build_scenario(cfg), ConfigError);
  cfg = parse_config(scenario_dir() / "g1_ratio.scenario");
  cfg.sfg->first.center = 0.25;  // ks mismatch against dfg seed
  CHECK_THROWS_AS(build_scenario(cfg), ConfigError);
}

TEST_CASE("gaussian envelope span rule is enforced") {
  ScenarioConfig cfg = parse_config(scenario_dir() / "g1_ratio.scenario");
  cfg.envelope = EnvelopeKind::Gaussian;
  cfg.envelope_param = 0.1;
  cfg.envelope_offset = 3.0;  // matching center pushed outside the reachable range
  CHECK_THROWS_AS(build_scenario(cfg), ConfigError);
  cfg.envelope_offset = 0.0;  // centered: +-0.6 fits inside the reachable range
  CHECK_NOTHROW(build_scenario(cfg));
  cfg.envelope_param = 5.0;  // wider than the grids resolve: waveform rule governs
  CHECK_NOTHROW(build_scenario(cfg));
}

TEST_CASE("k refinement is refused when delta fields pin their bins") {
  const ScenarioConfig cfg = parse_config(scenario_dir() / "g1_ratio.scenario");
  CHECK_THROWS_AS(refine_scenario(cfg, 2, 2), InvalidParameterError);
  CHECK_NOTHROW(refine_scenario(cfg, 1, 2));
  const ScenarioConfig smooth = parse_config(scenario_dir() / "g1.scenario");
  const Scenario refined = refine_scenario(smooth, 2, 2);
  CHECK(refined.grid_f.n == 2 * (141 - 1) + 1);
  CHECK(refined.quad.t_nodes == 128);
}

TEST_CASE("SI-mode scenario parses and keeps delta fields warning-free") {
  const ScenarioConfig cfg = parse_config(data_dir() / "si_mode.scenario");
  CHECK(cfg.units == UnitMode::SI);
  const Scenario s = build_scenario(cfg);
  CHECK(s.model.hbar() == doctest::Approx(1.054571817e-34));
  CHECK(s.model.window.duration() == 0.005 / 2.2e8);
  // delta fields are exact single modes; no window-scale narrowness warning applies
  CHECK(s.narrowness_warnings.empty());
  CHECK(*s.ks == doctest::Approx(-500.0));
  CHECK(*s.kp == doctest::Approx(0.0));
}

TEST_CASE("idler bin defaults to the energy-matched partner when sfg is absent") {
  ScenarioConfig cfg = parse_config(scenario_dir() / "g1_ratio.scenario");
  cfg.sfg.reset();
  const Scenario s = build_scenario(cfg);
  REQUIRE(s.ki.has_value());
  CHECK(*s.ki == doctest::Approx(0.5));  // omega_SH(0) - omega_F(-0.5) = omega_F(+0.5)
}
