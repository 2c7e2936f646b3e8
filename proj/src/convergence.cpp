#include "chi2loss/convergence.hpp"

#include <cmath>

namespace chi2loss {

namespace {

std::vector<std::pair<std::string, double>> named_densities(const NumberDensityReport& r) {
  std::vector<std::pair<std::string, double>> out;
  auto add = [&](const char* name, double v) {
    if (!std::isnan(v)) out.emplace_back(name, v);
  };
  add("dfg_idler_density", r.dfg_idler_density);
  add("dfg_total_photons", r.dfg_total);
  add("sfg_pump_density", r.sfg_pump_density);
  add("sfg_total_photons", r.sfg_total);
  add("spdc_pair_density", r.spdc_pair_density);
  add("spdc_total_pairs", r.spdc_total);
  return out;
}

bool scenario_has_delta(const ScenarioConfig& c) {
  auto is_delta = [](const FieldSpec& f) { return f.kind == WaveformKind::GridDelta; };
  return (c.spdc_pump && is_delta(*c.spdc_pump)) ||
         (c.dfg && (is_delta(c.dfg->first) || is_delta(c.dfg->second))) ||
         (c.sfg && (is_delta(c.sfg->first) || is_delta(c.sfg->second)));
}

}  // namespace

std::vector<RefinementRow> convergence_report(const Scenario& scenario, int levels) {
  if (levels < 1) throw InvalidParameterError("convergence_report: levels must be >= 1");
  const bool delta_fields = scenario_has_delta(scenario.config);
  std::vector<RefinementRow> rows;
  std::vector<std::pair<std::string, double>> prev;
  for (int level = 0; level <= levels; ++level) {
    const int k_scale = delta_fields ? 1 : (1 << level);
    const int t_scale = 1 << level;
    const Scenario s =
        level == 0 ? scenario : refine_scenario(scenario.config, k_scale, t_scale);
    const auto densities = named_densities(engine_densities(s));
    for (std::size_t i = 0; i < densities.size(); ++i) {
      RefinementRow row;
      row.level = level;
      row.k_scale = k_scale;
      row.t_nodes = scenario.quad.t_nodes * t_scale;
      row.observable = densities[i].first;
      row.value = densities[i].second;
      if (level > 0 && i < prev.size()) {
        const double denom = std::max(std::abs(densities[i].second), 1e-300);
        row.rel_change = std::abs(densities[i].second - prev[i].second) / denom;
      }
      rows.push_back(row);
    }
    prev = densities;
  }
  return rows;
}

}  // namespace chi2loss
