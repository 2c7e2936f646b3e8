#ifndef CHI2LOSS_CONVERGENCE_HPP
#define CHI2LOSS_CONVERGENCE_HPP

#include <string>
#include <vector>

#include "chi2loss/scenario.hpp"

namespace chi2loss {

struct RefinementRow {
  int level = 0;
  int k_scale = 1;
  int t_nodes = 0;
  std::string observable;
  double value = 0.0;
  double rel_change = 0.0;  // against the previous level; 0 at level 0
};

/// Refinement table for every defined density/total of the scenario: level r uses
/// k grids densified 2^r-fold and t_nodes scaled 2^r-fold. Scenarios containing
/// grid-delta fields refine t only (their bin width is physical).
std::vector<RefinementRow> convergence_report(const Scenario& scenario, int levels = 2);

}  // namespace chi2loss

#endif
