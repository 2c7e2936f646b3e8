#ifndef CHI2LOSS_ORACLE_HPP
#define CHI2LOSS_ORACLE_HPP

#include <string>
#include <vector>

#include "chi2loss/scenario.hpp"

namespace chi2loss {

/// Re-evaluates the scenario's densities by an independent route: direct pointwise
/// double sums with the inner k integration grids refined `refine`-fold (same spans)
/// and Gauss-Legendre t nodes at refine * base. Grid-delta fields collapse analytically
/// to their single base-grid bin. Throws ResourceLimitError when the refined inner
/// grids exceed 1e6 cells.
NumberDensityReport oracle_recompute(const Scenario& scenario, int refine = 4);

struct OracleCheckLine {
  std::string name;
  double value = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

/// Fixed Fock-space fixtures behind the `oracle-check` subcommand: coherent-state mean
/// numbers against |z|^2 and two-photon pair counts against the explicit operator algebra.
std::vector<OracleCheckLine> fock_check_table();

}  // namespace chi2loss

#endif
