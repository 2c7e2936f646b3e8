#ifndef CHI2LOSS_GRID_HPP
#define CHI2LOSS_GRID_HPP

#include <cmath>

#include "chi2loss/errors.hpp"

namespace chi2loss {

/// Uniform 1-D grid used for every k-space integral and for spectral storage.
/// Bin width delta() doubles as the bandwidth element of density bookkeeping.
struct Grid1D {
  double lo;
  double hi;
  int n;

  Grid1D(double lo_, double hi_, int n_) : lo(lo_), hi(hi_), n(n_) {
    if (n < 2) throw InvalidParameterError("Grid1D: need at least 2 points");
    if (!(hi > lo)) throw InvalidParameterError("Grid1D: max must exceed min");
    if (!std::isfinite(lo) || !std::isfinite(hi))
      throw InvalidParameterError("Grid1D: bounds must be finite");
  }

  double delta() const { return (hi - lo) / (n - 1); }
  double point(int i) const { return lo + i * delta(); }

  /// Trapezoid weight: half bins at the ends.
  double weight(int i) const { return (i == 0 || i == n - 1) ? 0.5 * delta() : delta(); }

  /// Nearest grid index, clamped to [0, n-1].
  int nearest_index(double k) const {
    double x = (k - lo) / delta();
    int i = static_cast<int>(std::lround(x));
    if (i < 0) i = 0;
    if (i >= n) i = n - 1;
    return i;
  }

  /// Index of an on-grid point; tolerates only rounding-level deviation.
  int index_of(double k) const {
    int i = nearest_index(k);
    if (std::abs(k - point(i)) > 1e-9 * delta())
      throw InvalidParameterError("Grid1D: value is not on the grid");
    return i;
  }

  bool contains(double k) const { return k >= lo && k <= hi; }
};

}  // namespace chi2loss

#endif
