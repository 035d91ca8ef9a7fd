#pragma once

#include <cmath>
#include <stdexcept>

namespace phasebell {

struct ScalarMaximum {
  double x = 0.0;
  double value = 0.0;
};

/// Golden-section search for the maximum of a unimodal f on [lo, hi],
/// stopping when the bracket is narrower than tol.
template <typename F>
ScalarMaximum golden_section_maximize(F&& f, double lo, double hi, double tol) {
  if (!(hi >= lo)) throw std::invalid_argument("golden_section_maximize: empty bracket");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > tol) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

/// Dense uniform grid over [lo, hi] (endpoints included), then golden-section
/// refinement inside the cells adjacent to the best grid point. Ties on the
/// grid go to the smallest x; the refined point replaces the grid point only
/// if it is strictly better.
template <typename F>
ScalarMaximum grid_golden_maximize(F&& f, double lo, double hi, int grid_points, double tol) {
  if (grid_points < 2) throw std::invalid_argument("grid_golden_maximize: need >= 2 grid points");
  const double step = (hi - lo) / (grid_points - 1);
  auto grid_x = [&](int i) { return i == grid_points - 1 ? hi : lo + step * i; };
  int best = 0;
  double best_value = f(grid_x(0));
  for (int i = 1; i < grid_points; ++i) {
    const double v = f(grid_x(i));
    if (v > best_value) {
      best = i;
      best_value = v;
    }
  }
  const double a = grid_x(best > 0 ? best - 1 : 0);
  const double b = grid_x(best < grid_points - 1 ? best + 1 : grid_points - 1);
  const ScalarMaximum refined = golden_section_maximize(f, a, b, tol);
  if (refined.value > best_value) return refined;
  return {grid_x(best), best_value};
}

}  // namespace phasebell
