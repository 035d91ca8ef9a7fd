#pragma once

#include <array>
#include <span>

#include "phasebell/bell_functionals.hpp"

namespace phasebell {

enum class Outcome { Up, Down };

/// Deterministic local strategy: a fixed outcome for each of the two
/// settings on each side.
struct DeterministicStrategy {
  Outcome a = Outcome::Up;    // mode 1, theta1
  Outcome a_p = Outcome::Up;  // mode 1, theta1'
  Outcome b = Outcome::Up;    // mode 2, theta2
  Outcome b_p = Outcome::Up;  // mode 2, theta2'

  /// Bits 0..3 of index select Down for a, a', b, b' respectively.
  static DeterministicStrategy from_index(int index);
};

inline constexpr int kStrategyCount = 16;

std::array<DeterministicStrategy, kStrategyCount> all_strategies();

/// Binary tables a strategy produces at the four setting pairs.
FourSettingTables strategy_tables(const DeterministicStrategy& strategy);

struct LhvValues {
  double b_s = 0.0;
  double ch_num = 0.0;
  double ch_den = 0.0;
};

LhvValues evaluate_strategy(const DeterministicStrategy& strategy);

struct LhvBounds {
  double max_abs_bs = 0.0;
  double max_abs_ch = 0.0;
};

/// Maxima of |B_S| and |B_CH| over all 16 strategies; CH skips strategies
/// whose denominator vanishes.
LhvBounds enumerate_lhv_bounds();

/// Convex mixture of the strategies (indexed as in from_index). Weights must
/// be nonnegative and sum to 1 within 1e-12.
LhvValues mixture_check(std::span<const double> weights);

}  // namespace phasebell
