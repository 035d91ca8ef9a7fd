#include "phasebell/lhv_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "phasebell/numeric.hpp"

namespace phasebell {

namespace {

BinaryJointTable deterministic_table(Outcome first, Outcome second) {
  BinaryJointTable t;
  const bool up1 = first == Outcome::Up;
  const bool up2 = second == Outcome::Up;
  t.p_uu = up1 && up2 ? 1.0 : 0.0;
  t.p_ud = up1 && !up2 ? 1.0 : 0.0;
  t.p_du = !up1 && up2 ? 1.0 : 0.0;
  t.p_dd = !up1 && !up2 ? 1.0 : 0.0;
  t.p_u1 = t.p_uu + t.p_ud;
  t.p_u2 = t.p_uu + t.p_du;
  t.total_mass = 1.0;
  return t;
}

void accumulate(BinaryJointTable& into, const BinaryJointTable& t, double w) {
  into.p_uu += w * t.p_uu;
  into.p_ud += w * t.p_ud;
  into.p_du += w * t.p_du;
  into.p_dd += w * t.p_dd;
  into.p_u1 += w * t.p_u1;
  into.p_u2 += w * t.p_u2;
  into.total_mass += w * t.total_mass;
}

LhvValues values_of(const FourSettingTables& tables) {
  const ChRatio ch = ch_combination(tables);
  return {spin_combination(tables), ch.numerator, ch.denominator};
}

}  // namespace

DeterministicStrategy DeterministicStrategy::from_index(int index) {
  if (index < 0 || index >= kStrategyCount) {
    throw std::invalid_argument("strategy index must be in 0..15");
  }
  auto bit = [index](int k) { return (index >> k) & 1 ? Outcome::Down : Outcome::Up; };
  return {bit(0), bit(1), bit(2), bit(3)};
}

std::array<DeterministicStrategy, kStrategyCount> all_strategies() {
  std::array<DeterministicStrategy, kStrategyCount> out;
  for (int i = 0; i < kStrategyCount; ++i) out[i] = DeterministicStrategy::from_index(i);
  return out;
}

FourSettingTables strategy_tables(const DeterministicStrategy& st) {
  return {deterministic_table(st.a, st.b), deterministic_table(st.a, st.b_p),
          deterministic_table(st.a_p, st.b), deterministic_table(st.a_p, st.b_p)};
}

LhvValues evaluate_strategy(const DeterministicStrategy& strategy) {
  return values_of(strategy_tables(strategy));
}

LhvBounds enumerate_lhv_bounds() {
  LhvBounds bounds;
  for (const auto& st : all_strategies()) {
    const LhvValues v = evaluate_strategy(st);
    bounds.max_abs_bs = std::max(bounds.max_abs_bs, std::abs(v.b_s));
    if (v.ch_den != 0.0) {
      bounds.max_abs_ch = std::max(bounds.max_abs_ch, std::abs(v.ch_num / v.ch_den));
    }
  }
  return bounds;
}

LhvValues mixture_check(std::span<const double> weights) {
  if (weights.size() != kStrategyCount) {
    throw std::invalid_argument("mixture needs exactly 16 weights");
  }
  CompensatedSum total;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("mixture weights must be finite and nonnegative");
    }
    total += w;
  }
  if (std::abs(total.value() - 1.0) > 1e-12) {
    throw std::invalid_argument("mixture weights must sum to 1");
  }
  FourSettingTables mix;
  for (int i = 0; i < kStrategyCount; ++i) {
    const FourSettingTables t = strategy_tables(DeterministicStrategy::from_index(i));
    accumulate(mix.t11, t.t11, weights[i]);
    accumulate(mix.t12, t.t12, weights[i]);
    accumulate(mix.t21, t.t21, weights[i]);
    accumulate(mix.t22, t.t22, weights[i]);
  }
  return values_of(mix);
}

}  // namespace phasebell
