#include "phasebell/bell_functionals.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "phasebell/golden_section.hpp"
#include "phasebell/numeric.hpp"

namespace phasebell {

namespace {

constexpr double kRefineTolerance = 1e-10;

void check_resolution(int s, const BinningScheme& scheme) {
  if (s != scheme.s()) {
    throw std::invalid_argument("resolution s=" + std::to_string(s) +
                                " does not match binning scheme s=" + std::to_string(scheme.s()));
  }
}

double ch_ratio(const ChRatio& r) {
  if (r.denominator == 0.0) throw NumericError("CH denominator is zero (no Up probability)");
  return r.numerator / r.denominator;
}

}  // namespace

AngleSet AngleSet::factorized(double psi) { return AngleSet{0.0, -2.0 * psi, psi, 3.0 * psi}; }

void AngleSet::validate() const {
  if (!std::isfinite(theta1) || !std::isfinite(theta1p) || !std::isfinite(theta2) ||
      !std::isfinite(theta2p)) {
    throw std::invalid_argument("angle settings must be finite");
  }
}

double correlation_e(const BinaryJointTable& t) { return t.p_uu + t.p_dd - t.p_ud - t.p_du; }

double spin_combination(const FourSettingTables& tables) {
  return correlation_e(tables.t11) - correlation_e(tables.t12) + correlation_e(tables.t21) +
         correlation_e(tables.t22);
}

ChRatio ch_combination(const FourSettingTables& tables) {
  return {tables.t11.p_uu - tables.t12.p_uu + tables.t21.p_uu + tables.t22.p_uu,
          tables.t21.p_u1 + tables.t11.p_u2};
}

bool BellEvaluation::violates_ch() const { return std::abs(b_ch) > 1.0; }
bool BellEvaluation::violates_s() const { return std::abs(b_s) > 2.0; }

BellEvaluator::BellEvaluator(const CoefficientVector& state, const BinningScheme& scheme,
                             NormalizationMode mode)
    : binned_(state, scheme, mode) {}

double BellEvaluator::ch(double psi0) const {
  const double p_up = binned_.p_up();
  const double numerator =
      2.0 * binned_.p_up_up(psi0) + binned_.p_up_up(-psi0) - binned_.p_up_up(3.0 * psi0);
  return ch_ratio({numerator, 2.0 * p_up});
}

double BellEvaluator::s(double psi0) const {
  return 2.0 * correlation_e(binned_.table(psi0)) + correlation_e(binned_.table(-psi0)) -
         correlation_e(binned_.table(3.0 * psi0));
}

BellEvaluation BellEvaluator::evaluate(double psi0) const {
  BellEvaluation out;
  out.b_ch = ch(psi0);
  out.b_s = s(psi0);
  out.psi0 = psi0;
  out.angles = AngleSet::factorized(psi0);
  out.mode = binned_.phase_model().mode();
  return out;
}

BellEvaluation BellEvaluator::optimize(Functional functional, int grid_points) const {
  ScalarMaximum best;
  if (functional == Functional::CH) {
    best = grid_golden_maximize([this](double psi) { return ch(psi); }, 0.0, kPsiRangeMax,
                                grid_points, kRefineTolerance);
  } else {
    best = grid_golden_maximize([this](double psi) { return s(psi); }, 0.0, kPsiRangeMax,
                                grid_points, kRefineTolerance);
  }
  return evaluate(best.x);
}

double bell_ch_factorized(const CoefficientVector& state, int s, const BinningScheme& scheme,
                          double psi0, NormalizationMode mode) {
  check_resolution(s, scheme);
  return BellEvaluator(state, scheme, mode).ch(psi0);
}

double bell_s_factorized(const CoefficientVector& state, int s, const BinningScheme& scheme,
                         double psi0, NormalizationMode mode) {
  check_resolution(s, scheme);
  return BellEvaluator(state, scheme, mode).s(psi0);
}

FourSettingTables quantum_tables(const CoefficientVector& state, int s, const BinningScheme& scheme,
                                 const AngleSet& angles, NormalizationMode mode) {
  check_resolution(s, scheme);
  angles.validate();
  auto table_at = [&](double theta_a, double theta_b) {
    return bin_distribution(joint_distribution(state, PhaseGrid{s, theta_a, theta_b}, mode),
                            scheme);
  };
  return {table_at(angles.theta1, angles.theta2), table_at(angles.theta1, angles.theta2p),
          table_at(angles.theta1p, angles.theta2), table_at(angles.theta1p, angles.theta2p)};
}

double bell_ch_general(const CoefficientVector& state, int s, const BinningScheme& scheme,
                       const AngleSet& angles, NormalizationMode mode) {
  return ch_ratio(ch_combination(quantum_tables(state, s, scheme, angles, mode)));
}

double bell_s_general(const CoefficientVector& state, int s, const BinningScheme& scheme,
                      const AngleSet& angles, NormalizationMode mode) {
  return spin_combination(quantum_tables(state, s, scheme, angles, mode));
}

BellEvaluation optimize_psi(const CoefficientVector& state, int s, const BinningScheme& scheme,
                            Functional functional, NormalizationMode mode, int grid_points) {
  check_resolution(s, scheme);
  return BellEvaluator(state, scheme, mode).optimize(functional, grid_points);
}

}  // namespace phasebell
