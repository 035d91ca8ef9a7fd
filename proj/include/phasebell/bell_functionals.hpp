#pragma once

#include <optional>

#include "phasebell/binning.hpp"
#include "phasebell/fock_states.hpp"
#include "phasebell/phase_measure.hpp"

namespace phasebell {

/// Reference-phase settings: theta1/theta1p on mode 1, theta2/theta2p on
/// mode 2.
struct AngleSet {
  double theta1 = 0.0;
  double theta1p = 0.0;
  double theta2 = 0.0;
  double theta2p = 0.0;

  /// (theta1, theta2, theta2', theta1') = (0, psi, 3 psi, -2 psi): the four
  /// setting sums become psi, 3 psi, -psi, psi, which turns the general
  /// functionals into their single-angle forms.
  static AngleSet factorized(double psi);

  void validate() const;
};

/// Binary tables at the four setting pairs of a two-setting Bell test.
struct FourSettingTables {
  BinaryJointTable t11;  // (theta1,  theta2)
  BinaryJointTable t12;  // (theta1,  theta2')
  BinaryJointTable t21;  // (theta1', theta2)
  BinaryJointTable t22;  // (theta1', theta2')
};

struct ChRatio {
  double numerator = 0.0;
  double denominator = 0.0;
};

/// E = P(uu) + P(dd) - P(ud) - P(du), raw cell arithmetic.
double correlation_e(const BinaryJointTable& table);

/// E11 - E12 + E21 + E22.
double spin_combination(const FourSettingTables& tables);

/// Numerator P11 - P12 + P21 + P22 over P_up(theta1') + P_up(theta2).
ChRatio ch_combination(const FourSettingTables& tables);

enum class Functional { CH, S };

struct BellEvaluation {
  double b_ch = 0.0;
  double b_s = 0.0;
  double psi0 = 0.0;
  std::optional<AngleSet> angles;
  NormalizationMode mode = NormalizationMode::ProjectedRaw;

  bool violates_ch() const;
  bool violates_s() const;
};

/// Factorized functionals for one (state, scheme) pair, precomputed so the
/// same state can be evaluated at many psi0 cheaply.
class BellEvaluator {
 public:
  BellEvaluator(const CoefficientVector& state, const BinningScheme& scheme,
                NormalizationMode mode = NormalizationMode::ProjectedRaw);

  /// [2 P_uu(psi) + P_uu(-psi) - P_uu(3 psi)] / (2 P_up). Throws NumericError
  /// when P_up is zero.
  double ch(double psi0) const;

  /// 2 E(psi) + E(-psi) - E(3 psi).
  double s(double psi0) const;

  BellEvaluation evaluate(double psi0) const;

  /// Maximizes the chosen functional over psi0 in [0, 2 pi/3]: uniform grid
  /// of grid_points, then golden-section refinement to 1e-10.
  BellEvaluation optimize(Functional functional, int grid_points = 2000) const;

  const BinnedPairModel& binned() const { return binned_; }

 private:
  BinnedPairModel binned_;
};

double bell_ch_factorized(const CoefficientVector& state, int s, const BinningScheme& scheme,
                          double psi0, NormalizationMode mode = NormalizationMode::ProjectedRaw);

double bell_s_factorized(const CoefficientVector& state, int s, const BinningScheme& scheme,
                         double psi0, NormalizationMode mode = NormalizationMode::ProjectedRaw);

/// Builds the four binned tables from full joint distributions at the given
/// settings.
FourSettingTables quantum_tables(const CoefficientVector& state, int s, const BinningScheme& scheme,
                                 const AngleSet& angles,
                                 NormalizationMode mode = NormalizationMode::ProjectedRaw);

double bell_ch_general(const CoefficientVector& state, int s, const BinningScheme& scheme,
                       const AngleSet& angles,
                       NormalizationMode mode = NormalizationMode::ProjectedRaw);

double bell_s_general(const CoefficientVector& state, int s, const BinningScheme& scheme,
                      const AngleSet& angles,
                      NormalizationMode mode = NormalizationMode::ProjectedRaw);

BellEvaluation optimize_psi(const CoefficientVector& state, int s, const BinningScheme& scheme,
                            Functional functional,
                            NormalizationMode mode = NormalizationMode::ProjectedRaw,
                            int grid_points = 2000);

/// Upper end of the psi0 search range.
inline constexpr double kPsiRangeMax = 2.0 * 3.14159265358979323846 / 3.0;

}  // namespace phasebell
