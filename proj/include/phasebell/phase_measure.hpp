#pragma once

#include <ostream>
#include <string_view>
#include <vector>

#include "phasebell/fock_states.hpp"

namespace phasebell {

/// ProjectedRaw keeps whatever norm the state loses when restricted to
/// n <= s; Renormalized divides every probability by the retained mass.
enum class NormalizationMode { ProjectedRaw, Renormalized };

std::string_view to_string(NormalizationMode mode);

/// Resolution s (s+1 outcomes per mode) plus the two reference phases.
struct PhaseGrid {
  int s = 1;
  double theta0_1 = 0.0;
  double theta0_2 = 0.0;

  /// Grid whose reference phases sum to psi0 (all on mode 1).
  static PhaseGrid from_psi0(int s, double psi0) { return PhaseGrid{s, psi0, 0.0}; }

  double psi0() const { return theta0_1 + theta0_2; }
  int outcomes() const { return s + 1; }

  /// theta_mu = theta0 + 2 mu pi / (s+1) for mode 1 or 2.
  double outcome_phase(int mode, int mu) const;

  void validate() const;
};

/// Full (s+1)x(s+1) table of joint outcome probabilities.
class JointPhaseDistribution {
 public:
  JointPhaseDistribution(PhaseGrid grid, std::vector<double> table, NormalizationMode mode);

  const PhaseGrid& grid() const { return grid_; }
  NormalizationMode mode() const { return mode_; }
  int outcomes() const { return grid_.outcomes(); }

  double at(int mu1, int mu2) const;
  double total_mass() const { return total_mass_; }
  double row_sum(int mu1) const;
  double column_sum(int mu2) const;

  const std::vector<double>& table() const { return table_; }

 private:
  PhaseGrid grid_;
  std::vector<double> table_;
  NormalizationMode mode_;
  double total_mass_;
};

/// Precomputed form of the joint probability for one state at one
/// resolution. Since P(mu1, mu2) depends on mu1+mu2 only through the total
/// phase psi0 + 2 pi (mu1+mu2)/(s+1), everything reduces to the
/// lag autocorrelation a_d = sum_n c_{n+d} c_n:
///
///   P = [a_0 + 2 sum_{d>=1} a_d cos(d * total_phase)] / (s+1)^2
class PairPhaseModel {
 public:
  PairPhaseModel(const CoefficientVector& state, int s, NormalizationMode mode);

  int s() const { return s_; }
  NormalizationMode mode() const { return mode_; }

  /// Sum_{n<=s} c_n^2.
  double retained_mass() const { return lag_[0]; }

  /// Total mass of the distribution under the chosen mode.
  double total_mass() const;

  /// Joint probability for outcome-sum class m = (mu1 + mu2) mod (s+1).
  double class_probability(int m, double psi0) const;

  /// Marginal probability of any single outcome on either mode.
  double marginal() const;

 private:
  int s_;
  NormalizationMode mode_;
  std::vector<double> lag_;
  double scale_;
};

/// Joint probability of outcomes (mu1, mu2) from the closed-form cosine sum.
double joint_prob(const CoefficientVector& state, const PhaseGrid& grid, int mu1, int mu2,
                  NormalizationMode mode = NormalizationMode::ProjectedRaw);

JointPhaseDistribution joint_distribution(const CoefficientVector& state, const PhaseGrid& grid,
                                          NormalizationMode mode = NormalizationMode::ProjectedRaw);

/// |<theta_mu1|<theta_mu2|Psi>|^2 evaluated from the complex amplitude.
/// Used to cross-check joint_prob (ProjectedRaw).
double oracle_joint_prob(const CoefficientVector& state, const PhaseGrid& grid, int mu1, int mu2);

/// Probability of a single outcome on one mode; independent of mu and of the
/// reference phases.
double marginal_prob(const CoefficientVector& state, const PhaseGrid& grid,
                     NormalizationMode mode = NormalizationMode::ProjectedRaw);

/// CSV dump: header "mu1,mu2,p", one row per outcome pair.
void write_distribution_csv(std::ostream& out, const JointPhaseDistribution& dist);

/// Clamps values in (-1e-14, 0) to zero; lower values raise NumericError.
double clamp_probability(double p);

}  // namespace phasebell
