#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "phasebell/fock_states.hpp"
#include "phasebell/phase_measure.hpp"

namespace phasebell {

enum class BinningKind { EqualSplit, SingleState, Custom };

/// Maps each phase outcome mu in 0..s to Up or Down. Both modes share the
/// same scheme.
class BinningScheme {
 public:
  BinningKind kind() const { return kind_; }
  int s() const { return s_; }

  /// Sorted, nonempty, proper subset of 0..s.
  const std::vector<int>& up_set() const { return up_; }
  bool is_up(int mu) const { return mask_.at(static_cast<std::size_t>(mu)); }
  int up_count() const { return static_cast<int>(up_.size()); }

  /// Scheme with Up and Down exchanged (always of kind Custom).
  BinningScheme complement() const;

  /// CLI spelling: "equal", "single" or "custom:0,1,4".
  std::string label() const;

 private:
  friend BinningScheme make_scheme(BinningKind, int, const std::optional<std::vector<int>>&);
  BinningScheme(BinningKind kind, int s, std::vector<int> up);

  BinningKind kind_;
  int s_;
  std::vector<int> up_;
  std::vector<bool> mask_;
};

/// EqualSplit: Up = 0..(s-1)/2 for odd s, 0..s/2-1 for even s (the spare
/// outcome goes Down). SingleState: Up = {0}. Custom: Up = custom_up.
/// Throws std::invalid_argument for s < 1 or a bad custom set.
BinningScheme make_scheme(BinningKind kind, int s,
                          const std::optional<std::vector<int>>& custom_up = std::nullopt);

/// Parses the CLI spelling for resolution s.
BinningScheme parse_scheme(std::string_view text, int s);

/// Reduced 2x2 table. Cells are ordered (mode 1, mode 2).
struct BinaryJointTable {
  double p_uu = 0.0;
  double p_ud = 0.0;
  double p_du = 0.0;
  double p_dd = 0.0;
  double p_u1 = 0.0;
  double p_u2 = 0.0;
  double total_mass = 0.0;
  double psi0 = 0.0;
};

BinaryJointTable bin_distribution(const JointPhaseDistribution& dist, const BinningScheme& scheme);

/// |up_set|/(s+1) times the retained mass (or 1 when Renormalized).
double p_up_marginal(const CoefficientVector& state, const PhaseGrid& grid,
                     const BinningScheme& scheme,
                     NormalizationMode mode = NormalizationMode::ProjectedRaw);

/// Binned probabilities of one state under one scheme, evaluated at any
/// psi0 without building the full outcome table. Each cell is a weighted sum
/// of outcome-sum class probabilities, the weight being the number of
/// (mu1, mu2) pairs in that cell with mu1+mu2 in the class.
class BinnedPairModel {
 public:
  BinnedPairModel(const CoefficientVector& state, const BinningScheme& scheme,
                  NormalizationMode mode = NormalizationMode::ProjectedRaw);

  const BinningScheme& scheme() const { return scheme_; }
  const PairPhaseModel& phase_model() const { return model_; }

  double p_up_up(double psi0) const;
  double p_up() const;
  BinaryJointTable table(double psi0) const;

 private:
  double weighted(const std::vector<int>& weights, double psi0) const;

  BinningScheme scheme_;
  PairPhaseModel model_;
  std::vector<int> w_uu_;
  std::vector<int> w_ud_;
  std::vector<int> w_dd_;
};

}  // namespace phasebell
