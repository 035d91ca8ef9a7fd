#include "phasebell/phase_measure.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "phasebell/format.hpp"
#include "phasebell/numeric.hpp"

namespace phasebell {

namespace {

constexpr double kNegativeTolerance = 1e-14;

void check_outcome(const PhaseGrid& grid, int mu, const char* name) {
  if (mu < 0 || mu > grid.s) {
    throw std::invalid_argument(std::string(name) + "=" + std::to_string(mu) +
                                " outside 0.." + std::to_string(grid.s));
  }
}

}  // namespace

std::string_view to_string(NormalizationMode mode) {
  return mode == NormalizationMode::ProjectedRaw ? "raw" : "renorm";
}

double PhaseGrid::outcome_phase(int mode, int mu) const {
  const double theta0 = mode == 1 ? theta0_1 : theta0_2;
  return theta0 + kTwoPi * mu / (s + 1);
}

void PhaseGrid::validate() const {
  if (s < 0) throw std::invalid_argument("phase grid resolution s must be >= 0");
  if (!std::isfinite(theta0_1) || !std::isfinite(theta0_2)) {
    throw std::invalid_argument("phase grid reference phases must be finite");
  }
}

double clamp_probability(double p) {
  if (p >= 0.0) return p;
  if (p > -kNegativeTolerance) return 0.0;
  throw NumericError("negative probability " + format_number(p));
}

JointPhaseDistribution::JointPhaseDistribution(PhaseGrid grid, std::vector<double> table,
                                               NormalizationMode mode)
    : grid_(grid), table_(std::move(table)), mode_(mode) {
  const auto n = static_cast<std::size_t>(grid_.outcomes());
  if (table_.size() != n * n) throw std::invalid_argument("joint table has wrong size");
  CompensatedSum acc;
  for (double p : table_) acc += p;
  total_mass_ = acc.value();
}

double JointPhaseDistribution::at(int mu1, int mu2) const {
  check_outcome(grid_, mu1, "mu1");
  check_outcome(grid_, mu2, "mu2");
  return table_[static_cast<std::size_t>(mu1) * outcomes() + mu2];
}

double JointPhaseDistribution::row_sum(int mu1) const {
  CompensatedSum acc;
  for (int mu2 = 0; mu2 < outcomes(); ++mu2) acc += at(mu1, mu2);
  return acc.value();
}

double JointPhaseDistribution::column_sum(int mu2) const {
  CompensatedSum acc;
  for (int mu1 = 0; mu1 < outcomes(); ++mu1) acc += at(mu1, mu2);
  return acc.value();
}

PairPhaseModel::PairPhaseModel(const CoefficientVector& state, int s, NormalizationMode mode)
    : s_(s), mode_(mode), lag_(static_cast<std::size_t>(s >= 0 ? s + 1 : 0), 0.0) {
  if (s < 0) throw std::invalid_argument("phase resolution s must be >= 0");
  const CoefficientVector c = state.projected(s);
  for (int d = 0; d <= s; ++d) {
    CompensatedSum acc;
    for (int n = 0; n + d <= s; ++n) acc += c.at(n + d) * c.at(n);
    lag_[d] = acc.value();
  }
  const double dim = static_cast<double>(s + 1);
  scale_ = 1.0 / (dim * dim);
  if (mode_ == NormalizationMode::Renormalized) {
    if (!(lag_[0] > 0.0)) {
      throw NumericError("cannot renormalize: state has no weight on n <= " + std::to_string(s));
    }
    scale_ /= lag_[0];
  }
}

double PairPhaseModel::total_mass() const {
  return mode_ == NormalizationMode::Renormalized ? 1.0 : lag_[0];
}

double PairPhaseModel::class_probability(int m, double psi0) const {
  const int dim = s_ + 1;
  m = ((m % dim) + dim) % dim;
  CompensatedSum acc;
  acc += lag_[0];
  for (int d = 1; d <= s_; ++d) {
    if (lag_[d] == 0.0) continue;
    // Reduce the grid part of d * total_phase exactly in integers.
    const int k = static_cast<int>((static_cast<long long>(d) * m) % dim);
    const double phase = kTwoPi * k / dim + d * psi0;
    acc += 2.0 * lag_[d] * std::cos(phase);
  }
  return clamp_probability(acc.value() * scale_);
}

double PairPhaseModel::marginal() const { return total_mass() / (s_ + 1); }

double joint_prob(const CoefficientVector& state, const PhaseGrid& grid, int mu1, int mu2,
                  NormalizationMode mode) {
  grid.validate();
  check_outcome(grid, mu1, "mu1");
  check_outcome(grid, mu2, "mu2");
  return PairPhaseModel(state, grid.s, mode).class_probability(mu1 + mu2, grid.psi0());
}

JointPhaseDistribution joint_distribution(const CoefficientVector& state, const PhaseGrid& grid,
                                          NormalizationMode mode) {
  grid.validate();
  const PairPhaseModel model(state, grid.s, mode);
  const int dim = grid.outcomes();
  std::vector<double> by_class(static_cast<std::size_t>(dim));
  for (int m = 0; m < dim; ++m) by_class[m] = model.class_probability(m, grid.psi0());
  std::vector<double> table(static_cast<std::size_t>(dim) * dim);
  for (int mu1 = 0; mu1 < dim; ++mu1) {
    for (int mu2 = 0; mu2 < dim; ++mu2) {
      table[static_cast<std::size_t>(mu1) * dim + mu2] = by_class[(mu1 + mu2) % dim];
    }
  }
  return JointPhaseDistribution(grid, std::move(table), mode);
}

double oracle_joint_prob(const CoefficientVector& state, const PhaseGrid& grid, int mu1, int mu2) {
  grid.validate();
  check_outcome(grid, mu1, "mu1");
  check_outcome(grid, mu2, "mu2");
  const double phase = grid.outcome_phase(1, mu1) + grid.outcome_phase(2, mu2);
  std::complex<double> amplitude{0.0, 0.0};
  for (int n = 0; n <= grid.s; ++n) {
    amplitude += state.at(n) * std::polar(1.0, -n * phase);
  }
  amplitude /= static_cast<double>(grid.s + 1);
  return std::norm(amplitude);
}

double marginal_prob(const CoefficientVector& state, const PhaseGrid& grid,
                     NormalizationMode mode) {
  grid.validate();
  return PairPhaseModel(state, grid.s, mode).marginal();
}

void write_distribution_csv(std::ostream& out, const JointPhaseDistribution& dist) {
  out << "mu1,mu2,p\n";
  for (int mu1 = 0; mu1 < dist.outcomes(); ++mu1) {
    for (int mu2 = 0; mu2 < dist.outcomes(); ++mu2) {
      out << mu1 << ',' << mu2 << ',' << format_number(dist.at(mu1, mu2)) << '\n';
    }
  }
}

}  // namespace phasebell
