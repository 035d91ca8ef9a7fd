#include "phasebell/binning.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

#include "phasebell/numeric.hpp"

namespace phasebell {

BinningScheme::BinningScheme(BinningKind kind, int s, std::vector<int> up)
    : kind_(kind), s_(s), up_(std::move(up)), mask_(static_cast<std::size_t>(s) + 1, false) {
  for (int mu : up_) mask_[static_cast<std::size_t>(mu)] = true;
}

BinningScheme BinningScheme::complement() const {
  std::vector<int> down;
  for (int mu = 0; mu <= s_; ++mu) {
    if (!is_up(mu)) down.push_back(mu);
  }
  return make_scheme(BinningKind::Custom, s_, down);
}

std::string BinningScheme::label() const {
  switch (kind_) {
    case BinningKind::EqualSplit: return "equal";
    case BinningKind::SingleState: return "single";
    case BinningKind::Custom: break;
  }
  std::string out = "custom:";
  for (std::size_t i = 0; i < up_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(up_[i]);
  }
  return out;
}

BinningScheme make_scheme(BinningKind kind, int s, const std::optional<std::vector<int>>& custom_up) {
  if (s < 1) throw std::invalid_argument("binning needs s >= 1 (at least two outcomes)");
  std::vector<int> up;
  switch (kind) {
    case BinningKind::EqualSplit: {
      const int last = (s % 2 == 1) ? (s - 1) / 2 : s / 2 - 1;
      for (int mu = 0; mu <= last; ++mu) up.push_back(mu);
      break;
    }
    case BinningKind::SingleState:
      up.push_back(0);
      break;
    case BinningKind::Custom: {
      if (!custom_up) throw std::invalid_argument("custom binning requires an Up set");
      up = *custom_up;
      std::sort(up.begin(), up.end());
      if (std::adjacent_find(up.begin(), up.end()) != up.end()) {
        throw std::invalid_argument("custom binning: repeated outcome index");
      }
      if (up.empty()) throw std::invalid_argument("custom binning: Up set is empty");
      if (up.front() < 0 || up.back() > s) {
        throw std::invalid_argument("custom binning: index outside 0.." + std::to_string(s));
      }
      if (static_cast<int>(up.size()) == s + 1) {
        throw std::invalid_argument("custom binning: Up set must leave at least one Down outcome");
      }
      break;
    }
  }
  return BinningScheme(kind, s, std::move(up));
}

BinningScheme parse_scheme(std::string_view text, int s) {
  if (text == "equal") return make_scheme(BinningKind::EqualSplit, s);
  if (text == "single") return make_scheme(BinningKind::SingleState, s);
  constexpr std::string_view prefix = "custom:";
  if (text.substr(0, prefix.size()) != prefix) {
    throw std::invalid_argument("unknown binning scheme '" + std::string(text) +
                                "' (expected equal, single or custom:i,j,...)");
  }
  std::vector<int> up;
  std::string_view rest = text.substr(prefix.size());
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view item = rest.substr(0, comma);
    int value = 0;
    const auto res = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || res.ec != std::errc{} || res.ptr != item.data() + item.size()) {
      throw std::invalid_argument("custom binning: bad index '" + std::string(item) + "'");
    }
    up.push_back(value);
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return make_scheme(BinningKind::Custom, s, up);
}

BinaryJointTable bin_distribution(const JointPhaseDistribution& dist, const BinningScheme& scheme) {
  if (dist.grid().s != scheme.s()) {
    throw std::invalid_argument("binning scheme s=" + std::to_string(scheme.s()) +
                                " does not match distribution s=" + std::to_string(dist.grid().s));
  }
  CompensatedSum uu, ud, du, dd;
  for (int mu1 = 0; mu1 < dist.outcomes(); ++mu1) {
    for (int mu2 = 0; mu2 < dist.outcomes(); ++mu2) {
      const double p = dist.at(mu1, mu2);
      const bool up1 = scheme.is_up(mu1);
      const bool up2 = scheme.is_up(mu2);
      if (up1 && up2) uu += p;
      else if (up1) ud += p;
      else if (up2) du += p;
      else dd += p;
    }
  }
  BinaryJointTable t;
  t.p_uu = uu.value();
  t.p_ud = ud.value();
  t.p_du = du.value();
  t.p_dd = dd.value();
  t.p_u1 = t.p_uu + t.p_ud;
  t.p_u2 = t.p_uu + t.p_du;
  t.total_mass = dist.total_mass();
  t.psi0 = dist.grid().psi0();
  return t;
}

double p_up_marginal(const CoefficientVector& state, const PhaseGrid& grid,
                     const BinningScheme& scheme, NormalizationMode mode) {
  if (grid.s != scheme.s()) throw std::invalid_argument("binning scheme does not match grid");
  return scheme.up_count() * marginal_prob(state, grid, mode);
}

BinnedPairModel::BinnedPairModel(const CoefficientVector& state, const BinningScheme& scheme,
                                 NormalizationMode mode)
    : scheme_(scheme), model_(state, scheme.s(), mode) {
  const int dim = scheme_.s() + 1;
  w_uu_.assign(static_cast<std::size_t>(dim), 0);
  w_ud_.assign(static_cast<std::size_t>(dim), 0);
  w_dd_.assign(static_cast<std::size_t>(dim), 0);
  for (int mu1 = 0; mu1 < dim; ++mu1) {
    for (int mu2 = 0; mu2 < dim; ++mu2) {
      const int m = (mu1 + mu2) % dim;
      const bool up1 = scheme_.is_up(mu1);
      const bool up2 = scheme_.is_up(mu2);
      if (up1 && up2) ++w_uu_[m];
      else if (up1 && !up2) ++w_ud_[m];
      else if (!up1 && !up2) ++w_dd_[m];
    }
  }
}

double BinnedPairModel::weighted(const std::vector<int>& weights, double psi0) const {
  CompensatedSum acc;
  for (std::size_t m = 0; m < weights.size(); ++m) {
    if (weights[m] != 0) acc += weights[m] * model_.class_probability(static_cast<int>(m), psi0);
  }
  return acc.value();
}

double BinnedPairModel::p_up_up(double psi0) const { return weighted(w_uu_, psi0); }

double BinnedPairModel::p_up() const { return scheme_.up_count() * model_.marginal(); }

BinaryJointTable BinnedPairModel::table(double psi0) const {
  BinaryJointTable t;
  t.p_uu = weighted(w_uu_, psi0);
  // P(mu1, mu2) is symmetric in its arguments, so the two cross cells share weights.
  t.p_ud = weighted(w_ud_, psi0);
  t.p_du = t.p_ud;
  t.p_dd = weighted(w_dd_, psi0);
  t.p_u1 = t.p_uu + t.p_ud;
  t.p_u2 = t.p_uu + t.p_du;
  t.total_mass = model_.total_mass();
  t.psi0 = psi0;
  return t;
}

}  // namespace phasebell
