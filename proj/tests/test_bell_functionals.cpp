#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "phasebell/bell_functionals.hpp"
#include "phasebell/golden_section.hpp"
#include "phasebell/numeric.hpp"

using namespace phasebell;

namespace {

const double kSqrt2 = std::sqrt(2.0);

BinningScheme equal_split(int s) { return make_scheme(BinningKind::EqualSplit, s); }
BinningScheme single_state(int s) { return make_scheme(BinningKind::SingleState, s); }

}  // namespace

TEST_CASE("golden-section helpers") {
  const auto peak = golden_section_maximize([](double x) { return -(x - 0.3) * (x - 0.3); }, 0.0,
                                            1.0, 1e-10);
  CHECK(peak.x == doctest::Approx(0.3).epsilon(1e-9));

  // cos(3x) has its maximum on [0, 2] at 2 pi / 3; the grid finds the right cell.
  const auto m = grid_golden_maximize([](double x) { return std::cos(3 * x) - 0.1 * x; }, 0.5, 2.5,
                                      50, 1e-12);
  CHECK(m.x == doctest::Approx(2 * kPi / 3 - std::asin(0.1 / 3) / 3).epsilon(1e-7));

  // Boundary maximum: the grid endpoint wins.
  const auto edge = grid_golden_maximize([](double x) { return x; }, 0.0, 1.0, 11, 1e-12);
  CHECK(edge.x == 1.0);

  // Flat function: smallest grid point wins ties.
  const auto flat = grid_golden_maximize([](double) { return 1.0; }, 0.0, 1.0, 11, 1e-12);
  CHECK(flat.x == 0.0);
  CHECK_THROWS_AS(grid_golden_maximize([](double x) { return x; }, 0.0, 1.0, 1, 1e-12),
                  std::invalid_argument);
}

TEST_CASE("correlation_e") {
  const auto ideal = equal_coeffs(1);
  const auto scheme = equal_split(1);
  auto table = [&](const CoefficientVector& c, double psi) {
    return bin_distribution(joint_distribution(c, PhaseGrid::from_psi0(1, psi)), scheme);
  };
  CHECK(correlation_e(table(ideal, 0.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(correlation_e(table(ideal, kPi / 2))) < 1e-15);

  for (double lambda : {0.2, 0.6, 0.9}) {
    const auto paramp = tms_coeffs(lambda, 2);
    for (double psi : {0.0, 0.4, 2.0}) {
      const double expected = 2 * paramp.at(0) * paramp.at(1) * std::cos(psi);
      CHECK(std::abs(correlation_e(table(paramp, psi)) - expected) < 1e-14);
    }
  }
}

TEST_CASE("binary measurement maxima") {
  const auto ideal = equal_coeffs(1);
  CHECK(std::abs(bell_ch_factorized(ideal, 1, equal_split(1), kPi / 4) - (1 + kSqrt2) / 2) < 1e-12);
  CHECK(std::abs(bell_s_factorized(ideal, 1, equal_split(1), kPi / 4) - 2 * kSqrt2) < 1e-12);
  CHECK(std::abs(bell_ch_factorized(ideal, 1, equal_split(1), kPi / 4) - 1.20710678) < 1e-8);
  CHECK(std::abs(bell_s_factorized(ideal, 1, equal_split(1), kPi / 4) - 2.82842712) < 1e-8);

  // No interference at psi0 = pi/2.
  for (double lambda : {0.0, 0.3, 0.8}) {
    const auto c = tms_coeffs(lambda, 2);
    CHECK(std::abs(bell_s_factorized(c, 1, equal_split(1), kPi / 2)) < 1e-14);
    CHECK(std::abs(bell_ch_factorized(c, 1, equal_split(1), kPi / 2)) <= 1.0);
  }
}

TEST_CASE("paramp projected onto the binary measurement") {
  for (double lambda : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    // The binary measurement sees c0 and c1 of the full series.
    const auto paramp = tms_coeffs(lambda, 50);
    const double c0 = paramp.at(0);
    const double c1 = paramp.at(1);
    const double ch = bell_ch_factorized(paramp, 1, equal_split(1), kPi / 4);
    const double bs = bell_s_factorized(paramp, 1, equal_split(1), kPi / 4);
    CHECK(std::abs(ch - (0.5 + kSqrt2 * c0 * c1 / (c0 * c0 + c1 * c1))) < 1e-12);
    CHECK(std::abs(bs - 4 * kSqrt2 * c0 * c1) < 1e-12);

    for (double psi : {0.2, 0.9, 1.7}) {
      const double shape = 3 * std::cos(psi) - std::cos(3 * psi);
      CHECK(std::abs(bell_ch_factorized(paramp, 1, equal_split(1), psi) -
                     (0.5 + 0.5 * c0 * c1 / (c0 * c0 + c1 * c1) * shape)) < 1e-12);
      CHECK(std::abs(bell_s_factorized(paramp, 1, equal_split(1), psi) - 2 * c0 * c1 * shape) <
            1e-12);
    }

    // Renormalizing leaves the self-normalizing CH ratio alone but rescales B_S.
    const double ch_renorm =
        bell_ch_factorized(paramp, 1, equal_split(1), kPi / 4, NormalizationMode::Renormalized);
    const double bs_renorm =
        bell_s_factorized(paramp, 1, equal_split(1), kPi / 4, NormalizationMode::Renormalized);
    CHECK(std::abs(ch_renorm - ch) < 1e-12);
    CHECK(std::abs(bs_renorm - bs / (c0 * c0 + c1 * c1)) < 1e-12);
  }
}

TEST_CASE("s=3 values against the amplitude oracle") {
  const auto c = equal_coeffs(3);
  const std::vector<double> cv(c.coeffs().begin(), c.coeffs().end());
  const double ch_single = bell_ch_factorized(c, 3, single_state(3), 0.35);
  CHECK(ch_single == doctest::Approx(1.19).epsilon(0.005));
  CHECK(std::abs(ch_single - 1.1908165254377752) < 1e-12);
  CHECK(std::abs(ch_single - oracle::ch_factorized(cv, 3, oracle::up_mask(3, {0}), 0.35)) < 1e-12);
  CHECK(std::abs(bell_s_factorized(c, 3, single_state(3), 0.35) - 2.3816330508755508) < 1e-12);

  CHECK(std::abs(bell_ch_factorized(c, 3, equal_split(3), 0.5) - 0.7205770905167943) < 1e-12);
  CHECK(std::abs(bell_ch_factorized(c, 3, equal_split(3), 0.5) -
                 oracle::ch_factorized(cv, 3, oracle::up_mask(3, {0, 1}), 0.5)) < 1e-12);
  CHECK(std::abs(bell_s_factorized(c, 3, equal_split(3), 0.5) - 0.8823083620671772) < 1e-12);
}

TEST_CASE("general four-angle forms") {
  std::mt19937_64 rng(2718);
  std::uniform_real_distribution<double> angle(-kPi, kPi);

  SUBCASE("factorized angle assignment reproduces the single-angle forms") {
    for (int trial = 0; trial < 60; ++trial) {
      const int s = 1 + trial % 8;
      const auto state = custom_coeffs(oracle::random_coeffs(rng, s + 1 + trial % 3, true));
      const double psi = angle(rng);
      for (const auto& scheme : {equal_split(s), single_state(s)}) {
        const auto angles = AngleSet::factorized(psi);
        CHECK(std::abs(bell_ch_general(state, s, scheme, angles) -
                       bell_ch_factorized(state, s, scheme, psi)) < 1e-12);
        CHECK(std::abs(bell_s_general(state, s, scheme, angles) -
                       bell_s_factorized(state, s, scheme, psi)) < 1e-12);
      }
    }
  }

  SUBCASE("only the four setting sums matter") {
    for (int trial = 0; trial < 40; ++trial) {
      const int s = 1 + trial % 6;
      const auto state = custom_coeffs(oracle::random_coeffs(rng, s + 1, true));
      const AngleSet a{angle(rng), angle(rng), angle(rng), angle(rng)};
      const double d = angle(rng);
      // Shift mode 1 by +d and mode 2 by -d: every sum is unchanged.
      const AngleSet b{a.theta1 + d, a.theta1p + d, a.theta2 - d, a.theta2p - d};
      const auto scheme = single_state(s);
      CHECK(std::abs(bell_ch_general(state, s, scheme, a) - bell_ch_general(state, s, scheme, b)) <
            1e-12);
      CHECK(std::abs(bell_s_general(state, s, scheme, a) - bell_s_general(state, s, scheme, b)) <
            1e-12);
    }
  }

  SUBCASE("all angles equal") {
    const auto ideal = equal_coeffs(1);
    const AngleSet same{0.3, 0.3, 0.3, 0.3};
    // Every sum is 0.6: numerator 2 P(0.6), denominator 2 P_up.
    const auto t = bin_distribution(joint_distribution(ideal, PhaseGrid::from_psi0(1, 0.6)),
                                    equal_split(1));
    CHECK(std::abs(bell_ch_general(ideal, 1, equal_split(1), same) - t.p_uu / 0.5) < 1e-12);
  }

  SUBCASE("best general angles at s=1 reach 2 sqrt 2") {
    const auto angles = AngleSet::factorized(kPi / 4);
    CHECK(std::abs(bell_s_general(equal_coeffs(1), 1, equal_split(1), angles) - 2 * kSqrt2) < 1e-12);
  }

  SUBCASE("no phase coherence with a single number term") {
    const auto c = custom_coeffs(std::vector<double>{0.0, 1.0});
    for (int trial = 0; trial < 10; ++trial) {
      const AngleSet a{angle(rng), angle(rng), angle(rng), angle(rng)};
      CHECK(std::abs(bell_s_general(c, 1, equal_split(1), a)) < 1e-14);
    }
  }

  CHECK_THROWS_AS(bell_ch_general(equal_coeffs(1), 1, equal_split(1),
                                  AngleSet{0, std::nan(""), 0, 0}),
                  std::invalid_argument);
}

TEST_CASE("zero Up probability is a numeric error") {
  const auto c = custom_coeffs(std::vector<double>{0.0, 0.0, 0.0, 1.0});
  CHECK_THROWS_AS(bell_ch_factorized(c, 1, equal_split(1), 0.3), NumericError);
  CHECK_THROWS_AS(bell_ch_general(c, 1, equal_split(1), AngleSet::factorized(0.3)), NumericError);
  CHECK_THROWS_AS(bell_ch_factorized(equal_coeffs(1), 2, equal_split(1), 0.3), std::invalid_argument);
}

TEST_CASE("single-state closed form with the 1/(s+1) prefactor") {
  std::mt19937_64 rng(1618);
  std::uniform_real_distribution<double> angle(0.0, kPsiRangeMax);
  for (int trial = 0; trial < 200; ++trial) {
    const int s = 1 + trial % 15;
    const auto c = oracle::random_coeffs(rng, s + 1, true);
    const double psi = angle(rng);
    double mass = 0;
    for (double x : c) mass += x * x;
    double cross = 0;
    for (int n = 0; n <= s; ++n) {
      for (int m = 0; m < n; ++m) {
        cross += c[n] * c[m] * (3 * std::cos((n - m) * psi) - std::cos(3 * (n - m) * psi));
      }
    }
    const double closed = 1.0 / (s + 1) + cross / ((s + 1) * mass);
    CHECK(std::abs(bell_ch_factorized(custom_coeffs(c), s, single_state(s), psi) - closed) < 1e-12);
  }
}

TEST_CASE("P_uu(psi) = P_uu(-psi) symmetry") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int trial = 0; trial < 50; ++trial) {
    const int s = 1 + trial % 10;
    const auto state = custom_coeffs(oracle::random_coeffs(rng, s + 1, true));
    const double psi = angle(rng);
    const BinnedPairModel single(state, single_state(s));
    CHECK(std::abs(single.p_up_up(psi) - single.p_up_up(-psi)) < 1e-14);
    // With the symmetry the CH ratio collapses to [3 P(psi) - P(3 psi)] / (2 P_up).
    const double simplified =
        (3 * single.p_up_up(psi) - single.p_up_up(3 * psi)) / (2 * single.p_up());
    CHECK(std::abs(bell_ch_factorized(state, s, single_state(s), psi) - simplified) < 1e-12);
  }
  for (int s : {1, 2}) {
    const BinnedPairModel m(equal_coeffs(s), equal_split(s));
    CHECK(std::abs(m.p_up_up(0.4) - m.p_up_up(-0.4)) < 1e-14);
  }
  // Equal split with s >= 3 is not centred on theta0, so the symmetry fails.
  const BinnedPairModel m3(equal_coeffs(3), equal_split(3));
  CHECK(std::abs(m3.p_up_up(0.4) - m3.p_up_up(-0.4)) > 1e-6);
}

TEST_CASE("optimize_psi") {
  SUBCASE("ideal binary state") {
    const auto best = optimize_psi(equal_coeffs(1), 1, equal_split(1), Functional::CH);
    CHECK(best.psi0 == doctest::Approx(kPi / 4).epsilon(1e-8));
    CHECK(std::abs(best.b_ch - (1 + kSqrt2) / 2) < 1e-12);
    CHECK(std::abs(best.b_s - 2 * kSqrt2) < 1e-12);
    CHECK(best.violates_ch());
    CHECK(best.violates_s());
    REQUIRE(best.angles.has_value());
    CHECK(best.angles->theta2 == best.psi0);

    const auto best_s = optimize_psi(equal_coeffs(1), 1, equal_split(1), Functional::S);
    CHECK(std::abs(best_s.b_s - 2 * kSqrt2) < 1e-12);
  }
  SUBCASE("equal split at s=3 does not violate") {
    const auto best = optimize_psi(equal_coeffs(3), 3, equal_split(3), Functional::CH);
    CHECK(best.b_ch <= 1.0);
    CHECK_FALSE(best.violates_ch());
  }
  SUBCASE("single state at s=3") {
    const auto best = optimize_psi(equal_coeffs(3), 3, single_state(3), Functional::CH);
    CHECK(best.b_ch == doctest::Approx(1.19).epsilon(0.005));
    CHECK(best.psi0 == doctest::Approx(0.36).epsilon(0.05));
    // Dense-grid oracle over the amplitude tables.
    const std::vector<double> cv(4, 0.5);
    double dense = -1;
    for (int i = 0; i <= 20000; ++i) {
      dense = std::max(dense, oracle::ch_factorized(cv, 3, oracle::up_mask(3, {0}), kPsiRangeMax * i / 20000));
    }
    CHECK(best.b_ch >= dense - 1e-12);
    CHECK(best.b_ch - dense < 1e-7);
  }
  SUBCASE("evaluation flags follow the values") {
    BellEvaluation e;
    e.b_ch = -1.5;
    e.b_s = 1.9;
    CHECK(e.violates_ch());
    CHECK_FALSE(e.violates_s());
  }
}

TEST_CASE("max B_CH under single-state binning decreases with odd s") {
  double previous = 10.0;
  for (int s = 1; s <= 41; s += 2) {
    const auto best = optimize_psi(equal_coeffs(s), s, single_state(s), Functional::CH);
    CHECK(best.b_ch > 1.0);
    CHECK(best.b_ch <= previous + 1e-12);
    previous = best.b_ch;
  }
}
