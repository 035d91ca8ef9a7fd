#pragma once

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "phasebell/bell_functionals.hpp"
#include "phasebell/fock_states.hpp"
#include "phasebell/phase_measure.hpp"

namespace phasebell {

enum class StateFamily { Equal, Tms, Circle, Custom };

StateFamily parse_state_family(std::string_view text);
NormalizationMode parse_mode(std::string_view text);

/// Parses "1,3,5", "1:201:2" (start:stop:step, inclusive) or a mix such as
/// "1,5:9:2". Values must be >= 0.
std::vector<int> parse_s_values(std::string_view text);

/// Which pair state to build and its parameter. build_state generates s+1
/// coefficients (the measurement at resolution s only sees n <= s).
struct StateSpec {
  StateFamily family = StateFamily::Equal;
  std::optional<double> lambda;
  std::optional<double> r;
  std::optional<CoefficientVector> custom;

  CoefficientVector build(int s) const;
};

/// `dist`: joint distribution CSV for one state at one psi0.
void write_dist(std::ostream& out, const StateSpec& state, int s, double psi0,
                NormalizationMode mode);

struct BellRow {
  int s = 0;
  std::string scheme;
  BellEvaluation eval;
};

/// `bell`: a single evaluation, at psi0 or optimized over [0, 2 pi/3] when
/// psi0 is empty.
BellRow bell_point(const StateSpec& state, int s, std::string_view scheme,
                   std::optional<double> psi0, NormalizationMode mode,
                   Functional functional = Functional::CH, int psi_grid = 2000);

void write_bell_csv(std::ostream& out, std::span<const BellRow> rows);

struct SweepSRow {
  int s = 0;
  double psi0_opt = 0.0;
  double b_ch_max = 0.0;
};

/// `sweep-s`: max-over-psi0 B_CH for each resolution. Rows come back in the
/// order of s_values regardless of how they were scheduled.
std::vector<SweepSRow> sweep_s(const StateSpec& state, std::span<const int> s_values,
                               std::string_view scheme, NormalizationMode mode,
                               int psi_grid = 2000);

void write_sweep_s_csv(std::ostream& out, std::span<const SweepSRow> rows);

struct IslandRow {
  int s = 0;
  double lambda = 0.0;
  double psi0 = 0.0;
  double b_ch = 0.0;
};

/// `sweep-lambda`: B_CH of the two-mode squeezed state over the grid
/// lambda_i = i/lambda_grid (i < lambda_grid) and psi_j = j (2 pi/3)/(psi_grid-1).
/// Rows ordered by s, then lambda, then psi0.
std::vector<IslandRow> sweep_lambda(std::span<const int> s_values, std::string_view scheme,
                                    int lambda_grid = 200, int psi_grid = 200,
                                    NormalizationMode mode = NormalizationMode::ProjectedRaw);

/// Share of rows at resolution s with B_CH > 1.
double violation_fraction(std::span<const IslandRow> rows, int s);

void write_sweep_lambda_csv(std::ostream& out, std::span<const IslandRow> rows);

/// `lhv-check`: prints both maxima and PASS/FAIL. Returns true on PASS.
bool write_lhv_report(std::ostream& out);

}  // namespace phasebell
