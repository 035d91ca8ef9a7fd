#include "phasebell/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <stdexcept>
#include <thread>

#include "phasebell/binning.hpp"
#include "phasebell/format.hpp"
#include "phasebell/lhv_oracle.hpp"

namespace phasebell {

namespace {

/// Runs body(i) for i in [0, count) on a small worker pool. The first
/// exception (lowest index) is rethrown after all workers finish.
template <typename Body>
void parallel_for(std::size_t count, Body&& body) {
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(count, 1));
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        body(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  }
  return value;
}

void require_grid(int points, const char* name) {
  if (points < 2) throw std::invalid_argument(std::string(name) + " needs at least 2 points");
}

}  // namespace

StateFamily parse_state_family(std::string_view text) {
  if (text == "equal") return StateFamily::Equal;
  if (text == "tms") return StateFamily::Tms;
  if (text == "circle") return StateFamily::Circle;
  if (text == "custom") return StateFamily::Custom;
  throw std::invalid_argument("unknown state family '" + std::string(text) +
                              "' (expected equal, tms, circle or custom)");
}

NormalizationMode parse_mode(std::string_view text) {
  if (text == "raw") return NormalizationMode::ProjectedRaw;
  if (text == "renorm") return NormalizationMode::Renormalized;
  throw std::invalid_argument("unknown mode '" + std::string(text) + "' (expected raw or renorm)");
}

std::vector<int> parse_s_values(std::string_view text) {
  std::vector<int> out;
  while (!text.empty()) {
    const auto comma = text.find(',');
    const std::string_view item = text.substr(0, comma);
    const auto c1 = item.find(':');
    if (c1 == std::string_view::npos) {
      out.push_back(parse_int(item));
    } else {
      const std::string_view tail = item.substr(c1 + 1);
      const auto c2 = tail.find(':');
      const int start = parse_int(item.substr(0, c1));
      const int stop = parse_int(tail.substr(0, c2));
      const int step = c2 == std::string_view::npos ? 1 : parse_int(tail.substr(c2 + 1));
      if (step <= 0) throw std::invalid_argument("s range step must be positive");
      for (int s = start; s <= stop; s += step) out.push_back(s);
    }
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.empty()) throw std::invalid_argument("no s values given");
  for (int s : out) {
    if (s < 0) throw std::invalid_argument("s values must be >= 0");
  }
  return out;
}

CoefficientVector StateSpec::build(int s) const {
  const int count = s + 1;
  switch (family) {
    case StateFamily::Equal:
      return equal_coeffs(s);
    case StateFamily::Tms:
      if (!lambda) throw std::invalid_argument("--state tms requires --lambda");
      return tms_coeffs(*lambda, count);
    case StateFamily::Circle:
      if (!r) throw std::invalid_argument("--state circle requires --r");
      return circle_coeffs(*r, count);
    case StateFamily::Custom:
      if (!custom) throw std::invalid_argument("--state custom requires --coeffs");
      return *custom;
  }
  throw std::invalid_argument("unknown state family");
}

void write_dist(std::ostream& out, const StateSpec& state, int s, double psi0,
                NormalizationMode mode) {
  write_distribution_csv(out,
                         joint_distribution(state.build(s), PhaseGrid::from_psi0(s, psi0), mode));
}

BellRow bell_point(const StateSpec& state, int s, std::string_view scheme,
                   std::optional<double> psi0, NormalizationMode mode, Functional functional,
                   int psi_grid) {
  const BinningScheme bins = parse_scheme(scheme, s);
  const BellEvaluator evaluator(state.build(s), bins, mode);
  BellRow row;
  row.s = s;
  row.scheme = bins.label();
  row.eval = psi0 ? evaluator.evaluate(*psi0) : evaluator.optimize(functional, psi_grid);
  return row;
}

void write_bell_csv(std::ostream& out, std::span<const BellRow> rows) {
  out << "s,scheme,psi0,b_ch,b_s,violates_ch,violates_s\n";
  for (const auto& row : rows) {
    out << row.s << ',' << csv_field(row.scheme) << ',' << format_number(row.eval.psi0) << ','
        << format_number(row.eval.b_ch) << ',' << format_number(row.eval.b_s) << ','
        << format_bool(row.eval.violates_ch()) << ',' << format_bool(row.eval.violates_s())
        << '\n';
  }
}

std::vector<SweepSRow> sweep_s(const StateSpec& state, std::span<const int> s_values,
                               std::string_view scheme, NormalizationMode mode, int psi_grid) {
  if (s_values.empty()) throw std::invalid_argument("sweep-s needs at least one s value");
  require_grid(psi_grid, "psi0 grid");
  // Validate every scheme up front so flag errors surface before any work.
  for (int s : s_values) parse_scheme(scheme, s);
  std::vector<SweepSRow> rows(s_values.size());
  parallel_for(s_values.size(), [&](std::size_t i) {
    const int s = s_values[i];
    const BellEvaluator evaluator(state.build(s), parse_scheme(scheme, s), mode);
    const BellEvaluation best = evaluator.optimize(Functional::CH, psi_grid);
    rows[i] = {s, best.psi0, best.b_ch};
  });
  return rows;
}

void write_sweep_s_csv(std::ostream& out, std::span<const SweepSRow> rows) {
  out << "s,psi0_opt,b_ch_max\n";
  for (const auto& row : rows) {
    out << row.s << ',' << format_number(row.psi0_opt) << ',' << format_number(row.b_ch_max)
        << '\n';
  }
}

std::vector<IslandRow> sweep_lambda(std::span<const int> s_values, std::string_view scheme,
                                    int lambda_grid, int psi_grid, NormalizationMode mode) {
  if (s_values.empty()) throw std::invalid_argument("sweep-lambda needs at least one s value");
  require_grid(lambda_grid, "lambda grid");
  require_grid(psi_grid, "psi0 grid");
  for (int s : s_values) parse_scheme(scheme, s);
  const std::size_t lambdas = static_cast<std::size_t>(lambda_grid);
  const std::size_t psis = static_cast<std::size_t>(psi_grid);
  std::vector<IslandRow> rows(s_values.size() * lambdas * psis);
  const double psi_step = kPsiRangeMax / (psi_grid - 1);
  parallel_for(s_values.size() * lambdas, [&](std::size_t block) {
    const int s = s_values[block / lambdas];
    const double lambda = static_cast<double>(block % lambdas) / lambda_grid;
    const BellEvaluator evaluator(tms_coeffs(lambda, s + 1), parse_scheme(scheme, s), mode);
    for (std::size_t j = 0; j < psis; ++j) {
      const double psi = j + 1 == psis ? kPsiRangeMax : psi_step * static_cast<double>(j);
      rows[block * psis + j] = {s, lambda, psi, evaluator.ch(psi)};
    }
  });
  return rows;
}

double violation_fraction(std::span<const IslandRow> rows, int s) {
  std::size_t total = 0;
  std::size_t violating = 0;
  for (const auto& row : rows) {
    if (row.s != s) continue;
    ++total;
    if (row.b_ch > 1.0) ++violating;
  }
  if (total == 0) throw std::invalid_argument("no sweep rows for s=" + std::to_string(s));
  return static_cast<double>(violating) / static_cast<double>(total);
}

void write_sweep_lambda_csv(std::ostream& out, std::span<const IslandRow> rows) {
  out << "s,lambda,psi0,b_ch\n";
  for (const auto& row : rows) {
    out << row.s << ',' << format_number(row.lambda) << ',' << format_number(row.psi0) << ','
        << format_number(row.b_ch) << '\n';
  }
}

bool write_lhv_report(std::ostream& out) {
  const LhvBounds bounds = enumerate_lhv_bounds();
  const bool pass = bounds.max_abs_bs == 2.0 && bounds.max_abs_ch == 1.0;
  out << "max_abs_b_s,max_abs_b_ch,status\n"
      << format_number(bounds.max_abs_bs) << ',' << format_number(bounds.max_abs_ch) << ','
      << (pass ? "PASS" : "FAIL") << '\n';
  return pass;
}

}  // namespace phasebell
