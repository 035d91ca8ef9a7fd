#include "phasebell/fock_states.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "phasebell/numeric.hpp"

namespace phasebell {

namespace {

double sum_of_squares(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc += v * v;
  return acc.value();
}

void require_count(int count) {
  if (count < 1) throw std::invalid_argument("coefficient count must be >= 1");
}

}  // namespace

std::string_view to_string(CoefficientSource source) {
  switch (source) {
    case CoefficientSource::Equal: return "equal";
    case CoefficientSource::TwoModeSqueezed: return "tms";
    case CoefficientSource::Circle: return "circle";
    case CoefficientSource::Custom: return "custom";
  }
  return "unknown";
}

CoefficientVector::CoefficientVector(std::vector<double> coeffs, CoefficientSource source)
    : coeffs_(std::move(coeffs)), source_(source), raw_norm_sq_(sum_of_squares(coeffs_)) {}

bool CoefficientVector::is_normalized(double tol) const {
  return std::abs(raw_norm_sq_ - 1.0) <= tol;
}

CoefficientVector CoefficientVector::normalized() const {
  if (!(raw_norm_sq_ > 0.0) || !std::isfinite(raw_norm_sq_)) {
    throw NumericError("cannot normalize a coefficient vector with norm " +
                       std::to_string(raw_norm_sq_));
  }
  const double inv = 1.0 / std::sqrt(raw_norm_sq_);
  std::vector<double> out(coeffs_);
  for (double& c : out) c *= inv;
  return CoefficientVector(std::move(out), source_);
}

CoefficientVector CoefficientVector::projected(int s) const {
  if (s < 0) throw std::invalid_argument("projection resolution must be >= 0");
  std::vector<double> out(static_cast<std::size_t>(s) + 1, 0.0);
  const std::size_t keep = std::min(out.size(), coeffs_.size());
  std::copy_n(coeffs_.begin(), keep, out.begin());
  return CoefficientVector(std::move(out), source_);
}

CoefficientVector equal_coeffs(int s) {
  if (s < 0) throw std::invalid_argument("equal_coeffs: s must be >= 0");
  const auto n = static_cast<std::size_t>(s) + 1;
  return CoefficientVector(std::vector<double>(n, 1.0 / std::sqrt(static_cast<double>(n))),
                           CoefficientSource::Equal);
}

CoefficientVector tms_coeffs(double lambda, int count) {
  if (!(lambda >= 0.0 && lambda < 1.0)) {
    throw std::invalid_argument("tms_coeffs: lambda must lie in [0, 1)");
  }
  require_count(count);
  std::vector<double> c(static_cast<std::size_t>(count));
  c[0] = std::sqrt((1.0 - lambda) * (1.0 + lambda));
  for (std::size_t n = 1; n < c.size(); ++n) c[n] = c[n - 1] * lambda;
  return CoefficientVector(std::move(c), CoefficientSource::TwoModeSqueezed);
}

CoefficientVector circle_shape(double r, int count) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw std::invalid_argument("circle_coeffs: r must be finite and >= 0");
  }
  require_count(count);
  const double r2 = r * r;
  std::vector<double> c(static_cast<std::size_t>(count));
  c[0] = 1.0;
  // c_n = c_{n-1} r^2 / n keeps the ratio test exact.
  for (std::size_t n = 1; n < c.size(); ++n) c[n] = c[n - 1] * r2 / static_cast<double>(n);
  CoefficientVector out(std::move(c), CoefficientSource::Circle);
  if (!std::isfinite(out.raw_norm_sq())) {
    throw NumericError("circle_coeffs: coefficients overflow for r=" + std::to_string(r));
  }
  return out;
}

CoefficientVector circle_coeffs(double r, int count) {
  return circle_shape(r, count).normalized();
}

CoefficientVector custom_coeffs(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("custom_coeffs: at least one coefficient required");
  for (double v : values) {
    if (!std::isfinite(v)) throw std::invalid_argument("custom_coeffs: non-finite coefficient");
  }
  return CoefficientVector(std::vector<double>(values.begin(), values.end()),
                           CoefficientSource::Custom);
}

CoefficientVector parse_coefficients(std::istream& in) {
  std::vector<double> values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string token = line.substr(first, last - first + 1);
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size()) {
      throw std::invalid_argument("coefficient file line " + std::to_string(lineno) +
                                  ": not a decimal number: '" + token + "'");
    }
    values.push_back(v);
  }
  return custom_coeffs(values);
}

CoefficientVector read_coefficient_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open coefficient file " + path.string());
  return parse_coefficients(in);
}

double bessel_i0(double x, double tol) {
  if (!(x >= 0.0)) throw std::invalid_argument("bessel_i0: x must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("bessel_i0: tol must be > 0");
  const double q = 0.25 * x * x;
  CompensatedSum sum;
  double term = 1.0;
  sum += term;
  for (int k = 1;; ++k) {
    term *= q / (static_cast<double>(k) * static_cast<double>(k));
    if (term < tol * sum.value()) break;
    sum += term;
  }
  return sum.value();
}

}  // namespace phasebell
