#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <span>
#include <string_view>
#include <vector>

namespace phasebell {

enum class CoefficientSource { Equal, TwoModeSqueezed, Circle, Custom };

std::string_view to_string(CoefficientSource source);

/// Real amplitudes c_n of a correlated pair state sum_n c_n |n>|n>, indexed
/// by photon number. Immutable once built.
class CoefficientVector {
 public:
  CoefficientVector(std::vector<double> coeffs, CoefficientSource source);

  std::span<const double> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  CoefficientSource source() const { return source_; }

  /// c_n, or 0 for n past the stored truncation.
  double at(std::size_t n) const { return n < coeffs_.size() ? coeffs_[n] : 0.0; }

  /// Sum of squares of the stored coefficients, never renormalized.
  double raw_norm_sq() const { return raw_norm_sq_; }
  bool is_normalized(double tol = 1e-12) const;

  /// Copy scaled to unit norm. Throws NumericError for an all-zero vector.
  CoefficientVector normalized() const;

  /// Restriction to n <= s: truncates longer vectors and zero-pads shorter
  /// ones, so the result always has s+1 entries.
  CoefficientVector projected(int s) const;

 private:
  std::vector<double> coeffs_;
  CoefficientSource source_;
  double raw_norm_sq_;
};

/// s+1 coefficients all equal to 1/sqrt(s+1).
CoefficientVector equal_coeffs(int s);

/// Two-mode squeezed vacuum (ideal paramp) with lambda = tanh(chi*eps*tau):
/// c_n = sqrt(1 - lambda^2) * lambda^n for n < count. Not renormalized, so
/// the truncated norm is 1 - lambda^(2*count).
CoefficientVector tms_coeffs(double lambda, int count);

/// Unnormalized circle-state shape r^(2n)/n!. Its full-series norm squared
/// is I0(2 r^2).
CoefficientVector circle_shape(double r, int count);

/// circle_shape renormalized to unit norm over the truncation.
CoefficientVector circle_coeffs(double r, int count);

/// Stores values verbatim; a non-unit norm is visible via is_normalized().
CoefficientVector custom_coeffs(std::span<const double> values);

/// Reads the custom coefficient text format: one decimal per line, line
/// order = photon number, blank lines and '#' comments skipped.
CoefficientVector parse_coefficients(std::istream& in);
CoefficientVector read_coefficient_file(const std::filesystem::path& path);

/// Modified Bessel function I0 by its power series, stopped once the next
/// term drops below tol times the partial sum.
double bessel_i0(double x, double tol = 1e-15);

}  // namespace phasebell
