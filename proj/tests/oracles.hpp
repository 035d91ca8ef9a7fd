#pragma once

// Test-only reference computations. These deliberately avoid the library's
// closed-form path: probabilities come from the complex amplitude
// <theta_mu1|<theta_mu2|Psi> summed term by term.

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

/// |sum_n c_n exp(-i n (theta_mu1 + theta_mu2)) / (s+1)|^2, c zero-padded to s+1.
inline double amplitude_prob(const std::vector<double>& c, int s, double theta1, double theta2,
                             int mu1, int mu2) {
  const double phase = theta1 + theta2 + 2.0 * kPi * (mu1 + mu2) / (s + 1);
  std::complex<double> a{0.0, 0.0};
  for (int n = 0; n <= s && n < static_cast<int>(c.size()); ++n) {
    a += c[n] * std::exp(std::complex<double>(0.0, -n * phase));
  }
  a /= static_cast<double>(s + 1);
  return std::norm(a);
}

struct Cells {
  double uu = 0, ud = 0, du = 0, dd = 0;
};

/// Brute-force binning of the amplitude table.
inline Cells binned(const std::vector<double>& c, int s, double theta1, double theta2,
                    const std::vector<bool>& up) {
  Cells out;
  for (int a = 0; a <= s; ++a) {
    for (int b = 0; b <= s; ++b) {
      const double p = amplitude_prob(c, s, theta1, theta2, a, b);
      if (up[a] && up[b]) out.uu += p;
      else if (up[a]) out.ud += p;
      else if (up[b]) out.du += p;
      else out.dd += p;
    }
  }
  return out;
}

inline std::vector<bool> up_mask(int s, const std::vector<int>& up) {
  std::vector<bool> m(s + 1, false);
  for (int mu : up) m[mu] = true;
  return m;
}

/// Factorized CH ratio straight from binned amplitude tables.
inline double ch_factorized(const std::vector<double>& c, int s, const std::vector<bool>& up,
                            double psi) {
  double mass = 0;
  for (int n = 0; n <= s && n < static_cast<int>(c.size()); ++n) mass += c[n] * c[n];
  int nup = 0;
  for (bool b : up) nup += b;
  const double p_up = nup * mass / (s + 1);
  const double num = 2 * binned(c, s, psi, 0, up).uu + binned(c, s, -psi, 0, up).uu -
                     binned(c, s, 3 * psi, 0, up).uu;
  return num / (2 * p_up);
}

inline std::vector<double> random_coeffs(std::mt19937_64& rng, int count, bool normalize) {
  std::normal_distribution<double> g(0.0, 1.0);
  std::vector<double> c(count);
  double norm = 0;
  for (double& x : c) {
    x = g(rng);
    norm += x * x;
  }
  if (normalize) {
    for (double& x : c) x /= std::sqrt(norm);
  }
  return c;
}

}  // namespace oracle
