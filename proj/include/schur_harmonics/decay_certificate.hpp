#ifndef SCHUR_HARMONICS_DECAY_CERTIFICATE_HPP
#define SCHUR_HARMONICS_DECAY_CERTIFICATE_HPP

// The explicit constant chain behind the decay estimate
//   |phi(D(alpha1, alpha2)) - phi_inf| <= C1(p) ||phi||_{MS^p} exp(-C2(p) |alpha|_2)
// for K-bi-invariant phi on Sp(2, R), p > 12, and the lower bounds on
// ||phi||_{MS^p} it yields from observed values of phi.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "symplectic.hpp"

namespace schur_harmonics {

// Sum_{k >= 1} k^{-sigma}, sigma > 1: partial sum below `truncation` plus an
// Euler-Maclaurin tail starting at k = truncation.
struct SeriesValue {
  double value = 0.0;
  // Size of the first omitted Euler-Maclaurin term.
  double tail_error = 0.0;
};

inline SeriesValue power_series(double sigma, int truncation) {
  if (!(sigma > 1.0)) throw DomainError("power_series: divergent series (exponent " + std::to_string(-sigma) + ")");
  if (truncation < 2) throw InvalidInput("power_series: truncation must be >= 2");
  const double n = truncation;
  // Neumaier summation, smallest terms first.
  double sum = 0.0, comp = 0.0;
  auto add = [&](double x) {
    const double t = sum + x;
    comp += std::abs(sum) >= std::abs(x) ? (sum - t) + x : (x - t) + sum;
    sum = t;
  };
  const double f = std::pow(n, -sigma);
  add(-sigma * (sigma + 1.0) * (sigma + 2.0) * f / (720.0 * n * n * n));
  add(sigma * f / (12.0 * n));
  add(0.5 * f);
  add(n * f / (sigma - 1.0));
  for (int k = truncation - 1; k >= 1; --k) add(std::pow(static_cast<double>(k), -sigma));
  SeriesValue out;
  out.value = sum + comp;
  out.tail_error = sigma * (sigma + 1.0) * (sigma + 2.0) * (sigma + 3.0) * (sigma + 4.0) * f / (30240.0 * std::pow(n, 5));
  return out;
}

struct DecayConstants {
  double p = 0.0;
  double c_u2 = 0.0;
  int truncation = 0;

  double c_tilde = 0.0;
  double c_hat = 0.0;
  double c3 = 0.0, c4 = 0.0, c5 = 0.0, c5_prime = 0.0, c6 = 0.0;
  double c1 = 0.0, c2 = 0.0;

  // Which side of each max{} is active: true for the series-driven side
  // (C_hat 2^{1/4-1/p}, C_tilde, C5'; C3 + C6 for C1).
  bool c3_from_series = false;
  bool c4_from_series = false;
  bool c6_from_chain = false;
  bool c1_from_c3 = false;

  double series_tail_error = 0.0;
};

// Chain constants for p > 12 with the U(2) Hoelder constant c_u2 supplied.
inline DecayConstants chain_constants(double p, double c_u2, int truncation = 1000) {
  if (!(p > 12.0) || !std::isfinite(p)) throw DomainError("chain_constants: p must be > 12");
  if (!(c_u2 > 0.0) || !std::isfinite(c_u2)) throw DomainError("chain_constants: C_u2 must be > 0");
  DecayConstants k;
  k.p = p;
  k.c_u2 = c_u2;
  k.truncation = truncation;

  // U(2): the double sum over l, m of (l+m+1)^{1 + p eps - p/4} has k terms
  // with l + m + 1 = k, so it equals Sum_k k^{2 + p eps - p/4} = Sum_k k^{1/2 - p/8}.
  const double eps_u = 0.125 - 1.5 / p;
  const SeriesValue su = power_series(p / 8.0 - 0.5, truncation);
  k.c_tilde = std::pow(2.0, 1.0 - eps_u) * c_u2 * std::pow(su.value, 1.0 / p);

  // SU(2): Sum_{n >= 1} 4^p (3n)^{1 + p eps - p/2} with eps = 1/4 - 1/p,
  // i.e. 4^p 3^{-p/4} Sum_n n^{-p/4}. The n = 0 term is |P_0 - P_0| = 0.
  const SeriesValue ss = power_series(p / 4.0, truncation);
  k.c_hat = 4.0 * std::pow(3.0, -0.25) * std::pow(ss.value, 1.0 / p);
  k.series_tail_error = std::max(su.tail_error / su.value, ss.tail_error / ss.value);

  const double hat_side = k.c_hat * std::pow(2.0, 0.25 - 1.0 / p);
  const double floor3 = 2.0 * std::exp(0.5);
  k.c3_from_series = hat_side >= floor3;
  k.c3 = std::max(hat_side, floor3);

  const double floor4 = 2.0 * std::exp(0.125);
  k.c4_from_series = k.c_tilde >= floor4;
  k.c4 = std::max(k.c_tilde, floor4);

  k.c5 = std::exp(1.0 / 16.0) * (k.c3 + k.c4);
  const double rate = 0.25 - 3.0 / p;
  // Sum_{j >= 0} e^{-j rate / 8}
  k.c5_prime = k.c5 / -std::expm1(-rate / 8.0);

  const double floor6 = 2.0 * std::exp(5.0 / 32.0);
  k.c6_from_chain = k.c5_prime >= floor6;
  k.c6 = std::max(k.c5_prime, floor6);

  k.c1_from_c3 = k.c3 >= k.c4;
  k.c1 = std::max(k.c3 + k.c6, k.c4 + k.c6);
  k.c2 = rate / (32.0 * std::numbers::sqrt2);
  return k;
}

struct DecaySample {
  WeylPair weyl;
  std::complex<double> value;
  std::complex<double> phi_inf;
};

// C1 exp(-C2 |alpha|_2)
inline double decay_bound(const WeylPair& weyl, const DecayConstants& k) {
  if (!weyl.in_closed_chamber()) throw DomainError("decay_bound: Weyl pair outside the closed chamber");
  return k.c1 * std::exp(-k.c2 * weyl.norm());
}

struct Certificate {
  double value = 0.0;
  // Index of the sample attaining the maximum.
  std::size_t argmax = 0;
  double p = 0.0;
  double c_u2 = 0.0;
  int truncation = 0;
};

// Lower bound on ||phi||_{MS^p} for any continuous K-bi-invariant phi taking
// the sampled values: max |value - phi_inf| e^{C2 |alpha|} / C1.
inline Certificate norm_certificate(std::span<const DecaySample> samples, const DecayConstants& k) {
  if (samples.empty()) throw InvalidInput("norm_certificate: no samples");
  Certificate out{0.0, 0, k.p, k.c_u2, k.truncation};
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const DecaySample& s = samples[i];
    if (!s.weyl.in_closed_chamber()) throw DomainError("norm_certificate: Weyl pair outside the closed chamber");
    if (!std::isfinite(std::abs(s.value)) || !std::isfinite(std::abs(s.phi_inf)))
      throw InvalidInput("norm_certificate: non-finite sample");
    const double c = std::abs(s.value - s.phi_inf) * std::exp(k.c2 * s.weyl.norm()) / k.c1;
    if (c > out.value) {
      out.value = c;
      out.argmax = i;
    }
  }
  return out;
}

// phi = 1 with phi_inf = 0 sampled on the chamber part of the ball of radius
// `radius`: `rings` radii up to `radius`, `per_ring` angles in [0, pi/4] each.
// The certificate is attained on the outer ring at (radius, 0).
inline std::vector<DecaySample> unit_ball_samples(double radius, int rings = 8, int per_ring = 9) {
  if (!(radius >= 0.0) || rings < 1 || per_ring < 1) throw InvalidInput("unit_ball_samples: bad grid");
  std::vector<DecaySample> out;
  for (int i = 1; i <= rings; ++i) {
    const double rho = radius * i / rings;
    for (int j = 0; j < per_ring; ++j) {
      const double theta = per_ring == 1 ? 0.0 : 0.25 * std::numbers::pi * j / (per_ring - 1);
      const double a1 = rho * std::cos(theta);
      const double a2 = j == 0 ? 0.0 : std::min(rho * std::sin(theta), a1);
      out.push_back({WeylPair{a1, a2}, 1.0, 0.0});
    }
  }
  return out;
}

// Closed form of the certificate for phi = 1, phi_inf = 0 on the ball of
// radius R: e^{C2 R} / C1.
inline double ball_certificate(double radius, const DecayConstants& k) { return std::exp(k.c2 * radius) / k.c1; }

} // namespace schur_harmonics

#endif
