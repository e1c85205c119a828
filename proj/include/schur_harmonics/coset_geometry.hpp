#ifndef SCHUR_HARMONICS_COSET_GEOMETRY_HPP
#define SCHUR_HARMONICS_COSET_GEOMETRY_HPP

// The sinh systems linking Weyl parameters (beta, gamma) of products such as
// D_alpha u D_alpha to the Gelfand-pair coordinates, and their solvers.
//
// Everything is computed with log(sinh x) so the solvers keep full relative
// accuracy for arguments far beyond the range where sinh overflows.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"
#include "symplectic.hpp"

namespace schur_harmonics {

struct CosetParams {
  double alpha = 0.0;
  double a = 0.0, b = 0.0;
  double r = 0.0;
  double beta = 0.0, gamma = 0.0;
  double s = 0.0, t = 0.0;
};

// log(sinh x) for x >= 0; -inf at 0.
inline double log_sinh(double x) {
  if (x < 0.0) throw DomainError("log_sinh: negative argument");
  if (x == 0.0) return -std::numeric_limits<double>::infinity();
  return x - std::numbers::ln2 + std::log(-std::expm1(-2.0 * x));
}

// asinh(e^y).
inline double asinh_exp(double y) {
  if (y == -std::numeric_limits<double>::infinity()) return 0.0;
  if (y <= 0.0) return std::asinh(std::exp(y));
  return y + std::log(1.0 + std::sqrt(1.0 + std::exp(-2.0 * y)));
}

// log(e^x + e^y)
inline double log_add(double x, double y) {
  const double hi = std::max(x, y), lo = std::min(x, y);
  if (hi == -std::numeric_limits<double>::infinity()) return hi;
  return hi + std::log1p(std::exp(lo - hi));
}

struct WeylSolution {
  double beta = 0.0;
  double gamma = 0.0;
  // Largest relative residual of the two defining equations.
  double residual = 0.0;
};

namespace detail {

// |e^x - e^y| / max(e^x, e^y), zero when both are -inf.
inline double relative_gap(double x, double y) {
  const double hi = std::max(x, y);
  if (hi == -std::numeric_limits<double>::infinity()) return 0.0;
  return std::abs(std::exp(x - hi) - std::exp(y - hi));
}

inline double require_disc(double a, double b) {
  const double rho = a * a + b * b;
  if (!(rho <= 1.0 + 1e-12)) throw DomainError("coset: a^2 + b^2 must be <= 1");
  return std::max(0.0, (1.0 - std::hypot(a, b)) * (1.0 + std::hypot(a, b)));
}

inline void require_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) throw DomainError("coset: alpha must be finite and >= 0");
}

} // namespace detail

// sinh(beta) sinh(gamma) = sinh^2(alpha) (1 - a^2 - b^2)
// sinh(beta) - sinh(gamma) = sinh(2 alpha) |a|
inline WeylSolution solve_hyperbola(double alpha, double a, double b) {
  detail::require_alpha(alpha);
  const double rest = detail::require_disc(a, b);
  const double ninf = -std::numeric_limits<double>::infinity();
  const double log_a = alpha == 0.0 || rest == 0.0 ? ninf : 2.0 * log_sinh(alpha) + std::log(rest);
  const double log_b = alpha == 0.0 || a == 0.0 ? ninf : log_sinh(2.0 * alpha) + std::log(std::abs(a));
  if (log_a == ninf && log_b == ninf) return {0.0, 0.0, 0.0};

  // sinh(beta) = (B + sqrt(B^2 + 4A)) / 2, sinh(gamma) = A / sinh(beta)
  const double m = std::max(log_b, 0.5 * log_a);
  const double bs = std::exp(log_b - m), as = std::exp(log_a - 2.0 * m);
  const double ls_beta = m + std::log(0.5 * (bs + std::sqrt(bs * bs + 4.0 * as)));
  const double ls_gamma = log_a == ninf ? ninf : log_a - ls_beta;

  WeylSolution out{asinh_exp(ls_beta), asinh_exp(ls_gamma), 0.0};
  const double lb = log_sinh(out.beta), lg = log_sinh(out.gamma);
  const double diff = lg == ninf ? lb : lb + std::log(-std::expm1(lg - lb));
  out.residual = std::max(detail::relative_gap(lb + lg, log_a), detail::relative_gap(diff, log_b));
  return out;
}

// sinh^2(beta) + sinh^2(gamma) = sinh^2(2 alpha)
// sinh(beta) sinh(gamma) = sinh^2(2 alpha) |r| / 2
inline WeylSolution solve_circle(double alpha, double r) {
  detail::require_alpha(alpha);
  if (!(std::abs(r) <= 1.0 + 1e-12)) throw DomainError("solve_circle: |r| must be <= 1");
  const double ar = std::min(std::abs(r), 1.0);
  if (alpha == 0.0) return {0.0, 0.0, 0.0};
  const double ninf = -std::numeric_limits<double>::infinity();
  const double ls2 = log_sinh(2.0 * alpha);
  const double root = std::sqrt((1.0 - ar) * (1.0 + ar));
  // sinh^2 beta = S (1 + root) / 2, sinh^2 gamma = S r^2 / (2 (1 + root))
  const double ls_beta = ls2 + 0.5 * std::log(0.5 * (1.0 + root));
  const double ls_gamma = ar == 0.0 ? ninf : ls2 + std::log(ar) - 0.5 * std::log(2.0 * (1.0 + root));

  WeylSolution out{asinh_exp(ls_beta), asinh_exp(ls_gamma), 0.0};
  const double lb = log_sinh(out.beta), lg = log_sinh(out.gamma);
  const double prod_target = ar == 0.0 ? ninf : 2.0 * ls2 + std::log(0.5 * ar);
  out.residual = std::max(detail::relative_gap(log_add(2.0 * lb, 2.0 * lg), 2.0 * ls2),
                          detail::relative_gap(lb + lg, prod_target));
  return out;
}

struct STSolution {
  double s = 0.0;
  double t = 0.0;
  // |log lhs - log rhs| of each equation.
  double residual_s = 0.0;
  double residual_t = 0.0;
  // s - beta / 4 and t - gamma / 2
  double margin_s = 0.0;
  double margin_t = 0.0;
  int iterations = 0;
};

namespace detail {

// log(sinh^2(2s) + sinh^2(s))
inline double log_sigma_s(double s) {
  if (s == 0.0) return -std::numeric_limits<double>::infinity();
  const double c = std::cosh(std::min(s, 350.0));
  return 2.0 * log_sinh(2.0 * s) + std::log1p(1.0 / (4.0 * c * c));
}

inline double dlog_sigma_s(double s) {
  const double c = std::cosh(std::min(s, 350.0));
  const double num = 4.0 / std::tanh(2.0 * s) + 1.0 / std::sinh(std::min(2.0 * s, 700.0));
  return num / (1.0 + 1.0 / (4.0 * c * c));
}

// log(sinh(2t) sinh(t))
inline double log_pi_t(double t) {
  if (t == 0.0) return -std::numeric_limits<double>::infinity();
  return log_sinh(2.0 * t) + log_sinh(t);
}

inline double dlog_pi_t(double t) { return 2.0 / std::tanh(2.0 * t) + 1.0 / std::tanh(t); }

// Root of the increasing function f(x) - target on [lo, hi] by Newton steps
// safeguarded with bisection.
template <class F, class DF>
double monotone_root(F&& f, DF&& df, double target, double lo, double hi, int& iterations) {
  double x = 0.5 * (lo + hi);
  for (iterations = 0; iterations < 200; ++iterations) {
    const double fx = f(x) - target;
    if (std::abs(fx) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(target))) break;
    if (fx > 0) hi = x; else lo = x;
    double next = x - fx / df(x);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, hi)) {
      x = next;
      break;
    }
    x = next;
  }
  return x;
}

inline STSolution solve_st_unchecked(double beta, double gamma) {
  if (!(beta >= gamma && gamma >= 0.0) || !std::isfinite(beta))
    throw DomainError("solve_st: requires beta >= gamma >= 0");
  STSolution out;
  const double lb = log_sinh(beta), lg = log_sinh(gamma);
  int it_s = 0, it_t = 0;
  if (beta > 0.0) {
    const double log_sigma = log_add(2.0 * lb, 2.0 * lg);
    // sinh^2(2s) <= Sigma <= 2 sinh^2(2s)
    const double hi = 0.5 * asinh_exp(0.5 * log_sigma);
    const double lo = 0.5 * asinh_exp(0.5 * (log_sigma - std::numbers::ln2));
    out.s = hi == lo ? hi : monotone_root(log_sigma_s, dlog_sigma_s, log_sigma, lo, hi, it_s);
    out.residual_s = std::abs(log_sigma_s(out.s) - log_sigma);
  }
  if (gamma > 0.0) {
    const double log_pi = lb + lg;
    // sinh^2 t <= Pi <= sinh^2 (2t)
    const double hi = asinh_exp(0.5 * log_pi);
    const double lo = 0.5 * hi;
    out.t = monotone_root(log_pi_t, dlog_pi_t, log_pi, lo, hi, it_t);
    out.residual_t = std::abs(log_pi_t(out.t) - log_pi);
  }
  out.iterations = std::max(it_s, it_t);
  out.margin_s = out.s - beta / 4.0;
  out.margin_t = out.t - gamma / 2.0;
  return out;
}

} // namespace detail

// sinh^2(2s) + sinh^2(s) = sinh^2(beta) + sinh^2(gamma)
// sinh(2t) sinh(t) = sinh(beta) sinh(gamma)
// Throws NumericFailure if s >= beta/4, t >= gamma/2 or the residual check fails.
inline STSolution solve_st(double beta, double gamma) {
  STSolution out = detail::solve_st_unchecked(beta, gamma);
  const double slack = 1e-12 * std::max(1.0, beta);
  if (out.margin_s < -slack || out.margin_t < -slack)
    throw NumericFailure("solve_st: inequality s >= beta/4, t >= gamma/2 violated");
  // log residuals carry the rounding of s and t themselves, hence the scale.
  if (out.residual_s > 1e-12 * std::max(1.0, out.s) || out.residual_t > 1e-12 * std::max(1.0, out.t))
    throw NumericFailure("solve_st: residual above tolerance");
  return out;
}

struct BGSolution {
  double beta = 0.0;
  double gamma = 0.0;
  double residual = 0.0;
  // Whether 1 <= t <= s <= 3t/2; the margins below are only checked there.
  bool in_strip = false;
  // 1 - |beta - 2s| and 1 - |gamma + 2s - 3t|
  double margin_beta = 0.0;
  double margin_gamma = 0.0;
};

namespace detail {

inline BGSolution solve_bg_unchecked(double s, double t) {
  if (!(s >= t && t >= 0.0) || !std::isfinite(s)) throw DomainError("solve_bg: requires s >= t >= 0");
  BGSolution out;
  if (s > 0.0) {
    const double ninf = -std::numeric_limits<double>::infinity();
    const double log_sigma = log_sigma_s(s);
    const double log_pi = t == 0.0 ? ninf : log_pi_t(t);
    // sinh^2 beta, sinh^2 gamma = roots of x^2 - Sigma x + Pi^2
    const double q = std::exp(log_pi - log_sigma);
    const double disc = (1.0 - 2.0 * q) * (1.0 + 2.0 * q);
    if (disc < -1e-12) throw NumericFailure("solve_bg: inconsistent system (negative discriminant)");
    const double log_big = log_sigma + std::log(0.5 * (1.0 + std::sqrt(std::max(disc, 0.0))));
    const double ls_beta = 0.5 * log_big;
    const double ls_gamma = log_pi == ninf ? ninf : log_pi - ls_beta;
    out.beta = asinh_exp(ls_beta);
    out.gamma = std::min(asinh_exp(ls_gamma), out.beta);
    const double lb = log_sinh(out.beta), lg = log_sinh(out.gamma);
    out.residual = std::max(relative_gap(log_add(2.0 * lb, 2.0 * lg), log_sigma), relative_gap(lb + lg, log_pi));
  }
  out.in_strip = t >= 1.0 && s <= 1.5 * t;
  out.margin_beta = 1.0 - std::abs(out.beta - 2.0 * s);
  out.margin_gamma = 1.0 - std::abs(out.gamma + 2.0 * s - 3.0 * t);
  return out;
}

} // namespace detail

// Inverse of solve_st: (beta, gamma) with beta >= gamma >= 0. On the strip
// 1 <= t <= s <= 3t/2 also checks |beta - 2s| <= 1 and |gamma + 2s - 3t| <= 1.
inline BGSolution solve_bg(double s, double t) {
  BGSolution out = detail::solve_bg_unchecked(s, t);
  if (out.in_strip && (out.margin_beta < 0.0 || out.margin_gamma < 0.0))
    throw NumericFailure("solve_bg: strip inequality violated");
  return out;
}

// D_alpha u(a, b) D_alpha
inline RealMatrix4 hyperbola_element(double alpha, double a, double b) {
  return d_alpha(alpha) * embed_u2(u_form(a, b)) * d_alpha(alpha);
}

// D'_alpha u v D'_alpha with u the SU(2) element of (a, b, c, d)
inline RealMatrix4 circle_element(double alpha, double a, double b, double c, double d) {
  return d_prime_alpha(alpha) * embed_u2(su2_element(a, b, c, d) * center_v()) * d_prime_alpha(alpha);
}

struct ScanRow {
  double beta = 0.0, gamma = 0.0, s = 0.0, t = 0.0;
  double residual = 0.0;
  double ineq_margin = 0.0;
};

struct InequalityScan {
  std::vector<ScanRow> rows;
  int violations = 0;
  double worst_margin = std::numeric_limits<double>::infinity();
  double max_residual = 0.0;
  // Largest |solve_st(solve_bg(s, t)) - (s, t)| over the scan (strip scan only).
  double max_roundtrip = 0.0;
};

// s >= beta/4, t >= gamma/2 over beta in [0, beta_max], gamma in [0, beta].
inline InequalityScan scan_st_inequalities(double beta_max, int n) {
  if (n < 2) throw InvalidInput("scan: need at least 2 grid points");
  std::vector<ScanRow> rows(static_cast<std::size_t>(n) * n);
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double beta = beta_max * static_cast<double>(i) / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double gamma = std::min(beta, beta * j / (n - 1));
      const STSolution st = detail::solve_st_unchecked(beta, gamma);
      rows[i * n + j] = {beta, gamma, st.s, st.t, std::max(st.residual_s, st.residual_t), std::min(st.margin_s, st.margin_t)};
    }
  });
  InequalityScan out;
  for (const auto& row : rows) {
    if (row.ineq_margin < -1e-12 * std::max(1.0, row.beta)) ++out.violations;
    out.worst_margin = std::min(out.worst_margin, row.ineq_margin);
    out.max_residual = std::max(out.max_residual, row.residual);
  }
  out.rows = std::move(rows);
  return out;
}

// |beta - 2s| <= 1 and |gamma + 2s - 3t| <= 1 over 1 <= t <= t_max,
// t <= s <= 3t/2, plus the solve_st o solve_bg roundtrip.
inline InequalityScan scan_bg_strip(double t_max, int n) {
  if (n < 2) throw InvalidInput("scan: need at least 2 grid points");
  if (!(t_max >= 1.0)) throw DomainError("scan_bg_strip: t_max must be >= 1");
  std::vector<ScanRow> rows(static_cast<std::size_t>(n) * n);
  std::vector<double> roundtrip(rows.size());
  parallel_for(static_cast<std::size_t>(n), [&](std::size_t i) {
    const double t = 1.0 + (t_max - 1.0) * static_cast<double>(i) / (n - 1);
    for (int j = 0; j < n; ++j) {
      const double s = std::min(1.5 * t, t * (1.0 + 0.5 * j / (n - 1)));
      const BGSolution bg = detail::solve_bg_unchecked(s, t);
      const STSolution back = detail::solve_st_unchecked(bg.beta, bg.gamma);
      const std::size_t k = i * n + j;
      rows[k] = {bg.beta, bg.gamma, s, t, bg.residual, std::min(bg.margin_beta, bg.margin_gamma)};
      roundtrip[k] = std::max(std::abs(back.s - s), std::abs(back.t - t));
    }
  });
  InequalityScan out;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    if (rows[k].ineq_margin < 0.0) ++out.violations;
    out.worst_margin = std::min(out.worst_margin, rows[k].ineq_margin);
    out.max_residual = std::max(out.max_residual, rows[k].residual);
    out.max_roundtrip = std::max(out.max_roundtrip, roundtrip[k]);
  }
  out.rows = std::move(rows);
  return out;
}

struct FidelityCase {
  CosetParams params;
  WeylPair kak;
  double error = 0.0;  // max |solver - kak| over beta, gamma
};

struct FidelityReport {
  std::vector<FidelityCase> hyperbola;
  std::vector<FidelityCase> circle;
  double max_error = 0.0;
};

// Random instances of both matrix systems checked against kak_decompose.
// alpha is drawn uniformly from [0, alpha_max].
inline FidelityReport coset_fidelity(int count, std::uint64_t seed, double alpha_max = 2.0) {
  if (count < 1) throw InvalidInput("coset_fidelity: count must be >= 1");
  if (!(alpha_max >= 0.0)) throw DomainError("coset_fidelity: alpha_max must be >= 0");
  FidelityReport out;
  out.hyperbola.resize(static_cast<std::size_t>(count));
  out.circle.resize(static_cast<std::size_t>(count));
  parallel_for(static_cast<std::size_t>(count), [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(seed, i));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss;

    CosetParams h;
    h.alpha = alpha_max * unit(rng);
    const double rad = std::sqrt(unit(rng)), ang = 2.0 * std::numbers::pi * unit(rng);
    h.a = rad * std::cos(ang);
    h.b = rad * std::sin(ang);
    const WeylSolution hs = solve_hyperbola(h.alpha, h.a, h.b);
    h.beta = hs.beta;
    h.gamma = hs.gamma;
    const KAKResult hk = kak_decompose(hyperbola_element(h.alpha, h.a, h.b));
    out.hyperbola[i] = {h, hk.a, std::max(std::abs(hk.a.alpha1 - hs.beta), std::abs(hk.a.alpha2 - hs.gamma))};

    CosetParams c;
    c.alpha = alpha_max * unit(rng);
    Eigen::Vector4d x(gauss(rng), gauss(rng), gauss(rng), gauss(rng));
    x.normalize();
    c.a = x(0);
    c.b = x(1);
    c.r = su2_coset_label(x(0), x(1), x(2), x(3));
    const WeylSolution cs = solve_circle(c.alpha, c.r);
    c.beta = cs.beta;
    c.gamma = cs.gamma;
    const KAKResult ck = kak_decompose(circle_element(c.alpha, x(0), x(1), x(2), x(3)));
    out.circle[i] = {c, ck.a, std::max(std::abs(ck.a.alpha1 - cs.beta), std::abs(ck.a.alpha2 - cs.gamma))};
  });
  for (const auto& f : out.hyperbola) out.max_error = std::max(out.max_error, f.error);
  for (const auto& f : out.circle) out.max_error = std::max(out.max_error, f.error);
  return out;
}

} // namespace schur_harmonics

#endif
