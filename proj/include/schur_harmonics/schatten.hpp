#ifndef SCHUR_HARMONICS_SCHATTEN_HPP
#define SCHUR_HARMONICS_SCHATTEN_HPP

// Finite-dimensional Schatten classes S^p_n and Schur multipliers on them.
//
// The multiplier norm ||psi||_{MS^p} = sup ||psi o X||_p / ||X||_p is not
// computable in closed form for p != 2, so ms_norm_lower() returns a certified
// lower bound: the ratio attained by an explicit witness matrix.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"

namespace schur_harmonics {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

class SchattenExponent {
public:
  explicit SchattenExponent(double p) : p_(p) {
    if (!(p >= 1.0)) throw DomainError("Schatten exponent must satisfy p >= 1");
  }
  static SchattenExponent infinity() { return SchattenExponent(std::numeric_limits<double>::infinity()); }

  double value() const { return p_; }
  bool is_infinite() const { return std::isinf(p_); }

  // Hoelder conjugate q with 1/p + 1/q = 1.
  SchattenExponent conjugate() const {
    if (is_infinite()) return SchattenExponent(1.0);
    if (p_ == 1.0) return infinity();
    return SchattenExponent(p_ / (p_ - 1.0));
  }

private:
  double p_;
};

struct MultiplierSymbol {
  ComplexMatrix values;

  std::size_t size() const { return static_cast<std::size_t>(values.rows()); }
  double sup_norm() const { return values.size() == 0 ? 0.0 : values.cwiseAbs().maxCoeff(); }
};

struct NormEstimate {
  double value = 0.0;
  ComplexMatrix witness;
  bool converged = false;
  int iterations = 0;
  std::uint64_t seed = 0;
};

struct SearchConfig {
  int restarts = 32;
  int max_iterations = 2000;
  // Converged when the relative objective gain over `stall_window` iterations
  // drops below `tolerance`.
  double tolerance = 1e-9;
  int stall_window = 20;
  std::uint64_t seed = 0;
  // Extra starting matrices; each is evaluated and refined like a restart.
  std::vector<ComplexMatrix> warm_start;
  std::size_t amplification_cap = 512;
};

inline void require_finite(const ComplexMatrix& x, const char* what) {
  if (!x.allFinite()) throw InvalidInput(std::string(what) + " has non-finite entries");
}

inline void require_square(const ComplexMatrix& x, const char* what) {
  if (x.rows() != x.cols() || x.rows() < 1)
    throw InvalidInput(std::string(what) + " must be a nonempty square matrix");
}

namespace detail {

inline Eigen::VectorXd singular_values(const ComplexMatrix& x) {
  Eigen::JacobiSVD<ComplexMatrix> svd(x);
  return svd.singularValues();
}

// (sum s_i^p)^{1/p}, scaled by the largest value to avoid overflow.
inline double lp_of_descending(const Eigen::VectorXd& s, const SchattenExponent& p) {
  if (s.size() == 0) return 0.0;
  const double top = s(0);
  if (top == 0.0) return 0.0;
  if (p.is_infinite()) return top;
  const double e = p.value();
  double acc = 0.0;
  for (Eigen::Index i = s.size() - 1; i >= 0; --i) acc += std::pow(s(i) / top, e);
  return top * std::pow(acc, 1.0 / e);
}

// Norming element of Y in the dual class: ||J||_q = 1 and Re tr(J^* Y) = ||Y||_p.
// For 1 < p < oo this is U diag((s/||Y||_p)^{p-1}) V^*, the gradient of ||.||_p.
// At p = oo the top singular pair is used; near-ties are broken by a tiny
// perturbation drawn from `rng`.
inline ComplexMatrix norming_element(const ComplexMatrix& y, const SchattenExponent& p, std::mt19937_64& rng) {
  const Eigen::Index n = y.rows();
  Eigen::JacobiSVD<ComplexMatrix> svd(y, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd s = svd.singularValues();
  const double top = s.size() ? s(0) : 0.0;
  if (top == 0.0) return ComplexMatrix::Zero(n, y.cols());

  if (p.is_infinite()) {
    if (s.size() > 1 && s(0) - s(1) <= 1e-12 * top) {
      std::normal_distribution<double> g(0.0, 1.0);
      ComplexMatrix noisy = y;
      for (Eigen::Index i = 0; i < noisy.size(); ++i) noisy(i) += 1e-10 * top * Complex(g(rng), g(rng));
      Eigen::JacobiSVD<ComplexMatrix> tie(noisy, Eigen::ComputeFullU | Eigen::ComputeFullV);
      return tie.matrixU().col(0) * tie.matrixV().col(0).adjoint();
    }
    return svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
  }

  Eigen::VectorXd w(s.size());
  if (p.value() == 1.0) {
    for (Eigen::Index i = 0; i < s.size(); ++i) w(i) = s(i) > 1e-13 * top ? 1.0 : 0.0;
  } else {
    const double norm = lp_of_descending(s, p);
    for (Eigen::Index i = 0; i < s.size(); ++i) w(i) = std::pow(s(i) / norm, p.value() - 1.0);
  }
  return svd.matrixU() * w.asDiagonal() * svd.matrixV().adjoint();
}

} // namespace detail

// ||X||_p from the singular values of X; p = oo gives the operator norm.
inline double schatten_norm(const ComplexMatrix& x, const SchattenExponent& p) {
  require_finite(x, "matrix");
  return detail::lp_of_descending(detail::singular_values(x), p);
}

// Entrywise product [psi_ij x_ij].
inline ComplexMatrix schur_apply(const MultiplierSymbol& psi, const ComplexMatrix& x) {
  if (psi.values.rows() != x.rows() || psi.values.cols() != x.cols())
    throw InvalidInput("symbol and matrix dimensions differ");
  return psi.values.cwiseProduct(x);
}

// ||psi o X||_p / ||X||_p; zero for X = 0.
inline double multiplier_ratio(const MultiplierSymbol& psi, const ComplexMatrix& x, const SchattenExponent& p) {
  const double den = schatten_norm(x, p);
  if (den == 0.0) return 0.0;
  return schatten_norm(schur_apply(psi, x), p) / den;
}

// Places X on the rows and columns `indices` of an otherwise zero n x n matrix.
// The ratio of the embedded matrix under a symbol equals the ratio of X under
// the principal sub-symbol on `indices`.
inline ComplexMatrix embed_witness(const ComplexMatrix& x, std::size_t n, std::span<const std::size_t> indices) {
  if (indices.size() != static_cast<std::size_t>(x.rows()) || x.rows() != x.cols())
    throw InvalidInput("embedding index set does not match witness size");
  ComplexMatrix out = ComplexMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < indices.size(); ++i)
    for (std::size_t j = 0; j < indices.size(); ++j) {
      if (indices[i] >= n || indices[j] >= n) throw InvalidInput("embedding index out of range");
      out(static_cast<Eigen::Index>(indices[i]), static_cast<Eigen::Index>(indices[j])) =
          x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
  return out;
}

// Moves a witness for exponent `from` to exponent `to` along the complex
// interpolation path: X = U S V^* becomes U S^{from/to} V^*.
inline ComplexMatrix transport_witness(const ComplexMatrix& x, const SchattenExponent& from, const SchattenExponent& to) {
  Eigen::JacobiSVD<ComplexMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Eigen::VectorXd s = svd.singularValues();
  if (s.size() == 0 || s(0) == 0.0) return x;
  Eigen::VectorXd w(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    const double r = s(i) / s(0);
    if (from.is_infinite() && to.is_infinite()) w(i) = r;
    else if (from.is_infinite()) w(i) = r >= 1.0 - 1e-12 ? 1.0 : 0.0;
    else if (to.is_infinite()) w(i) = r > 1e-13 ? 1.0 : 0.0;
    else w(i) = std::pow(r, from.value() / to.value());
  }
  return svd.matrixU() * w.asDiagonal() * svd.matrixV().adjoint();
}

namespace detail {

struct SearchRun {
  double value = 0.0;
  ComplexMatrix x;
  int iterations = 0;
  bool converged = false;
};

inline ComplexMatrix matrix_unit(Eigen::Index n, Eigen::Index i, Eigen::Index j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

inline ComplexMatrix gaussian_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = Complex(g(rng), g(rng));
  return m;
}

// Starting matrices cycle through full-rank Gaussian, rank-one and unitary
// shapes: extreme points of the S^1 and S^oo balls are rank-one and unitary.
inline ComplexMatrix random_start(Eigen::Index n, std::size_t index, std::mt19937_64& rng) {
  switch (index % 3) {
  case 0: return gaussian_matrix(n, n, rng);
  case 1: return gaussian_matrix(n, 1, rng) * gaussian_matrix(n, 1, rng).adjoint();
  default: {
    Eigen::HouseholderQR<ComplexMatrix> qr(gaussian_matrix(n, n, rng));
    return qr.householderQ() * ComplexMatrix::Identity(n, n);
  }
  }
}

// Ascent from x0. Each step takes the gradient of ||psi o X||_p,
//   G = conj(psi) o J_p(psi o X),
// and projects it back onto the unit sphere of S^p with the duality map J_q.
// Hoelder gives ||psi o X_{k+1}||_p >= ||G||_q >= ||psi o X_k||_p, so the
// objective never decreases.
inline SearchRun ascend(const MultiplierSymbol& psi, ComplexMatrix x0, const SchattenExponent& p,
                        const SearchConfig& cfg, std::mt19937_64& rng) {
  const SchattenExponent q = p.conjugate();
  const ComplexMatrix psi_conj = psi.values.conjugate();
  SearchRun run;
  const double n0 = schatten_norm(x0, p);
  if (n0 == 0.0) return run;
  run.x = x0 / n0;
  run.value = schatten_norm(psi.values.cwiseProduct(run.x), p);

  std::vector<double> history{run.value};
  for (int it = 1; it <= cfg.max_iterations; ++it) {
    const ComplexMatrix y = psi.values.cwiseProduct(run.x);
    const ComplexMatrix gradient = psi_conj.cwiseProduct(norming_element(y, p, rng));
    ComplexMatrix next = norming_element(gradient, q, rng);
    const double nn = schatten_norm(next, p);
    run.iterations = it;
    if (nn == 0.0) {
      run.converged = true;
      break;
    }
    next /= nn;
    const double value = schatten_norm(psi.values.cwiseProduct(next), p);
    if (value < run.value) {
      // Only rounding can cause a decrease; the current point is stationary.
      run.converged = true;
      break;
    }
    run.x = std::move(next);
    run.value = value;
    history.push_back(value);
    if (static_cast<int>(history.size()) > cfg.stall_window) {
      const double old = history[history.size() - 1 - static_cast<std::size_t>(cfg.stall_window)];
      if (value - old <= cfg.tolerance * std::max(value, 1e-300)) {
        run.converged = true;
        break;
      }
    }
  }
  return run;
}

} // namespace detail

// Certified lower bound for ||psi||_{MS^p_n}: the best ratio over a search
// seeded with the best matrix unit (which realizes max |psi_ij|), warm starts,
// and cfg.restarts random matrices.
inline NormEstimate ms_norm_lower(const MultiplierSymbol& psi, const SchattenExponent& p, const SearchConfig& cfg = {}) {
  require_square(psi.values, "symbol");
  require_finite(psi.values, "symbol");
  const Eigen::Index n = psi.values.rows();

  NormEstimate out;
  out.seed = cfg.seed;

  Eigen::Index bi = 0, bj = 0;
  const double sup = psi.values.cwiseAbs().maxCoeff(&bi, &bj);
  if (sup == 0.0) {
    out.witness = detail::matrix_unit(n, 0, 0);
    out.converged = true;
    return out;
  }
  if (!p.is_infinite() && p.value() == 2.0) {
    // M_psi is diagonal on the Hilbert-Schmidt basis of matrix units.
    out.witness = detail::matrix_unit(n, bi, bj);
    out.value = multiplier_ratio(psi, out.witness, p);
    out.converged = true;
    return out;
  }

  std::vector<ComplexMatrix> starts;
  starts.push_back(detail::matrix_unit(n, bi, bj));
  for (const auto& w : cfg.warm_start) {
    if (w.rows() != n || w.cols() != n) throw InvalidInput("warm start has wrong dimensions");
    require_finite(w, "warm start");
    starts.push_back(w);
  }
  const std::size_t fixed = starts.size();
  const std::size_t total = fixed + static_cast<std::size_t>(std::max(cfg.restarts, 0));

  std::vector<detail::SearchRun> runs(total);
  parallel_for(total, [&](std::size_t i) {
    std::mt19937_64 rng(derive_seed(cfg.seed, i));
    ComplexMatrix x0 = i < fixed ? starts[i] : detail::random_start(n, i - fixed, rng);
    runs[i] = detail::ascend(psi, std::move(x0), p, cfg, rng);
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < total; ++i)
    if (runs[i].value > runs[best].value) best = i;

  out.witness = runs[best].x;
  out.value = multiplier_ratio(psi, out.witness, p);
  out.converged = runs[best].converged;
  out.iterations = runs[best].iterations;
  return out;
}

// psi (x) 1_m: the symbol of M_psi (x) id on M_n(M_m), constant on m x m blocks.
inline MultiplierSymbol amplify(const MultiplierSymbol& psi, std::size_t m) {
  const Eigen::Index n = psi.values.rows();
  const Eigen::Index mm = static_cast<Eigen::Index>(m);
  MultiplierSymbol out{ComplexMatrix(n * mm, n * mm)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) out.values.block(i * mm, j * mm, mm, mm).setConstant(psi.values(i, j));
  return out;
}

// Lower bound for ||M_psi (x) id_{S^p_m}||. Levels 1..m are searched in turn,
// each seeded with the previous witness embedded as a principal block, so the
// returned value is nondecreasing in m and never below ms_norm_lower(psi, p).
inline NormEstimate cb_lower_bound(const MultiplierSymbol& psi, const SchattenExponent& p, std::size_t m,
                                   const SearchConfig& cfg = {}) {
  if (m < 1) throw InvalidInput("amplification must be >= 1");
  require_square(psi.values, "symbol");
  const std::size_t n = psi.size();
  if (n * m > cfg.amplification_cap)
    throw CapacityExceeded("amplified dimension " + std::to_string(n * m) + " exceeds cap " +
                           std::to_string(cfg.amplification_cap));

  NormEstimate est = ms_norm_lower(psi, p, cfg);
  for (std::size_t level = 2; level <= m; ++level) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t a = 0; a + 1 < level; ++a) idx.push_back(i * level + a);
    SearchConfig next = cfg;
    next.seed = derive_seed(cfg.seed, 1000 + level);
    next.warm_start = {embed_witness(est.witness, n * level, idx)};
    est = ms_norm_lower(amplify(psi, level), p, next);
    est.seed = cfg.seed;
  }
  return est;
}

// Estimates at increasing exponents sharing one witness pool: every earlier
// witness is transported to the current exponent and used as a warm start.
inline std::vector<NormEstimate> ms_norm_profile(const MultiplierSymbol& psi, std::span<const SchattenExponent> exponents,
                                                 const SearchConfig& cfg = {}) {
  std::vector<NormEstimate> out;
  std::vector<std::pair<SchattenExponent, ComplexMatrix>> pool;
  for (std::size_t k = 0; k < exponents.size(); ++k) {
    SearchConfig local = cfg;
    local.seed = derive_seed(cfg.seed, k);
    for (const auto& [from, w] : pool) {
      local.warm_start.push_back(w);
      local.warm_start.push_back(transport_witness(w, from, exponents[k]));
    }
    out.push_back(ms_norm_lower(psi, exponents[k], local));
    pool.emplace_back(exponents[k], out.back().witness);
  }
  return out;
}

// [phi(x_i, x_j)] on a finite point set; with ms_norm_lower this realizes the
// finite-subset obstruction for a two-point function.
template <class Point, class TwoPointFn>
MultiplierSymbol sample_symbol(TwoPointFn&& phi, std::span<const Point> points) {
  const auto n = static_cast<Eigen::Index>(points.size());
  if (n == 0) throw InvalidInput("no sample points");
  MultiplierSymbol out{ComplexMatrix(n, n)};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      out.values(i, j) = Complex(phi(points[static_cast<std::size_t>(i)], points[static_cast<std::size_t>(j)]));
  require_finite(out.values, "sampled symbol");
  return out;
}

} // namespace schur_harmonics

#endif
