#ifndef SCHUR_HARMONICS_GELFAND_HPP
#define SCHUR_HARMONICS_GELFAND_HPP

// Peter-Weyl expansions of bi-invariant functions for the compact Gelfand
// pairs (U(2), U(1)) and (SU(2), SO(2)).
//
// A bi-invariant phi is represented by its restriction phi^0 to the double
// coset space: the closed unit disc (u -> u_11) for U(2), the interval [-1, 1]
// (u -> a^2 - b^2 + c^2 - d^2) for SU(2). With h_pi the spherical functions,
//   phi^0 = sum_pi c_pi dim(H_pi) h_pi,   c_pi = <phi, h_pi>,
// and <h_pi, h_pi> = 1 / dim(H_pi).

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "haar.hpp"
#include "parallel.hpp"
#include "quadrature.hpp"
#include "schatten.hpp"
#include "special_fn.hpp"

namespace schur_harmonics {

// (U(2), U(1)); the double coset space is the closed unit disc.
struct U2Pair {
  using Index = SphericalIndexU2;
  using Argument = std::complex<double>;
  static constexpr const char* name = "U2";
  static std::complex<double> spherical(Index idx, Argument z) { return spherical_u2(idx, z); }
};

// (SU(2), SO(2)); the double coset space is [-1, 1].
struct SU2Pair {
  using Index = SphericalIndexSU2;
  using Argument = double;
  static constexpr const char* name = "SU2";
  static std::complex<double> spherical(Index idx, Argument r) { return spherical_su2(idx, r); }
};

template <class Pair>
using BiInvariantFunction = std::function<std::complex<double>(typename Pair::Argument)>;

template <class Pair>
struct CoefficientSpectrum {
  std::map<typename Pair::Index, std::complex<double>> coefficients;
  // Largest total degree (l + m, or n) represented.
  int truncation = 0;
};

using SpectrumU2 = CoefficientSpectrum<U2Pair>;
using SpectrumSU2 = CoefficientSpectrum<SU2Pair>;

// Default quadrature order for truncation L: integrands are polynomials of
// degree <= 2L in (z, zbar), so 4L leaves ample margin for smooth phi.
inline int default_order(int truncation) { return std::max({4 * truncation, truncation + 1, 8}); }

namespace detail {

// Calls visit(idx, h) for every h^0_{l,m}(z) with l + m <= L.
template <class Visit>
void for_each_spherical_u2(int L, std::complex<double> z, Visit&& visit) {
  const double x = std::clamp(2.0 * std::norm(z) - 1.0, -1.0, 1.0);
  std::complex<double> zk = 1.0;
  for (int k = 0; k <= L; ++k) {
    const auto seq = jacobi_sequence((L - k) / 2, 0.0, k, x);
    for (int j = 0; j < static_cast<int>(seq.size()); ++j) {
      visit(SphericalIndexU2{j + k, j}, zk * seq[static_cast<std::size_t>(j)]);
      if (k > 0) visit(SphericalIndexU2{j, j + k}, std::conj(zk) * seq[static_cast<std::size_t>(j)]);
    }
    zk *= z;
  }
}

inline void require_order(int order, int truncation) {
  if (truncation < 0) throw DomainError("truncation must be >= 0");
  if (order < truncation + 1)
    throw UnderResolved("quadrature order " + std::to_string(order) + " cannot resolve truncation " +
                        std::to_string(truncation) + " (need >= " + std::to_string(truncation + 1) + ")");
}

} // namespace detail

// c_{l,m} = (1/pi) int_D phi^0(z) conj(h^0_{l,m}(z)) dA(z) for l + m <= L.
// Tensor rule: Gauss-Legendre in s = |z|^2 (order nodes) times `2 * order`
// equispaced angles. In (s, theta) the measure dA / pi is ds dtheta / (2 pi).
inline SpectrumU2 coefficients_u2(const BiInvariantFunction<U2Pair>& phi, int L, int order = 0) {
  if (order == 0) order = default_order(L);
  detail::require_order(order, L);
  const QuadratureRule radial = gauss_legendre(order, 0.0, 1.0);
  const QuadratureRule angular = uniform_angles(2 * order);

  SpectrumU2 out;
  out.truncation = L;
  for (int total = 0; total <= L; ++total)
    for (int l = 0; l <= total; ++l) out.coefficients[{l, total - l}] = 0.0;

  for (std::size_t a = 0; a < radial.nodes.size(); ++a) {
    const double rho = std::sqrt(radial.nodes[a]);
    for (std::size_t b = 0; b < angular.nodes.size(); ++b) {
      const std::complex<double> z = std::polar(rho, angular.nodes[b]);
      const std::complex<double> f = phi(z) * (radial.weights[a] * angular.weights[b]);
      detail::for_each_spherical_u2(L, z, [&](SphericalIndexU2 idx, std::complex<double> h) {
        out.coefficients[idx] += f * std::conj(h);
      });
    }
  }
  return out;
}

// c_n = (1/2) int_{-1}^{1} phi^0(r) P_n(r) dr by Gauss-Legendre.
inline SpectrumSU2 coefficients_su2(const BiInvariantFunction<SU2Pair>& phi, int N, int order = 0) {
  if (order == 0) order = default_order(N);
  detail::require_order(order, N);
  const QuadratureRule rule = gauss_legendre(order);
  SpectrumSU2 out;
  out.truncation = N;
  for (int n = 0; n <= N; ++n) out.coefficients[{n}] = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    const std::complex<double> f = 0.5 * rule.weights[i] * phi(rule.nodes[i]);
    const auto p = jacobi_sequence(N, 0.0, 0.0, rule.nodes[i]);
    for (int n = 0; n <= N; ++n) out.coefficients[{n}] += f * p[static_cast<std::size_t>(n)];
  }
  return out;
}

// (sum |c_pi|^p dim H_pi)^{1/p}: a lower bound for the MS^p norm of the
// multiplier induced by phi. Truncated spectra still give valid lower bounds
// since every term is nonnegative.
template <class Pair>
double lp_lower_bound(const CoefficientSpectrum<Pair>& spec, const SchattenExponent& p) {
  if (p.is_infinite()) throw DomainError("lp_lower_bound: p = infinity is not supported");
  double top = 0.0;
  for (const auto& [idx, c] : spec.coefficients) {
    if (idx.dim() <= 0) throw InvalidInput("spectrum dimension must be positive");
    top = std::max(top, std::abs(c));
  }
  if (top == 0.0) return 0.0;
  double acc = 0.0;
  for (const auto& [idx, c] : spec.coefficients) acc += std::pow(std::abs(c) / top, p.value()) * idx.dim();
  return top * std::pow(acc, 1.0 / p.value());
}

// phi^0 = sum c_pi dim(H_pi) h_pi for a finite spectrum.
template <class Pair>
BiInvariantFunction<Pair> synthesize(const CoefficientSpectrum<Pair>& spec) {
  return [terms = spec.coefficients](typename Pair::Argument x) {
    std::complex<double> acc = 0.0;
    for (const auto& [idx, c] : terms)
      if (c != 0.0) acc += c * static_cast<double>(idx.dim()) * Pair::spherical(idx, x);
    return acc;
  };
}

// Nystrom discretization of the kernel operator (T f)(x) = int psi(x, y) f(y) dy
// on the homogeneous space X = G/K with normalized measure.
struct KernelDiscretization {
  Eigen::MatrixXcd matrix;  // sqrt(w_i w_j) psi(x_i, x_j)
  int order = 0;
};

// X = SU(2)/SO(2) = S^2, psi(x, y) = phi^0(<x, y>). Gauss-Legendre in cos(theta)
// times 2*order azimuths; exact for spherical polynomials once order > L.
inline KernelDiscretization discretize_kernel_su2(const BiInvariantFunction<SU2Pair>& phi, int order) {
  if (order < 1) throw DomainError("kernel order must be >= 1");
  const QuadratureRule polar = gauss_legendre(order);
  const QuadratureRule az = uniform_angles(2 * order);
  std::vector<Eigen::Vector3d> pts;
  std::vector<double> w;
  for (std::size_t a = 0; a < polar.nodes.size(); ++a) {
    const double c = polar.nodes[a];
    const double s = std::sqrt(std::max(0.0, 1.0 - c * c));
    for (std::size_t b = 0; b < az.nodes.size(); ++b) {
      pts.emplace_back(s * std::cos(az.nodes[b]), s * std::sin(az.nodes[b]), c);
      w.push_back(0.5 * polar.weights[a] * az.weights[b]);
    }
  }
  const auto n = static_cast<Eigen::Index>(pts.size());
  KernelDiscretization out{Eigen::MatrixXcd(n, n), order};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      const double r = std::clamp(pts[static_cast<std::size_t>(i)].dot(pts[static_cast<std::size_t>(j)]), -1.0, 1.0);
      out.matrix(i, j) = std::sqrt(w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)]) * phi(r);
    }
  return out;
}

// X = U(2)/U(1) = S^3 in C^2 via u -> u e_1, psi(x, y) = phi^0(x^* y).
// Coordinates x = (sqrt(s) e^{i t1}, sqrt(1-s) e^{i t2}) with s uniform on
// [0, 1]; Gauss-Legendre in s, 2*order angles for each phase.
inline KernelDiscretization discretize_kernel_u2(const BiInvariantFunction<U2Pair>& phi, int order) {
  if (order < 1) throw DomainError("kernel order must be >= 1");
  const QuadratureRule radial = gauss_legendre(order, 0.0, 1.0);
  const QuadratureRule az = uniform_angles(2 * order);
  std::vector<Eigen::Vector2cd> pts;
  std::vector<double> w;
  for (std::size_t a = 0; a < radial.nodes.size(); ++a) {
    const double s = radial.nodes[a];
    for (std::size_t b = 0; b < az.nodes.size(); ++b)
      for (std::size_t c = 0; c < az.nodes.size(); ++c) {
        pts.emplace_back(std::polar(std::sqrt(s), az.nodes[b]), std::polar(std::sqrt(1.0 - s), az.nodes[c]));
        w.push_back(radial.weights[a] * az.weights[b] * az.weights[c]);
      }
  }
  const auto n = static_cast<Eigen::Index>(pts.size());
  KernelDiscretization out{Eigen::MatrixXcd(n, n), order};
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      std::complex<double> z = pts[static_cast<std::size_t>(i)].dot(pts[static_cast<std::size_t>(j)]);
      if (std::abs(z) > 1.0) z /= std::abs(z);
      out.matrix(i, j) = std::sqrt(w[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(j)]) * phi(z);
    }
  return out;
}

struct KernelNormResult {
  double value = 0.0;    // at the requested order
  double refined = 0.0;  // at twice the order
  bool under_resolved = false;  // doubling moved the value by more than 1%
  int order = 0;
};

namespace detail {

template <class Pair>
KernelDiscretization discretize(const BiInvariantFunction<Pair>& phi, int order) {
  if constexpr (std::is_same_v<Pair, U2Pair>) return discretize_kernel_u2(phi, order);
  else return discretize_kernel_su2(phi, order);
}

// Column-pivoted QR keeps the numerically nonzero rows of R (same singular
// values as m), then one-sided Jacobi on those rows. Discretized kernels are
// usually of low rank, which makes this much cheaper than a full Jacobi SVD.
// Eigen 3.4.0's BDCSVD is not used: its deflation step indexes out of bounds
// on such rank-deficient inputs.
inline double matrix_schatten(const Eigen::MatrixXcd& m, const SchattenExponent& p) {
  const Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(m);
  const Eigen::Index r = qr.rank();
  if (r == 0) return 0.0;
  const Eigen::MatrixXcd top = qr.matrixR().topRows(r).triangularView<Eigen::Upper>();
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(top);
  return lp_of_descending(svd.singularValues(), p);
}

} // namespace detail

// ||T_psi||_{S^p(L^2(X))} for the bi-invariant kernel of phi. Equals
// (sum |c_pi|^p dim H_pi)^{1/p} in the limit of fine quadrature.
template <class Pair>
KernelNormResult kernel_schatten_norm(const BiInvariantFunction<Pair>& phi, const SchattenExponent& p, int order) {
  if (p.is_infinite()) throw DomainError("kernel_schatten_norm: p must be finite");
  KernelNormResult out;
  out.order = order;
  out.value = detail::matrix_schatten(detail::discretize<Pair>(phi, order).matrix, p);
  out.refined = detail::matrix_schatten(detail::discretize<Pair>(phi, 2 * order).matrix, p);
  out.under_resolved = std::abs(out.refined - out.value) > 0.01 * std::max(out.refined, 1e-300);
  return out;
}

// U(2) with K = K_1 = diag(1, U(1)).
struct U2CircleModel {
  using Element = Eigen::Matrix2cd;
  static Element multiply(const Element& a, const Element& b) { return a * b; }
  static Element inverse(const Element& a) { return a.adjoint(); }
  static Element sample_k(std::mt19937_64& rng) {
    Element k = Element::Identity();
    k(1, 1) = haar_phase(rng);
    return k;
  }
};

struct KAverageResult {
  MultiplierSymbol averaged;
  // max over the diagnosed conjugates k phi k' of their MS^p lower bound
  double max_conjugate_norm = 0.0;
  // Monte Carlo scale: sup |phi| / M for an average of M^2 samples
  double mc_tolerance = 0.0;
  int diagnosed = 0;
};

struct KAverageConfig {
  int samples = 64;  // M; the average runs over M^2 pairs (k, k')
  std::uint64_t seed = 0;
  int diagnostic_conjugates = 8;
  SchattenExponent exponent{4.0};
  SearchConfig search{};
};

// phi^K(g) = int_K int_K phi(k g k') dk dk' sampled on the symbol points:
// averaged_ij = (1/M^2) sum_{a,b} phi(k_a x_i^{-1} x_j k'_b). The average is a
// convex combination of the conjugate symbols (i, j) -> phi(k x_i^{-1} x_j k'),
// each with the multiplier norm of phi.
template <class Model, class Phi>
KAverageResult k_average(Phi&& phi, std::span<const typename Model::Element> points, const KAverageConfig& cfg) {
  if (points.empty()) throw InvalidInput("k_average: no points");
  if (cfg.samples < 1) throw InvalidInput("k_average: samples must be >= 1");
  using Element = typename Model::Element;
  std::mt19937_64 rng(cfg.seed);
  std::vector<Element> left, right;
  for (int a = 0; a < cfg.samples; ++a) left.push_back(Model::sample_k(rng));
  for (int b = 0; b < cfg.samples; ++b) right.push_back(Model::sample_k(rng));

  const auto n = static_cast<Eigen::Index>(points.size());
  std::vector<Element> rel(static_cast<std::size_t>(n * n));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      rel[static_cast<std::size_t>(i * n + j)] =
          Model::multiply(Model::inverse(points[static_cast<std::size_t>(i)]), points[static_cast<std::size_t>(j)]);

  auto conjugate = [&](const Element& k, const Element& kp) {
    MultiplierSymbol s{ComplexMatrix(n, n)};
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        s.values(i, j) = phi(Model::multiply(Model::multiply(k, rel[static_cast<std::size_t>(i * n + j)]), kp));
    return s;
  };

  KAverageResult out;
  out.averaged.values = ComplexMatrix::Zero(n, n);
  double sup = 0.0;
  for (const auto& k : left)
    for (const auto& kp : right) {
      const MultiplierSymbol s = conjugate(k, kp);
      out.averaged.values += s.values;
      sup = std::max(sup, s.sup_norm());
    }
  out.averaged.values /= static_cast<double>(cfg.samples) * cfg.samples;
  out.mc_tolerance = sup / cfg.samples;

  const int diag = std::min(cfg.diagnostic_conjugates, cfg.samples);
  for (int d = 0; d < diag; ++d) {
    SearchConfig sc = cfg.search;
    sc.seed = derive_seed(cfg.seed, static_cast<std::uint64_t>(d));
    const double v = ms_norm_lower(conjugate(left[static_cast<std::size_t>(d)], right[static_cast<std::size_t>(d)]), cfg.exponent, sc).value;
    out.max_conjugate_norm = std::max(out.max_conjugate_norm, v);
  }
  out.diagnosed = diag;
  return out;
}

} // namespace schur_harmonics

#endif
