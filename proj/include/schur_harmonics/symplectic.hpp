#ifndef SCHUR_HARMONICS_SYMPLECTIC_HPP
#define SCHUR_HARMONICS_SYMPLECTIC_HPP

// Sp(2, R) = { g in GL(4, R) : g^T J g = J }, J = [[0, I], [-I, 0]], its
// maximal compact subgroup K = { [[A, -B], [B, A]] : A + iB in U(2) }, and the
// decomposition G = K D(alpha_1, alpha_2) K over the closed Weyl chamber
// alpha_1 >= alpha_2 >= 0.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <random>
#include <span>
#include <tuple>
#include <string>
#include <utility>

#include "errors.hpp"
#include "haar.hpp"

namespace schur_harmonics {

using RealMatrix4 = Eigen::Matrix4d;
using Unitary2 = Eigen::Matrix2cd;

struct SymplecticTolerances {
  // ||g^T J g - J||_F, relative to max(1, ||g||_F^2)
  double membership = 1e-9;
  // ||k1 D k2 - g||_F, relative to max(1, ||g||_F)
  double residual = 1e-8;
  // Weyl parameters closer than this (relative) to a chamber wall are snapped to it
  double cluster_gap = 1e-10;
};

inline const RealMatrix4& symplectic_form() {
  static const RealMatrix4 j = [] {
    RealMatrix4 m = RealMatrix4::Zero();
    m.block<2, 2>(0, 2) = Eigen::Matrix2d::Identity();
    m.block<2, 2>(2, 0) = -Eigen::Matrix2d::Identity();
    return m;
  }();
  return j;
}

// A + iB -> [[A, -B], [B, A]]; a group homomorphism U(2) -> K.
inline RealMatrix4 embed_u2(const Unitary2& u) {
  RealMatrix4 g;
  g.block<2, 2>(0, 0) = u.real();
  g.block<2, 2>(0, 2) = -u.imag();
  g.block<2, 2>(2, 0) = u.imag();
  g.block<2, 2>(2, 2) = u.real();
  return g;
}

// Inverse of embed_u2 on K; averages the two copies of A and B.
inline Unitary2 unitary_of(const RealMatrix4& k) {
  const Eigen::Matrix2d a = 0.5 * (k.block<2, 2>(0, 0) + k.block<2, 2>(2, 2));
  const Eigen::Matrix2d b = 0.5 * (k.block<2, 2>(2, 0) - k.block<2, 2>(0, 2));
  Unitary2 u;
  u.real() = a;
  u.imag() = b;
  return u;
}

// Nearest unitary in Frobenius norm (polar factor).
inline Unitary2 nearest_unitary(const Unitary2& m) {
  Eigen::JacobiSVD<Unitary2> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

// g^{-1} = -J g^T J for g in Sp(2, R).
inline RealMatrix4 symplectic_inverse(const RealMatrix4& g) {
  return -symplectic_form() * g.transpose() * symplectic_form();
}

struct SymplecticCheck {
  bool in_g = false;
  bool in_k = false;
  double symplectic_defect = 0.0;  // ||g^T J g - J||_F
  double orthogonal_defect = 0.0;  // ||g^T g - I||_F
  std::optional<Unitary2> u;       // set when in_k
};

inline SymplecticCheck symplectic_check(const RealMatrix4& g, const SymplecticTolerances& tol = {}) {
  SymplecticCheck out;
  const RealMatrix4& j = symplectic_form();
  out.symplectic_defect = (g.transpose() * j * g - j).norm();
  out.orthogonal_defect = (g.transpose() * g - RealMatrix4::Identity()).norm();
  const double scale = std::max(1.0, g.squaredNorm());
  out.in_g = g.allFinite() && out.symplectic_defect <= tol.membership * scale;
  if (out.in_g && out.orthogonal_defect <= tol.membership) {
    const Unitary2 u = unitary_of(g);
    if ((embed_u2(u) - g).norm() <= tol.membership) {
      out.in_k = true;
      out.u = u;
    }
  }
  return out;
}

// An element of Sp(2, R) whose membership has been verified.
class SymplecticElement {
public:
  explicit SymplecticElement(const RealMatrix4& g, const SymplecticTolerances& tol = {}) : g_(g) {
    if (!symplectic_check(g, tol).in_g) throw DomainError("matrix is not in Sp(2, R)");
  }
  const RealMatrix4& matrix() const { return g_; }

private:
  RealMatrix4 g_;
};

struct MaximalCompactElement {
  RealMatrix4 g = RealMatrix4::Identity();
  Unitary2 u = Unitary2::Identity();

  static MaximalCompactElement from_unitary(const Unitary2& u) { return {embed_u2(u), u}; }
};

struct WeylPair {
  double alpha1 = 0.0;
  double alpha2 = 0.0;

  double norm() const { return std::hypot(alpha1, alpha2); }
  bool in_closed_chamber() const { return alpha1 >= alpha2 && alpha2 >= 0.0; }
};

inline WeylPair checked_weyl(double alpha1, double alpha2) {
  WeylPair w{alpha1, alpha2};
  if (!w.in_closed_chamber()) throw DomainError("Weyl pair must satisfy alpha1 >= alpha2 >= 0");
  return w;
}

struct KAKResult {
  MaximalCompactElement k1;
  MaximalCompactElement k2;
  WeylPair a;
  double residual = 0.0;
};

// D(alpha_1, alpha_2) = diag(e^{a1}, e^{a2}, e^{-a1}, e^{-a2}).
inline RealMatrix4 diag_element(double alpha1, double alpha2) {
  return Eigen::Vector4d(std::exp(alpha1), std::exp(alpha2), std::exp(-alpha1), std::exp(-alpha2)).asDiagonal();
}
inline RealMatrix4 diag_element(const WeylPair& a) { return diag_element(a.alpha1, a.alpha2); }

// D_alpha = diag(e^a, 1, e^{-a}, 1); commutes with K_1.
inline RealMatrix4 d_alpha(double alpha) { return diag_element(alpha, 0.0); }

// D'_alpha = diag(e^a, e^a, e^{-a}, e^{-a}); commutes with K_3 = SO(2).
inline RealMatrix4 d_prime_alpha(double alpha) { return diag_element(alpha, alpha); }

// u = [[a + ib, -sqrt(1 - a^2 - b^2)], [sqrt(1 - a^2 - b^2), a - ib]] in SU(2).
inline Unitary2 u_form(double a, double b) {
  const double rest = 1.0 - a * a - b * b;
  if (rest < -1e-12) throw DomainError("u_form requires a^2 + b^2 <= 1");
  const double c = std::sqrt(std::max(rest, 0.0));
  Unitary2 u;
  u << std::complex<double>(a, b), -c, c, std::complex<double>(a, -b);
  return u;
}

// General SU(2) element [[a + ib, -c + id], [c + id, a - ib]], a^2+b^2+c^2+d^2 = 1.
inline Unitary2 su2_element(double a, double b, double c, double d) {
  if (std::abs(a * a + b * b + c * c + d * d - 1.0) > 1e-12) throw DomainError("su2_element requires unit norm");
  Unitary2 u;
  u << std::complex<double>(a, b), std::complex<double>(-c, d), std::complex<double>(c, d), std::complex<double>(a, -b);
  return u;
}

// Double-coset label of SU(2) under SO(2): a^2 - b^2 + c^2 - d^2.
inline double su2_coset_label(double a, double b, double c, double d) { return a * a - b * b + c * c - d * d; }

// v = (1 + i)/sqrt(2) I, central in U(2).
inline Unitary2 center_v() {
  return Unitary2::Identity() * std::complex<double>(1.0, 1.0) / std::sqrt(2.0);
}

enum class SpecialKind { diagonal, d_alpha, d_prime_alpha, u_form, v };

// Dispatch over the distinguished elements: diagonal {a1, a2}, d_alpha {a},
// d_prime_alpha {a}, u_form {a, b}, v {}.
inline RealMatrix4 special_element(SpecialKind kind, std::span<const double> params) {
  auto need = [&](std::size_t k) {
    if (params.size() != k) throw InvalidInput("special_element: expected " + std::to_string(k) + " parameters");
  };
  switch (kind) {
  case SpecialKind::diagonal: need(2); return diag_element(params[0], params[1]);
  case SpecialKind::d_alpha: need(1); return d_alpha(params[0]);
  case SpecialKind::d_prime_alpha: need(1); return d_prime_alpha(params[0]);
  case SpecialKind::u_form: need(2); return embed_u2(u_form(params[0], params[1]));
  case SpecialKind::v: need(0); return embed_u2(center_v());
  }
  throw InvalidInput("special_element: unknown kind");
}

namespace detail {

// Columns q1, q2, q3 = -J q1, q4 = -J q2 of an element of K. Rotations below
// act on the columns through one-parameter subgroups of K, so the K structure
// is kept exactly.
struct KFrame {
  RealMatrix4 q;

  static KFrame from_pair(const Eigen::Vector4d& q1, const Eigen::Vector4d& q2) {
    const RealMatrix4& j = symplectic_form();
    KFrame f;
    f.q.col(0) = q1;
    f.q.col(1) = q2;
    f.q.col(2) = -j * q1;
    f.q.col(3) = -j * q2;
    return f;
  }

  void rotate(int a, int b, double c, double s) {
    const Eigen::Vector4d qa = q.col(a), qb = q.col(b);
    q.col(a) = c * qa + s * qb;
    q.col(b) = -s * qa + c * qb;
  }
  // u = diag(e^{i t}, 1): plane (1, 3)
  void rotate13(double c, double s) { rotate(0, 2, c, s); }
  // u = diag(1, e^{i t}): plane (2, 4)
  void rotate24(double c, double s) { rotate(1, 3, c, s); }
  // real rotation in U(2): planes (1, 2) and (3, 4)
  void rotate12(double c, double s) {
    rotate(0, 1, c, s);
    rotate(2, 3, c, s);
  }
  // u = [[c, i s], [i s, c]]: q1 += s q4, q2 += s q3
  void rotate14(double c, double s) {
    const Eigen::Vector4d q1 = q.col(0), q2 = q.col(1), q3 = q.col(2), q4 = q.col(3);
    q.col(0) = c * q1 + s * q4;
    q.col(1) = c * q2 + s * q3;
    q.col(2) = -s * q2 + c * q3;
    q.col(3) = -s * q1 + c * q4;
  }
};

inline double off_diagonal(const RealMatrix4& b) { return (b - RealMatrix4(b.diagonal().asDiagonal())).norm(); }

// Classical Jacobi angle annihilating b(p, r).
inline std::pair<double, double> jacobi_angle(const RealMatrix4& b, int p, int r) {
  if (b(p, r) == 0.0) return {1.0, 0.0};
  const double tau = (b(r, r) - b(p, p)) / (2.0 * b(p, r));
  const double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, -t * c};
}

} // namespace detail

// g = k1 D(alpha) k2 with alpha in the closed chamber.
//
// The right singular vectors of g diagonalize g^T g, whose eigenvalues come in
// reciprocal pairs (e^{2a}, e^{-2a}) with J mapping one eigenspace onto the
// other. The top two vectors are re-paired symplectically (Gram-Schmidt against
// q1 and J q1) to get a frame in K; within near-degenerate clusters the frame
// is refined by Jacobi rotations drawn from K. alpha_i = log ||g q_i|| and k1
// is assembled from the directions of g q_1, g q_2.
inline KAKResult kak_decompose(const RealMatrix4& g, const SymplecticTolerances& tol = {}) {
  const SymplecticCheck check = symplectic_check(g, tol);
  if (!check.in_g)
    throw DomainError("kak_decompose: matrix is not symplectic (defect " + std::to_string(check.symplectic_defect) + ")");
  const RealMatrix4& j = symplectic_form();

  Eigen::JacobiSVD<RealMatrix4> svd(g, Eigen::ComputeFullV);
  const RealMatrix4 v = svd.matrixV();

  const Eigen::Vector4d q1 = v.col(0).normalized();
  auto pair_residual = [&](const Eigen::Vector4d& x) {
    const Eigen::Vector4d jq1 = j * q1;
    return Eigen::Vector4d(x - q1.dot(x) * q1 - jq1.dot(x) * jq1);
  };
  Eigen::Vector4d q2 = pair_residual(v.col(1));
  if (q2.norm() < 0.5) {
    // v2 lies (numerically) in span{q1, J q1}; any isotropic complement works.
    Eigen::Vector4d best = q2;
    for (int k = 1; k < 4; ++k) {
      const Eigen::Vector4d cand = pair_residual(v.col(k));
      if (cand.norm() > best.norm()) best = cand;
    }
    for (int k = 0; k < 4; ++k) {
      const Eigen::Vector4d cand = pair_residual(RealMatrix4::Identity().col(k));
      if (cand.norm() > best.norm()) best = cand;
    }
    q2 = best;
  }
  q2.normalize();
  detail::KFrame frame = detail::KFrame::from_pair(q1, q2);

  auto gram = [&](const detail::KFrame& f) {
    const RealMatrix4 h = g * f.q;
    return RealMatrix4(h.transpose() * h);
  };

  RealMatrix4 b = gram(frame);
  const double scale = b.diagonal().cwiseAbs().maxCoeff();
  for (int sweep = 0; sweep < 8 && detail::off_diagonal(b) > 1e-15 * scale; ++sweep) {
    using Rot = void (detail::KFrame::*)(double, double);
    const std::array<std::tuple<Rot, int, int>, 4> moves{{{&detail::KFrame::rotate13, 0, 2},
                                                          {&detail::KFrame::rotate24, 1, 3},
                                                          {&detail::KFrame::rotate12, 0, 1},
                                                          {&detail::KFrame::rotate14, 0, 3}}};
    for (const auto& [rot, p, r] : moves) {
      const auto [c, s] = detail::jacobi_angle(b, p, r);
      detail::KFrame trial = frame;
      (trial.*rot)(c, s);
      const RealMatrix4 bt = gram(trial);
      if (detail::off_diagonal(bt) < detail::off_diagonal(b)) {
        frame = trial;
        b = bt;
      }
    }
  }

  // Order into the chamber: B11 >= B33, B22 >= B44, B11 >= B22. Quarter turns
  // inside K swap the corresponding slots.
  if (b(2, 2) > b(0, 0)) frame.rotate13(0.0, 1.0);
  if (b(3, 3) > b(1, 1)) frame.rotate24(0.0, 1.0);
  b = gram(frame);
  if (b(1, 1) > b(0, 0)) frame.rotate12(0.0, 1.0);

  const RealMatrix4 h = g * frame.q;
  double a1 = std::log(h.col(0).norm());
  double a2 = std::log(h.col(1).norm());
  a1 = std::max(a1, 0.0);
  a2 = std::clamp(a2, 0.0, a1);
  // Parameters within the cluster gap of a chamber wall are put on the wall.
  if (a1 - a2 <= tol.cluster_gap * std::max(1.0, a1)) a2 = a1;
  if (a2 <= tol.cluster_gap) a2 = 0.0;
  if (a1 <= tol.cluster_gap) a1 = a2 = 0.0;

  // g q_i = e^{alpha_i} k1 e_i for i = 1, 2. Building k1 from these unit
  // vectors avoids multiplying the contracted columns by e^{alpha}.
  const Eigen::Vector4d p1 = h.col(0).normalized();
  Eigen::Vector4d p2 = h.col(1) - p1.dot(h.col(1)) * p1;
  const Eigen::Vector4d jp1 = j * p1;
  p2 -= jp1.dot(p2) * jp1;
  if (p2.norm() < 1e-3 * h.col(1).norm()) {
    // Should not happen for a valid frame; fall back to the pairing of q2.
    p2 = (g * frame.q.col(1)).normalized();
  }
  p2.normalize();
  const detail::KFrame left = detail::KFrame::from_pair(p1, p2);

  KAKResult out;
  out.a = {a1, a2};
  out.k2 = MaximalCompactElement::from_unitary(nearest_unitary(unitary_of(frame.q.transpose())));
  out.k1 = MaximalCompactElement::from_unitary(nearest_unitary(unitary_of(left.q)));
  out.residual = (out.k1.g * diag_element(out.a) * out.k2.g - g).norm() / std::max(1.0, g.norm());
  if (!(out.residual <= tol.residual))
    throw NumericFailure("kak_decompose: residual " + std::to_string(out.residual) + " above tolerance");
  return out;
}

inline KAKResult kak_decompose(const SymplecticElement& g, const SymplecticTolerances& tol = {}) {
  return kak_decompose(g.matrix(), tol);
}

// Haar-random element of K.
inline MaximalCompactElement random_k(std::mt19937_64& rng) {
  return MaximalCompactElement::from_unitary(haar_unitary(2, rng));
}

// Sp(2, R) with its maximal compact subgroup K, for sampling symbols and
// K-averages.
struct Sp2Model {
  using Element = RealMatrix4;
  static Element multiply(const Element& a, const Element& b) { return a * b; }
  static Element inverse(const Element& a) { return symplectic_inverse(a); }
  static Element sample_k(std::mt19937_64& rng) { return random_k(rng).g; }
};

} // namespace schur_harmonics

#endif
