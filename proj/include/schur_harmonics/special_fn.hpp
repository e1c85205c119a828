#ifndef SCHUR_HARMONICS_SPECIAL_FN_HPP
#define SCHUR_HARMONICS_SPECIAL_FN_HPP

// Jacobi and Legendre polynomials, the spherical functions of the Gelfand
// pairs (U(2), U(1)) and (SU(2), SO(2)), and grid scans of their Hoelder
// bounds.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "errors.hpp"
#include "parallel.hpp"

namespace schur_harmonics {

struct SphericalIndexU2 {
  int l = 0;
  int m = 0;
  int dim() const { return l + m + 1; }
  auto operator<=>(const SphericalIndexU2&) const = default;
};

struct SphericalIndexSU2 {
  int n = 0;
  int dim() const { return 2 * n + 1; }
  auto operator<=>(const SphericalIndexSU2&) const = default;
};

namespace detail {

inline void require_unit_interval(double x, const char* what) {
  if (!(x >= -1.0 && x <= 1.0)) throw DomainError(std::string(what) + ": argument outside [-1, 1]");
}

} // namespace detail

// P_0^{(a,b)}(x), ..., P_nmax^{(a,b)}(x) by the forward three-term recurrence.
inline std::vector<double> jacobi_sequence(int nmax, double a, double b, double x) {
  if (nmax < 0) throw DomainError("jacobi: degree must be >= 0");
  if (!(a >= 0.0 && b >= 0.0)) throw DomainError("jacobi: parameters must be >= 0");
  detail::require_unit_interval(x, "jacobi");
  std::vector<double> p(static_cast<std::size_t>(nmax) + 1);
  p[0] = 1.0;
  if (nmax == 0) return p;
  p[1] = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
  for (int n = 2; n <= nmax; ++n) {
    const double s = 2.0 * n + a + b;
    const double c0 = 2.0 * n * (n + a + b) * (s - 2.0);
    const double c1 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
    const double c2 = 2.0 * (n + a - 1.0) * (n + b - 1.0) * s;
    p[static_cast<std::size_t>(n)] = (c1 * p[static_cast<std::size_t>(n - 1)] - c2 * p[static_cast<std::size_t>(n - 2)]) / c0;
  }
  return p;
}

inline double jacobi_eval(int n, double a, double b, double x) { return jacobi_sequence(n, a, b, x).back(); }

inline double legendre(int n, double x) { return jacobi_eval(n, 0.0, 0.0, x); }

// h^0_{l,m}(z) = z^{l-m} P_m^{(0,l-m)}(2|z|^2 - 1) for l >= m, and the
// conjugate form zbar^{m-l} P_l^{(0,m-l)}(2|z|^2 - 1) for l < m.
inline std::complex<double> spherical_u2(SphericalIndexU2 idx, std::complex<double> z) {
  if (idx.l < 0 || idx.m < 0) throw DomainError("spherical_u2: negative index");
  const double r2 = std::norm(z);
  if (!(r2 <= (1.0 + 1e-12) * (1.0 + 1e-12))) throw DomainError("spherical_u2: |z| > 1");
  const double x = std::clamp(2.0 * r2 - 1.0, -1.0, 1.0);
  if (idx.l >= idx.m) {
    const int k = idx.l - idx.m;
    return std::pow(z, k) * jacobi_eval(idx.m, 0.0, k, x);
  }
  const int k = idx.m - idx.l;
  return std::pow(std::conj(z), k) * jacobi_eval(idx.l, 0.0, k, x);
}

inline double spherical_su2(SphericalIndexSU2 idx, double r) {
  if (idx.n < 0) throw DomainError("spherical_su2: negative index");
  detail::require_unit_interval(r, "spherical_su2");
  return legendre(idx.n, r);
}

enum class SphericalFamily { u2, su2 };

inline const char* family_name(SphericalFamily f) { return f == SphericalFamily::u2 ? "U2" : "SU2"; }

// One row per (index, bound shape).
struct HoelderRow {
  int l = -1;  // -1 for SU2 rows
  int m_or_n = 0;
  std::string bound_kind;
  double empirical_c = 0.0;
  int violations = 0;
};

struct HoelderViolation {
  int l = -1;
  int m_or_n = 0;
  std::string bound_kind;
  double x = 0.0;
  double y = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
};

struct HoelderScanReport {
  SphericalFamily family = SphericalFamily::su2;
  int max_degree = 0;
  int grid = 0;
  std::vector<HoelderRow> rows;
  // Smallest constant covering every scanned index, per bound shape.
  double c_lipschitz = 0.0;
  double c_decay = 0.0;
  double c_hoelder = 0.0;
  // U2: smallest single C covering both the Lipschitz and the decay shape.
  double c_uniform = 0.0;
  std::vector<HoelderViolation> violations;
};

namespace detail {

// SU2: on a uniform grid of [-1/2, 1/2], checks for every n <= max_degree
//   |P_n(x) - P_n(y)| <= 4 / sqrt(n), <= 4 sqrt(n) |x - y|, <= 4 |x - y|^{1/2}.
inline HoelderScanReport scan_su2(int max_degree, int grid) {
  HoelderScanReport rep;
  rep.family = SphericalFamily::su2;
  rep.max_degree = max_degree;
  rep.grid = grid;

  const double h = 1.0 / (grid - 1);
  std::vector<double> xs(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) xs[static_cast<std::size_t>(i)] = -0.5 + i * h;
  std::vector<double> root_gap(static_cast<std::size_t>(grid));
  for (int d = 0; d < grid; ++d) root_gap[static_cast<std::size_t>(d)] = std::sqrt(d * h);

  // values[n][i] = P_n(x_i)
  std::vector<std::vector<double>> values(static_cast<std::size_t>(max_degree) + 1, std::vector<double>(static_cast<std::size_t>(grid)));
  for (int i = 0; i < grid; ++i) {
    const auto seq = jacobi_sequence(max_degree, 0.0, 0.0, xs[static_cast<std::size_t>(i)]);
    for (std::size_t n = 0; n < seq.size(); ++n) values[n][static_cast<std::size_t>(i)] = seq[n];
  }

  struct PerDegree {
    double osc = 0.0, lip = 0.0, hoelder = 0.0;
    int v_decay = 0, v_lip = 0, v_hoelder = 0;
    std::vector<HoelderViolation> found;
  };
  std::vector<PerDegree> per(static_cast<std::size_t>(max_degree) + 1);

  parallel_for(per.size(), [&](std::size_t n) {
    PerDegree& d = per[n];
    const double sn = std::sqrt(static_cast<double>(n));
    const double decay_bound = n == 0 ? std::numeric_limits<double>::infinity() : 4.0 / sn;
    const auto& pn = values[n];
    for (int i = 0; i < grid; ++i) {
      const double pi = pn[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < grid; ++j) {
        const double diff = std::abs(pi - pn[static_cast<std::size_t>(j)]);
        const double gap = (j - i) * h;
        const double rg = root_gap[static_cast<std::size_t>(j - i)];
        d.osc = std::max(d.osc, diff);
        d.lip = std::max(d.lip, diff / gap);
        d.hoelder = std::max(d.hoelder, diff / rg);
        auto note = [&](const char* kind, double rhs) {
          if (d.found.size() < 16) d.found.push_back({-1, static_cast<int>(n), kind, xs[static_cast<std::size_t>(i)], xs[static_cast<std::size_t>(j)], diff, rhs});
        };
        if (diff > decay_bound) { ++d.v_decay; note("decay", decay_bound); }
        if (diff > 4.0 * sn * gap) { ++d.v_lip; note("lipschitz", 4.0 * sn * gap); }
        if (diff > 4.0 * rg) { ++d.v_hoelder; note("hoelder", 4.0 * rg); }
      }
    }
  });

  for (std::size_t n = 0; n < per.size(); ++n) {
    const auto& d = per[n];
    const double sn = std::sqrt(static_cast<double>(n));
    const double c_decay = d.osc * sn;  // |dP| <= C / sqrt(n)
    const double c_lip = n == 0 ? 0.0 : d.lip / sn;  // |dP| <= C sqrt(n) |x-y|
    rep.rows.push_back({-1, static_cast<int>(n), "decay", c_decay, d.v_decay});
    rep.rows.push_back({-1, static_cast<int>(n), "lipschitz", c_lip, d.v_lip});
    rep.rows.push_back({-1, static_cast<int>(n), "hoelder", d.hoelder, d.v_hoelder});
    rep.c_decay = std::max(rep.c_decay, c_decay);
    rep.c_lipschitz = std::max(rep.c_lipschitz, c_lip);
    rep.c_hoelder = std::max(rep.c_hoelder, d.hoelder);
    rep.violations.insert(rep.violations.end(), d.found.begin(), d.found.end());
  }
  return rep;
}

// U2: h^0_{l,m} on the circle |z| = 1/sqrt(2), theta on a uniform grid of
// [0, 2 pi). Fits the constants in
//   |dh| <= C (l+m+1)^{3/4} |theta_1 - theta_2|,   |dh| <= 2 C (l+m+1)^{-1/4}.
inline HoelderScanReport scan_u2(int max_degree, int grid) {
  HoelderScanReport rep;
  rep.family = SphericalFamily::u2;
  rep.max_degree = max_degree;
  rep.grid = grid;

  const double h = 2.0 * std::numbers::pi / grid;
  std::vector<SphericalIndexU2> indices;
  for (int total = 0; total <= max_degree; ++total)
    for (int l = 0; l <= total; ++l) indices.push_back({l, total - l});

  struct PerIndex {
    double c_lip = 0.0, c_decay = 0.0;
  };
  std::vector<PerIndex> per(indices.size());
  parallel_for(indices.size(), [&](std::size_t k) {
    const auto idx = indices[k];
    std::vector<std::complex<double>> v(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) v[static_cast<std::size_t>(i)] = spherical_u2(idx, std::polar(std::numbers::sqrt2 / 2.0, i * h));
    double lip = 0.0, osc = 0.0;
    // Chord slopes are bounded by adjacent slopes, so adjacent pairs give the
    // Lipschitz constant; the oscillation needs all pairs.
    for (int i = 0; i + 1 < grid; ++i)
      lip = std::max(lip, std::abs(v[static_cast<std::size_t>(i + 1)] - v[static_cast<std::size_t>(i)]) / h);
    for (int i = 0; i < grid; ++i)
      for (int j = i + 1; j < grid; ++j) osc = std::max(osc, std::abs(v[static_cast<std::size_t>(i)] - v[static_cast<std::size_t>(j)]));
    const double d = idx.dim();
    per[k].c_lip = lip / std::pow(d, 0.75);
    per[k].c_decay = osc * std::pow(d, 0.25) / 2.0;
  });

  for (std::size_t k = 0; k < indices.size(); ++k) {
    rep.rows.push_back({indices[k].l, indices[k].m, "lipschitz", per[k].c_lip, 0});
    rep.rows.push_back({indices[k].l, indices[k].m, "decay", per[k].c_decay, 0});
    rep.c_lipschitz = std::max(rep.c_lipschitz, per[k].c_lip);
    rep.c_decay = std::max(rep.c_decay, per[k].c_decay);
  }
  rep.c_uniform = std::max(rep.c_lipschitz, rep.c_decay);
  // With C fixed to the fitted value no scanned pair can violate; record the
  // combined 1/4-Hoelder constant 2^{3/4} C for reference.
  rep.c_hoelder = std::pow(2.0, 0.75) * rep.c_uniform;
  return rep;
}

} // namespace detail

inline HoelderScanReport hoelder_bound_check(SphericalFamily family, int max_degree, int grid) {
  if (max_degree < 1) throw DomainError("hoelder scan: max_degree must be >= 1");
  if (grid < 100) throw DomainError("hoelder scan: grid must have >= 100 points");
  return family == SphericalFamily::su2 ? detail::scan_su2(max_degree, grid) : detail::scan_u2(max_degree, grid);
}

// Safety factor applied to the fitted U2 constant before it enters the
// decay-constant chain.
inline constexpr double kU2ConstantSafety = 1.5;

inline double default_u2_constant(int max_degree = 40, int grid = 512) {
  return kU2ConstantSafety * hoelder_bound_check(SphericalFamily::u2, max_degree, grid).c_uniform;
}

} // namespace schur_harmonics

#endif
