// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <schur_harmonics/schur_harmonics.hpp>

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <string>
#include <vector>

using namespace schur_harmonics;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// max() that treats NaN as the worst possible value.
double worst_of(double acc, double x) { return std::isnan(x) ? std::numeric_limits<double>::infinity() : std::max(acc, x); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

ComplexMatrix gaussian(Eigen::Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ComplexMatrix x(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) x(i, j) = {g(rng), g(rng)};
  return x;
}

// Symbols with entries of modulus <= 1 and some structure: random unit-modulus
// phases mixed with a real Toeplitz part.
MultiplierSymbol random_symbol(Eigen::Index n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  MultiplierSymbol s{ComplexMatrix(n, n)};
  const double w = 0.5 * (u(rng) + 1.0);
  std::vector<double> toe(static_cast<std::size_t>(2 * n));
  for (auto& t : toe) t = u(rng);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      s.values(i, j) = w * std::polar(1.0, std::numbers::pi * u(rng)) + (1.0 - w) * toe[static_cast<std::size_t>(i - j + n)];
  return s;
}

double eigen_oracle(const ComplexMatrix& x, const SchattenExponent& p) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(x.adjoint() * x, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd lam = es.eigenvalues().cwiseMax(0.0);
  if (p.is_infinite()) return std::sqrt(lam.maxCoeff());
  double acc = 0.0;
  for (double l : lam) acc += std::pow(std::sqrt(l), p.value());
  return std::pow(acc, 1.0 / p.value());
}

Outcome schatten_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> dim(1, 8);
  const std::vector<SchattenExponent> ps{SchattenExponent(1.0), SchattenExponent(4.0 / 3.0), SchattenExponent(2.0),
                                         SchattenExponent(3.0), SchattenExponent(4.0), SchattenExponent::infinity()};
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const ComplexMatrix x = gaussian(dim(rng), rng);
    for (const auto& p : ps) {
      const double ref = eigen_oracle(x, p);
      worst = worst_of(worst, std::abs(schatten_norm(x, p) - ref) / std::max(1.0, ref));
    }
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-10 && t < 10.0, fmt("max rel err %.2e, %.2f s", worst, t)};
}

Outcome ms2_exact() {
  std::mt19937_64 rng(202);
  std::uniform_int_distribution<int> dim(1, 8);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const MultiplierSymbol psi{gaussian(dim(rng), rng)};
    const NormEstimate e = ms_norm_lower(psi, SchattenExponent(2.0), {.seed = static_cast<std::uint64_t>(i)});
    worst = worst_of(worst, std::abs(e.value - psi.sup_norm()));
  }
  return {worst <= 1e-6, fmt("max |est - sup| %.2e", worst)};
}

SearchConfig search_config(std::uint64_t seed) {
  SearchConfig cfg;
  cfg.restarts = 12;
  cfg.max_iterations = 1500;
  cfg.seed = seed;
  return cfg;
}

Outcome duality() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<int> dim(2, 6);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const MultiplierSymbol psi = random_symbol(dim(rng), rng);
    for (double p : {4.0, 3.0}) {
      const SchattenExponent ep(p), eq = ep.conjugate();
      const double a = ms_norm_lower(psi, ep, search_config(derive_seed(i, 1))).value;
      const double b = ms_norm_lower(psi, eq, search_config(derive_seed(i, 2))).value;
      worst = worst_of(worst, std::abs(a - b) / std::max(a, b));
    }
  }
  return {worst <= 0.03, fmt("max rel gap %.2e, %.1f s", worst, seconds_since(t0))};
}

Outcome monotonicity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(404);
  std::uniform_int_distribution<int> dim(2, 6);
  const std::vector<SchattenExponent> ps{SchattenExponent(2.0), SchattenExponent(3.0), SchattenExponent(4.0), SchattenExponent(6.0)};
  double worst_drop = 0.0;
  for (int i = 0; i < 20; ++i) {
    const MultiplierSymbol psi = random_symbol(dim(rng), rng);
    const auto prof = ms_norm_profile(psi, ps, search_config(static_cast<std::uint64_t>(i)));
    for (std::size_t k = 1; k < prof.size(); ++k) worst_drop = worst_of(worst_drop, prof[k - 1].value - prof[k].value);
  }
  return {worst_drop <= 1e-6, fmt("largest decrease %.2e, %.1f s", worst_drop, seconds_since(t0))};
}

Outcome orthogonality() {
  const auto t0 = std::chrono::steady_clock::now();
  double worst = 0.0;
  const int L = 10;
  for (int total = 0; total <= L; ++total)
    for (int l = 0; l <= total; ++l) {
      const SphericalIndexU2 idx{l, total - l};
      const SpectrumU2 s = coefficients_u2([idx](std::complex<double> z) { return spherical_u2(idx, z); }, L);
      for (const auto& [j, c] : s.coefficients) worst = worst_of(worst, std::abs(c - (j == idx ? 1.0 / idx.dim() : 0.0)));
    }
  const int N = 30;
  for (int n = 0; n <= N; ++n) {
    const SpectrumSU2 s = coefficients_su2([n](double r) { return spherical_su2({n}, r); }, N);
    for (const auto& [j, c] : s.coefficients) worst = worst_of(worst, std::abs(c - (j.n == n ? 1.0 / (2 * n + 1) : 0.0)));
  }
  const double t = seconds_since(t0);
  return {worst <= 1e-8 && t < 30.0, fmt("max err %.2e, %.2f s", worst, t)};
}

Outcome spectral_identity() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(606);
  std::normal_distribution<double> g;
  double worst = 0.0, worst_doubling = 0.0;
  for (int i = 0; i < 10; ++i) {
    for (double pv : {2.0, 3.0, 4.0}) {
      const SchattenExponent p(pv);
      KernelNormResult r;
      double want = 0.0;
      if (i % 2 == 0) {
        SpectrumSU2 spec;
        spec.truncation = 4;
        for (int n = 0; n <= 4; ++n) spec.coefficients[{n}] = {g(rng) / (n + 1), g(rng) / (n + 1)};
        r = kernel_schatten_norm<SU2Pair>(synthesize(spec), p, 6);
        want = lp_lower_bound(spec, p);
      } else {
        SpectrumU2 spec;
        spec.truncation = 2;
        for (int total = 0; total <= 2; ++total)
          for (int l = 0; l <= total; ++l) spec.coefficients[{l, total - l}] = {g(rng) / (total + 1), g(rng) / (total + 1)};
        r = kernel_schatten_norm<U2Pair>(synthesize(spec), p, 3);
        want = lp_lower_bound(spec, p);
      }
      worst = worst_of(worst, std::abs(r.value - want) / want);
      worst_doubling = worst_of(worst_doubling, std::abs(r.refined - r.value) / want);
    }
  }
  return {worst <= 5e-3 && worst_doubling <= 5e-3,
          fmt("max rel err %.2e, doubling change %.2e, %.1f s", worst, worst_doubling, seconds_since(t0))};
}

Outcome su2_scan() {
  const auto t0 = std::chrono::steady_clock::now();
  const HoelderScanReport rep = hoelder_bound_check(SphericalFamily::su2, 200, 2001);
  int hoelder_violations = 0;
  for (const auto& row : rep.rows)
    if (row.bound_kind == "hoelder") hoelder_violations += row.violations;
  const double t = seconds_since(t0);
  return {hoelder_violations == 0 && rep.c_hoelder <= 4.0 && t < 60.0,
          fmt("violations %d (all shapes %zu), empirical C %.4f, %.1f s", hoelder_violations, rep.violations.size(), rep.c_hoelder, t)};
}

Outcome u2_scan() {
  const auto t0 = std::chrono::steady_clock::now();
  const HoelderScanReport a = hoelder_bound_check(SphericalFamily::u2, 40, 512);
  const HoelderScanReport b = hoelder_bound_check(SphericalFamily::u2, 40, 1024);
  const double change = std::abs(b.c_uniform - a.c_uniform) / a.c_uniform;
  const bool covers = a.violations.empty() && std::isfinite(a.c_uniform) && a.c_uniform > 0.0;
  return {covers && change <= 0.10, fmt("C %.4f (512) vs %.4f (1024), change %.2e, %.1f s", a.c_uniform, b.c_uniform, change, seconds_since(t0))};
}

Outcome kak_roundtrip() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(909);
  std::uniform_real_distribution<double> u(0.0, 4.0), tiny(0.0, 1e-8);
  double worst_a = 0.0, worst_res = 0.0;
  int near_degenerate = 0;
  for (int i = 0; i < 500; ++i) {
    double a1 = u(rng), a2 = u(rng);
    if (a1 < a2) std::swap(a1, a2);
    if (i % 10 == 0) {
      // near-degenerate: alternate between the two walls
      if ((i / 10) % 2 == 0) a2 = a1 - tiny(rng);
      else a2 = tiny(rng);
      a2 = std::clamp(a2, 0.0, a1);
    }
    if (a1 - a2 <= 1e-8 || a2 <= 1e-8) ++near_degenerate;
    const RealMatrix4 g = random_k(rng).g * diag_element(a1, a2) * random_k(rng).g;
    const KAKResult r = kak_decompose(g);
    worst_a = worst_of(worst_of(worst_a, std::abs(r.a.alpha1 - a1)), std::abs(r.a.alpha2 - a2));
    worst_res = worst_of(worst_res, r.residual);
  }
  const double t = seconds_since(t0);
  return {worst_a <= 1e-8 && worst_res <= 1e-8 && near_degenerate >= 50 && t < 20.0,
          fmt("max |da| %.2e, max residual %.2e, near-degenerate %d, %.2f s", worst_a, worst_res, near_degenerate, t)};
}

Outcome matrix_fidelity() {
  const FidelityReport rep = coset_fidelity(200, 1010);
  return {rep.hyperbola.size() == 200 && rep.circle.size() == 200 && rep.max_error <= 1e-6, fmt("max |solver - kak| %.2e", rep.max_error)};
}

Outcome coset_inequalities() {
  const InequalityScan st = scan_st_inequalities(30.0, 300);
  const InequalityScan bg = scan_bg_strip(20.0, 300);
  return {st.violations == 0 && bg.violations == 0 && bg.max_roundtrip <= 1e-9,
          fmt("st violations %d (worst margin %.2e), strip violations %d (worst margin %.3f), roundtrip %.2e", st.violations,
              st.worst_margin, bg.violations, bg.worst_margin, bg.max_roundtrip)};
}

Outcome constant_chain() {
  const double c_u2 = default_u2_constant();
  const double c2 = chain_constants(24.0, c_u2).c2;
  const bool rate_ok = std::abs(c2 - 0.125 / (32.0 * std::numbers::sqrt2)) <= 1e-12;
  bool finite = true;
  double drift = 0.0;
  for (double p : {12.5, 13.0, 16.0, 24.0, 48.0, 1000.0}) {
    const DecayConstants a = chain_constants(p, c_u2, 1000), b = chain_constants(p, c_u2, 2000);
    for (double v : {a.c_tilde, a.c_hat, a.c3, a.c4, a.c5, a.c5_prime, a.c6, a.c1, a.c2}) finite = finite && std::isfinite(v) && v > 0.0;
    const std::vector<std::pair<double, double>> pairs{{a.c_tilde, b.c_tilde}, {a.c_hat, b.c_hat}, {a.c1, b.c1}};
    for (const auto& [x, y] : pairs) drift = worst_of(drift, std::abs(x - y) / y);
  }
  bool rejected = false;
  try {
    chain_constants(12.0, c_u2);
  } catch (const DomainError&) {
    rejected = true;
  }
  return {rate_ok && finite && rejected && drift <= 1e-9,
          fmt("C2(24) err %.1e, finite/positive %s, p=12 rejected %s, truncation drift %.2e", std::abs(c2 - 0.125 / (32.0 * std::numbers::sqrt2)),
              finite ? "yes" : "no", rejected ? "yes" : "no", drift)};
}

Outcome certificate_blowup() {
  const DecayConstants k = chain_constants(24.0, default_u2_constant());
  bool exact = true, increasing = true;
  double prev = 0.0;
  std::string values;
  for (double r : {10.0, 50.0, 100.0}) {
    const Certificate c = norm_certificate(unit_ball_samples(r), k);
    exact = exact && c.value == std::exp(k.c2 * r) / k.c1;
    increasing = increasing && c.value > prev;
    prev = c.value;
    values += fmt(" R=%g:%.6g", r, c.value);
  }
  return {exact && increasing, "certificates" + values};
}

} // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"schatten_norm_oracle", schatten_oracle},
      {"ms2_exactness", ms2_exact},
      {"duality", duality},
      {"monotonicity", monotonicity},
      {"gelfand_orthogonality", orthogonality},
      {"kernel_spectral_identity", spectral_identity},
      {"su2_hoelder_scan", su2_scan},
      {"u2_hoelder_scan", u2_scan},
      {"kak_roundtrip", kak_roundtrip},
      {"coset_matrix_fidelity", matrix_fidelity},
      {"coset_inequalities", coset_inequalities},
      {"constant_chain", constant_chain},
      {"certificate_blowup", certificate_blowup},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
