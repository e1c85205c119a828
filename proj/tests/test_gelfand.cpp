#include <gtest/gtest.h>

#include <schur_harmonics/gelfand.hpp>

#include <cmath>
#include <complex>
#include <random>

using namespace schur_harmonics;

namespace {

double coeff(const SpectrumU2& s, int l, int m) { return std::abs(s.coefficients.at({l, m})); }

} // namespace

TEST(CoefficientsU2, SphericalFunctionIsDeltaOverDim) {
  const BiInvariantFunction<U2Pair> h = [](std::complex<double> z) { return spherical_u2({2, 1}, z); };
  const SpectrumU2 s = coefficients_u2(h, 4);
  for (const auto& [idx, c] : s.coefficients) {
    const double want = idx == SphericalIndexU2{2, 1} ? 0.25 : 0.0;
    EXPECT_NEAR(std::abs(c - want), 0.0, 1e-12) << idx.l << "," << idx.m;
  }
}

TEST(CoefficientsU2, IdentityFunction) {
  const SpectrumU2 s = coefficients_u2([](std::complex<double> z) { return z; }, 3);
  EXPECT_NEAR(coeff(s, 1, 0), 0.5, 1e-13);
  EXPECT_NEAR(coeff(s, 0, 1), 0.0, 1e-13);
  EXPECT_NEAR(coeff(s, 0, 0), 0.0, 1e-13);
}

TEST(CoefficientsU2, ConstantOne) {
  const SpectrumU2 s = coefficients_u2([](std::complex<double>) { return 1.0; }, 2);
  EXPECT_NEAR(coeff(s, 0, 0), 1.0, 1e-13);
  EXPECT_NEAR(coeff(s, 1, 1), 0.0, 1e-13);
}

TEST(CoefficientsSU2, SquareAndCubic) {
  const SpectrumSU2 sq = coefficients_su2([](double r) { return r * r; }, 4);
  EXPECT_NEAR(std::abs(sq.coefficients.at({0})), 1.0 / 3.0, 1e-14);
  EXPECT_NEAR(std::abs(sq.coefficients.at({2})), 2.0 / 15.0, 1e-14);
  EXPECT_NEAR(std::abs(sq.coefficients.at({1})), 0.0, 1e-14);
  const SpectrumSU2 p3 = coefficients_su2([](double r) { return legendre(3, r); }, 5);
  EXPECT_NEAR(std::abs(p3.coefficients.at({3})), 1.0 / 7.0, 1e-14);
}

TEST(CoefficientsSU2, RejectsTooLowOrder) {
  EXPECT_THROW(coefficients_su2([](double) { return 1.0; }, 10, 3), UnderResolved);
}

TEST(Synthesize, RoundTripsThroughCoefficients) {
  SpectrumSU2 spec;
  spec.truncation = 3;
  spec.coefficients = {{{0}, 0.2}, {{1}, {0.0, 0.1}}, {{3}, -0.05}};
  const auto phi = synthesize(spec);
  const SpectrumSU2 back = coefficients_su2(phi, 3);
  for (const auto& [idx, c] : spec.coefficients) EXPECT_NEAR(std::abs(back.coefficients.at(idx) - c), 0.0, 1e-14);

  SpectrumU2 u;
  u.truncation = 2;
  u.coefficients = {{{0, 0}, 0.5}, {{2, 0}, {0.0, -0.1}}, {{0, 1}, 0.3}};
  const SpectrumU2 uback = coefficients_u2(synthesize(u), 2);
  for (const auto& [idx, c] : u.coefficients) EXPECT_NEAR(std::abs(uback.coefficients.at(idx) - c), 0.0, 1e-13);
}

TEST(LpLowerBound, Formula) {
  SpectrumSU2 spec;
  spec.coefficients = {{{0}, 1.0}, {{1}, 0.5}};
  // (1 + 0.5^3 * 3)^{1/3}
  EXPECT_NEAR(lp_lower_bound(spec, SchattenExponent(3.0)), std::cbrt(1.375), 1e-14);
  EXPECT_THROW(lp_lower_bound(spec, SchattenExponent::infinity()), DomainError);
}

TEST(KernelNorm, SU2MatchesSpectralFormula) {
  SpectrumSU2 spec;
  spec.truncation = 2;
  spec.coefficients = {{{0}, 0.3}, {{1}, -0.2}, {{2}, 0.1}};
  const auto phi = synthesize(spec);
  for (double p : {2.0, 3.0}) {
    const KernelNormResult r = kernel_schatten_norm<SU2Pair>(phi, SchattenExponent(p), 4);
    EXPECT_NEAR(r.value, lp_lower_bound(spec, SchattenExponent(p)), 1e-10);
    EXPECT_FALSE(r.under_resolved);
  }
}

TEST(KernelNorm, U2MatchesSpectralFormula) {
  SpectrumU2 spec;
  spec.truncation = 1;
  spec.coefficients = {{{0, 0}, 0.4}, {{1, 0}, 0.2}, {{0, 1}, {0.0, 0.1}}};
  const KernelNormResult r = kernel_schatten_norm<U2Pair>(synthesize(spec), SchattenExponent(2.0), 3);
  EXPECT_NEAR(r.value, lp_lower_bound(spec, SchattenExponent(2.0)), 1e-10);
  EXPECT_NEAR(r.refined, r.value, 1e-10);
}

TEST(KAverage, ConstantFunctionIsFixed) {
  std::vector<U2CircleModel::Element> pts;
  std::mt19937_64 rng(1);
  for (int i = 0; i < 3; ++i) pts.push_back(U2CircleModel::sample_k(rng));
  KAverageConfig cfg;
  cfg.samples = 4;
  cfg.diagnostic_conjugates = 1;
  cfg.search.restarts = 1;
  cfg.search.max_iterations = 50;
  const KAverageResult r = k_average<U2CircleModel>([](const U2CircleModel::Element&) { return std::complex<double>(1.0); },
                                                    std::span<const U2CircleModel::Element>(pts), cfg);
  EXPECT_NEAR((r.averaged.values - ComplexMatrix::Ones(3, 3)).norm(), 0.0, 1e-14);
  EXPECT_NEAR(r.max_conjugate_norm, 1.0, 1e-9);
}

TEST(Quadrature, GaussLegendreExactness) {
  const QuadratureRule r = gauss_legendre(5);
  double acc = 0.0;
  for (std::size_t i = 0; i < r.nodes.size(); ++i) acc += r.weights[i] * std::pow(r.nodes[i], 8);
  EXPECT_NEAR(acc, 2.0 / 9.0, 1e-15);
  const QuadratureRule s = gauss_legendre(3, 0.0, 1.0);
  double lin = 0.0;
  for (std::size_t i = 0; i < s.nodes.size(); ++i) lin += s.weights[i] * s.nodes[i];
  EXPECT_NEAR(lin, 0.5, 1e-15);
}

TEST(KernelNorm, RankDeficientDiscretizationStaysExact) {
  // Order 6 against degree 4 leaves most singular values at zero.
  std::mt19937_64 rng(606);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 4; ++trial) {
    SpectrumSU2 spec;
    spec.truncation = 4;
    for (int n = 0; n <= 4; ++n) spec.coefficients[{n}] = {g(rng) / (n + 1), g(rng) / (n + 1)};
    const KernelNormResult r = kernel_schatten_norm<SU2Pair>(synthesize(spec), SchattenExponent(3.0), 6);
    ASSERT_TRUE(std::isfinite(r.value));
    EXPECT_NEAR(r.value, lp_lower_bound(spec, SchattenExponent(3.0)), 1e-10);
    EXPECT_NEAR(r.refined, r.value, 1e-10);
  }
}
