#include <gtest/gtest.h>

#include <schur_harmonics/symplectic.hpp>

#include <array>
#include <cmath>
#include <random>

using namespace schur_harmonics;

namespace {

RealMatrix4 compose(const MaximalCompactElement& k1, const WeylPair& a, const MaximalCompactElement& k2) {
  return k1.g * diag_element(a) * k2.g;
}

void expect_recovers(const RealMatrix4& g, const WeylPair& a) {
  const KAKResult r = kak_decompose(g);
  EXPECT_NEAR(r.a.alpha1, a.alpha1, 1e-9);
  EXPECT_NEAR(r.a.alpha2, a.alpha2, 1e-9);
  EXPECT_LE(r.residual, 1e-8);
  EXPECT_TRUE(r.a.in_closed_chamber());
  EXPECT_TRUE(symplectic_check(r.k1.g).in_k);
  EXPECT_TRUE(symplectic_check(r.k2.g).in_k);
  EXPECT_LE((r.k1.g * diag_element(r.a) * r.k2.g - g).norm(), 1e-8 * std::max(1.0, g.norm()));
}

} // namespace

TEST(Symplectic, FormAndEmbedding) {
  const RealMatrix4& j = symplectic_form();
  EXPECT_EQ((j * j + RealMatrix4::Identity()).norm(), 0.0);
  std::mt19937_64 rng(1);
  const MaximalCompactElement k = random_k(rng);
  const SymplecticCheck c = symplectic_check(k.g);
  EXPECT_TRUE(c.in_g);
  EXPECT_TRUE(c.in_k);
  ASSERT_TRUE(c.u.has_value());
  EXPECT_NEAR((*c.u - k.u).norm(), 0.0, 1e-13);
  EXPECT_NEAR((unitary_of(embed_u2(k.u)) - k.u).norm(), 0.0, 1e-15);
}

TEST(Symplectic, EmbeddingIsHomomorphism) {
  std::mt19937_64 rng(2);
  const MaximalCompactElement a = random_k(rng), b = random_k(rng);
  EXPECT_NEAR((embed_u2(a.u * b.u) - a.g * b.g).norm(), 0.0, 1e-14);
}

TEST(Symplectic, DiagonalIsInGNotK) {
  const SymplecticCheck c = symplectic_check(diag_element(1.0, 0.5));
  EXPECT_TRUE(c.in_g);
  EXPECT_FALSE(c.in_k);
  EXPECT_FALSE(c.u.has_value());
  EXPECT_FALSE(symplectic_check(2.0 * RealMatrix4::Identity()).in_g);
  EXPECT_THROW(SymplecticElement(2.0 * RealMatrix4::Identity()), DomainError);
}

TEST(Symplectic, Inverse) {
  std::mt19937_64 rng(3);
  const RealMatrix4 g = random_k(rng).g * diag_element(0.7, 0.2) * random_k(rng).g;
  EXPECT_NEAR((symplectic_inverse(g) * g - RealMatrix4::Identity()).norm(), 0.0, 1e-13);
}

TEST(Symplectic, NearestUnitary) {
  Unitary2 m = u_form(0.6, 0.0);
  m(0, 1) += 1e-6;
  const Unitary2 u = nearest_unitary(m);
  EXPECT_NEAR((u.adjoint() * u - Unitary2::Identity()).norm(), 0.0, 1e-14);
  EXPECT_LT((u - m).norm(), 1e-5);
}

TEST(Symplectic, SpecialElements) {
  EXPECT_EQ(d_alpha(0.3), diag_element(0.3, 0.0));
  EXPECT_EQ(d_prime_alpha(0.3), diag_element(0.3, 0.3));
  const Unitary2 u = u_form(0.3, 0.4);
  EXPECT_NEAR((u.adjoint() * u - Unitary2::Identity()).norm(), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(u.determinant() - 1.0), 0.0, 1e-15);
  EXPECT_THROW(u_form(0.9, 0.9), DomainError);
  EXPECT_THROW(su2_element(1.0, 1.0, 0.0, 0.0), DomainError);
  EXPECT_NEAR(std::abs(center_v()(0, 0) - std::complex<double>(1.0, 1.0) / std::sqrt(2.0)), 0.0, 1e-16);

  const std::array<double, 2> ab{0.3, 0.4};
  EXPECT_EQ(special_element(SpecialKind::u_form, ab), embed_u2(u));
  EXPECT_THROW(special_element(SpecialKind::v, ab), InvalidInput);
  EXPECT_TRUE(symplectic_check(special_element(SpecialKind::v, {})).in_k);
  // v commutes with every element of K.
  std::mt19937_64 rng(4);
  const RealMatrix4 k = random_k(rng).g, v = embed_u2(center_v());
  EXPECT_NEAR((k * v - v * k).norm(), 0.0, 1e-14);
}

TEST(Symplectic, WeylChamber) {
  EXPECT_NO_THROW(checked_weyl(1.0, 1.0));
  EXPECT_THROW(checked_weyl(1.0, 2.0), DomainError);
  EXPECT_THROW(checked_weyl(1.0, -0.1), DomainError);
  EXPECT_DOUBLE_EQ((WeylPair{3.0, 4.0}).norm(), 5.0);
}

TEST(Kak, Identity) {
  const KAKResult r = kak_decompose(RealMatrix4::Identity());
  EXPECT_EQ(r.a.alpha1, 0.0);
  EXPECT_EQ(r.a.alpha2, 0.0);
  EXPECT_LE(r.residual, 1e-14);
}

TEST(Kak, DiagonalOutsideChamberIsReordered) {
  // diag(e^{-1}, e^{2}, e, e^{-2}) = D(-1, 2) lies in the Weyl orbit of D(2, 1).
  const KAKResult r = kak_decompose(diag_element(-1.0, 2.0));
  EXPECT_NEAR(r.a.alpha1, 2.0, 1e-14);
  EXPECT_NEAR(r.a.alpha2, 1.0, 1e-14);
  EXPECT_LE(r.residual, 1e-14);
}

TEST(Kak, RandomRoundTrip) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    double a1 = u(rng), a2 = u(rng);
    if (a1 < a2) std::swap(a1, a2);
    const WeylPair a{a1, a2};
    expect_recovers(compose(random_k(rng), a, random_k(rng)), a);
  }
}

TEST(Kak, DegenerateChamberWalls) {
  std::mt19937_64 rng(6);
  for (const WeylPair a : {WeylPair{1.5, 1.5}, WeylPair{1.5, 0.0}, WeylPair{0.0, 0.0}, WeylPair{2.0, 2.0 - 1e-9},
                           WeylPair{1.0, 1e-9}, WeylPair{1e-9, 0.0}})
    for (int i = 0; i < 10; ++i) expect_recovers(compose(random_k(rng), a, random_k(rng)), a);
}

TEST(Kak, LargeParametersKeepRelativeResidual) {
  std::mt19937_64 rng(7);
  const WeylPair a{12.0, 5.0};
  const RealMatrix4 g = compose(random_k(rng), a, random_k(rng));
  const KAKResult r = kak_decompose(g);
  EXPECT_NEAR(r.a.alpha1, a.alpha1, 1e-8);
  EXPECT_NEAR(r.a.alpha2, a.alpha2, 1e-8);
  EXPECT_LE(r.residual, 1e-8);
}

TEST(Kak, RejectsNonSymplectic) {
  RealMatrix4 g = RealMatrix4::Identity();
  g(0, 1) = 0.5;
  EXPECT_THROW(kak_decompose(g), DomainError);
}

TEST(Kak, SymplecticElementOverload) {
  const SymplecticElement g(diag_element(0.4, 0.1));
  EXPECT_NEAR(kak_decompose(g).a.alpha1, 0.4, 1e-14);
}
