#include <gtest/gtest.h>

#include <random>

#include "fibwrt/exactnum.hpp"

using namespace fibwrt;

namespace {

FieldElement random_element(std::mt19937_64& rng, int spread = 4) {
  std::uniform_int_distribution<int> num(-spread, spread), den(1, 3);
  std::array<mpq_class, kFieldDegree> q;
  for (auto& x : q) {
    x = mpq_class(num(rng), den(rng));
    x.canonicalize();
  }
  return FieldElement::from_coords(q);
}

double rel_err(std::complex<double> a, std::complex<double> b) {
  return std::abs(a - b) / std::max(1.0, std::abs(b));
}

}  // namespace

TEST(Field, GoldenIdentities) {
  const FieldElement phi = FieldElement::phi();
  EXPECT_EQ(phi * phi, phi + FieldElement(1));
  EXPECT_EQ(FieldElement::sqrt_phi() * FieldElement::sqrt_phi(), phi);
  const FieldElement sqrt5 = FieldElement(1) + FieldElement(2) * (FieldElement::zeta(4) + FieldElement::zeta(-4));
  EXPECT_EQ(sqrt5 * sqrt5, FieldElement(5));
  EXPECT_EQ(FieldElement::zeta(20), FieldElement(1));
  EXPECT_EQ(FieldElement::zeta(10), FieldElement(-1));
  EXPECT_NEAR(phi.to_complex_double().real(), 1.6180339887498949, 1e-15);
}

TEST(Field, RingAxiomsOnRandomTriples) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 1000; ++i) {
    const FieldElement a = random_element(rng), b = random_element(rng), c = random_element(rng);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ((a * b) * c, a * (b * c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_EQ(a * b, b * a);
  }
}

TEST(Field, InverseAndConjugation) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const FieldElement a = random_element(rng), b = random_element(rng);
    if (a.is_zero()) continue;
    ASSERT_EQ(a * a.inverse(), FieldElement(1));
    ASSERT_EQ(a.conj().conj(), a);
    ASSERT_EQ((a * b).conj(), a.conj() * b.conj());
    ASSERT_EQ((a + b).conj(), a.conj() + b.conj());
  }
}

TEST(Field, EmbeddingIsHomomorphism) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const FieldElement a = random_element(rng), b = random_element(rng);
    const auto za = a.to_complex_double(), zb = b.to_complex_double();
    ASSERT_LT(rel_err((a * b).to_complex_double(), za * zb), 1e-10);
    ASSERT_LT(rel_err((a + b).to_complex_double(), za + zb), 1e-10);
    ASSERT_LT(rel_err(a.conj().to_complex_double(), std::conj(za)), 1e-10);
    for (int e = 0; e < kFieldDegree; ++e)
      ASSERT_LT(rel_err((a * b).embed(e), a.embed(e) * b.embed(e)), 1e-9);
  }
}

TEST(Field, HighPrecisionEvaluation) {
  const FieldElement phi = FieldElement::phi();
  const BigComplex z = phi.to_complex(256);
  const BigFloat err = z.re * z.re - z.re - BigFloat(1.0, 256);
  EXPECT_LT(std::abs(err.to_double()), 1e-70);
}

TEST(Field, TextRoundTrip) {
  std::mt19937_64 rng(17);
  for (int i = 0; i < 100; ++i) {
    const FieldElement a = random_element(rng);
    ASSERT_EQ(FieldElement::parse(a.to_string()), a);
  }
  EXPECT_THROW(FieldElement::parse("(1 2 3)"), std::invalid_argument);
}

TEST(Field, TotalDimensionIsInField) {
  const auto& d = total_dimension_in_field();
  ASSERT_TRUE(d.has_value());
  EXPECT_EQ(*d * *d, FieldElement::phi() + FieldElement(2));
  EXPECT_EQ(*d, FieldElement::zeta(1) + FieldElement::zeta(-1));
  EXPECT_NEAR(d->to_complex_double().real(), 2 * std::cos(M_PI / 10), 1e-14);
}

TEST(Field, SquareRootSearchRejectsNonSquares) {
  EXPECT_FALSE(sqrt_in_field(FieldElement(3)).has_value());
  const auto r = sqrt_in_field(FieldElement(4) * FieldElement::phi());
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(*r * *r, FieldElement(4) * FieldElement::phi());
}

TEST(DScaled, SquareAnchor) {
  const DScaledValue d = DScaledValue::d();
  const FieldElement sqrt5 = FieldElement(2) * FieldElement::phi() - FieldElement(1);
  const FieldElement anchor = (FieldElement(5) + sqrt5) / FieldElement(2);
  EXPECT_EQ(d * d, DScaledValue(anchor));
  EXPECT_EQ((d * d).dpow(), 0);
}

TEST(DScaled, CanonicalFold) {
  const FieldElement x = FieldElement::zeta(3) + FieldElement(2);
  const DScaledValue a(x, -1);
  const DScaledValue c = a.canonical();
  EXPECT_EQ(c.dpow(), 1);
  EXPECT_EQ(c, a);
  EXPECT_EQ(DScaledValue(x, 2), DScaledValue(x * total_dimension_squared(), 0));
  EXPECT_EQ(DScaledValue(FieldElement(), 3).canonical().dpow(), 0);
  EXPECT_NEAR(std::abs(a.to_complex_double() - x.to_complex_double() / (2 * std::cos(M_PI / 10))), 0.0, 1e-13);
}

TEST(DScaled, MixedParityComparesThroughField) {
  const auto& d = total_dimension_in_field();
  ASSERT_TRUE(d);
  EXPECT_EQ(DScaledValue::d(), DScaledValue(*d, 0));
  EXPECT_NE(DScaledValue::d(), DScaledValue(FieldElement(2), 0));
}

TEST(RootTwo, CanonicalForm) {
  const RootTwoInteger a(mpz_class(-12), 6);
  EXPECT_EQ(a.m(), -3);
  EXPECT_EQ(a.k(), 2);
  EXPECT_EQ(RootTwoInteger(mpz_class(0), 5).k(), 0);
  EXPECT_EQ(RootTwoInteger(mpz_class(2), 1).k(), 1);
  EXPECT_EQ(RootTwoInteger(mpz_class(-3), 4).to_string(), "-3/√2^4");
  EXPECT_DOUBLE_EQ(RootTwoInteger(mpz_class(-3), 4).to_double(), -0.75);
}

TEST(RootTwo, RingOperations) {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<int> m(-50, 50), k(0, 5);
  for (int i = 0; i < 1000; ++i) {
    const int par = i % 2;
    const RootTwoInteger a(mpz_class(m(rng)), 2 * k(rng) + par);
    const RootTwoInteger b(mpz_class(m(rng)), 2 * k(rng) + par);
    const RootTwoInteger c(mpz_class(m(rng)), 2 * k(rng) + par);
    ASSERT_EQ((a + b) + c, a + (b + c));
    ASSERT_EQ(a * (b + c), a * b + a * c);
    ASSERT_NEAR((a * b).to_double(), a.to_double() * b.to_double(), 1e-9);
  }
  EXPECT_THROW(RootTwoInteger(mpz_class(1), 1) + RootTwoInteger(1), std::domain_error);
}
