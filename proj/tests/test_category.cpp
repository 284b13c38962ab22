#include <gtest/gtest.h>

#include "fibwrt/category.hpp"

using namespace fibwrt;

TEST(Category, FibonacciLabelsAndFusion) {
  const CategoryData c = fibonacci();
  EXPECT_EQ(c.rank, 2);
  EXPECT_EQ(c.dual[1], 1);
  const FieldElement sqrt5 = FieldElement(2) * FieldElement::phi() - FieldElement(1);
  EXPECT_EQ(c.qdim[1], (FieldElement(1) + sqrt5) / FieldElement(2));
  EXPECT_TRUE(c.fusion_ok(1, 1, 1));
  EXPECT_FALSE(c.fusion_ok(0, 0, 1));
  EXPECT_TRUE(c.fusion_ok(0, 0, 0));
  EXPECT_FALSE(c.fusion_ok(1, 0, 0));
  EXPECT_TRUE(c.fusion_ok(1, 1, 0));
  for (Label a = 0; a < 2; ++a)
    for (Label b = 0; b < 2; ++b)
      for (Label x = 0; x < 2; ++x) {
        EXPECT_EQ(c.fusion_ok(a, b, x), c.fusion_ok(b, a, x));
        EXPECT_EQ(c.fusion_ok(a, b, x), c.fusion_ok(x, b, a));
      }
}

TEST(Category, NontrivialFBlock) {
  const CategoryData c = fibonacci();
  const FieldElement phi = FieldElement::phi(), sp = FieldElement::sqrt_phi();
  EXPECT_EQ(c.f_at(1, 1, 1, 1, 0, 0), phi.inverse());
  EXPECT_EQ(c.f_at(1, 1, 1, 1, 0, 1), sp.inverse());
  EXPECT_EQ(c.f_at(1, 1, 1, 1, 1, 0), sp.inverse());
  EXPECT_EQ(c.f_at(1, 1, 1, 1, 1, 1), -phi.inverse());
  EXPECT_EQ(c.f_at(0, 0, 0, 1, 0, 0), FieldElement());
}

TEST(Category, TwistPhases) {
  EXPECT_EQ(verbatim_fibonacci().theta(1), FieldElement::zeta(6));
  EXPECT_EQ(standard_fibonacci().theta(1), FieldElement::zeta(12));
  EXPECT_EQ(standard_conjugate().theta(1), FieldElement::zeta(8));
  EXPECT_EQ(standard_fibonacci().theta(0), FieldElement(1));
}

TEST(Category, DerivedTotalDimension) {
  const DerivedData d = compute_derived(fibonacci());
  EXPECT_EQ(d.d_squared, FieldElement::phi() + FieldElement(2));
  EXPECT_EQ(d.total_d * d.total_d, DScaledValue(d.d_squared));
  // the unsquared sum 1 + phi misses the anchor
  EXPECT_NE(FieldElement(1) + FieldElement::phi(), d.d_squared);
}

TEST(Category, GenusOneSValuesThatMatchPrintedAnchors) {
  const DerivedData d = compute_derived(fibonacci());
  EXPECT_EQ(d.ds(0, 0, 0), FieldElement(1));
  EXPECT_EQ(d.ds(0, 1, 0), FieldElement::phi());
  EXPECT_EQ(d.ds(0, 0, 1), FieldElement::phi());
  EXPECT_EQ(d.s_tensor(0, 0, 0).dpow(), -1);
}

TEST(Category, StandardDataGivesUnitaryS) {
  const DerivedData d = compute_derived(standard_fibonacci());
  EXPECT_EQ(d.ds(0, 1, 1), FieldElement(-1));
  EXPECT_EQ(d.ds(0, 1, 0), FieldElement::phi());
  // punctured entry: (R0^2 - R1^2)/sqrt(phi)
  const FieldElement want =
      (FieldElement::zeta(-16) - FieldElement::zeta(12)) * FieldElement::sqrt_phi().inverse();
  EXPECT_EQ(d.ds(1, 1, 1), want);
}

TEST(Category, UnitarityReports) {
  EXPECT_TRUE(check_unitary(standard_fibonacci()).ok());
  EXPECT_TRUE(check_unitary(standard_conjugate()).ok());
  const UnitarityReport pv = check_unitary(verbatim_fibonacci());
  EXPECT_FALSE(pv.ok());
  for (const auto& v : pv.violations) EXPECT_EQ(v.find("F block"), std::string::npos) << v;
}

TEST(Category, CorruptedFIsReported) {
  CategoryData c = standard_fibonacci();
  c.f[{1, 1, 1, 1, 0, 1}] += FieldElement(1);
  const UnitarityReport r = check_unitary(c);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.violations.front().find("F block (1,1,1,1)"), std::string::npos);
}

TEST(Category, NegatedDimensionBreaksS) {
  CategoryData c = standard_fibonacci();
  c.qdim[1] = -c.qdim[1];
  const UnitarityReport r = check_unitary(c);
  ASSERT_FALSE(r.ok());
  bool s_hit = false;
  for (const auto& v : r.violations) s_hit |= v.find("S matrix") != std::string::npos;
  EXPECT_TRUE(s_hit);
}

TEST(Category, DatasetTextRoundTrip) {
  for (const auto& name : dataset_names()) {
    const CategoryData c = dataset_by_name(name);
    const CategoryData back = import_dataset(export_dataset(c));
    EXPECT_EQ(back.name, c.name);
    EXPECT_EQ(back.qdim, c.qdim);
    EXPECT_EQ(back.fusion, c.fusion);
    EXPECT_EQ(back.r, c.r);
    EXPECT_EQ(back.f, c.f);
    EXPECT_EQ(back.r_exponent, c.r_exponent);
    EXPECT_EQ(export_dataset(back), export_dataset(c));
  }
  EXPECT_THROW(import_dataset("labels 2\n"), std::invalid_argument);
  EXPECT_THROW(import_dataset("fibwrt-category 1\nlabels 2\ndual 0 1\nbogus 1\n"), std::invalid_argument);
}
