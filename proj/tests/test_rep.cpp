#include <gtest/gtest.h>

#include "fibwrt/rep.hpp"
#include "rep_helpers.hpp"

using namespace fibwrt;
using namespace fibwrt::testing;

namespace {

Conventions conv_for(const std::string& dataset, BNormalization bn) {
  Conventions c;
  c.dataset = dataset;
  c.b_normalization = bn;
  return c;
}

const Representation& standard_rep() {
  static const Representation r(Conventions{});
  return r;
}

}  // namespace

TEST(Spine, Shapes) {
  EXPECT_EQ(build_spine(1).edges.size(), 1u);
  EXPECT_EQ(build_spine(1).vertices.size(), 0u);
  const Spine s2 = build_spine(2);
  EXPECT_EQ(s2.edges.size(), 3u);
  EXPECT_EQ(s2.vertices.size(), 2u);
  const Spine s3 = build_spine(3);
  EXPECT_EQ(s3.edges.size(), 6u);
  EXPECT_EQ(s3.vertices.size(), 4u);
  for (int g = 2; g <= 5; ++g) {
    const Spine s = build_spine(g);
    std::vector<int> degree(s.edges.size(), 0);
    for (const auto& v : s.vertices)
      for (int e : v) ++degree[e];
    for (int d : degree) EXPECT_EQ(d, 2);  // every edge has two ends
  }
  EXPECT_THROW(build_spine(0), std::invalid_argument);
}

TEST(Basis, CountsMatchVerlinde) {
  const CategoryData c = standard_fibonacci();
  const long expected[] = {2, 5, 15, 50, 175};
  for (int g = 1; g <= 5; ++g) {
    const auto b = enumerate_basis(g, c);
    EXPECT_EQ(static_cast<long>(b.size()), verlinde_dim(g, c));
    EXPECT_EQ(static_cast<long>(b.size()), expected[g - 1]);
    for (Label x : b.front()) EXPECT_EQ(x, 0);
    EXPECT_TRUE(std::is_sorted(b.begin(), b.end()));
  }
}

TEST(Generators, AreExactlyUnitary) {
  for (const std::string ds : {"standard", "standard-conjugate"}) {
    const Representation rep(conv_for(ds, BNormalization::AnomalyFree));
    for (int g = 1; g <= 3; ++g)
      for (int i = 1; i <= generator_count(g); ++i) {
        const Dense u = rep.full_matrix(g, {i});
        EXPECT_TRUE(is_identity(multiply(adjoint(u), u))) << ds << " g=" << g << " i=" << i;
      }
  }
}

TEST(Generators, DisjointCurvesCommute) {
  const Representation& rep = standard_rep();
  for (int g = 2; g <= 3; ++g)
    for (int i = 1; i <= generator_count(g); ++i)
      for (int j = i + 1; j <= generator_count(g); ++j) {
        const GeneratorId x = generator_at(i, g, Ordering::Interleaved);
        const GeneratorId y = generator_at(j, g, Ordering::Interleaved);
        if (curves_meet(x, y)) continue;
        EXPECT_EQ(rep.full_matrix(g, {i, j}), rep.full_matrix(g, {j, i})) << g << ":" << i << "," << j;
      }
}

TEST(Generators, BraidRelationsUpToUnitScalar) {
  for (const std::string ds : {"standard", "standard-conjugate"}) {
    const Representation rep(conv_for(ds, BNormalization::Raw));
    for (int g = 1; g <= 3; ++g)
      for (int i = 1; i <= generator_count(g); ++i)
        for (int j = i + 1; j <= generator_count(g); ++j) {
          const GeneratorId x = generator_at(i, g, Ordering::Interleaved);
          const GeneratorId y = generator_at(j, g, Ordering::Interleaved);
          if (!curves_meet(x, y)) continue;
          const auto s = proportional(rep.full_matrix(g, {i, j, i}), rep.full_matrix(g, {j, i, j}));
          ASSERT_TRUE(s.has_value()) << ds << " g=" << g << " " << i << "," << j;
          EXPECT_EQ(s->norm2(), FieldElement(1));
        }
  }
}

TEST(Generators, VerbatimBreaksUnitarity) {
  const Representation rep(conv_for("verbatim", BNormalization::Raw));
  const Dense u = rep.full_matrix(1, {2});
  EXPECT_FALSE(is_identity(multiply(adjoint(u), u)));
}

TEST(Generators, GenusOneTwists) {
  const Representation pv(conv_for("verbatim", BNormalization::Raw));
  const Dense a = pv.full_matrix(1, {1});
  EXPECT_EQ(a[0][0], FieldElement(1));
  EXPECT_EQ(a[1][1], FieldElement::zeta(6));
  EXPECT_TRUE(a[0][1].is_zero() && a[1][0].is_zero());

  // b = S^-1 T S with S the genus-1 S matrix; S is unitary for standard data so S^-1 = S^dagger.
  for (const std::string ds : {"verbatim", "standard"}) {
    const Representation rep(conv_for(ds, BNormalization::Raw));
    const DerivedData& dd = rep.derived();
    const CategoryData& c = rep.category();
    const FieldElement d2 = dd.d_squared;
    Dense s(2, std::vector<FieldElement>(2)), t(2, std::vector<FieldElement>(2));
    for (int j = 0; j < 2; ++j) {
      t[j][j] = c.theta(j);
      for (int k = 0; k < 2; ++k) s[j][k] = dd.ds(0, j, k);
    }
    const FieldElement det = s[0][0] * s[1][1] - s[0][1] * s[1][0];
    Dense sinv = {{s[1][1] / det, -s[0][1] / det}, {-s[1][0] / det, s[0][0] / det}};
    EXPECT_EQ(rep.full_matrix(1, {2}), multiply(sinv, multiply(t, s))) << ds;
    if (ds == "standard") {
      Dense sdag = adjoint(s);
      for (auto& row : sdag)
        for (auto& x : row) x = x / d2;
      EXPECT_EQ(rep.full_matrix(1, {2}), multiply(sdag, multiply(t, s)));
    }
  }
}

TEST(Generators, AnomalyFreeScaleFixesVacuumPhase) {
  const Representation raw(conv_for("standard", BNormalization::Raw));
  const Representation af(conv_for("standard", BNormalization::AnomalyFree));
  ASSERT_TRUE(raw.lambda().has_value());
  EXPECT_EQ(raw.lambda()->norm2(), FieldElement(1));
  EXPECT_EQ(raw.lambda(), af.lambda());
  // lambda = exp(-7 pi i / 10)
  EXPECT_EQ(*raw.lambda(), FieldElement::zeta(-7));
  const auto d = total_dimension_in_field();
  EXPECT_EQ(*d * af.full_matrix(1, {2})[0][0], FieldElement(1));
  EXPECT_THROW(Representation(conv_for("verbatim", BNormalization::AnomalyFree)), std::domain_error);
}

TEST(ApplyWord, Examples) {
  const Representation& rep = standard_rep();
  const GenusRep& r2 = rep.at(2);
  const auto v0 = r2.vacuum();
  EXPECT_EQ(r2.apply_word(v0, {}), v0);
  EXPECT_EQ(r2.apply_word(v0, {1}), v0);
  for (int i = 1; i <= 5; ++i) {
    std::vector<FieldElement> v(r2.dim());
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = FieldElement::zeta(static_cast<int>(k)) + FieldElement(static_cast<long>(k));
    EXPECT_EQ(r2.apply_word(v, {i, -i}), v);
    EXPECT_EQ(r2.apply_word(v, {-i, i}), v);
  }
  // rightmost letter acts first
  const auto lhs = r2.apply_word(v0, {1, 2});
  EXPECT_EQ(lhs, r2.apply_word(r2.apply_word(v0, {2}), {1}));
  EXPECT_THROW(r2.apply_word(v0, {6}), std::out_of_range);
}

TEST(ApplyWord, DScaledStates) {
  const Representation& rep = standard_rep();
  std::vector<DScaledValue> v(5);
  v[0] = DScaledValue::d();
  const auto out = rep.apply_word(2, v, {2});
  const auto plain = rep.apply_word(2, rep.at(2).vacuum(), {2});
  for (std::size_t i = 0; i < 5; ++i) EXPECT_EQ(out[i], DScaledValue(plain[i], 1));
}

TEST(FullMatrix, Examples) {
  const Representation& rep = standard_rep();
  EXPECT_TRUE(is_identity(rep.full_matrix(2, {})));
  const Dense a1 = rep.full_matrix(2, {1});
  for (std::size_t i = 0; i < a1.size(); ++i)
    for (std::size_t j = 0; j < a1.size(); ++j) {
      if (i != j) EXPECT_TRUE(a1[i][j].is_zero());
      else EXPECT_TRUE(a1[i][i] == FieldElement(1) || a1[i][i] == rep.category().theta(1));
    }
  const Word w = {2, 3, -5, 4, 1};
  const Dense m = rep.full_matrix(3, w);
  const auto col = rep.apply_word(3, rep.at(3).vacuum(), w);
  for (std::size_t i = 0; i < col.size(); ++i) EXPECT_EQ(m[i][0], col[i]);
  EXPECT_THROW(rep.full_matrix(3, w, 10), std::length_error);
}

TEST(Operators, DumpListsTriplets) {
  const Representation& rep = standard_rep();
  const std::string d = rep.dump_operator(1, 1);
  EXPECT_EQ(d.substr(0, 4), "0 0 ");
  EXPECT_NE(d.find("\n1 1 "), std::string::npos);
}

TEST(Operators, LocalSupportIsSmall) {
  const Representation& rep = standard_rep();
  for (int g = 1; g <= 5; ++g)
    for (int i = 1; i <= generator_count(g); ++i) EXPECT_LE(rep.at(g).generator(i).local.support.size(), 6u);
}
