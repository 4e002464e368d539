#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "toricgcp/errors.hpp"
#include "toricgcp/resultant.hpp"

using namespace toricgcp;
using testing_util::P;
using testing_util::S;

namespace {

const Field Q = Field::rationals();

Support triangle() { return S({{0, 0}, {1, 0}, {0, 1}}); }
Support bilinear_support() { return S({{0, 1}, {1, 0}, {1, 1}}); }

MultiPoly normalized(const MultiPoly& p) { return make_primitive(p).poly; }

// Random polynomial on the support with a planted zero at zeta (the
// coefficient of the first point is solved for).
MultiPoly planted(std::mt19937_64& rng, Field f, const VarList& v, const Support& s, const std::vector<FieldElem>& zeta) {
  std::uniform_int_distribution<long> d(1, static_cast<long>(f.characteristic()) - 1);
  std::vector<Term> terms;
  FieldElem acc(f, 0L);
  for (std::size_t j = 1; j < s.size(); ++j) {
    const auto& e = s.points()[j];
    FieldElem c(f, d(rng));
    FieldElem mono(f, 1L);
    for (std::size_t k = 0; k < e.size(); ++k) mono *= zeta[k].pow(static_cast<std::uint64_t>(e[k]));
    acc += c * mono;
    Exponent ex(e.begin(), e.end());
    ex.resize(v->size(), 0);
    terms.push_back({ex, c});
  }
  const auto& e0 = s.points()[0];
  FieldElem mono(f, 1L);
  for (std::size_t k = 0; k < e0.size(); ++k) mono *= zeta[k].pow(static_cast<std::uint64_t>(e0[k]));
  Exponent ex(e0.begin(), e0.end());
  ex.resize(v->size(), 0);
  terms.push_back({ex, -acc / mono});
  return MultiPoly::from_terms(f, v, terms);
}

}  // namespace

TEST(Resultant, LinearSystemGivesTheCoefficientDeterminant) {
  const auto v = make_vars({"x", "y", "a1", "a2", "a3", "b1", "b2", "b3", "c1", "c2", "c3"});
  const std::vector<MultiPoly> ps{P(Q, v, "a1+a2*x+a3*y"), P(Q, v, "b1+b2*x+b3*y"), P(Q, v, "c1+c2*x+c3*y")};
  const SupportTuple T{triangle(), triangle(), triangle()};
  const auto cem = ce_matrix(T, ps, 2, {});
  EXPECT_EQ(cem.matrix.dim(), 3u);

  const auto r = toric_resultant(T, ps, {});
  const auto pv = parameter_vars(v, 2);
  PolyMatrix m(Q, pv, 3);
  const char* names[3][3] = {{"a1", "a2", "a3"}, {"b1", "b2", "b3"}, {"c1", "c2", "c3"}};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m.at(i, j) = P(Q, pv, names[i][j]);
  EXPECT_EQ(r.poly, normalized(det_fraction_free(m)));
}

TEST(Resultant, BilinearPairUResultantMatchesBracketExpansion) {
  const auto v = make_vars({"x", "y", "a1", "a2", "a3", "b1", "b2", "b3", "u0", "u1", "u2"});
  const std::vector<MultiPoly> ps{P(Q, v, "a1*y+a2*x+a3*x*y"), P(Q, v, "b1*y+b2*x+b3*x*y"), P(Q, v, "u0+u1*x+u2*y")};
  const SupportTuple T{bilinear_support(), bilinear_support(), triangle()};
  const auto r = toric_resultant(T, ps, {});
  const auto pv = parameter_vars(v, 2);
  const auto expect = P(Q, pv,
                        "(a3^2*b2*b1+b3^2*a2*a1-b3*a2*a3*b1-b3*a3*b2*a1)*u0"
                        "+(b1^2*a2*a3-b1*b3*a2*a1-b2*a1*a3*b1+b2*b3*a1^2)*u1"
                        "+(b1*b3*a2^2-b2*a2*a3*b1+b2^2*a3*a1-b2*b3*a2*a1)*u2");
  EXPECT_EQ(r.poly, normalized(expect));
  EXPECT_EQ(r.rows, 7u);
}

TEST(Resultant, BilinearSpecializationVanishes) {
  const auto v = make_vars({"x", "y", "u0", "u1", "u2"});
  const std::vector<MultiPoly> ps{P(Q, v, "x+2*x*y"), P(Q, v, "x+3*x*y"), P(Q, v, "u0+u1*x+u2*y")};
  const auto r = toric_resultant({bilinear_support(), bilinear_support(), triangle()}, ps, {});
  EXPECT_TRUE(r.poly.is_zero());
}

// Property: the degree in the coefficients of f_i is the mixed volume of the
// other supports.
TEST(Resultant, DegreeInEachCoefficientGroup) {
  const auto v = make_vars({"x", "y", "a0", "a1", "a2", "a3", "b0", "b1", "b2", "c0", "c1", "c2"});
  const SupportTuple T{S({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), S({{0, 0}, {2, 0}, {0, 1}}), triangle()};
  const std::vector<MultiPoly> ps{P(Q, v, "a0+a1*x+a2*y+a3*x*y"), P(Q, v, "b0+b1*x^2+b2*y"), P(Q, v, "c0+c1*x+c2*y")};
  const auto r = toric_resultant(T, ps, {});
  ASSERT_FALSE(r.poly.is_zero());
  const std::vector<std::vector<std::size_t>> groups{{0, 1, 2, 3}, {4, 5, 6}, {7, 8, 9}};
  for (std::size_t i = 0; i < 3; ++i) {
    SupportTuple others;
    for (std::size_t j = 0; j < 3; ++j) {
      if (j != i) others.push_back(T[j]);
    }
    EXPECT_TRUE(r.poly.is_homogeneous_in(groups[i]));
    EXPECT_EQ(r.poly.degree_in(groups[i]), mixed_volume(others)) << "group " << i;
  }
}

TEST(Resultant, SeedIndependentAfterNormalization) {
  const auto v = make_vars({"x", "y", "u0", "u1", "u2"});
  const std::vector<MultiPoly> ps{P(Q, v, "1+2*x-2*x^2*y-5*x*y+x^2+3*x^3*y"), P(Q, v, "3+x-y+x*y+7*x^2"),
                                  P(Q, v, "u0+u1*x+u2*y")};
  SupportTuple T;
  for (const auto& p : ps) T.push_back(support_of(p, 2));
  const auto base = toric_resultant(T, ps, {}).poly;
  ASSERT_FALSE(base.is_zero());
  for (std::uint64_t seed : {1u, 2u, 31u}) {
    ResultantOptions o;
    o.seed = seed;
    EXPECT_EQ(toric_resultant(T, ps, o).poly, base) << "seed " << seed;
  }
}

// Property: the last polynomial owns exactly M(A_1..A_n) rows.
TEST(Resultant, RowsOfTheLastPolynomialCountTheMixedVolume) {
  std::mt19937_64 rng(8);
  const auto v = make_vars({"x", "y"});
  int checked = 0;
  for (int it = 0; it < 40 && checked < 15; ++it) {
    SupportTuple T;
    std::vector<MultiPoly> ps;
    for (int i = 0; i < 3; ++i) {
      T.push_back(testing_util::random_support(rng, 2, 2, 3));
      std::vector<Term> terms;
      for (const auto& e : T.back().points()) terms.push_back({{static_cast<std::uint32_t>(e[0]), static_cast<std::uint32_t>(e[1])}, FieldElem(Q, static_cast<long>(1 + rng() % 9))});
      ps.push_back(MultiPoly::from_terms(Q, v, terms));
    }
    const std::int64_t m = mixed_volume({T[0], T[1]});
    CEMatrix cem = [&] {
      try {
        return ce_matrix(T, ps, 2, {});
      } catch (const PreconditionError&) {
        return CEMatrix{{}, {}, PolyMatrix(Q, v, 0), {}, {}, {}, 0, 0};
      }
    }();
    if (cem.points.empty()) continue;
    std::int64_t last = 0;
    for (const auto& rc : cem.content) last += rc.poly == 2;
    EXPECT_EQ(last, m);
    EXPECT_EQ(cem.matrix.dim(), cem.points.size());
    ++checked;
  }
  EXPECT_GE(checked, 10);
}

// Property: a planted common torus root forces the resultant to vanish.
TEST(Resultant, PlantedCommonRootVanishesOverPrimeField) {
  const Field F = Field::prime(101);
  const auto v = make_vars({"x", "y"});
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<long> d(1, 100);
  for (int it = 0; it < 10; ++it) {
    const std::vector<FieldElem> zeta{FieldElem(F, d(rng)), FieldElem(F, d(rng))};
    const SupportTuple T{S({{0, 0}, {1, 0}, {0, 1}, {1, 1}}), S({{0, 0}, {2, 0}, {0, 1}}), triangle()};
    std::vector<MultiPoly> ps;
    for (const auto& s : T) ps.push_back(planted(rng, F, v, s, zeta));
    EXPECT_TRUE(toric_resultant(T, ps, {}).poly.is_zero());
  }
}

TEST(Resultant, CapGuardsTheMatrixSize) {
  const auto v = make_vars({"x", "y", "u0", "u1", "u2"});
  const std::vector<MultiPoly> ps{P(Q, v, "1+x^3*y^2+x"), P(Q, v, "2+y^3+x*y"), P(Q, v, "u0+u1*x+u2*y")};
  SupportTuple T;
  for (const auto& p : ps) T.push_back(support_of(p, 2));
  ResultantOptions o;
  o.cap = 4;
  EXPECT_THROW(toric_resultant(T, ps, o), CapExceeded);
}

TEST(Resultant, RejectsMonomialsOutsideTheDeclaredSupport) {
  const auto v = make_vars({"x", "y"});
  const std::vector<MultiPoly> ps{P(Q, v, "1+x^2"), P(Q, v, "1+y"), P(Q, v, "x+y")};
  EXPECT_THROW(toric_resultant({triangle(), triangle(), triangle()}, ps, {}), PreconditionError);
}
