#include <gtest/gtest.h>

#include <random>

#include "helpers.hpp"
#include "toricgcp/det.hpp"
#include "toricgcp/errors.hpp"
#include "toricgcp/univariate.hpp"

using namespace toricgcp;
using testing_util::P;

namespace {

const Field Q = Field::rationals();

MultiPoly cofactor_det(const PolyMatrix& m) {
  const std::size_t n = m.dim();
  if (n == 0) return MultiPoly::constant(m.field(), m.vars(), FieldElem(m.field(), 1L));
  if (n == 1) return m.at(0, 0);
  MultiPoly acc(m.field(), m.vars());
  for (std::size_t c = 0; c < n; ++c) {
    PolyMatrix minor(m.field(), m.vars(), n - 1);
    for (std::size_t r = 1; r < n; ++r) {
      for (std::size_t k = 0, kk = 0; k < n; ++k) {
        if (k == c) continue;
        minor.at(r - 1, kk++) = m.at(r, k);
      }
    }
    const MultiPoly term = m.at(0, c) * cofactor_det(minor);
    if (c % 2) acc -= term;
    else acc += term;
  }
  return acc;
}

PolyMatrix random_matrix(std::mt19937_64& rng, Field f, const VarList& v, std::size_t n, double zero_rate) {
  std::uniform_int_distribution<int> coef(-5, 5);
  std::uniform_int_distribution<int> deg(0, 1);
  std::bernoulli_distribution zero(zero_rate);
  PolyMatrix m(f, v, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      if (zero(rng)) continue;
      MultiPoly e = MultiPoly::constant(f, v, FieldElem(f, static_cast<long>(coef(rng))));
      for (std::size_t j = 0; j < v->size(); ++j) {
        if (deg(rng)) e += MultiPoly::variable(f, v, j).scaled(FieldElem(f, static_cast<long>(coef(rng))));
      }
      m.at(r, c) = e;
    }
  }
  return m;
}

}  // namespace

TEST(Field, RationalArithmeticIsExact) {
  const auto a = FieldElem::parse(Q, "-6/4");
  EXPECT_EQ(a.str(), "-3/2");
  EXPECT_EQ((a * a.inverse()).str(), "1");
  EXPECT_EQ((a + FieldElem(Q, 2L)).str(), "1/2");
  EXPECT_THROW(FieldElem(Q, 0L).inverse(), PreconditionError);
}

TEST(Field, PrimeFieldResidues) {
  const Field F = Field::prime(101);
  EXPECT_EQ(FieldElem::parse(F, "-1").str(), "100");
  EXPECT_EQ(FieldElem::parse(F, "1/2").str(), "51");
  for (long x = 1; x < 101; ++x) EXPECT_TRUE((FieldElem(F, x) * FieldElem(F, x).inverse()).is_one());
  EXPECT_THROW(Field::prime(100), PreconditionError);
  EXPECT_THROW(FieldElem(F, 1L) + FieldElem(Q, 1L), PreconditionError);
}

TEST(Poly, GrlexOrderAndPrinting) {
  const auto v = make_vars({"x", "y"});
  const auto f = P(Q, v, "y + x^2 + x*y + 3");
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f.terms()[0].exp, (Exponent{2, 0}));
  EXPECT_EQ(f.terms()[1].exp, (Exponent{1, 1}));
  EXPECT_EQ(f.terms()[2].exp, (Exponent{0, 1}));
  EXPECT_EQ(f.str(), P(Q, v, f.str()).str());
}

TEST(Poly, ParserRejectsUnknownNames) {
  const auto v = make_vars({"x"});
  EXPECT_THROW(P(Q, v, "x + z"), SchemaError);
  EXPECT_THROW(P(Q, v, "x +"), SchemaError);
  EXPECT_THROW(P(Q, v, "x^-1"), SchemaError);
}

TEST(Poly, DivexactRoundTrips) {
  const auto v = make_vars({"x", "y", "z"});
  std::mt19937_64 rng(3);
  for (int it = 0; it < 20; ++it) {
    const auto m = random_matrix(rng, Q, v, 2, 0.0);
    const auto a = m.at(0, 0) + m.at(0, 1);
    const auto b = m.at(1, 0) * m.at(1, 1) + MultiPoly::constant(Q, v, FieldElem(Q, 1L));
    if (a.is_zero()) continue;
    EXPECT_EQ(divexact(a * b, a), b);
  }
  EXPECT_THROW(divexact(P(Q, v, "x^2+1"), P(Q, v, "x+1")), NotDivisible);
}

TEST(Poly, PrimitiveNormalization) {
  const auto v = make_vars({"u"});
  const auto n = make_primitive(P(Q, v, "-4/3*u^2 + 2/3"));
  EXPECT_EQ(n.poly, P(Q, v, "2*u^2 - 1"));
  EXPECT_EQ(n.scalar.str(), "-2/3");
}

TEST(Poly, EmbedAndSubstitute) {
  const auto v = make_vars({"x", "y"});
  const auto w = make_vars({"y", "s", "x"});
  const auto f = P(Q, v, "x^2*y - 3*y");
  EXPECT_EQ(f.embed(w), P(Q, w, "x^2*y - 3*y"));
  EXPECT_EQ(f.substitute(0, FieldElem(Q, 2L)), P(Q, v, "y"));
  EXPECT_THROW(P(Q, w, "s").embed(v), PreconditionError);
}

TEST(Det, FractionFreeMatchesCofactorExpansion) {
  const auto v = make_vars({"a", "b"});
  std::mt19937_64 rng(11);
  for (std::size_t n = 1; n <= 5; ++n) {
    for (int it = 0; it < 6; ++it) {
      const auto m = random_matrix(rng, Q, v, n, 0.3);
      EXPECT_EQ(det_fraction_free(m), cofactor_det(m)) << "n=" << n;
    }
  }
}

TEST(Det, InterpolationMatchesBareiss) {
  const auto v = make_vars({"a", "b", "c"});
  std::mt19937_64 rng(12);
  const std::vector<std::size_t> vars{0, 2};
  for (std::size_t n = 2; n <= 5; ++n) {
    const auto m = random_matrix(rng, Q, v, n, 0.2);
    EXPECT_EQ(det_interpolated(m, vars), det_fraction_free(m));
  }
  const Field F = Field::prime(7);
  const auto m = random_matrix(rng, F, v, 5, 0.0);
  EXPECT_EQ(det_interpolated(m, vars), det_fraction_free(m));
}

TEST(Det, ModularMatchesExact) {
  const std::uint64_t p = 1000003;
  const Field F = Field::prime(p);
  const auto v = make_vars({});
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<std::uint64_t> d(0, p - 1);
  for (int it = 0; it < 10; ++it) {
    std::vector<std::vector<std::uint64_t>> raw(6, std::vector<std::uint64_t>(6));
    PolyMatrix m(F, v, 6);
    for (std::size_t r = 0; r < 6; ++r)
      for (std::size_t c = 0; c < 6; ++c) {
        raw[r][c] = it == 0 && r == 5 ? raw[0][c] : d(rng);
        m.at(r, c) = MultiPoly::constant(F, v, FieldElem(F, mpz_class(static_cast<unsigned long>(raw[r][c]))));
      }
    const auto exact = det_fraction_free(m);
    const std::uint64_t want = exact.is_zero() ? 0 : exact.terms()[0].coeff.residue();
    EXPECT_EQ(det_mod_p(raw, p), want);
  }
}

TEST(Univariate, RootsOverPrimeFieldMatchBruteForce) {
  const Field F = Field::prime(31);
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<long> d(0, 30);
  for (int it = 0; it < 40; ++it) {
    std::vector<FieldElem> c;
    for (int k = 0; k < 7; ++k) c.emplace_back(F, d(rng));
    c.emplace_back(F, 1L);
    UniPoly p(F, c);
    if (it % 3 == 0) p = p * UniPoly::x_minus(FieldElem(F, 4L)) * UniPoly::x_minus(FieldElem(F, 4L));
    const auto r = roots_in_field(p);
    std::vector<long> want;
    for (long x = 0; x < 31; ++x) {
      if (p(FieldElem(F, x)).is_zero()) want.push_back(x);
    }
    std::vector<long> got;
    int total = 0;
    for (const auto& rm : r.roots) {
      got.push_back(static_cast<long>(rm.root.residue()));
      total += rm.multiplicity;
    }
    std::sort(got.begin(), got.end());
    EXPECT_EQ(got, want);
    // Multiplicities and remainder re-expand to p.
    UniPoly back = UniPoly::constant(F, r.unit) * r.remainder;
    for (const auto& rm : r.roots)
      for (int k = 0; k < rm.multiplicity; ++k) back = back * UniPoly::x_minus(rm.root);
    EXPECT_EQ(back, p);
    EXPECT_EQ(total + r.remainder.degree(), p.degree());
  }
}

TEST(Univariate, RationalRootsAreExact) {
  const auto v = make_vars({"t"});
  const auto f = P(Q, v, "(7*t-1)*(4*t-7)*(t+1)^2*(t^2+1)*(t^2-2)");
  const auto r = univ_roots(f);
  ASSERT_EQ(r.roots.size(), 3u);
  std::vector<std::string> got;
  for (const auto& rm : r.roots) got.push_back(rm.root.str() + "^" + std::to_string(rm.multiplicity));
  std::sort(got.begin(), got.end());
  EXPECT_EQ(got, (std::vector<std::string>{"-1^2", "1/7^1", "7/4^1"}));
  EXPECT_EQ(r.remainder, P(Q, v, "(t^2+1)*(t^2-2)"));
}

TEST(Univariate, NoRationalRootsOverQ) {
  const auto v = make_vars({"t"});
  const auto r = univ_roots(P(Q, v, "t^2+1"));
  EXPECT_TRUE(r.roots.empty());
  const auto r5 = univ_roots(P(Field::prime(5), make_vars({"t"}), "t^2+1"));
  EXPECT_EQ(r5.roots.size(), 2u);
}
