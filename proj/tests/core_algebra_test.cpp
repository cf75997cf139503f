#include <gtest/gtest.h>

#include "charclass/genus.hpp"
#include "charclass/presentation.hpp"
#include "test_support.hpp"

using namespace charclass;

namespace {

QPoly q(const std::string& text, const RingPresentation& R) { return parse_poly(text, R.generators()); }

}  // namespace

TEST(PolyReduce, EulerSquareIsTopPontrjagin) {
  const auto bso4 = RingPresentation::bso(4);
  EXPECT_TRUE(poly_reduce(q("chi^2 - p2", bso4), bso4).is_zero());
}

TEST(PolyReduce, DropsZeroCoefficients) {
  const auto bso4 = RingPresentation::bso(4);
  const QPoly p = q("p1 + 0*p2", bso4);
  EXPECT_EQ(p.size(), 1u);
  EXPECT_EQ(poly_reduce(p, bso4).to_string(), "1*p1");
}

TEST(PolyReduce, EulerCubeRewritesOnce) {
  const auto bso4 = RingPresentation::bso(4);
  EXPECT_EQ(poly_reduce(q("chi^3", bso4), bso4), q("p2*chi", bso4));
}

TEST(PolyReduce, UnknownGeneratorIsPresentationMismatch) {
  const auto bso4 = RingPresentation::bso(4);
  const auto bso3 = RingPresentation::bso(3);
  EXPECT_THROW(poly_reduce(q("chi", bso4), bso3), PresentationMismatch);
}

TEST(PolyReduce, TruncatesAboveTruncationDegree) {
  const auto bso3 = RingPresentation::bso(3, 8);
  EXPECT_EQ(poly_reduce(q("1 + p1 + p1^2 + p1^3", bso3), bso3), q("1 + p1 + p1^2", bso3));
}

TEST(Presentation, BsoShapes) {
  const auto bso4 = RingPresentation::bso(4);
  ASSERT_EQ(bso4.generators()->size(), 3u);
  EXPECT_EQ((*bso4.generators())[2].name, "chi");
  EXPECT_EQ((*bso4.generators())[2].degree, 4);
  const auto bso5 = RingPresentation::bso(5);
  ASSERT_EQ(bso5.generators()->size(), 2u);
  EXPECT_EQ((*bso5.generators())[1].degree, 8);
  EXPECT_EQ(RingPresentation::bso(1).generators()->size(), 0u);
  // H^8(BSO(4)): p2, p1*chi, p1^2 in graded-lex order
  const auto basis = bso4.monomial_basis(8);
  ASSERT_EQ(basis.size(), 3u);
  EXPECT_EQ(basis[0], (Exponents{0, 1, 0}));
  EXPECT_EQ(basis[1], (Exponents{1, 0, 1}));
  EXPECT_EQ(basis[2], (Exponents{2, 0, 0}));
}

TEST(Presentation, RejectsNonReducingRule) {
  auto g = make_generators({{"z", 2}});
  EXPECT_THROW(RingPresentation(g, {{0, 2, parse_poly("z^2", g)}}), InvalidArgument);
  auto gh = make_generators({{"h", 2}, {"z", 2}});
  EXPECT_THROW(RingPresentation(gh, {{1, 2, parse_poly("h", gh)}}), DegreeMismatch);
}

TEST(PolyText, BitExactPrinting) {
  const auto bso5 = RingPresentation::bso(5);
  EXPECT_EQ(q("-1/45*p1^2 + 7/45*p2", bso5).to_string(), "7/45*p2 - 1/45*p1^2");
  EXPECT_EQ(q("-p1", bso5).to_string(), "-1*p1");
  EXPECT_EQ(q("2 - 3/4*p1*p2", bso5).to_string(), "2 - 3/4*p1*p2");
  EXPECT_EQ(q("0", bso5).to_string(), "0");
  EXPECT_EQ(q("p1*p2 - p1^3", bso5).to_compact_string(), "p1*p2 - p1^3");
}

TEST(PolyText, ParseErrors) {
  const auto bso5 = RingPresentation::bso(5);
  EXPECT_THROW(q("", bso5), ParseError);
  EXPECT_THROW(q("1/3*", bso5), ParseError);
  EXPECT_THROW(q("p1 p2", bso5), ParseError);
  EXPECT_THROW(q("1/0*p1", bso5), NonInvertible);
  EXPECT_THROW(q("p9", bso5), PresentationMismatch);
}

TEST(PolyText, PrintParseRoundTripProperty) {
  std::mt19937_64 rng(7);
  const auto bso6 = RingPresentation::bso(6);
  for (int i = 0; i < 200; ++i) {
    const auto p = prop::random_poly(rng, bso6.generators(), RationalField{}, 5, 3);
    EXPECT_EQ(q(p.to_string(), bso6), p) << p.to_string();
  }
  const PrimeField f7(7);
  for (int i = 0; i < 50; ++i) {
    const auto p = prop::random_poly(rng, bso6.generators(), f7, 5, 3);
    EXPECT_EQ(parse_poly(p.to_string(), bso6.generators(), f7), p);
  }
}

TEST(PolySubstitute, IdentityAssignment) {
  const auto l = multiplicative_sequence(genus_series(GenusKind::L, 2), 2, 8);
  const RingPresentation R(l.gens);
  const QPoly l2 = l.component(8);
  EXPECT_EQ(poly_substitute(l2, Assignment<RationalField>{}, R), l2);
}

namespace {

// p_k -> sum_{i+j=k} p_i' p_j'' with two rank-2m' summands.
struct WhitneySplit {
  RingPresentation target;
  Assignment<RationalField> assignment;
};

WhitneySplit whitney_split(int m, int m1, int m2, int truncation) {
  std::vector<Generator> gens;
  for (int i = 1; i <= m1; ++i) gens.push_back({"a" + std::to_string(i), 4 * i});
  for (int i = 1; i <= m2; ++i) gens.push_back({"b" + std::to_string(i), 4 * i});
  WhitneySplit w{RingPresentation(make_generators(gens), {}, truncation), {}};
  const auto& g = w.target.generators();
  auto cls = [&](const std::string& prefix, int i, int max) {
    if (i == 0) return QPoly::constant(g, 1);
    if (i > max) return QPoly(g);
    return QPoly::generator(g, prefix + std::to_string(i));
  };
  for (int k = 1; k <= m; ++k) {
    QPoly img(g);
    for (int i = 0; i <= k; ++i) img += cls("a", i, m1) * cls("b", k - i, m2);
    w.assignment.emplace("p" + std::to_string(k), img);
  }
  return w;
}

}  // namespace

TEST(PolySubstitute, LinearityOnFirstLClass) {
  const auto w = whitney_split(2, 2, 2, 64);
  const auto l = multiplicative_sequence(genus_series(GenusKind::L, 1), 2, 4);
  EXPECT_EQ(poly_substitute(l.component(4), w.assignment, w.target),
            parse_poly("1/3*a1 + 1/3*b1", w.target.generators()));
}

TEST(PolySubstitute, WhitneyProductThroughDegreeEight) {
  const auto w = whitney_split(2, 2, 2, 8);
  const auto l = multiplicative_sequence(genus_series(GenusKind::L, 2), 2, 8);
  const QPoly lhs = poly_substitute(l.total(), w.assignment, w.target);
  const QPoly la = poly_substitute(l.total(), {{"p1", QPoly::generator(w.target.generators(), "a1")},
                                               {"p2", QPoly::generator(w.target.generators(), "a2")}},
                                   w.target);
  const QPoly lb = poly_substitute(l.total(), {{"p1", QPoly::generator(w.target.generators(), "b1")},
                                               {"p2", QPoly::generator(w.target.generators(), "b2")}},
                                   w.target);
  EXPECT_EQ(lhs, reduced_product(la, lb, w.target));
}

TEST(PolySubstitute, DegreeMismatchIsRejected) {
  const auto bso5 = RingPresentation::bso(5);
  Assignment<RationalField> bad{{"p1", q("p2", bso5)}};
  EXPECT_THROW(poly_substitute(q("p1", bso5), bad, bso5), DegreeMismatch);
  Assignment<RationalField> inhomogeneous{{"p1", q("p1 + p2", bso5)}};
  EXPECT_THROW(poly_substitute(q("p1", bso5), inhomogeneous, bso5), DegreeMismatch);
}

TEST(SeriesArith, InvertOnePlusZ) {
  const PowerSeries<> one_plus_z({1, 1}, 6);
  const auto inv = series_arith(SeriesOp::invert, one_plus_z);
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(inv[k], k % 2 == 0 ? 1 : -1);
}

TEST(SeriesArith, WuSeriesAtThree) {
  // (z + z^3)(1+z)^{-1}, order 6
  const PowerSeries<> num({0, 1, 0, 1}, 6);
  const PowerSeries<> den({1, 1}, 6);
  const auto inv = series_arith(SeriesOp::invert, den);
  const auto s = series_arith(SeriesOp::multiply, num, &inv);
  const std::vector<Rational> expected{0, 1, -1, 2, -2, 2, -2};
  for (int k = 0; k <= 6; ++k) EXPECT_EQ(s[k], expected[k]) << k;
  PowerSeries<> alt(6);
  for (int l = 0; l <= 6; ++l) {
    const Rational sign = l % 2 == 0 ? 1 : -1;
    if (l + 1 <= 6) alt.set(l + 1, alt[l + 1] + sign);
    if (l + 3 <= 6) alt.set(l + 3, alt[l + 3] + sign);
  }
  EXPECT_EQ(s, alt);
}

TEST(SeriesArith, LSeriesTimesInverse) {
  const auto l = genus_series(GenusKind::L, 16);
  const auto inv = invert(l);
  EXPECT_EQ(multiply(l, inv), PowerSeries<>::monomial(0, 1, 16));
}

TEST(SeriesArith, Errors) {
  EXPECT_THROW(invert(PowerSeries<>({0, 1}, 4)), NonInvertible);
  EXPECT_THROW(compose(PowerSeries<>({1, 1}, 4), PowerSeries<>({1, 1}, 4)), InvalidArgument);
  EXPECT_THROW(series_arith(SeriesOp::multiply, PowerSeries<>(3)), InvalidArgument);
}

TEST(SeriesArith, Compose) {
  // (1 + x + x^2) o (2x) = 1 + 2x + 4x^2
  const auto c = compose(PowerSeries<>({1, 1, 1}, 4), PowerSeries<>({0, 2}, 4));
  EXPECT_EQ(c, PowerSeries<>({1, 2, 4}, 4));
  // 1/(1-x) o x/(1+x) = 1 + x + ... -> (1+x)/(1) ; 1/(1 - x/(1+x)) = 1 + x
  const auto geo = invert(PowerSeries<>({1, -1}, 8));
  const auto inner = multiply(PowerSeries<>({0, 1}, 8), invert(PowerSeries<>({1, 1}, 8)));
  EXPECT_EQ(compose(geo, inner), PowerSeries<>({1, 1}, 8));
}

TEST(SeriesArith, MixedOrdersTakeMinimum) {
  const auto s = PowerSeries<>({1, 1, 1}, 5) * PowerSeries<>({1, 1}, 3);
  EXPECT_EQ(s.order(), 3);
}

TEST(SeriesArith, InverseIsTwoSidedProperty) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto a = prop::random_unit_series(rng, 10);
    const auto inv = invert(a);
    const auto one = PowerSeries<>::monomial(0, 1, 10);
    ASSERT_EQ(multiply(a, inv), one);
    ASSERT_EQ(multiply(inv, a), one);
  }
}

TEST(FieldReduce, LTwoModSeven) {
  const auto bso5 = RingPresentation::bso(5);
  const auto r = field_reduce(q("7/45*p2 - 1/45*p1^2", bso5), 7);
  EXPECT_EQ(r, parse_poly("2*p1^2", bso5.generators(), PrimeField(7)));
  EXPECT_EQ(r.to_string(), "2*p1^2");
}

TEST(FieldReduce, IntegralAndNonIntegral) {
  const auto bso3 = RingPresentation::bso(3);
  EXPECT_EQ(field_reduce(q("p1", bso3), 5).to_string(), "1*p1");
  EXPECT_THROW(field_reduce(q("1/3*p1", bso3), 3), NonIntegralClass);
}

TEST(FieldReduce, CharacteristicTwoAndCompositesRejected) {
  EXPECT_THROW(PrimeField(2), InvalidArgument);
  EXPECT_THROW(PrimeField(9), InvalidArgument);
  EXPECT_THROW(field_reduce(QPoly(), 2), InvalidArgument);
}

TEST(FieldReduce, RingHomomorphismProperty) {
  std::mt19937_64 rng(3);
  const auto bso5 = RingPresentation::bso(5);
  for (std::uint32_t p : {3u, 5u, 7u}) {
    for (int i = 0; i < 100; ++i) {
      const auto a = prop::random_poly(rng, bso5.generators());
      const auto b = prop::random_poly(rng, bso5.generators());
      try {
        const auto ra = field_reduce(a, p), rb = field_reduce(b, p);
        EXPECT_EQ(field_reduce(a + b, p), ra + rb);
        EXPECT_EQ(field_reduce(a * b, p), ra * rb);
      } catch (const NonIntegralClass&) {
        // not defined over Z_(p); skip
      }
    }
  }
}

TEST(PolyReduce, ReductionCommutesWithProductProperty) {
  std::mt19937_64 rng(5);
  for (int n : {2, 4, 6}) {
    const auto R = RingPresentation::bso(n, 40);
    for (int i = 0; i < 100; ++i) {
      const auto a = prop::random_poly(rng, R.generators(), RationalField{}, 4, 3);
      const auto b = prop::random_poly(rng, R.generators(), RationalField{}, 4, 3);
      ASSERT_EQ(poly_reduce(a * b, R), poly_reduce(poly_reduce(a, R) * poly_reduce(b, R), R));
    }
  }
}

TEST(GradedPoly, HomogeneousDecompositionProperty) {
  std::mt19937_64 rng(9);
  const auto gens = RingPresentation::bso(6).generators();
  for (int i = 0; i < 100; ++i) {
    const auto a = prop::random_poly(rng, gens, RationalField{}, 5, 3);
    const auto b = prop::random_poly(rng, gens, RationalField{}, 5, 3);
    QPoly sum(gens);
    for (int d : a.degrees()) sum += a.component(d);
    ASSERT_EQ(sum, a);
    const QPoly ab = a * b;
    for (int d = 0; d <= ab.max_degree(); ++d) {
      QPoly conv(gens);
      for (int i2 = 0; i2 <= d; ++i2) conv += a.component(i2) * b.component(d - i2);
      ASSERT_EQ(ab.component(d), conv);
    }
  }
}
