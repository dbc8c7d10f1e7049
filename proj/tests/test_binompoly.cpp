#include <gtest/gtest.h>

#include <random>

#include "dimpoly/binompoly.hpp"
#include "dimpoly/errors.hpp"
#include "dimpoly/serialize.hpp"
#include "print.hpp"

using namespace dimpoly;

namespace {

NumPoly uni(std::vector<Rational> coeffs_high_to_low) {
  NumPoly::Coeffs c;
  const unsigned d = static_cast<unsigned>(coeffs_high_to_low.size()) - 1;
  for (unsigned i = 0; i <= d; ++i)
    if (coeffs_high_to_low[i] != 0) c[{d - i}] = coeffs_high_to_low[i];
  return NumPoly(1, c);
}

NumPoly random_poly(std::mt19937_64& rng, std::size_t q, unsigned max_deg) {
  NumPoly::Coeffs c;
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, static_cast<int>(max_deg));
  for (int n = 0; n < 5; ++n) {
    NumPoly::Index idx(q);
    for (auto& i : idx) i = static_cast<unsigned>(deg(rng));
    c[idx] += Rational(coef(rng), 1 + (rng() % 3));
  }
  for (auto it = c.begin(); it != c.end();)
    it = it->second == 0 ? c.erase(it) : std::next(it);
  return NumPoly(q, c);
}

}  // namespace

TEST(Binom, Values) {
  EXPECT_EQ(binom(7, 2), 21);
  EXPECT_EQ(binom(5, 0), 1);
  EXPECT_EQ(binom(5, -2), 0);
  EXPECT_EQ(binom(-1, 3), -1);
  EXPECT_EQ(binom(2, 5), 0);
  EXPECT_EQ(binom_int(-3, 2), 6);
}

TEST(NumPoly, ConstantAddition) {
  const NumPoly p = uni({2, -1});
  const NumPoly q = p + NumPoly::constant(1, 1);
  EXPECT_EQ(q, uni({2, 0}));
  for (long t = -3; t <= 3; ++t) EXPECT_EQ(q.evaluate(std::vector<long>{t}), 2 * t + 2);
}

TEST(NumPoly, SquareOfLinear) {
  const NumPoly p = NumPoly::basis({1});
  const NumPoly sq = p * p;
  EXPECT_EQ(sq, uni({2, -1, 0}));
  for (long t = 0; t <= 3; ++t) EXPECT_EQ(sq.evaluate(std::vector<long>{t}), (t + 1) * (t + 1));
}

TEST(NumPoly, SubtractSelfIsZero) {
  const NumPoly p = uni({3, -2, 7});
  EXPECT_TRUE((p - p).is_zero());
  EXPECT_EQ((p - p).to_text(), "0");
}

TEST(NumPoly, MismatchedVariablesThrow) {
  EXPECT_THROW(NumPoly(1) + NumPoly(2), DimensionError);
}

TEST(NumPoly, CanonicalText) {
  EXPECT_EQ(uni({2, -1, 1}).to_text(), "2*C(t1+2,2) - 1*C(t1+1,1) + 1");
  NumPoly::Coeffs c{{{1, 0}, 3}, {{0, 1}, Rational(-1, 2)}};
  EXPECT_EQ(NumPoly(2, c).to_text(), "3*C(t1+1,1) - 1/2*C(t2+1,1)");
}

TEST(NumPoly, Json) {
  NumPoly::Coeffs c{{{1, 0}, 3}, {{0, 1}, Rational(-1, 2)}};
  const NumPoly p(2, c);
  const auto j = to_json(p);
  EXPECT_EQ(j.dump(), R"({"vars":2,"terms":[{"index":[1,0],"coeff":"3"},{"index":[0,1],"coeff":"-1/2"}]})");
  EXPECT_EQ(numpoly_from_json(j), p);
}

TEST(NumPoly, PowerBasis) {
  // C(t+2,2) = t^2/2 + 3t/2 + 1
  const auto pb = NumPoly::basis({2}).to_power_basis();
  EXPECT_EQ(pb.at({2}), Rational(1, 2));
  EXPECT_EQ(pb.at({1}), Rational(3, 2));
  EXPECT_EQ(pb.at({0}), 1);
}

TEST(Shift, LinearShift) {
  const NumPoly p = uni({2, -1});  // 2t + 1
  const NumPoly q = shift(p, {-1});
  for (long t = -3; t <= 3; ++t) EXPECT_EQ(q.evaluate(std::vector<long>{t}), 2 * t - 1);
}

TEST(Shift, PascalIdentity) {
  const NumPoly q = shift(NumPoly::basis({2}), {1});
  // C(t+3,2) = C(t+2,2) + C(t+1,1) + 1; the constant is needed at t = 0.
  EXPECT_EQ(q, uni({1, 1, 1}));
  for (long t = 0; t <= 3; ++t) EXPECT_EQ(q.evaluate(std::vector<long>{t}), binom(t + 3, 2));
}

TEST(Shift, ZeroIsIdentity) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 20; ++i) {
    const NumPoly p = random_poly(rng, 3, 3);
    EXPECT_EQ(shift(p, {0, 0, 0}), p);
  }
}

TEST(Shift, Composition) {
  std::mt19937_64 rng(2);
  for (int i = 0; i < 50; ++i) {
    const NumPoly p = random_poly(rng, 2, 3);
    const long a = static_cast<long>(rng() % 7) - 3, b = static_cast<long>(rng() % 7) - 3;
    const long c = static_cast<long>(rng() % 7) - 3, d = static_cast<long>(rng() % 7) - 3;
    EXPECT_EQ(shift(shift(p, {a, b}), {c, d}), shift(p, {a + c, b + d}));
  }
}

TEST(Interpolate, Linear) {
  const NumPoly p = interpolate({{{0}, 1}, {{1}, 3}, {{2}, 5}}, {1});
  EXPECT_EQ(p, uni({2, -1}));
}

TEST(Interpolate, Square) {
  std::vector<Sample> s;
  for (long t = 0; t <= 4; ++t) s.push_back({{t}, Rational(t * t)});
  EXPECT_EQ(interpolate(s, {2}), uni({2, -3, 1}));
}

TEST(Interpolate, InconsistentSamples) {
  try {
    interpolate({{{0}, 0}, {{1}, 1}, {{2}, 0}}, {1});
    FAIL() << "expected an inconsistency";
  } catch (const InconsistencyError& e) {
    EXPECT_EQ(e.sample_index(), 2u);
  }
}

TEST(Interpolate, Underdetermined) {
  EXPECT_THROW(interpolate({{{0, 0}, 1}, {{1, 0}, 2}, {{0, 1}, 3}}, {1, 1}), InsufficientSamplesError);
}

TEST(Interpolate, RoundTripOnGrid) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 30; ++i) {
    const NumPoly p = random_poly(rng, 3, 2);
    std::vector<Sample> s;
    for (long a = -1; a <= 2; ++a)
      for (long b = 0; b <= 3; ++b)
        for (long c = 3; c <= 5; ++c) s.push_back({{a, b, c}, p.evaluate(std::vector<long>{a, b, c})});
    EXPECT_EQ(interpolate(s, {2, 2, 2}), p);
  }
}

TEST(NumPoly, EvaluationIsMultiplicative) {
  std::mt19937_64 rng(4);
  std::uniform_int_distribution<long> x(-20, 20);
  for (int i = 0; i < 200; ++i) {
    const NumPoly a = random_poly(rng, 2, 3), b = random_poly(rng, 2, 3);
    const std::vector<long> pt{x(rng), x(rng)};
    EXPECT_EQ((a * b).evaluate(pt), a.evaluate(pt) * b.evaluate(pt));
    EXPECT_EQ((a + b).evaluate(pt), a.evaluate(pt) + b.evaluate(pt));
  }
}

TEST(NumPoly, UnivariateFromNegativeValues) {
  // 2t + 1 at t = -1, -2: -1, -3
  const auto c = univariate_from_negative_values({-1, -3});
  EXPECT_EQ(NumPoly(1, {{{1}, c[1]}, {{0}, c[0]}}), uni({2, -1}));
}

TEST(NumPoly, RequireIntegral) {
  EXPECT_NO_THROW(uni({2, -1}).require_integral("test"));
  EXPECT_THROW(uni({Rational(1, 2), 0}).require_integral("test"), IntegrityError);
}
