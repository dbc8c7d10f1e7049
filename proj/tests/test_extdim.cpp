#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "dimpoly/errors.hpp"
#include "dimpoly/extdim.hpp"
#include "dimpoly/parse.hpp"
#include "dimpoly/serialize.hpp"
#include "print.hpp"

using namespace dimpoly;

namespace {

ExtensionSpec load(const std::string& name) {
  std::ifstream in(std::string(DIMPOLY_DATA_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_spec(ss.str());
}

ExtensionSpec free_ext(std::vector<std::size_t> blocks, std::size_t n = 1) {
  ExtensionSpec s;
  s.part = Partition(std::move(blocks));
  s.n = n;
  return s;
}

std::vector<long> point(const WindowSpec& w) {
  std::vector<long> v(w.r);
  v.insert(v.end(), w.s.begin(), w.s.end());
  return v;
}

// The computed polynomials are reused across tests.
const DimPolyResult& sym3() {
  static const DimPolyResult r = compute_phi(load("sym3.spec"));
  return r;
}

}  // namespace

TEST(Spec, Validation) {
  ExtensionSpec s = free_ext({1});
  s.defining.push_back(parse_polynomial("a1 y1 + y1", 1));
  EXPECT_NO_THROW(s.validate());
  s.defining.push_back(parse_polynomial("y1 * y1", 1));
  EXPECT_THROW(s.validate(), DomainError);
  s.defining.pop_back();
  s.n = 0;
  EXPECT_THROW(s.validate(), DomainError);
  EXPECT_THROW(parse_spec("blocks=1\ngens=1\na1 y2\n"), ParseError);
}

TEST(WindowTerms, Counts) {
  EXPECT_EQ(window_terms(free_ext({1}), {{1}, {0}}).size(), 3u);
  EXPECT_EQ(window_terms(free_ext({1}), {{3}, {2}}).size(), 4u);
  EXPECT_EQ(window_terms(free_ext({1}, 2), {{1}, {0}}).size(), 6u);
  EXPECT_EQ(window_terms(free_ext({1, 1}), {{1, 2}, {1, 0}}).size(), 10u);
  EXPECT_THROW(window_terms(free_ext({1}), {{1}, {2}}), DomainError);
  EXPECT_THROW(window_terms(free_ext({1}), {{1, 1}, {0, 0}}), DimensionError);
  EXPECT_THROW(window_terms(free_ext({3}), {{50}, {0}}, 1000), ResourceError);
}

TEST(WindowTerms, MatchShellCount) {
  for (const auto& blocks : std::vector<std::vector<std::size_t>>{{1}, {2}, {1, 1}, {2, 1}, {1, 1, 1}})
    for (long r = 0; r <= 3; ++r)
      for (long s = 0; s <= r; ++s) {
        const auto spec = free_ext(blocks, 2);
        const WindowSpec w{std::vector<long>(blocks.size(), r), std::vector<long>(blocks.size(), s)};
        EXPECT_EQ(Integer(window_terms(spec, w).size()), 2 * shell_count(spec.part, w.r, w.s));
      }
}

TEST(ClassifyWindow, FreeExtensionIsAllPrime) {
  const auto spec = free_ext({1, 1});
  const WindowSpec w{{3, 2}, {1, 0}};
  const auto c = classify_window({}, spec, w);
  EXPECT_EQ(c.u_prime.size(), window_terms(spec, w).size());
  EXPECT_TRUE(c.u_double_prime.empty());
  EXPECT_TRUE(c.rest.empty());
}

TEST(ClassifyWindow, PartitionsTheWindow) {
  const auto spec = load("sym3.spec");
  const auto cs = extension_char_set(spec, spec.part);
  const WindowSpec w{{16, 7, 6}, {4, 3, 2}};
  const auto c = classify_window(cs, spec, w);
  EXPECT_EQ(c.u_prime.size() + c.u_double_prime.size() + c.rest.size(), window_terms(spec, w).size());
  EXPECT_FALSE(c.rest.empty());
}

TEST(Oracle, FreeExtensionIsWindowSize) {
  const auto spec = free_ext({1, 1}, 2);
  const WindowSpec w{{2, 3}, {1, 0}};
  EXPECT_EQ(trdeg_oracle(spec, w), Integer(window_terms(spec, w).size()));
}

TEST(Oracle, ShiftRelation) {
  // y is fixed by the translation up to sign, so every window has degree 1.
  const auto spec = load("shift1.spec");
  for (long r = 0; r <= 6; ++r) EXPECT_EQ(trdeg_oracle(spec, {{r}, {0}}), 1) << r;
  EXPECT_EQ(trdeg_oracle(spec, {{6}, {3}}), 1);
}

TEST(ComputePhi, FreeExtensionIsShellCount) {
  const auto spec = free_ext({1, 2}, 3);
  const auto res = compute_phi(spec);
  for (long r1 = 2; r1 <= 5; ++r1)
    for (long s1 = 1; s1 <= r1; ++s1)
      for (long r2 = 2; r2 <= 5; ++r2)
        for (long s2 = 1; s2 <= r2; ++s2)
          EXPECT_EQ(res.phi.evaluate(std::vector<long>{r1, r2, s1, s2}),
                    Rational(3 * shell_count(spec.part, {r1, r2}, {s1, s2})));
  const auto inv = invariants(res);
  EXPECT_EQ(inv.sigma_trdeg, 3);
  EXPECT_EQ(inv.total_degree, 3u);
  // Cross terms like N_1(r_1) N_2(s_2 - 1) survive in the residual once p >= 2.
  EXPECT_EQ(res.lambda.total_degree(), 3u);
  EXPECT_FALSE(res.lambda_degree_below_m);
  EXPECT_TRUE(compute_phi(free_ext({2}, 3)).lambda.is_zero());
}

TEST(ComputePhi, ExampleDegreeAndThresholds) {
  const auto& res = sym3();
  EXPECT_EQ(res.charset.size(), 2u);
  EXPECT_EQ(res.phi.total_degree(), 2u);
  for (std::size_t i = 0; i < 6; ++i) EXPECT_LE(res.phi.degree_in(i), 1u);
  EXPECT_EQ(res.thresholds.s0, (std::vector<long>{3, 2, 1}));
  EXPECT_EQ(invariants(res).sigma_trdeg, 0);
  EXPECT_TRUE(res.lambda_degree_below_m);
}

TEST(ComputePhi, SamplesAgreeWithPolynomial) {
  const auto& res = sym3();
  std::size_t held = 0;
  for (const auto& s : res.samples) {
    held += s.held_out;
    EXPECT_TRUE(in_stability_region(res.thresholds, s.window));
    EXPECT_EQ(res.phi.evaluate(point(s.window)), Rational(s.u_prime + s.u_double_prime));
  }
  EXPECT_EQ(held, PhiOptions{}.held_out);
}

TEST(ComputePhi, FrozenCoefficients) {
  const auto pb = sym3().phi.to_power_basis();
  // t1..t3 are the outer radii, t4..t6 the inner ones.
  EXPECT_EQ(pb.at({1, 1, 0, 0, 0, 0}), 8);
  EXPECT_EQ(pb.at({1, 0, 1, 0, 0, 0}), 16);
  EXPECT_EQ(pb.at({0, 1, 1, 0, 0, 0}), 48);
  EXPECT_EQ(pb.at({0, 0, 0, 0, 1, 1}), 48);
  EXPECT_EQ(pb.at({0, 0, 0, 0, 0, 0}), 8);
}

TEST(ComputePhi, GrowsWithOuterRadius) {
  const auto& res = sym3();
  const auto& th = res.thresholds;
  for (std::size_t k = 0; k < 3; ++k) {
    WindowSpec w{th.r0, th.s1};
    for (std::size_t j = 0; j < 3; ++j) w.r[j] = std::max(w.r[j], w.s[j] + th.s0[j]);
    const Rational before = res.phi.evaluate(point(w));
    ++w.r[k];
    EXPECT_LT(before, res.phi.evaluate(point(w)));
  }
}

TEST(ComputePhi, Deterministic) {
  const auto again = compute_phi(load("sym3.spec"));
  EXPECT_EQ(to_json(again).dump(), to_json(sym3()).dump());
}

TEST(Univariate, FreeLine) {
  const NumPoly p = univariate_phi(free_ext({1}));
  for (long t = 0; t <= 5; ++t) EXPECT_EQ(p.evaluate(std::vector<long>{t}), 2 * t + 1);
}

TEST(Univariate, FreeProduct) {
  // Points of Z^3 with |x|_1 <= t, times two generators.
  const NumPoly p = univariate_phi(free_ext({1, 1, 1}, 2));
  for (long t = 0; t <= 5; ++t) EXPECT_EQ(p.evaluate(std::vector<long>{t}), 2 * shell_count(Partition::trivial(3), {t}, {0}));
}

TEST(Univariate, Example) {
  const auto spec = load("sym3.spec");
  const NumPoly p = univariate_phi(spec);
  EXPECT_EQ(p.to_text(), "24*C(t1+2,2) - 60*C(t1+1,1) + 62");
  EXPECT_EQ(leading_power_coeff(p), 12);
  ExtensionSpec ball = spec;
  ball.part = Partition::trivial(3);
  for (long t = 12; t <= 15; ++t) EXPECT_EQ(p.evaluate(std::vector<long>{t}), Rational(trdeg_oracle(ball, {{t}, {0}})));
}

TEST(Univariate, ShiftRelation) { EXPECT_EQ(univariate_phi(load("shift1.spec")), NumPoly::constant(1, 1)); }

TEST(Invariants, ThirdExponentSeparatesPair) {
  const auto a = invariants(compute_phi(load("pair_c2.spec")));
  const auto b = invariants(compute_phi(load("pair_c1.spec")));
  EXPECT_EQ(a.total_degree, 2u);
  EXPECT_EQ(b.total_degree, 2u);
  const auto v = equivalence_distinguish(a, b);
  EXPECT_TRUE(v.distinguished);
  EXPECT_FALSE(v.witness.empty());
  EXPECT_FALSE(equivalence_distinguish(a, a).distinguished);
}

TEST(Invariants, UnivariateDoesNotSeparatePair) {
  const auto sa = load("pair_c2.spec"), sb = load("pair_c1.spec");
  const auto a = univariate_invariants(univariate_phi(sa), sa.part);
  const auto b = univariate_invariants(univariate_phi(sb), sb.part);
  EXPECT_FALSE(equivalence_distinguish(a, b).distinguished);
}

TEST(Invariants, KindMismatchThrows) {
  const auto& res = sym3();
  const auto spec = load("sym3.spec");
  EXPECT_THROW(equivalence_distinguish(invariants(res), univariate_invariants(univariate_phi(spec), spec.part)),
               DomainError);
}

TEST(Invariants, RedundantGeneratorDoesNotChangeSummary) {
  const auto a = invariants(sym3());
  const auto b = invariants(compute_phi(load("sym3_redundant.spec")));
  EXPECT_EQ(to_json(a).dump(), to_json(b).dump());
  EXPECT_FALSE(equivalence_distinguish(a, b).distinguished);
}

TEST(Invariants, LexMaxCoversAllOrders) {
  // p! orders of the outer radii times p! orders of the inner radii.
  EXPECT_EQ(invariants(sym3()).lex_max.size(), 36u);
}

TEST(Json, ResultShape) {
  const auto j = to_json(sym3());
  EXPECT_TRUE(j.contains("phi"));
  EXPECT_TRUE(j.contains("thresholds"));
  EXPECT_TRUE(j.contains("invariants"));
  EXPECT_EQ(numpoly_from_json(j["phi"]), sym3().phi);
}
