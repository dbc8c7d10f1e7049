#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "dimpoly/errors.hpp"
#include "dimpoly/lattice.hpp"
#include "dimpoly/parse.hpp"
#include "print.hpp"

using namespace dimpoly;

namespace {

LatticeSet nat(std::size_t m, std::vector<Point> pts) { return LatticeSet(Ambient::Nat, m, std::move(pts)); }
LatticeSet integer(std::size_t m, std::vector<Point> pts) { return LatticeSet(Ambient::Int, m, std::move(pts)); }

std::vector<Partition> compositions(std::size_t m) {
  std::vector<Partition> out;
  for (unsigned mask = 0; mask < (1u << (m - 1)); ++mask) {
    std::vector<std::size_t> sizes{1};
    for (std::size_t i = 0; i + 1 < m; ++i) {
      if (mask & (1u << i))
        sizes.push_back(1);
      else
        ++sizes.back();
    }
    out.emplace_back(sizes);
  }
  return out;
}

std::vector<long> block_max(const LatticeSet& s, const Partition& part) {
  std::vector<long> r(part.p(), 0);
  for (const auto& pt : s.points())
    for (std::size_t k = 0; k < part.p(); ++k) r[k] = std::max(r[k], ord_block(pt, part, k));
  return r;
}

}  // namespace

TEST(Partition, Basics) {
  const Partition p({1, 2});
  EXPECT_EQ(p.m(), 3u);
  EXPECT_EQ(p.p(), 2u);
  EXPECT_EQ(p.block_of(2), 1u);
  EXPECT_EQ(p.to_text(), "blocks=1,2");
  EXPECT_EQ(parse_partition("blocks=1,1,1").p(), 3u);
  EXPECT_THROW(parse_partition("blocks=1,0"), InputError);
}

TEST(OrdBlock, Examples) {
  EXPECT_EQ(ord_block({2, -1, 3}, Partition({1, 1, 1}), 1), 1);
  EXPECT_EQ(ord_block({2, -1, 3}, Partition({2, 1}), 0), 3);
  EXPECT_EQ(ord_block({0, 0, 0}, Partition({2, 1}), 1), 0);
}

TEST(Orthant, Membership) {
  EXPECT_EQ(orthant_of({1, -2}), std::vector<Orthant>{0b10});
  EXPECT_EQ(orthant_of({0, 0}).size(), 4u);
  auto o = orthant_of({3, 0});
  std::sort(o.begin(), o.end());
  EXPECT_EQ(o, (std::vector<Orthant>{0b00, 0b10}));
  EXPECT_EQ(orthant_index(0), 1u);
}

TEST(MinimalElements, Examples) {
  EXPECT_EQ(minimal_elements(nat(2, {{1, 0}, {0, 1}, {1, 1}})), nat(2, {{1, 0}, {0, 1}}));
  EXPECT_EQ(minimal_elements(nat(2, {{2, 2}})), nat(2, {{2, 2}}));
  EXPECT_TRUE(minimal_elements(nat(2, {})).empty());
}

TEST(LatticeSet, DeduplicatesPoints) {
  EXPECT_EQ(nat(1, {{2}, {2}}).size(), 1u);
}

TEST(Omega, EmptySetIsProductOfBinomials) {
  const Partition part({1, 2});
  NumPoly::Coeffs c{{{1, 2}, 1}};
  EXPECT_EQ(omega(nat(3, {}), part), NumPoly(2, c));
}

TEST(Omega, SinglePointLine) {
  EXPECT_EQ(omega(nat(1, {{2}}), Partition::trivial(1)), NumPoly::constant(1, 2));
}

TEST(Omega, DiagonalPoint) {
  const NumPoly w = omega(nat(2, {{1, 1}}), Partition::trivial(2));
  for (long t = 2; t < 8; ++t) EXPECT_EQ(w.evaluate(std::vector<long>{t}), 2 * t + 1);
}

TEST(CountV, Examples) {
  EXPECT_EQ(count_V(nat(2, {{1, 1}}), Partition::trivial(2), {3}), 7);
  EXPECT_EQ(count_V(nat(2, {}), Partition({1, 1}), {1, 1}), 4);
  EXPECT_EQ(count_V(nat(3, {{0, 0, 0}}), Partition({2, 1}), {4, 2}), 0);
}

TEST(CountV, CapIsEnforced) {
  EXPECT_THROW(count_V(nat(3, {}), Partition::trivial(3), {1000}, 1000), ResourceError);
}

TEST(RhoEmbed, Examples) {
  const auto rho = rho_embed(integer(2, {{2, -1}}), Partition::trivial(2));
  EXPECT_EQ(rho.points, nat(4, {{2, 0, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, 1}}));
  EXPECT_EQ(rho_embed(integer(2, {}), Partition::trivial(2)).points, nat(4, {{1, 0, 1, 0}, {0, 1, 0, 1}}));
  EXPECT_EQ(rho_embed(integer(3, {}), Partition({1, 2})).partition.block_sizes(),
            (std::vector<std::size_t>{2, 4}));
}

TEST(PhiSet, EmptySetIsEqFive) {
  const Partition part({1, 2});
  std::vector<std::vector<Rational>> factors;
  for (std::size_t k = 0; k < part.p(); ++k) factors.push_back(ball_count_coeffs(part.block_size(k)));
  EXPECT_EQ(phi_set(integer(3, {}), part), tensor_product(factors));
}

TEST(PhiSet, OneSidedPoint) {
  const NumPoly p = phi_set(integer(1, {{2}}), Partition::trivial(1));
  for (long t = 2; t < 8; ++t) EXPECT_EQ(p.evaluate(std::vector<long>{t}), t + 2);
}

// The top coefficient of a one-sided set need not be divisible by 2^m.
TEST(PhiSet, TopCoefficientOfOneSidedSet) {
  EXPECT_EQ(phi_set(integer(1, {{2}}), Partition::trivial(1)).coeff({1}), 1);
  EXPECT_EQ(phi_set(integer(2, {{1, 1}}), Partition::trivial(2)).coeff({2}), 3);
}

TEST(PhiSet, TwoSidedPair) {
  EXPECT_EQ(phi_set(integer(1, {{3}, {-4}}), Partition::trivial(1)), NumPoly::constant(1, 6));
}

TEST(CountW, Examples) {
  EXPECT_EQ(count_W(integer(1, {}), Partition::trivial(1), {3}), 7);
  EXPECT_EQ(count_W(integer(1, {{1}, {-1}}), Partition::trivial(1), {10}), 1);
  EXPECT_EQ(count_W(integer(1, {{2}}), Partition::trivial(1), {5}), 7);
}

TEST(Below, ZeroCoordinates) {
  EXPECT_TRUE(below({0, 1}, {-3, 2}));
  EXPECT_FALSE(below({1, 1}, {-3, 2}));
  EXPECT_TRUE(below({0, 0}, {5, -5}));
}

TEST(Shell, Examples) {
  EXPECT_EQ(shell_count(Partition::trivial(1), {3}, {0}), 7);
  EXPECT_EQ(shell_count(Partition::trivial(1), {3}, {2}), 4);
  EXPECT_EQ(shell_count(Partition::trivial(2), {1}, {0}), 5);
  EXPECT_THROW(shell_count(Partition::trivial(1), {1}, {2}), DomainError);
}

TEST(Shell, MatchesEnumeration) {
  for (std::size_t m = 1; m <= 3; ++m)
    for (const auto& part : compositions(m)) {
      const std::size_t p = part.p();
      std::vector<long> r(p, 0);
      // odometer over r in [0,4]^p, s <= r
      while (true) {
        std::vector<long> s(p, 0);
        while (true) {
          ASSERT_EQ(shell_count(part, r, s), shell_enumerate(part, r, s)) << part.to_text();
          std::size_t i = 0;
          while (i < p && s[i] == r[i]) s[i++] = 0;
          if (i == p) break;
          ++s[i];
        }
        std::size_t i = 0;
        while (i < p && r[i] == 4) r[i++] = 0;
        if (i == p) break;
        ++r[i];
      }
    }
}

TEST(SetParsing, PointsAndErrors) {
  const auto s = parse_lattice_set("# comment\n1,2\n\n3,-4\n", Ambient::Int);
  EXPECT_EQ(s, integer(2, {{1, 2}, {3, -4}}));
  EXPECT_THROW(parse_lattice_set("1,2\n3\n", Ambient::Int), ParseError);
  EXPECT_THROW(parse_lattice_set("1,-2\n", Ambient::Nat), ParseError);
}

TEST(OmegaProperty, OracleMinimalityAndDegree) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + rng() % 4;
    const auto parts = compositions(m);
    const Partition& part = parts[rng() % parts.size()];
    std::vector<Point> pts(rng() % 6);
    for (auto& pt : pts) {
      pt.resize(m);
      for (auto& x : pt) x = static_cast<long>(rng() % 4);
    }
    const LatticeSet e = nat(m, pts);
    const NumPoly w = omega(e, part);
    EXPECT_EQ(w, omega(minimal_elements(e), part));
    w.require_integral("omega");
    for (std::size_t k = 0; k < part.p(); ++k) EXPECT_LE(w.degree_in(k), part.block_size(k));
    EXPECT_EQ(w.total_degree() == m, e.empty());
    auto base = block_max(e, part);
    for (long d = 0; d <= 3; ++d) {
      std::vector<long> r(base);
      for (auto& x : r) x += d;
      EXPECT_EQ(w.evaluate(r), Rational(count_V(e, part, r))) << part.to_text();
    }
  }
}

TEST(PhiSetProperty, OracleAndDivisibility) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t m = 1 + rng() % 3;
    const auto parts = compositions(m);
    const Partition& part = parts[rng() % parts.size()];
    std::vector<Point> pts(rng() % 4);
    for (auto& pt : pts) {
      pt.resize(m);
      for (auto& x : pt) x = static_cast<long>(rng() % 7) - 3;
    }
    const LatticeSet a = integer(m, pts);
    const NumPoly phi = phi_set(a, part);
    phi.require_integral("phi_set");
    NumPoly::Index top(part.p());
    for (std::size_t k = 0; k < part.p(); ++k) top[k] = static_cast<unsigned>(part.block_size(k));
    if (a.empty()) {
      EXPECT_EQ(phi.coeff(top).get_num() % (Integer(1) << static_cast<unsigned>(m)), 0);
    }
    auto base = block_max(a, part);
    for (auto& x : base) x *= 2;
    for (long d = 0; d <= 3; ++d) {
      std::vector<long> r(base);
      for (auto& x : r) x += d;
      EXPECT_EQ(phi.evaluate(r), Rational(count_W(a, part, r))) << part.to_text();
    }
  }
}
