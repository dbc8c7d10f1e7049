#include "dimpoly/lattice.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>

#include "dimpoly/errors.hpp"

namespace dimpoly {

Partition::Partition(const std::vector<std::size_t>& block_sizes) {
  if (block_sizes.empty()) throw DomainError("partition needs at least one block");
  for (std::size_t k = 0; k < block_sizes.size(); ++k) {
    if (block_sizes[k] == 0) throw DomainError("partition blocks must be nonempty");
    coords_.emplace_back();
    for (std::size_t i = 0; i < block_sizes[k]; ++i) {
      coords_.back().push_back(block_of_.size());
      block_of_.push_back(k);
    }
  }
}

Partition Partition::from_assignment(const std::vector<std::size_t>& block_of, std::size_t p) {
  Partition part;
  part.block_of_ = block_of;
  part.coords_.assign(p, {});
  for (std::size_t c = 0; c < block_of.size(); ++c) {
    if (block_of[c] >= p) throw DomainError("block assignment out of range");
    part.coords_[block_of[c]].push_back(c);
  }
  for (const auto& cs : part.coords_)
    if (cs.empty()) throw DomainError("partition blocks must be nonempty");
  return part;
}

std::vector<std::size_t> Partition::block_sizes() const {
  std::vector<std::size_t> sizes;
  for (const auto& cs : coords_) sizes.push_back(cs.size());
  return sizes;
}

bool Partition::contiguous() const { return std::is_sorted(block_of_.begin(), block_of_.end()); }

std::string Partition::to_text() const {
  std::string out = "blocks=";
  for (std::size_t k = 0; k < p(); ++k) {
    if (k) out += ",";
    out += std::to_string(block_size(k));
  }
  return out;
}

LatticeSet::LatticeSet(Ambient ambient, std::size_t dim, std::vector<Point> points)
    : ambient_(ambient), dim_(dim), points_(std::move(points)) {
  for (const auto& pt : points_) {
    if (pt.size() != dim_) throw DimensionError("lattice point has wrong dimension");
    if (ambient_ == Ambient::Nat)
      for (long x : pt)
        if (x < 0) throw DomainError("negative coordinate in a subset of N^m");
  }
  std::sort(points_.begin(), points_.end());
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
}

std::uint64_t default_enumeration_cap() {
  if (const char* env = std::getenv("DIMPOLY_MAX_ENUM")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return 10'000'000ULL;
}

namespace {

void check_cap(const Integer& size, std::uint64_t cap, const char* what) {
  if (cap == 0) cap = default_enumeration_cap();
  if (size > Integer(std::to_string(cap)))
    throw ResourceError(std::string(what) + ": window of " + size.get_str() + " points exceeds the enumeration cap of " +
                        std::to_string(cap));
}

void check_radii(const Partition& part, const std::vector<long>& r) {
  if (r.size() != part.p()) throw DimensionError("expected one radius per block");
  for (long x : r)
    if (x < 0) throw DomainError("radii must be natural numbers");
}

bool dominates(const Point& v, const Point& e) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] < e[i]) return false;
  return true;
}

// C(t + m - b, m) in the basis C(t+i,i).
std::vector<Rational> shifted_top_binomial(std::size_t m, long b) {
  std::vector<Rational> values;
  for (long k = 1; k <= static_cast<long>(m) + 1; ++k)
    values.push_back(binom(Integer(-k + static_cast<long>(m) - b), static_cast<long>(m)));
  return univariate_from_negative_values(values);
}

}  // namespace

long ord_block(const Point& a, const Partition& part, std::size_t k) {
  if (k >= part.p()) throw DomainError("block index " + std::to_string(k) + " out of range");
  if (a.size() != part.m()) throw DimensionError("point dimension does not match the partition");
  long s = 0;
  for (std::size_t c : part.coords(k)) s += std::labs(a[c]);
  return s;
}

std::vector<Orthant> orthant_of(const Point& a) {
  if (a.size() > 31) throw DomainError("orthant masks support at most 31 coordinates");
  Orthant fixed = 0, free = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] < 0) fixed |= Orthant{1} << i;
    if (a[i] == 0) free |= Orthant{1} << i;
  }
  std::vector<Orthant> out;
  // Enumerate the subsets of the zero coordinates.
  Orthant sub = 0;
  do {
    out.push_back(fixed | sub);
    sub = (sub - free) & free;
  } while (sub != 0);
  std::sort(out.begin(), out.end());
  return out;
}

LatticeSet minimal_elements(const LatticeSet& e) {
  if (e.ambient() != Ambient::Nat) throw DomainError("minimal_elements expects a subset of N^m");
  std::vector<Point> out;
  for (const auto& v : e.points()) {
    bool minimal = true;
    for (const auto& w : e.points()) {
      if (w != v && dominates(v, w)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(v);
  }
  return LatticeSet(Ambient::Nat, e.dim(), std::move(out));
}

NumPoly omega(const LatticeSet& e, const Partition& part) {
  if (e.ambient() != Ambient::Nat) throw DomainError("omega expects a subset of N^m");
  if (e.dim() != part.m()) throw DimensionError("set dimension does not match the partition");
  const LatticeSet mins = minimal_elements(e);
  const auto& pts = mins.points();
  const std::size_t p = part.p();

  // Signed multiplicities of the block-order vectors b_theta over all subsets theta.
  std::map<std::vector<long>, long> weights;
  Point lcm(part.m(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int sign) {
    if (i == pts.size()) {
      std::vector<long> b(p, 0);
      for (std::size_t c = 0; c < part.m(); ++c) b[part.block_of(c)] += lcm[c];
      weights[b] += sign;
      return;
    }
    rec(i + 1, sign);
    Point saved = lcm;
    for (std::size_t c = 0; c < lcm.size(); ++c) lcm[c] = std::max(lcm[c], pts[i][c]);
    rec(i + 1, -sign);
    lcm = std::move(saved);
  };
  rec(0, 1);

  NumPoly out(p);
  for (const auto& [b, w] : weights) {
    if (w == 0) continue;
    std::vector<std::vector<Rational>> factors;
    for (std::size_t k = 0; k < p; ++k) factors.push_back(shifted_top_binomial(part.block_size(k), b[k]));
    out = out + Rational(w) * tensor_product(factors);
  }
  return out;
}

Integer count_V(const LatticeSet& e, const Partition& part, const std::vector<long>& r, std::uint64_t cap) {
  if (e.ambient() != Ambient::Nat) throw DomainError("count_V expects a subset of N^m");
  if (e.dim() != part.m()) throw DimensionError("set dimension does not match the partition");
  check_radii(part, r);
  Integer size = 1;
  for (std::size_t k = 0; k < part.p(); ++k) size *= binom_int(r[k] + static_cast<long>(part.block_size(k)), static_cast<long>(part.block_size(k)));
  check_cap(size, cap, "count_V");

  const auto mins = minimal_elements(e).points();
  std::uint64_t count = 0;
  Point v(part.m(), 0);
  std::vector<long> used(part.p(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == v.size()) {
      for (const auto& m : mins)
        if (dominates(v, m)) return;
      ++count;
      return;
    }
    const std::size_t k = part.block_of(c);
    for (long x = 0; x <= r[k] - used[k]; ++x) {
      v[c] = x;
      used[k] += x;
      rec(c + 1);
      used[k] -= x;
    }
    v[c] = 0;
  };
  rec(0);
  return Integer(std::to_string(count));
}

RhoEmbedding rho_embed(const LatticeSet& a, const Partition& part) {
  if (a.ambient() != Ambient::Int) throw DomainError("rho_embed expects a subset of Z^m");
  if (a.dim() != part.m()) throw DimensionError("set dimension does not match the partition");
  const std::size_t m = part.m();
  std::vector<Point> pts;
  for (const auto& x : a.points()) {
    Point b(2 * m, 0);
    for (std::size_t i = 0; i < m; ++i) {
      b[i] = std::max(x[i], 0L);
      b[m + i] = std::max(-x[i], 0L);
    }
    pts.push_back(std::move(b));
  }
  for (std::size_t i = 0; i < m; ++i) {
    Point e(2 * m, 0);
    e[i] = 1;
    e[m + i] = 1;
    pts.push_back(std::move(e));
  }
  std::vector<std::size_t> block_of(2 * m);
  for (std::size_t i = 0; i < m; ++i) block_of[i] = block_of[m + i] = part.block_of(i);
  return {LatticeSet(Ambient::Nat, 2 * m, std::move(pts)), Partition::from_assignment(block_of, part.p())};
}

NumPoly phi_set(const LatticeSet& a, const Partition& part) {
  auto emb = rho_embed(a, part);
  return omega(emb.points, emb.partition);
}

bool below(const Point& a, const Point& w) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] > 0 && w[i] < 0) || (a[i] < 0 && w[i] > 0)) return false;
    if (std::labs(a[i]) > std::labs(w[i])) return false;
  }
  return true;
}

std::vector<Rational> ball_count_coeffs(std::size_t m) {
  std::vector<Rational> c(m + 1);
  for (std::size_t j = 0; j <= m; ++j) {
    Rational v = Rational(binom_int(static_cast<long>(m), static_cast<long>(j))) * Rational(Integer(1) << j);
    c[j] = ((m - j) % 2 == 0) ? v : Rational(-v);
  }
  return c;
}

namespace {

Integer ball_count(std::size_t m, long t) {
  if (t < 0) return 0;
  const auto c = ball_count_coeffs(m);
  Rational sum = 0;
  for (std::size_t j = 0; j <= m; ++j) sum += c[j] * binom(Integer(t + static_cast<long>(j)), static_cast<long>(j));
  return sum.get_num();
}

}  // namespace

Integer count_W(const LatticeSet& a, const Partition& part, const std::vector<long>& r, std::uint64_t cap) {
  if (a.ambient() != Ambient::Int) throw DomainError("count_W expects a subset of Z^m");
  if (a.dim() != part.m()) throw DimensionError("set dimension does not match the partition");
  check_radii(part, r);
  Integer size = 1;
  for (std::size_t k = 0; k < part.p(); ++k) size *= ball_count(part.block_size(k), r[k]);
  check_cap(size, cap, "count_W");
  std::uint64_t count = 0;
  for_each_shell_point(part, r, std::vector<long>(part.p(), 0), [&](const Point& w) {
    for (const auto& x : a.points())
      if (below(x, w)) return;
    ++count;
  });
  return Integer(std::to_string(count));
}

Integer shell_count(const Partition& part, const std::vector<long>& r, const std::vector<long>& s) {
  check_radii(part, r);
  check_radii(part, s);
  Integer total = 1;
  for (std::size_t k = 0; k < part.p(); ++k) {
    if (s[k] > r[k]) throw DomainError("shell lower radius exceeds the upper radius in block " + std::to_string(k + 1));
    total *= ball_count(part.block_size(k), r[k]) - ball_count(part.block_size(k), s[k] - 1);
  }
  return total;
}

Integer shell_enumerate(const Partition& part, const std::vector<long>& r, const std::vector<long>& s,
                        std::uint64_t cap) {
  check_radii(part, r);
  check_radii(part, s);
  Integer size = 1;
  for (std::size_t k = 0; k < part.p(); ++k) size *= ball_count(part.block_size(k), r[k]);
  check_cap(size, cap, "shell enumeration");
  std::uint64_t count = 0;
  for_each_shell_point(part, r, s, [&](const Point&) { ++count; });
  return Integer(std::to_string(count));
}

}  // namespace dimpoly
