#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>

#include "dimpoly/diffring.hpp"
#include "dimpoly/errors.hpp"
#include "echelon.hpp"

namespace dimpoly {

namespace {

void require_linear(const DiffPolynomial& f, const Partition& part) {
  if (f.is_constant()) throw DomainError("characteristic set of a constant polynomial");
  if (!f.is_linear_homogeneous()) throw DomainError("characteristic set requires a homogeneous linear polynomial");
  for (const auto& t : f.support())
    if (t.gamma.size() != part.m()) throw DimensionError("term dimension does not match the partition");
}

// Per-coordinate max - min of exponents over the support of the polynomials.
std::vector<long> spreads(const std::vector<DiffPolynomial>& fs, std::size_t m) {
  std::vector<long> out(m, 0);
  for (const auto& f : fs) {
    const auto ts = f.support();
    for (std::size_t c = 0; c < m; ++c) {
      long lo = ts.front().gamma[c], hi = lo;
      for (const auto& t : ts) {
        lo = std::min(lo, t.gamma[c]);
        hi = std::max(hi, t.gamma[c]);
      }
      out[c] = std::max(out[c], hi - lo);
    }
  }
  return out;
}

void for_each_in_box(const std::vector<long>& lo, const std::vector<long>& hi,
                     const std::function<void(const ExpVector&)>& visit) {
  ExpVector g(lo.size());
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == g.size()) {
      visit(g);
      return;
    }
    for (long x = lo[c]; x <= hi[c]; ++x) {
      g[c] = x;
      rec(c + 1);
    }
  };
  for (std::size_t c = 0; c < lo.size(); ++c)
    if (lo[c] > hi[c]) return;
  rec(0);
}

std::vector<DiffPolynomial> sort_by_rank(std::vector<DiffPolynomial> out, const Partition& part) {
  std::stable_sort(out.begin(), out.end(),
                   [&](const DiffPolynomial& a, const DiffPolynomial& b) { return rank_compare(a, b, part) < 0; });
  return out;
}

std::vector<ExpVector> minimal_translates(const DiffPolynomial& f, const Partition& part, long margin) {
  const auto sp = spreads({f}, part.m());
  std::vector<long> lo(part.m()), hi(part.m());
  for (std::size_t c = 0; c < part.m(); ++c) {
    hi[c] = sp[c] + margin;
    lo[c] = -hi[c];
  }
  struct Candidate {
    ExpVector gamma;
    Term lead;
  };
  std::vector<Candidate> cands;
  for_each_in_box(lo, hi, [&](const ExpVector& g) { cands.push_back({g, leader(apply_gamma(g, f), 0, part)}); });

  // Among candidates sharing a leader keep the first one in box order.
  std::map<Term, std::size_t> first_with_leader;
  for (std::size_t i = 0; i < cands.size(); ++i) first_with_leader.emplace(cands[i].lead, i);

  std::vector<ExpVector> out;
  for (const auto& [lead, i] : first_with_leader) {
    bool minimal = true;
    for (const auto& [other, j] : first_with_leader) {
      if (!(other == lead) && divides_term(other, lead)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(cands[i].gamma);
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct IdealCharSet {
  std::vector<Term> leaders;
  std::vector<DiffPolynomial> rows;
};

IdealCharSet echelon_char_set(const std::vector<DiffPolynomial>& gens, const Partition& part, long margin) {
  const auto sp = spreads(gens, part.m());
  std::vector<long> radius(part.m());
  for (std::size_t c = 0; c < part.m(); ++c) radius[c] = sp[c] + margin;
  std::size_t n = 0;
  for (const auto& f : gens)
    for (const auto& t : f.support()) n = std::max(n, t.gen + 1);

  // Columns: all terms of the box, indexed in ascending <_1 order.
  std::vector<Term> cols;
  for_each_in_box(negate(radius), radius, [&](const ExpVector& g) {
    for (std::size_t j = 0; j < n; ++j) cols.push_back(Term{g, j});
  });
  std::vector<std::pair<std::vector<long>, std::size_t>> keyed;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    auto key = order_key(cols[i].gamma, 0, part);
    key.push_back(static_cast<long>(cols[i].gen));
    keyed.emplace_back(std::move(key), i);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<Term> sorted_cols;
  std::map<Term, std::uint32_t> col_of;
  for (const auto& [key, i] : keyed) {
    col_of.emplace(cols[i], static_cast<std::uint32_t>(sorted_cols.size()));
    sorted_cols.push_back(cols[i]);
  }

  detail::Echelon ech;
  for (const auto& f : gens) {
    const auto ts = f.support();
    std::vector<long> lo(part.m()), hi(part.m());
    for (std::size_t c = 0; c < part.m(); ++c) {
      long tmin = ts.front().gamma[c], tmax = tmin;
      for (const auto& t : ts) {
        tmin = std::min(tmin, t.gamma[c]);
        tmax = std::max(tmax, t.gamma[c]);
      }
      lo[c] = -radius[c] - tmin;
      hi[c] = radius[c] - tmax;
    }
    for_each_in_box(lo, hi, [&](const ExpVector& g) {
      detail::SparseRow row;
      for (const auto& t : ts) row.emplace_back(col_of.at(apply_gamma(g, t)), f.linear_coeff(t));
      std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      ech.insert(std::move(row));
    });
  }

  std::vector<std::uint32_t> pivot_cols;
  for (const auto& [col, row] : ech.pivots()) pivot_cols.push_back(col);
  std::sort(pivot_cols.begin(), pivot_cols.end());
  IdealCharSet out;
  for (std::uint32_t c : pivot_cols) {
    const Term& lead = sorted_cols[c];
    bool minimal = true;
    for (std::uint32_t d : pivot_cols) {
      if (d != c && divides_term(sorted_cols[d], lead)) {
        minimal = false;
        break;
      }
    }
    if (!minimal) continue;
    const auto& row = ech.pivots().at(c);
    // Scale so the leader has coefficient 1.
    const Rational lc = row.back().second;
    DiffPolynomial::Terms ts;
    for (const auto& [col, v] : row) ts.emplace(Monomial{{sorted_cols[col], 1}}, v / lc);
    out.leaders.push_back(lead);
    out.rows.emplace_back(std::move(ts));
  }
  return out;
}

}  // namespace

std::vector<DiffPolynomial> linear_char_set(const DiffPolynomial& f, const Partition& part, long search_margin) {
  require_linear(f, part);
  if (search_margin < 0) throw DomainError("search margin must be nonnegative");
  const auto first = minimal_translates(f, part, search_margin);
  const auto second = minimal_translates(f, part, search_margin + 2);
  if (first != second)
    throw MarginError("characteristic set did not stabilize between search margins " + std::to_string(search_margin) +
                      " and " + std::to_string(search_margin + 2) + "; retry with a larger search margin");
  std::vector<DiffPolynomial> out;
  for (const auto& g : first) out.push_back(apply_gamma(g, f));
  return sort_by_rank(std::move(out), part);
}

std::vector<DiffPolynomial> linear_ideal_char_set(const std::vector<DiffPolynomial>& gens, const Partition& part,
                                                  long search_margin) {
  if (gens.empty()) return {};
  for (const auto& f : gens) require_linear(f, part);
  if (search_margin < 0) throw DomainError("search margin must be nonnegative");
  const auto first = echelon_char_set(gens, part, search_margin);
  const auto second = echelon_char_set(gens, part, search_margin + 2);
  if (first.leaders != second.leaders || first.rows != second.rows)
    throw MarginError("characteristic set did not stabilize between search margins " + std::to_string(search_margin) +
                      " and " + std::to_string(search_margin + 2) + "; retry with a larger search margin");
  return sort_by_rank(first.rows, part);
}

}  // namespace dimpoly
