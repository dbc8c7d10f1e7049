#include <algorithm>
#include <functional>
#include <map>
#include <set>

#include "dimpoly/errors.hpp"
#include "dimpoly/extdim.hpp"
#include "echelon.hpp"

namespace dimpoly {

namespace {

// Dimension of (relation space) intersected with span(window terms), with
// relations gamma*f for |gamma_c| <= r_{block(c)} + margin.
std::size_t window_relation_dim(const ExtensionSpec& spec, const WindowSpec& w, const std::set<Term>& window,
                                long margin, std::uint64_t cap) {
  const Partition& part = spec.part;
  std::vector<long> bound(part.m());
  for (std::size_t c = 0; c < part.m(); ++c) bound[c] = w.r[part.block_of(c)] + margin;

  Integer box = 1;
  for (long b : bound) box *= 2 * b + 1;
  box *= static_cast<unsigned long>(spec.defining.size());
  std::uint64_t limit = cap ? cap : default_enumeration_cap();
  if (box > Integer(std::to_string(limit)))
    throw ResourceError("oracle relation box of " + box.get_str() + " rows exceeds the enumeration cap of " +
                        std::to_string(limit));

  // Rows as term lists; columns get ids later.
  std::vector<std::vector<std::pair<Term, Rational>>> rows;
  ExpVector g(part.m());
  std::function<void(std::size_t)> rec = [&](std::size_t c) {
    if (c == g.size()) {
      for (const auto& f : spec.defining) {
        std::vector<std::pair<Term, Rational>> row;
        for (const auto& [mono, coeff] : f.terms()) row.emplace_back(apply_gamma(g, mono.front().first), coeff);
        rows.push_back(std::move(row));
      }
      return;
    }
    for (long x = -bound[c]; x <= bound[c]; ++x) {
      g[c] = x;
      rec(c + 1);
    }
  };
  rec(0);

  // Drop rows owning an outside term no other live row touches; such rows
  // are independent of the rest and of the window, so both ranks lose one.
  std::map<Term, std::vector<std::size_t>> users;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (const auto& [t, c] : rows[i])
      if (!window.count(t)) users[t].push_back(i);
  std::map<Term, std::size_t> live_count;
  for (const auto& [t, us] : users) live_count[t] = us.size();
  std::vector<char> alive(rows.size(), 1);
  std::vector<std::size_t> queue;
  for (const auto& [t, n] : live_count)
    if (n == 1) queue.push_back(users[t].front());
  while (!queue.empty()) {
    const std::size_t i = queue.back();
    queue.pop_back();
    if (!alive[i]) continue;
    alive[i] = 0;
    for (const auto& [t, c] : rows[i]) {
      if (window.count(t)) continue;
      if (--live_count[t] == 1)
        for (std::size_t j : users[t])
          if (alive[j]) queue.push_back(j);
    }
  }

  // Outside columns rank above window columns, so the pivots that land in
  // the window count the relations supported there.
  std::map<Term, std::uint32_t> col;
  std::vector<Term> outside;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (alive[i])
      for (const auto& [t, c] : rows[i])
        if (!window.count(t)) outside.push_back(t);
  std::sort(outside.begin(), outside.end());
  outside.erase(std::unique(outside.begin(), outside.end()), outside.end());
  std::uint32_t next = 0;
  for (const auto& t : window) col.emplace(t, next++);
  const std::uint32_t first_outside = next;
  for (const auto& t : outside) col.emplace(t, next++);

  detail::Echelon ech;
  std::size_t in_window = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!alive[i]) continue;
    detail::SparseRow row;
    for (const auto& [t, c] : rows[i]) row.emplace_back(col.at(t), c);
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    const long pivot = ech.insert(std::move(row));
    if (pivot >= 0 && static_cast<std::uint32_t>(pivot) < first_outside) ++in_window;
  }
  return in_window;
}

}  // namespace

Integer trdeg_oracle(const ExtensionSpec& spec, const WindowSpec& w, long margin, std::uint64_t cap) {
  spec.validate();
  if (margin < 0) throw DomainError("oracle margin must be nonnegative");
  const auto terms = window_terms(spec, w, cap);
  const std::set<Term> window(terms.begin(), terms.end());
  if (spec.defining.empty()) return Integer(static_cast<unsigned long>(window.size()));
  const std::size_t first = window_relation_dim(spec, w, window, margin, cap);
  const std::size_t second = window_relation_dim(spec, w, window, margin + 2, cap);
  if (first != second)
    throw MarginError("oracle relation dimension changed from " + std::to_string(first) + " to " +
                      std::to_string(second) + " when the margin grew from " + std::to_string(margin) + " to " +
                      std::to_string(margin + 2));
  return Integer(static_cast<unsigned long>(window.size() - first));
}

}  // namespace dimpoly
