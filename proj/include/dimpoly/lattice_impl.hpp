#pragma once

#include <cstdlib>

#include "dimpoly/errors.hpp"

namespace dimpoly {

namespace detail {

template <class Visit>
void shell_rec(const Partition& part, const std::vector<long>& r, const std::vector<long>& s, Point& b,
               std::vector<long>& used, std::size_t c, Visit& visit) {
  if (c == b.size()) {
    visit(static_cast<const Point&>(b));
    return;
  }
  const std::size_t k = part.block_of(c);
  const bool last = part.coords(k).back() == c;
  const long room = r[k] - used[k];
  for (long x = -room; x <= room; ++x) {
    const long ax = std::labs(x);
    if (last && used[k] + ax < s[k]) continue;
    b[c] = x;
    used[k] += ax;
    shell_rec(part, r, s, b, used, c + 1, visit);
    used[k] -= ax;
  }
}

}  // namespace detail

template <class Visit>
void for_each_shell_point(const Partition& part, const std::vector<long>& r, const std::vector<long>& s,
                          Visit&& visit) {
  if (r.size() != part.p() || s.size() != part.p()) throw DimensionError("window needs one radius per block");
  for (std::size_t k = 0; k < part.p(); ++k)
    if (r[k] < 0 || s[k] < 0) throw DomainError("window radii must be natural numbers");
  Point b(part.m(), 0);
  std::vector<long> used(part.p(), 0);
  for (std::size_t k = 0; k < part.p(); ++k)
    if (s[k] > r[k]) return;
  detail::shell_rec(part, r, s, b, used, 0, visit);
}

}  // namespace dimpoly
