#pragma once

#include <ostream>

#include "dimpoly/binompoly.hpp"
#include "dimpoly/diffring.hpp"

namespace dimpoly {

inline void PrintTo(const NumPoly& p, std::ostream* os) { *os << p.to_text(); }
inline void PrintTo(const Term& t, std::ostream* os) { *os << to_text(t); }
inline void PrintTo(const DiffPolynomial& f, std::ostream* os) {
  std::size_t m = 0;
  for (const auto& [mono, c] : f.terms())
    if (!mono.empty()) m = mono.front().first.gamma.size();
  *os << to_text(f, Partition::trivial(m == 0 ? 1 : m));
}

}  // namespace dimpoly
