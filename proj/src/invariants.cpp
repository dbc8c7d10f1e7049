#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "dimpoly/errors.hpp"
#include "dimpoly/extdim.hpp"

namespace dimpoly {

namespace {

std::string index_text(const NumPoly::Index& idx) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < idx.size(); ++i) os << (i ? "," : "") << idx[i];
  os << ")";
  return os.str();
}

std::string order_text(const std::vector<std::size_t>& order) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < order.size(); ++i) os << (i ? "," : "") << "t" << order[i] + 1;
  os << "]";
  return os.str();
}

}  // namespace

InvariantSummary invariants(const DimPolyResult& result) { return invariants(result.phi, result.part); }

InvariantSummary invariants(const NumPoly& phi, const Partition& part) {
  const std::size_t p = part.p();
  if (phi.num_vars() != 2 * p) throw DimensionError("expected a polynomial in 2p variables");
  InvariantSummary out;
  out.part = part;
  for (const auto& [idx, c] : phi.coeffs()) out.support.push_back(idx);

  auto first_half = [&](const NumPoly::Index& idx) {
    return std::accumulate(idx.begin(), idx.begin() + static_cast<long>(p), 0U);
  };
  for (const auto& idx : out.support) out.total_degree = std::max(out.total_degree, first_half(idx));
  for (const auto& [idx, c] : phi.coeffs())
    if (first_half(idx) == out.total_degree) out.top_coeffs.emplace(idx, c);

  std::vector<std::size_t> mu(p), nu(p);
  std::iota(mu.begin(), mu.end(), 0);
  do {
    std::iota(nu.begin(), nu.end(), p);
    do {
      std::vector<std::size_t> order = mu;
      order.insert(order.end(), nu.begin(), nu.end());
      if (out.support.empty()) continue;
      auto less = [&](const NumPoly::Index& a, const NumPoly::Index& b) {
        for (std::size_t c : order)
          if (a[c] != b[c]) return a[c] < b[c];
        return false;
      };
      const auto best = *std::max_element(out.support.begin(), out.support.end(), less);
      out.lex_max.push_back({order, best, phi.coeff(best)});
    } while (std::next_permutation(nu.begin(), nu.end()));
  } while (std::next_permutation(mu.begin(), mu.end()));

  NumPoly::Index top_r(2 * p, 0), top_s(2 * p, 0);
  for (std::size_t k = 0; k < p; ++k) {
    top_r[k] = static_cast<unsigned>(part.block_size(k));
    top_s[p + k] = static_cast<unsigned>(part.block_size(k));
  }
  const Rational a_r = phi.coeff(top_r);
  const Rational a_s = phi.coeff(top_s);
  // The r-part and s-part top coefficients agree up to the sign (-1)^p of the shell difference.
  const Rational expect_s = (p % 2 == 0) ? a_r : Rational(-a_r);
  if (a_s != expect_s)
    throw IntegrityError("top coefficients disagree: a" + index_text(top_r) + " = " + to_string(a_r) + ", a" +
                         index_text(top_s) + " = " + to_string(a_s));
  out.sigma_trdeg = a_r / Rational(Integer(1) << static_cast<unsigned>(part.m()));
  return out;
}

InvariantSummary univariate_invariants(const NumPoly& phi, const Partition& part) {
  if (phi.num_vars() != 1) throw DimensionError("expected a univariate polynomial");
  InvariantSummary out;
  out.univariate = true;
  out.part = part;
  for (const auto& [idx, c] : phi.coeffs()) out.support.push_back(idx);
  out.total_degree = phi.total_degree();
  if (!phi.is_zero()) out.top_coeffs.emplace(NumPoly::Index{out.total_degree}, phi.coeff({out.total_degree}));
  out.sigma_trdeg =
      phi.coeff({static_cast<unsigned>(part.m())}) / Rational(Integer(1) << static_cast<unsigned>(part.m()));
  return out;
}

Rational leading_power_coeff(const NumPoly& phi) {
  if (phi.num_vars() != 1) throw DimensionError("expected a univariate polynomial");
  if (phi.is_zero()) return 0;
  const unsigned d = phi.total_degree();
  Integer fact = 1;
  for (unsigned i = 2; i <= d; ++i) fact *= i;
  return phi.coeff({d}) / Rational(fact);
}

Verdict equivalence_distinguish(const InvariantSummary& a, const InvariantSummary& b) {
  if (a.univariate != b.univariate) throw DomainError("cannot compare univariate and 2p-variate invariants");
  if (!(a.part == b.part)) throw DomainError("invariants computed for different partitions");
  auto differ = [](std::string w) { return Verdict{true, std::move(w)}; };
  if (a.total_degree != b.total_degree)
    return differ("total degree " + std::to_string(a.total_degree) + " vs " + std::to_string(b.total_degree));
  std::set<NumPoly::Index, std::greater<NumPoly::Index>> keys;
  for (const auto& [idx, c] : a.top_coeffs) keys.insert(idx);
  for (const auto& [idx, c] : b.top_coeffs) keys.insert(idx);
  for (const auto& idx : keys) {
    auto ia = a.top_coeffs.find(idx);
    auto ib = b.top_coeffs.find(idx);
    const Rational ca = ia == a.top_coeffs.end() ? Rational(0) : ia->second;
    const Rational cb = ib == b.top_coeffs.end() ? Rational(0) : ib->second;
    if (ca != cb)
      return differ("degree-" + std::to_string(a.total_degree) + " coefficient at index " + index_text(idx) + ": " +
                    to_string(ca) + " vs " + to_string(cb));
  }
  if (a.lex_max.size() != b.lex_max.size()) return differ("lex-max tables of different size");
  for (std::size_t i = 0; i < a.lex_max.size(); ++i) {
    const auto& x = a.lex_max[i];
    const auto& y = b.lex_max[i];
    if (x.element != y.element || x.coeff != y.coeff)
      return differ("lex-max element for order " + order_text(x.order) + ": " + index_text(x.element) + " (" +
                    to_string(x.coeff) + ") vs " + index_text(y.element) + " (" + to_string(y.coeff) + ")");
  }
  if (a.sigma_trdeg != b.sigma_trdeg)
    return differ("sigma-trdeg " + to_string(a.sigma_trdeg) + " vs " + to_string(b.sigma_trdeg));
  return Verdict{false, ""};
}

}  // namespace dimpoly
