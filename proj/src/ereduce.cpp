#include <algorithm>

#include "dimpoly/diffring.hpp"
#include "dimpoly/errors.hpp"

namespace dimpoly {

namespace {

struct Orders {
  std::vector<long> lead;
  std::vector<long> colead;
};

Orders orders_of(const DiffPolynomial& f, const Partition& part) {
  Orders o;
  for (std::size_t k = 0; k < part.p(); ++k) {
    o.lead.push_back(ord_term(leader(f, k, part), k, part));
    o.colead.push_back(ord_term(coleader(f, k, part), k, part));
  }
  return o;
}

// Element data reused across iterations.
struct Reducer {
  const DiffPolynomial* g;
  Term u;
  unsigned d;
  DiffPolynomial initial;
};

}  // namespace

EReduction e_reduce(const DiffPolynomial& h, const std::vector<DiffPolynomial>& a, const Partition& part) {
  std::vector<Reducer> rs;
  for (const auto& g : a) {
    if (g.is_constant()) throw DomainError("E-reduction against a zero or constant polynomial");
    Term u = leader(g, 0, part);
    unsigned d = g.degree_in(u);
    rs.push_back({&g, u, d, g.coefficient_of_power(u, d)});
  }

  EReduction out;
  out.hbar = h;
  out.J = DiffPolynomial::constant(1);
  out.multipliers.assign(a.size(), {});

  std::optional<std::pair<Term, unsigned>> previous;
  while (!out.hbar.is_constant()) {
    const Orders oh = orders_of(out.hbar, part);
    auto ts = out.hbar.support();
    std::sort(ts.begin(), ts.end(), [&](const Term& x, const Term& y) { return compare_term(x, y, 0, part) > 0; });

    std::optional<Term> z;
    std::vector<std::size_t> eligible;
    for (const auto& w : ts) {
      const unsigned dw = out.hbar.degree_in(w);
      for (std::size_t k = 0; k < rs.size(); ++k) {
        const auto& r = rs[k];
        if (r.d > dw || !divides_term(r.u, w)) continue;
        const Orders og = orders_of(apply_gamma(quotient(r.u, w), *r.g), part);
        bool ok = true;
        for (std::size_t i = 1; i < part.p() && ok; ++i) ok = og.lead[i] <= oh.lead[i];
        for (std::size_t j = 0; j < part.p() && ok; ++j) ok = og.colead[j] >= oh.colead[j];
        if (ok) eligible.push_back(k);
      }
      if (!eligible.empty()) {
        z = w;
        break;
      }
    }
    if (!z) break;

    // Greatest 1-leader among the eligible elements, smallest index on ties.
    std::size_t l = eligible.front();
    for (std::size_t k : eligible)
      if (compare_term(rs[k].u, rs[l].u, 0, part) > 0) l = k;

    const unsigned d = out.hbar.degree_in(*z);
    if (previous) {
      auto c = compare_term(*z, previous->first, 0, part);
      if (c > 0 || (c == 0 && d >= previous->second))
        throw IntegrityError("E-reduction failed to descend at " + to_text(*z));
    }
    previous = std::make_pair(*z, d);

    const auto& r = rs[l];
    const ExpVector gamma = quotient(r.u, *z);
    const DiffPolynomial gi = apply_gamma(gamma, r.initial);
    const DiffPolynomial cz = out.hbar.coefficient_of_power(*z, d);
    const DiffPolynomial factor = cz * DiffPolynomial::power(*z, d - r.d);

    out.hbar = gi * out.hbar - factor * apply_gamma(gamma, *r.g);
    out.J = gi * out.J;
    for (auto& list : out.multipliers)
      for (auto& mlt : list) mlt.coeff = gi * mlt.coeff;
    out.multipliers[l].push_back({factor, gamma});
    ++out.steps;
  }
  return out;
}

DiffPolynomial certificate_residual(const DiffPolynomial& h, const std::vector<DiffPolynomial>& a,
                                    const EReduction& r) {
  DiffPolynomial acc = r.J * h - r.hbar;
  for (std::size_t i = 0; i < a.size() && i < r.multipliers.size(); ++i)
    for (const auto& mlt : r.multipliers[i]) acc = acc - mlt.coeff * apply_gamma(mlt.gamma, a[i]);
  return acc;
}

}  // namespace dimpoly
