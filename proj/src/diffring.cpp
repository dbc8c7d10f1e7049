#include "dimpoly/diffring.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "dimpoly/errors.hpp"

namespace dimpoly {

namespace {

void accumulate(DiffPolynomial::Terms& ts, const Monomial& mono, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = ts.emplace(mono, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) ts.erase(it);
  }
}

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.push_back(*j++);
    } else {
      out.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  return out;
}

void check_block(std::size_t k, const Partition& part) {
  if (k >= part.p()) throw DomainError("block index " + std::to_string(k + 1) + " out of range");
}

void check_dim(const ExpVector& g, const Partition& part) {
  if (g.size() != part.m()) throw DimensionError("exponent vector has wrong dimension");
}

}  // namespace

DiffPolynomial::DiffPolynomial(Terms terms) {
  for (auto& [mono, c] : terms) {
    for (const auto& [t, e] : mono)
      if (e == 0) throw DomainError("monomial exponents must be positive");
    if (!std::is_sorted(mono.begin(), mono.end(), [](const auto& x, const auto& y) { return x.first < y.first; }))
      throw DomainError("monomial factors must be sorted");
    accumulate(terms_, mono, c);
  }
}

DiffPolynomial DiffPolynomial::constant(const Rational& c) {
  DiffPolynomial f;
  accumulate(f.terms_, Monomial{}, c);
  return f;
}

DiffPolynomial DiffPolynomial::term(const Term& t, const Rational& c) { return power(t, 1, c); }

DiffPolynomial DiffPolynomial::power(const Term& t, unsigned e, const Rational& c) {
  DiffPolynomial f;
  if (e == 0) return constant(c);
  accumulate(f.terms_, Monomial{{t, e}}, c);
  return f;
}

bool DiffPolynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

bool DiffPolynomial::is_linear_homogeneous() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& kv) { return kv.first.size() == 1 && kv.first[0].second == 1; });
}

std::vector<Term> DiffPolynomial::support() const {
  std::vector<Term> out;
  for (const auto& [mono, c] : terms_)
    for (const auto& [t, e] : mono) out.push_back(t);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

unsigned DiffPolynomial::degree_in(const Term& t) const {
  unsigned d = 0;
  for (const auto& [mono, c] : terms_)
    for (const auto& [u, e] : mono)
      if (u == t) d = std::max(d, e);
  return d;
}

DiffPolynomial DiffPolynomial::coefficient_of_power(const Term& t, unsigned e) const {
  DiffPolynomial out;
  for (const auto& [mono, c] : terms_) {
    unsigned have = 0;
    Monomial rest;
    for (const auto& f : mono) {
      if (f.first == t)
        have = f.second;
      else
        rest.push_back(f);
    }
    if (have == e) accumulate(out.terms_, rest, c);
  }
  return out;
}

Rational DiffPolynomial::linear_coeff(const Term& t) const {
  auto it = terms_.find(Monomial{{t, 1}});
  return it == terms_.end() ? Rational(0) : it->second;
}

DiffPolynomial DiffPolynomial::operator-() const { return Rational(-1) * *this; }

DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b) {
  DiffPolynomial out = a;
  for (const auto& [mono, c] : b.terms_) accumulate(out.terms_, mono, c);
  return out;
}

DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b) {
  DiffPolynomial out = a;
  for (const auto& [mono, c] : b.terms_) accumulate(out.terms_, mono, -c);
  return out;
}

DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b) {
  DiffPolynomial out;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) accumulate(out.terms_, multiply(ma, mb), ca * cb);
  return out;
}

DiffPolynomial operator*(const Rational& c, const DiffPolynomial& a) {
  DiffPolynomial out;
  if (c == 0) return out;
  for (const auto& [mono, v] : a.terms_) out.terms_.emplace(mono, v * c);
  return out;
}

DiffPolynomial pow(const DiffPolynomial& a, unsigned e) {
  DiffPolynomial out = DiffPolynomial::constant(1);
  for (unsigned i = 0; i < e; ++i) out = out * a;
  return out;
}

std::vector<long> order_key(const ExpVector& g, std::size_t k, const Partition& part) {
  check_block(k, part);
  check_dim(g, part);
  std::vector<long> key;
  key.reserve(2 * part.m() + part.p());
  key.push_back(ord_block(g, part, k));
  for (std::size_t j = 0; j < part.p(); ++j)
    if (j != k) key.push_back(ord_block(g, part, j));
  for (std::size_t c : part.coords(k)) key.push_back(std::labs(g[c]));
  for (std::size_t c : part.coords(k)) key.push_back(g[c]);
  for (std::size_t c = 0; c < part.m(); ++c)
    if (part.block_of(c) != k) key.push_back(std::labs(g[c]));
  for (std::size_t c = 0; c < part.m(); ++c)
    if (part.block_of(c) != k) key.push_back(g[c]);
  return key;
}

std::strong_ordering compare_gamma(const ExpVector& g1, const ExpVector& g2, std::size_t k, const Partition& part) {
  return order_key(g1, k, part) <=> order_key(g2, k, part);
}

std::strong_ordering compare_term(const Term& u, const Term& v, std::size_t k, const Partition& part) {
  auto c = compare_gamma(u.gamma, v.gamma, k, part);
  if (c != 0) return c;
  return u.gen <=> v.gen;
}

namespace {

// Support terms paired with their <_k keys; the generator index breaks ties.
std::pair<Term, Term> extremes(const DiffPolynomial& f, std::size_t k, const Partition& part) {
  check_block(k, part);
  const auto ts = f.support();
  if (ts.empty()) throw NoTermsError("constant polynomial has no leader");
  std::vector<long> best_key, worst_key;
  const Term* best = nullptr;
  const Term* worst = nullptr;
  for (const auto& t : ts) {
    auto key = order_key(t.gamma, k, part);
    key.push_back(static_cast<long>(t.gen));
    if (!best || key > best_key) {
      best = &t;
      best_key = key;
    }
    if (!worst || key < worst_key) {
      worst = &t;
      worst_key = key;
    }
  }
  return {*best, *worst};
}

}  // namespace

Term leader(const DiffPolynomial& f, std::size_t k, const Partition& part) { return extremes(f, k, part).first; }

Term coleader(const DiffPolynomial& f, std::size_t k, const Partition& part) { return extremes(f, k, part).second; }

long ord_term(const Term& u, std::size_t k, const Partition& part) { return ord_block(u.gamma, part, k); }

long eord(const DiffPolynomial& f, std::size_t k, const Partition& part) {
  auto [u, v] = extremes(f, k, part);
  return ord_term(u, k, part) - ord_term(v, k, part);
}

bool similar(const ExpVector& a, const ExpVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if ((a[i] > 0 && b[i] < 0) || (a[i] < 0 && b[i] > 0)) return false;
  return true;
}

bool divides_term(const Term& u, const Term& v) {
  if (u.gen != v.gen || u.gamma.size() != v.gamma.size()) return false;
  return below(u.gamma, v.gamma);
}

ExpVector quotient(const Term& u, const Term& v) {
  if (!divides_term(u, v)) throw DomainError(to_text(u) + " does not divide " + to_text(v));
  ExpVector g(u.gamma.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = v.gamma[i] - u.gamma[i];
  return g;
}

ExpVector add(const ExpVector& a, const ExpVector& b) {
  if (a.size() != b.size()) throw DimensionError("exponent vectors of different dimension");
  ExpVector g(a.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = a[i] + b[i];
  return g;
}

ExpVector negate(const ExpVector& a) {
  ExpVector g(a.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = -a[i];
  return g;
}

Term apply_gamma(const ExpVector& g, const Term& t) { return Term{add(g, t.gamma), t.gen}; }

DiffPolynomial apply_gamma(const ExpVector& g, const DiffPolynomial& f) {
  DiffPolynomial::Terms out;
  for (const auto& [mono, c] : f.terms()) {
    Monomial shifted;
    shifted.reserve(mono.size());
    for (const auto& [t, e] : mono) shifted.emplace_back(apply_gamma(g, t), e);
    // A translation preserves the lexicographic order of same-dimension vectors.
    out.emplace(std::move(shifted), c);
  }
  return DiffPolynomial(std::move(out));
}

StableLeaders stable_leaders(const DiffPolynomial& f, Orthant orthant, std::size_t k, const Partition& part) {
  check_block(k, part);
  const auto ts = f.support();
  if (ts.empty()) throw NoTermsError("constant polynomial has no stable leaders");
  long depth = 0;
  for (const auto& t : ts) {
    check_dim(t.gamma, part);
    for (long x : t.gamma) depth = std::max(depth, std::labs(x));
  }
  depth += 1;
  auto probe = [&](long d) {
    ExpVector g(part.m());
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = (orthant >> i) & 1U ? -d : d;
    const auto gf = apply_gamma(g, f);
    const auto ng = negate(g);
    return StableLeaders{apply_gamma(ng, leader(gf, k, part)), apply_gamma(ng, coleader(gf, k, part))};
  };
  auto first = probe(depth);
  auto second = probe(2 * depth);
  if (!(first.u == second.u) || !(first.v == second.v))
    throw InstabilityError("leader of translates of f is not stable in orthant " + std::to_string(orthant_index(orthant)));
  return first;
}

namespace {

struct Profile {
  std::vector<long> lead_ords;  // ord_k u^(k), k = 0..p-1
  std::vector<long> colead_ords;
};

Profile profile(const DiffPolynomial& f, const Partition& part) {
  Profile pr;
  for (std::size_t k = 0; k < part.p(); ++k) {
    auto [u, v] = extremes(f, k, part);
    pr.lead_ords.push_back(ord_term(u, k, part));
    pr.colead_ords.push_back(ord_term(v, k, part));
  }
  return pr;
}

}  // namespace

std::optional<EWitness> e_reduction_witness(const DiffPolynomial& f, const DiffPolynomial& g, const Partition& part) {
  if (g.is_constant()) throw NoTermsError("E-reduction against a constant polynomial");
  const Term u = leader(g, 0, part);
  const unsigned d = g.degree_in(u);
  if (f.is_constant()) return std::nullopt;
  const Profile pf = profile(f, part);
  auto ts = f.support();
  std::sort(ts.begin(), ts.end(), [&](const Term& a, const Term& b) { return compare_term(a, b, 0, part) > 0; });
  for (const auto& w : ts) {
    const unsigned e = f.degree_in(w);
    if (e < d || !divides_term(u, w)) continue;
    const ExpVector gamma = quotient(u, w);
    const Profile pg = profile(apply_gamma(gamma, g), part);
    bool hit = true;
    for (std::size_t k = 1; k < part.p() && hit; ++k) hit = pg.lead_ords[k] <= pf.lead_ords[k];
    for (std::size_t j = 0; j < part.p() && hit; ++j) hit = pg.colead_ords[j] >= pf.colead_ords[j];
    if (hit) return EWitness{gamma, e};
  }
  return std::nullopt;
}

bool is_e_reduced(const DiffPolynomial& f, const DiffPolynomial& g, const Partition& part) {
  return !e_reduction_witness(f, g, part).has_value();
}

RankKey rank_key(const DiffPolynomial& f, const Partition& part) {
  if (f.is_constant()) throw NoTermsError("rank key of a constant polynomial");
  RankKey key;
  key.leader = leader(f, 0, part);
  key.degree = f.degree_in(key.leader);
  for (std::size_t k = 1; k < part.p(); ++k) key.leader_orders.push_back(ord_term(leader(f, k, part), k, part));
  for (std::size_t k = 0; k < part.p(); ++k) key.eords.push_back(eord(f, k, part));
  return key;
}

std::strong_ordering rank_compare(const DiffPolynomial& f, const DiffPolynomial& g, const Partition& part) {
  const bool fc = f.is_constant(), gc = g.is_constant();
  if (fc || gc) {
    if (fc && gc) return std::strong_ordering::equal;
    return fc ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const RankKey a = rank_key(f, part), b = rank_key(g, part);
  if (auto c = compare_term(a.leader, b.leader, 0, part); c != 0) return c;
  if (auto c = a.degree <=> b.degree; c != 0) return c;
  if (auto c = a.leader_orders <=> b.leader_orders; c != 0) return c;
  return a.eords <=> b.eords;
}

bool is_autoreduced(const std::vector<DiffPolynomial>& a, const Partition& part) {
  for (const auto& f : a)
    if (f.is_constant()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j)
      if (i != j && !is_e_reduced(a[i], a[j], part)) return false;
  return true;
}

std::strong_ordering set_rank_compare(const std::vector<DiffPolynomial>& a, const std::vector<DiffPolynomial>& b,
                                      const Partition& part) {
  auto check_sorted = [&](const std::vector<DiffPolynomial>& s, const char* name) {
    for (std::size_t i = 1; i < s.size(); ++i)
      if (rank_compare(s[i - 1], s[i], part) > 0)
        throw OrderingError(std::string(name) + " is not sorted by ascending rank at position " + std::to_string(i));
  };
  check_sorted(a, "first set");
  check_sorted(b, "second set");
  const std::size_t n = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = rank_compare(a[i], b[i], part); c != 0) return c;
  // A longer set with the same rank prefix has lower rank.
  return b.size() <=> a.size();
}

std::string to_text(const Term& t) {
  std::ostringstream os;
  for (std::size_t i = 0; i < t.gamma.size(); ++i)
    if (t.gamma[i] != 0) os << "a" << i + 1 << "^" << t.gamma[i] << " ";
  os << "y" << t.gen + 1;
  return os.str();
}

std::string to_text(const DiffPolynomial& f, const Partition& part) {
  if (f.is_zero()) return "0";
  auto desc = [&](const Term& a, const Term& b) { return compare_term(a, b, 0, part) > 0; };
  std::vector<std::pair<Monomial, Rational>> monos;
  for (const auto& [mono, c] : f.terms()) {
    Monomial sorted = mono;
    std::sort(sorted.begin(), sorted.end(), [&](const auto& x, const auto& y) { return desc(x.first, y.first); });
    monos.emplace_back(std::move(sorted), c);
  }
  auto mono_greater = [&](const auto& x, const auto& y) {
    const Monomial& a = x.first;
    const Monomial& b = y.first;
    for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
      auto c = compare_term(a[i].first, b[i].first, 0, part);
      if (c != 0) return c > 0;
      if (a[i].second != b[i].second) return a[i].second > b[i].second;
    }
    return a.size() > b.size();
  };
  std::sort(monos.begin(), monos.end(), mono_greater);
  std::ostringstream os;
  bool first = true;
  for (const auto& [mono, c] : monos) {
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    const Rational mag = abs(c);
    if (mono.empty()) {
      os << to_string(mag);
      continue;
    }
    if (mag != 1) os << to_string(mag) << "*";
    for (std::size_t i = 0; i < mono.size(); ++i) {
      if (i) os << "*";
      const auto& [t, e] = mono[i];
      const bool bare = std::all_of(t.gamma.begin(), t.gamma.end(), [](long x) { return x == 0; });
      if (e == 1)
        os << to_text(t);
      else if (bare)
        os << to_text(t) << "^" << e;
      else
        os << "(" << to_text(t) << ")^" << e;
    }
  }
  return os.str();
}

}  // namespace dimpoly
