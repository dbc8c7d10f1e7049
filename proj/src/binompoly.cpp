#include "dimpoly/binompoly.hpp"

#include <algorithm>
#include <sstream>

#include "dimpoly/errors.hpp"

namespace dimpoly {

Rational binom(const Integer& t, long k) {
  if (k < 0) return 0;
  Integer r;
  mpz_bin_ui(r.get_mpz_t(), t.get_mpz_t(), static_cast<unsigned long>(k));
  return Rational(r);
}

Integer binom_int(long t, long k) {
  if (k < 0) return 0;
  Integer r;
  Integer tt(t);
  mpz_bin_ui(r.get_mpz_t(), tt.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

void accumulate(NumPoly::Coeffs& c, const NumPoly::Index& idx, const Rational& v) {
  if (v == 0) return;
  auto [it, inserted] = c.emplace(idx, v);
  if (!inserted) {
    it->second += v;
    if (it->second == 0) c.erase(it);
  }
}

void check_vars(const NumPoly& a, const NumPoly& b) {
  if (a.num_vars() != b.num_vars())
    throw DimensionError("numerical polynomials in " + std::to_string(a.num_vars()) + " and " +
                         std::to_string(b.num_vars()) + " variables");
}

// Product C(t+i,i)*C(t+j,j) in the basis C(t+k,k), k = 0..i+j.
const std::vector<Rational>& product_table(unsigned i, unsigned j,
                                           std::map<std::pair<unsigned, unsigned>, std::vector<Rational>>& memo) {
  auto key = std::make_pair(std::min(i, j), std::max(i, j));
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::vector<Rational> values;
  for (long k = 1; k <= static_cast<long>(i + j) + 1; ++k) {
    values.push_back(binom(Integer(-k + static_cast<long>(i)), i) * binom(Integer(-k + static_cast<long>(j)), j));
  }
  return memo.emplace(key, univariate_from_negative_values(values)).first->second;
}

// Tensor product over variables of per-variable expansions.
void tensor_accumulate(NumPoly::Coeffs& out, const std::vector<std::vector<Rational>>& factors, const Rational& scale) {
  const std::size_t q = factors.size();
  NumPoly::Index idx(q, 0);
  std::vector<Rational> partial(q + 1);
  partial[0] = scale;
  // Depth-first over the grid of per-variable indices.
  std::function<void(std::size_t)> rec = [&](std::size_t v) {
    if (v == q) {
      accumulate(out, idx, partial[q]);
      return;
    }
    for (unsigned k = 0; k < factors[v].size(); ++k) {
      if (factors[v][k] == 0) continue;
      idx[v] = k;
      partial[v + 1] = partial[v] * factors[v][k];
      rec(v + 1);
    }
  };
  rec(0);
}

}  // namespace

std::vector<Rational> univariate_from_negative_values(const std::vector<Rational>& values) {
  // At t = -k only C(t+i,i) with i < k is nonzero; the diagonal entry is C(-1,k-1) = (-1)^(k-1).
  std::vector<Rational> a(values.size());
  for (std::size_t k = 1; k <= values.size(); ++k) {
    Rational acc = values[k - 1];
    for (std::size_t i = 0; i + 1 < k; ++i) {
      acc -= a[i] * binom(Integer(static_cast<long>(i) - static_cast<long>(k)), static_cast<long>(i));
    }
    a[k - 1] = (k % 2 == 1) ? acc : Rational(-acc);
  }
  return a;
}

NumPoly tensor_product(const std::vector<std::vector<Rational>>& factors) {
  NumPoly::Coeffs out;
  tensor_accumulate(out, factors, 1);
  return NumPoly(factors.size(), std::move(out));
}

NumPoly::NumPoly(std::size_t num_vars, Coeffs coeffs) : num_vars_(num_vars) {
  for (auto& [idx, c] : coeffs) {
    if (idx.size() != num_vars) throw DimensionError("multi-index length does not match variable count");
    c.canonicalize();
    accumulate(coeffs_, idx, c);
  }
}

NumPoly NumPoly::constant(std::size_t num_vars, const Rational& c) {
  Coeffs cs;
  if (c != 0) cs.emplace(Index(num_vars, 0), c);
  return NumPoly(num_vars, std::move(cs));
}

NumPoly NumPoly::basis(const Index& index, const Rational& c) {
  Coeffs cs;
  if (c != 0) cs.emplace(index, c);
  return NumPoly(index.size(), std::move(cs));
}

Rational NumPoly::coeff(const Index& index) const {
  auto it = coeffs_.find(index);
  return it == coeffs_.end() ? Rational(0) : it->second;
}

bool NumPoly::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const auto& kv) { return kv.second.get_den() == 1; });
}

void NumPoly::require_integral(const std::string& where) const {
  if (!is_integral()) throw IntegrityError(where + ": non-integer binomial-basis coefficient in " + to_text());
}

unsigned NumPoly::degree_in(std::size_t var) const {
  unsigned d = 0;
  for (const auto& [idx, c] : coeffs_) d = std::max(d, idx.at(var));
  return d;
}

unsigned NumPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [idx, c] : coeffs_) {
    unsigned s = 0;
    for (unsigned i : idx) s += i;
    d = std::max(d, s);
  }
  return d;
}

Rational NumPoly::evaluate(const std::vector<long>& point) const {
  std::vector<Integer> p(point.begin(), point.end());
  return evaluate(p);
}

Rational NumPoly::evaluate(const std::vector<Integer>& point) const {
  if (point.size() != num_vars_) throw DimensionError("evaluation point has wrong dimension");
  Rational sum = 0;
  for (const auto& [idx, c] : coeffs_) {
    Rational term = c;
    for (std::size_t v = 0; v < num_vars_; ++v) {
      if (idx[v] == 0) continue;
      term *= binom(point[v] + static_cast<unsigned long>(idx[v]), idx[v]);
    }
    sum += term;
  }
  return sum;
}

std::map<NumPoly::Index, Rational, std::greater<NumPoly::Index>> NumPoly::to_power_basis() const {
  // C(t+i,i) = prod_{k=1..i} (t+k)/k
  std::map<unsigned, std::vector<Rational>> uni;
  auto expand = [&](unsigned i) -> const std::vector<Rational>& {
    auto it = uni.find(i);
    if (it != uni.end()) return it->second;
    std::vector<Rational> poly{1};
    for (unsigned k = 1; k <= i; ++k) {
      std::vector<Rational> next(poly.size() + 1);
      for (std::size_t e = 0; e < poly.size(); ++e) {
        next[e] += poly[e] * k;
        next[e + 1] += poly[e];
      }
      for (auto& x : next) x /= k;
      poly = std::move(next);
    }
    return uni.emplace(i, std::move(poly)).first->second;
  };
  Coeffs out;
  for (const auto& [idx, c] : coeffs_) {
    std::vector<std::vector<Rational>> factors;
    for (unsigned i : idx) factors.push_back(expand(i));
    tensor_accumulate(out, factors, c);
  }
  return out;
}

std::string NumPoly::to_text() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [idx, c] : coeffs_) {
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    os << to_string(abs(c));
    for (std::size_t v = 0; v < idx.size(); ++v) {
      if (idx[v] == 0) continue;
      os << "*C(t" << v + 1 << "+" << idx[v] << "," << idx[v] << ")";
    }
  }
  return os.str();
}

NumPoly NumPoly::operator-() const {
  Coeffs cs = coeffs_;
  for (auto& [idx, c] : cs) c = -c;
  return NumPoly(num_vars_, std::move(cs));
}

NumPoly operator+(const NumPoly& a, const NumPoly& b) {
  check_vars(a, b);
  NumPoly::Coeffs cs = a.coeffs_;
  for (const auto& [idx, c] : b.coeffs_) accumulate(cs, idx, c);
  return NumPoly(a.num_vars_, std::move(cs));
}

NumPoly operator-(const NumPoly& a, const NumPoly& b) { return a + (-b); }

NumPoly operator*(const Rational& c, const NumPoly& p) {
  if (c == 0) return NumPoly(p.num_vars_);
  NumPoly::Coeffs cs = p.coeffs_;
  for (auto& [idx, v] : cs) v *= c;
  return NumPoly(p.num_vars_, std::move(cs));
}

NumPoly operator*(const NumPoly& a, const NumPoly& b) {
  check_vars(a, b);
  std::map<std::pair<unsigned, unsigned>, std::vector<Rational>> memo;
  NumPoly::Coeffs out;
  std::vector<std::vector<Rational>> factors(a.num_vars_);
  for (const auto& [ia, ca] : a.coeffs_) {
    for (const auto& [ib, cb] : b.coeffs_) {
      for (std::size_t v = 0; v < a.num_vars_; ++v) factors[v] = product_table(ia[v], ib[v], memo);
      tensor_accumulate(out, factors, ca * cb);
    }
  }
  return NumPoly(a.num_vars_, std::move(out));
}

NumPoly shift(const NumPoly& p, const std::vector<long>& deltas) {
  if (deltas.size() != p.num_vars()) throw DimensionError("shift vector has wrong dimension");
  std::map<std::pair<unsigned, long>, std::vector<Rational>> memo;
  auto expand = [&](unsigned i, long delta) -> const std::vector<Rational>& {
    auto key = std::make_pair(i, delta);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::vector<Rational> values;
    for (long k = 1; k <= static_cast<long>(i) + 1; ++k) values.push_back(binom(Integer(-k + delta + static_cast<long>(i)), i));
    return memo.emplace(key, univariate_from_negative_values(values)).first->second;
  };
  NumPoly::Coeffs out;
  std::vector<std::vector<Rational>> factors(p.num_vars());
  for (const auto& [idx, c] : p.coeffs()) {
    for (std::size_t v = 0; v < p.num_vars(); ++v) factors[v] = expand(idx[v], deltas[v]);
    tensor_accumulate(out, factors, c);
  }
  return NumPoly(p.num_vars(), std::move(out));
}

NumPoly embed(const NumPoly& p, std::size_t num_vars, const std::vector<std::size_t>& var_map) {
  if (var_map.size() != p.num_vars()) throw DimensionError("variable map has wrong length");
  NumPoly::Coeffs out;
  for (const auto& [idx, c] : p.coeffs()) {
    NumPoly::Index j(num_vars, 0);
    for (std::size_t v = 0; v < idx.size(); ++v) {
      if (var_map[v] >= num_vars) throw DimensionError("variable map target out of range");
      j[var_map[v]] += idx[v];
    }
    accumulate(out, j, c);
  }
  return NumPoly(num_vars, std::move(out));
}

NumPoly interpolate(const std::vector<Sample>& samples, const std::vector<unsigned>& degree_bounds) {
  const std::size_t q = degree_bounds.size();
  std::vector<NumPoly::Index> unknowns;
  {
    NumPoly::Index idx(q, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t v) {
      if (v == q) {
        unknowns.push_back(idx);
        return;
      }
      for (unsigned k = 0; k <= degree_bounds[v]; ++k) {
        idx[v] = k;
        rec(v + 1);
      }
    };
    rec(0);
  }
  const std::size_t n = unknowns.size();

  // Integer rows [coefficients | rhs]; pivots[c] is the row whose leading column is c.
  std::vector<std::vector<Integer>> pivots(n);
  std::size_t rank = 0;
  for (std::size_t s = 0; s < samples.size(); ++s) {
    const auto& smp = samples[s];
    if (smp.point.size() != q) throw DimensionError("sample point has wrong dimension");
    std::vector<Integer> row(n + 1);
    Integer den = smp.value.get_den();
    for (std::size_t u = 0; u < n; ++u) {
      Integer prod = den;
      for (std::size_t v = 0; v < q; ++v) {
        if (unknowns[u][v] == 0) continue;
        prod *= binom_int(smp.point[v] + static_cast<long>(unknowns[u][v]), unknowns[u][v]);
      }
      row[u] = prod;
    }
    row[n] = smp.value.get_num();
    std::size_t lead = 0;
    for (;; ++lead) {
      while (lead < n && row[lead] == 0) ++lead;
      if (lead == n || pivots[lead].empty()) break;
      const auto& piv = pivots[lead];
      Integer g = gcd(piv[lead], row[lead]);
      Integer fp = row[lead] / g, fr = piv[lead] / g;
      Integer content = 0;
      for (std::size_t c = lead; c <= n; ++c) {
        row[c] = fr * row[c] - fp * piv[c];
        content = gcd(content, row[c]);
      }
      if (content > 1)
        for (std::size_t c = lead; c <= n; ++c) row[c] /= content;
    }
    if (lead == n) {
      if (row[n] != 0)
        throw InconsistencyError("sample " + std::to_string(s) + " is inconsistent with the bounded-degree fit", s);
      continue;
    }
    pivots[lead] = std::move(row);
    ++rank;
  }
  if (rank < n)
    throw InsufficientSamplesError("interpolation needs " + std::to_string(n) + " independent samples, got " +
                                   std::to_string(rank));
  std::vector<Rational> sol(n);
  for (std::size_t c = n; c-- > 0;) {
    const auto& row = pivots[c];
    Rational acc(row[n]);
    for (std::size_t k = c + 1; k < n; ++k) acc -= Rational(row[k]) * sol[k];
    sol[c] = acc / Rational(row[c]);
  }
  NumPoly::Coeffs cs;
  for (std::size_t u = 0; u < n; ++u)
    if (sol[u] != 0) cs.emplace(unknowns[u], sol[u]);
  return NumPoly(q, std::move(cs));
}

}  // namespace dimpoly
