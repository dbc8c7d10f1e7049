#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace dimpoly {

using Integer = mpz_class;
using Rational = mpq_class;

// C(t, k) = t(t-1)...(t-k+1)/k!, zero for k < 0.
Rational binom(const Integer& t, long k);
Integer binom_int(long t, long k);

std::string to_string(const Rational& q);

// Numerical polynomial in q variables, stored in the basis
// C(t1+i1,i1)*...*C(tq+iq,iq).  The zero polynomial has no terms.
class NumPoly {
 public:
  using Index = std::vector<unsigned>;
  using Coeffs = std::map<Index, Rational, std::greater<Index>>;

  explicit NumPoly(std::size_t num_vars = 0) : num_vars_(num_vars) {}
  NumPoly(std::size_t num_vars, Coeffs coeffs);

  static NumPoly constant(std::size_t num_vars, const Rational& c);
  static NumPoly basis(const Index& index, const Rational& c = 1);

  std::size_t num_vars() const { return num_vars_; }
  const Coeffs& coeffs() const { return coeffs_; }
  Rational coeff(const Index& index) const;
  bool is_zero() const { return coeffs_.empty(); }
  bool is_integral() const;
  // Throws IntegrityError naming `where` if some coefficient is not an integer.
  void require_integral(const std::string& where) const;

  unsigned degree_in(std::size_t var) const;
  unsigned total_degree() const;

  Rational evaluate(const std::vector<long>& point) const;
  Rational evaluate(const std::vector<Integer>& point) const;

  // Coefficients in the monomial basis t1^e1*...*tq^eq.
  std::map<Index, Rational, std::greater<Index>> to_power_basis() const;

  // Canonical text, terms in descending lexicographic index order.
  std::string to_text() const;

  NumPoly operator-() const;
  friend NumPoly operator+(const NumPoly& a, const NumPoly& b);
  friend NumPoly operator-(const NumPoly& a, const NumPoly& b);
  friend NumPoly operator*(const NumPoly& a, const NumPoly& b);
  friend NumPoly operator*(const Rational& c, const NumPoly& p);
  friend bool operator==(const NumPoly& a, const NumPoly& b) {
    return a.num_vars_ == b.num_vars_ && a.coeffs_ == b.coeffs_;
  }

 private:
  std::size_t num_vars_;
  Coeffs coeffs_;
};

// r(x) = p(x + deltas).
NumPoly shift(const NumPoly& p, const std::vector<long>& deltas);

// Places variable i of p at position var_map[i] of a polynomial in num_vars variables.
NumPoly embed(const NumPoly& p, std::size_t num_vars, const std::vector<std::size_t>& var_map);

// Product of univariate factors, factor v in variable v (basis coefficients).
NumPoly tensor_product(const std::vector<std::vector<Rational>>& factors);

// Coefficients of the univariate polynomial with the given values at
// t = -1, -2, ..., -(d+1) in the basis C(t+i,i), i = 0..d.
std::vector<Rational> univariate_from_negative_values(const std::vector<Rational>& values);

struct Sample {
  std::vector<long> point;
  Rational value;
};

// Unique polynomial with deg_{t_i} <= degree_bounds[i] through the samples.
NumPoly interpolate(const std::vector<Sample>& samples, const std::vector<unsigned>& degree_bounds);

}  // namespace dimpoly
