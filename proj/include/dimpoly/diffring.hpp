#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dimpoly/binompoly.hpp"
#include "dimpoly/lattice.hpp"

namespace dimpoly {

using ExpVector = std::vector<long>;

// gamma * y_{gen}; gen is 0-based (y1 is gen 0).
struct Term {
  ExpVector gamma;
  std::size_t gen = 0;
  friend auto operator<=>(const Term&, const Term&) = default;
  friend bool operator==(const Term&, const Term&) = default;
};

// Sorted by Term, exponents >= 1; empty is the unit monomial.
using Monomial = std::vector<std::pair<Term, unsigned>>;

class DiffPolynomial {
 public:
  using Terms = std::map<Monomial, Rational>;

  DiffPolynomial() = default;
  explicit DiffPolynomial(Terms terms);
  static DiffPolynomial constant(const Rational& c);
  static DiffPolynomial term(const Term& t, const Rational& c = 1);
  static DiffPolynomial power(const Term& t, unsigned e, const Rational& c = 1);

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_linear_homogeneous() const;
  // Distinct terms occurring in some monomial, in ascending Term order.
  std::vector<Term> support() const;
  unsigned degree_in(const Term& t) const;
  // Sum of the monomials whose exponent of t is exactly e, with t^e removed.
  DiffPolynomial coefficient_of_power(const Term& t, unsigned e) const;
  // Coefficient of a linear term (homogeneous linear polynomials).
  Rational linear_coeff(const Term& t) const;

  DiffPolynomial operator-() const;
  friend DiffPolynomial operator+(const DiffPolynomial& a, const DiffPolynomial& b);
  friend DiffPolynomial operator-(const DiffPolynomial& a, const DiffPolynomial& b);
  friend DiffPolynomial operator*(const DiffPolynomial& a, const DiffPolynomial& b);
  friend DiffPolynomial operator*(const Rational& c, const DiffPolynomial& a);
  friend bool operator==(const DiffPolynomial& a, const DiffPolynomial& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

DiffPolynomial pow(const DiffPolynomial& a, unsigned e);

// The (2m+p)-tuple of the order <_k.
std::vector<long> order_key(const ExpVector& g, std::size_t k, const Partition& part);
std::strong_ordering compare_gamma(const ExpVector& g1, const ExpVector& g2, std::size_t k, const Partition& part);
std::strong_ordering compare_term(const Term& u, const Term& v, std::size_t k, const Partition& part);

Term leader(const DiffPolynomial& f, std::size_t k, const Partition& part);
Term coleader(const DiffPolynomial& f, std::size_t k, const Partition& part);
long eord(const DiffPolynomial& f, std::size_t k, const Partition& part);
long ord_term(const Term& u, std::size_t k, const Partition& part);

bool similar(const ExpVector& a, const ExpVector& b);
bool divides_term(const Term& u, const Term& v);
ExpVector quotient(const Term& u, const Term& v);

ExpVector add(const ExpVector& a, const ExpVector& b);
ExpVector negate(const ExpVector& a);
Term apply_gamma(const ExpVector& g, const Term& t);
DiffPolynomial apply_gamma(const ExpVector& g, const DiffPolynomial& f);

struct StableLeaders {
  Term u;
  Term v;
};
StableLeaders stable_leaders(const DiffPolynomial& f, Orthant orthant, std::size_t k, const Partition& part);

struct EWitness {
  ExpVector gamma;
  unsigned e = 0;
};
// Empty when f is E-reduced with respect to g.
std::optional<EWitness> e_reduction_witness(const DiffPolynomial& f, const DiffPolynomial& g, const Partition& part);
bool is_e_reduced(const DiffPolynomial& f, const DiffPolynomial& g, const Partition& part);

struct RankKey {
  Term leader;
  unsigned degree = 0;
  std::vector<long> leader_orders;  // ord_k u^(k), k = 2..p
  std::vector<long> eords;          // Eord_k, k = 1..p
};
RankKey rank_key(const DiffPolynomial& f, const Partition& part);
std::strong_ordering rank_compare(const DiffPolynomial& f, const DiffPolynomial& g, const Partition& part);

struct Multiplier {
  DiffPolynomial coeff;
  ExpVector gamma;
};
struct EReduction {
  DiffPolynomial hbar;
  DiffPolynomial J;
  std::vector<std::vector<Multiplier>> multipliers;  // one list per element of A
  std::size_t steps = 0;
};
EReduction e_reduce(const DiffPolynomial& h, const std::vector<DiffPolynomial>& a, const Partition& part);
// J*h - sum C_i(g_i) - hbar; zero when the certificate holds.
DiffPolynomial certificate_residual(const DiffPolynomial& h, const std::vector<DiffPolynomial>& a,
                                    const EReduction& r);

bool is_autoreduced(const std::vector<DiffPolynomial>& a, const Partition& part);
std::strong_ordering set_rank_compare(const std::vector<DiffPolynomial>& a, const std::vector<DiffPolynomial>& b,
                                      const Partition& part);

std::vector<DiffPolynomial> linear_char_set(const DiffPolynomial& f, const Partition& part, long search_margin = 2);
// Characteristic set of the linear ideal generated by several polynomials:
// row-echelon form of the translates inside a box, keeping rows whose
// leaders are minimal under divisibility.
std::vector<DiffPolynomial> linear_ideal_char_set(const std::vector<DiffPolynomial>& gens, const Partition& part,
                                                  long search_margin = 2);

std::string to_text(const Term& t);
std::string to_text(const DiffPolynomial& f, const Partition& part);

}  // namespace dimpoly
