#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "dimpoly/binompoly.hpp"
#include "dimpoly/diffring.hpp"
#include "dimpoly/lattice.hpp"

namespace dimpoly {

struct ExtensionSpec {
  Partition part;
  std::size_t n = 1;
  std::vector<DiffPolynomial> defining;  // empty: free extension

  // Throws DomainError/DimensionError when a defining polynomial is constant,
  // nonlinear, of the wrong dimension or mentions a generator beyond n.
  void validate() const;
};

struct WindowSpec {
  std::vector<long> r;
  std::vector<long> s;
};

std::vector<Term> window_terms(const ExtensionSpec& spec, const WindowSpec& w, std::uint64_t cap = 0);

struct WindowClasses {
  std::vector<Term> u_prime;
  std::vector<Term> u_double_prime;
  std::vector<Term> rest;
};
WindowClasses classify_window(const std::vector<DiffPolynomial>& charset, const ExtensionSpec& spec,
                              const WindowSpec& w, std::uint64_t cap = 0);

// Characteristic set of the defining ideal with respect to part: the
// translate construction for one polynomial, row echelon for several.
std::vector<DiffPolynomial> extension_char_set(const ExtensionSpec& spec, const Partition& part,
                                               long search_margin = 2);

struct Thresholds {
  std::vector<long> r0;
  std::vector<long> s0;
  std::vector<long> s1;
};

struct GridSample {
  WindowSpec window;
  Integer u_prime;
  Integer u_double_prime;
  bool held_out = false;
};

struct PhiOptions {
  long search_margin = 2;
  unsigned max_rounds = 5;
  std::size_t held_out = 10;
  std::uint64_t cap = 0;
};

struct DimPolyResult {
  Partition part;
  NumPoly phi;  // variables r_1..r_p, s_1..s_p
  Thresholds thresholds;
  std::vector<DiffPolynomial> charset;
  std::vector<GridSample> samples;
  unsigned rounds = 0;
  NumPoly psi_difference;  // psi(t_1..t_p) - psi(t_{p+1}-1, ..., t_{2p}-1)
  NumPoly lambda;          // phi - psi_difference
  bool lambda_degree_below_m = false;
};

DimPolyResult compute_phi(const ExtensionSpec& spec, const PhiOptions& opts = {});

// True when the window satisfies r_i >= r0_i, s_i >= s1_i and r_i - s_i >= s0_i.
bool in_stability_region(const Thresholds& th, const WindowSpec& w);

NumPoly univariate_phi(const ExtensionSpec& spec, const PhiOptions& opts = {});

Integer trdeg_oracle(const ExtensionSpec& spec, const WindowSpec& w, long margin = 2, std::uint64_t cap = 0);

struct LexMax {
  std::vector<std::size_t> order;  // coordinate priority: mu then nu
  NumPoly::Index element;
  Rational coeff;
};

struct InvariantSummary {
  bool univariate = false;
  Partition part;
  std::vector<NumPoly::Index> support;
  unsigned total_degree = 0;
  NumPoly::Coeffs top_coeffs;
  std::vector<LexMax> lex_max;
  Rational sigma_trdeg;
};

InvariantSummary invariants(const DimPolyResult& result);
InvariantSummary invariants(const NumPoly& phi, const Partition& part);
InvariantSummary univariate_invariants(const NumPoly& phi, const Partition& part);

// Leading coefficient in the power basis t^d of a univariate polynomial.
Rational leading_power_coeff(const NumPoly& phi);

struct Verdict {
  bool distinguished = false;
  std::string witness;
};
Verdict equivalence_distinguish(const InvariantSummary& a, const InvariantSummary& b);

}  // namespace dimpoly
