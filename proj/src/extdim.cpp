#include "dimpoly/extdim.hpp"

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "dimpoly/errors.hpp"

namespace dimpoly {

void ExtensionSpec::validate() const {
  if (n == 0) throw DomainError("an extension needs at least one generator");
  for (const auto& f : defining) {
    if (f.is_constant()) throw DomainError("defining polynomial is constant");
    if (!f.is_linear_homogeneous()) throw DomainError("defining polynomial is not homogeneous linear");
    for (const auto& t : f.support()) {
      if (t.gamma.size() != part.m()) throw DimensionError("defining polynomial has the wrong number of translations");
      if (t.gen >= n) throw DomainError("defining polynomial mentions y" + std::to_string(t.gen + 1) + " beyond gens=" +
                                        std::to_string(n));
    }
  }
}

namespace {

void check_window(const Partition& part, const WindowSpec& w) {
  if (w.r.size() != part.p() || w.s.size() != part.p()) throw DimensionError("window needs one r and one s per block");
  for (std::size_t k = 0; k < part.p(); ++k) {
    if (w.s[k] < 0 || w.r[k] < 0) throw DomainError("window radii must be natural numbers");
    if (w.s[k] > w.r[k]) throw DomainError("window has s > r in block " + std::to_string(k + 1));
  }
}

void check_window_cap(const ExtensionSpec& spec, const WindowSpec& w, std::uint64_t cap) {
  if (cap == 0) cap = default_enumeration_cap();
  Integer size = shell_count(spec.part, w.r, w.s) * static_cast<unsigned long>(spec.n);
  if (size > Integer(std::to_string(cap)))
    throw ResourceError("window of " + size.get_str() + " terms exceeds the enumeration cap of " + std::to_string(cap));
}

enum class Klass { UPrime, UDoublePrime, Rest };

// Classifies window terms against a characteristic set.  The block orders of
// the leaders and coleaders of each translate gamma*f_j depend only on the
// term, so they are cached across windows.
class Classifier {
 public:
  Classifier(const std::vector<DiffPolynomial>& charset, const Partition& part) : cs_(charset), part_(part) {
    for (const auto& f : cs_) leaders_.push_back(leader(f, 0, part_));
  }

  Klass classify(const Term& u, const WindowSpec& w) {
    const auto& reps = representations(u);
    if (!reps) return Klass::UPrime;
    for (const auto& rep : *reps) {
      bool violated = rep.colead[0] < w.s[0];
      for (std::size_t k = 1; k < part_.p() && !violated; ++k)
        violated = rep.lead[k] > w.r[k] || rep.colead[k] < w.s[k];
      if (!violated) return Klass::Rest;
    }
    return Klass::UDoublePrime;
  }

 private:
  struct Rep {
    std::vector<long> lead;
    std::vector<long> colead;
  };
  using Reps = std::optional<std::vector<Rep>>;

  const Reps& representations(const Term& u) {
    auto it = cache_.find(u);
    if (it != cache_.end()) return it->second;
    Reps reps;
    for (std::size_t j = 0; j < cs_.size(); ++j) {
      if (!divides_term(leaders_[j], u)) continue;
      const DiffPolynomial gf = apply_gamma(quotient(leaders_[j], u), cs_[j]);
      Rep rep;
      for (std::size_t k = 0; k < part_.p(); ++k) {
        rep.lead.push_back(ord_term(leader(gf, k, part_), k, part_));
        rep.colead.push_back(ord_term(coleader(gf, k, part_), k, part_));
      }
      if (!reps) reps.emplace();
      reps->push_back(std::move(rep));
    }
    return cache_.emplace(u, std::move(reps)).first->second;
  }

  const std::vector<DiffPolynomial>& cs_;
  const Partition& part_;
  std::vector<Term> leaders_;
  std::map<Term, Reps> cache_;
};

struct Counts {
  Integer u_prime = 0;
  Integer u_double_prime = 0;
};

Counts count_window(Classifier& cl, const ExtensionSpec& spec, const WindowSpec& w, std::uint64_t cap) {
  check_window(spec.part, w);
  check_window_cap(spec, w, cap);
  unsigned long up = 0, udp = 0;
  for_each_shell_point(spec.part, w.r, w.s, [&](const Point& g) {
    for (std::size_t j = 0; j < spec.n; ++j) {
      switch (cl.classify(Term{g, j}, w)) {
        case Klass::UPrime: ++up; break;
        case Klass::UDoublePrime: ++udp; break;
        case Klass::Rest: break;
      }
    }
  });
  return {Integer(up), Integer(udp)};
}

std::vector<long> block_spreads(const std::vector<DiffPolynomial>& cs, const Partition& part) {
  std::vector<long> out(part.p(), 0);
  for (const auto& f : cs) {
    const auto ts = f.support();
    for (std::size_t c = 0; c < part.m(); ++c) {
      long lo = ts.front().gamma[c], hi = lo;
      for (const auto& t : ts) {
        lo = std::min(lo, t.gamma[c]);
        hi = std::max(hi, t.gamma[c]);
      }
      out[part.block_of(c)] = std::max(out[part.block_of(c)], hi - lo);
    }
  }
  return out;
}

// psi = sum over generators of phi_set of the 1-leader exponents of that generator.
NumPoly leader_psi(const std::vector<DiffPolynomial>& cs, const Partition& part, std::size_t n) {
  std::vector<std::vector<Point>> sets(n);
  for (const auto& f : cs) {
    Term u = leader(f, 0, part);
    sets.at(u.gen).push_back(u.gamma);
  }
  NumPoly psi(part.p());
  for (auto& pts : sets) psi = psi + phi_set(LatticeSet(Ambient::Int, part.m(), std::move(pts)), part);
  return psi;
}

std::vector<long> window_point(const WindowSpec& w) {
  std::vector<long> pt = w.r;
  pt.insert(pt.end(), w.s.begin(), w.s.end());
  return pt;
}

}  // namespace

std::vector<Term> window_terms(const ExtensionSpec& spec, const WindowSpec& w, std::uint64_t cap) {
  check_window(spec.part, w);
  check_window_cap(spec, w, cap);
  std::vector<Term> out;
  for_each_shell_point(spec.part, w.r, w.s, [&](const Point& g) {
    for (std::size_t j = 0; j < spec.n; ++j) out.push_back(Term{g, j});
  });
  return out;
}

WindowClasses classify_window(const std::vector<DiffPolynomial>& charset, const ExtensionSpec& spec,
                              const WindowSpec& w, std::uint64_t cap) {
  for (const auto& f : charset)
    if (!f.is_linear_homogeneous() || f.is_constant()) throw DomainError("characteristic set elements must be linear");
  Classifier cl(charset, spec.part);
  WindowClasses out;
  for (const auto& t : window_terms(spec, w, cap)) {
    switch (cl.classify(t, w)) {
      case Klass::UPrime: out.u_prime.push_back(t); break;
      case Klass::UDoublePrime: out.u_double_prime.push_back(t); break;
      case Klass::Rest: out.rest.push_back(t); break;
    }
  }
  return out;
}

std::vector<DiffPolynomial> extension_char_set(const ExtensionSpec& spec, const Partition& part, long search_margin) {
  spec.validate();
  if (spec.defining.empty()) return {};
  if (spec.defining.size() == 1) return linear_char_set(spec.defining.front(), part, search_margin);
  return linear_ideal_char_set(spec.defining, part, search_margin);
}

bool in_stability_region(const Thresholds& th, const WindowSpec& w) {
  for (std::size_t k = 0; k < th.r0.size(); ++k) {
    if (w.r[k] < th.r0[k] || w.s[k] < th.s1[k] || w.r[k] - w.s[k] < th.s0[k]) return false;
  }
  return true;
}

DimPolyResult compute_phi(const ExtensionSpec& spec, const PhiOptions& opts) {
  spec.validate();
  const Partition& part = spec.part;
  const std::size_t p = part.p();
  DimPolyResult res;
  res.part = part;
  res.charset = extension_char_set(spec, part, opts.search_margin);

  const auto spread = block_spreads(res.charset, part);
  std::vector<long> s0(p, 0);
  for (const auto& f : res.charset)
    for (std::size_t k = 0; k < p; ++k) s0[k] = std::max(s0[k], eord(f, k, part));

  std::vector<unsigned> bounds;
  for (int half = 0; half < 2; ++half)
    for (std::size_t k = 0; k < p; ++k) bounds.push_back(static_cast<unsigned>(part.block_size(k)));

  Classifier cl(res.charset, part);
  std::string log;
  for (unsigned round = 0; round < opts.max_rounds; ++round) {
    const long off = 2 * static_cast<long>(round);
    Thresholds th{std::vector<long>(p), s0, std::vector<long>(p)};
    for (std::size_t k = 0; k < p; ++k) {
      const long mk = static_cast<long>(part.block_size(k));
      th.s1[k] = 1 + off;
      th.r0[k] = std::max(2 * spread[k] + off, th.s1[k] + mk + s0[k]);
    }

    std::vector<GridSample> samples;
    std::vector<Sample> fit;
    // Tensor grid: m_k + 1 values of r_k and of s_k.
    std::vector<long> digits(2 * p, 0);
    while (true) {
      WindowSpec w{std::vector<long>(p), std::vector<long>(p)};
      for (std::size_t k = 0; k < p; ++k) {
        w.r[k] = th.r0[k] + digits[k];
        w.s[k] = th.s1[k] + digits[p + k];
      }
      const Counts c = count_window(cl, spec, w, opts.cap);
      samples.push_back({w, c.u_prime, c.u_double_prime, false});
      fit.push_back({window_point(w), Rational(c.u_prime + c.u_double_prime)});
      std::size_t i = 0;
      while (i < 2 * p && ++digits[i] > static_cast<long>(bounds[i])) digits[i++] = 0;
      if (i == 2 * p) break;
    }
    NumPoly phi = interpolate(fit, bounds);

    std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + round);
    std::set<std::vector<long>> seen;
    for (const auto& f : fit) seen.insert(f.point);
    bool ok = true;
    std::size_t tries = 0;
    std::size_t held = 0;
    while (held < opts.held_out && tries < 100 * opts.held_out) {
      ++tries;
      WindowSpec w{std::vector<long>(p), std::vector<long>(p)};
      for (std::size_t k = 0; k < p; ++k) {
        const long mk = static_cast<long>(part.block_size(k));
        w.s[k] = th.s1[k] + static_cast<long>(rng() % static_cast<unsigned long>(mk + 4));
        const long rmin = std::max(th.r0[k], w.s[k] + s0[k]);
        w.r[k] = rmin + static_cast<long>(rng() % static_cast<unsigned long>(mk + 4));
      }
      if (!seen.insert(window_point(w)).second) continue;
      ++held;
      const Counts c = count_window(cl, spec, w, opts.cap);
      samples.push_back({w, c.u_prime, c.u_double_prime, true});
      const Rational expect(c.u_prime + c.u_double_prime);
      if (phi.evaluate(window_point(w)) != expect) {
        ok = false;
        log += "round " + std::to_string(round) + ": held-out window mismatch\n";
        break;
      }
    }
    if (!ok) continue;

    phi.require_integral("compute_phi");
    res.phi = std::move(phi);
    res.thresholds = th;
    res.samples = std::move(samples);
    res.rounds = round + 1;

    const NumPoly psi = leader_psi(res.charset, part, spec.n);
    std::vector<std::size_t> first(p), second(p);
    for (std::size_t k = 0; k < p; ++k) {
      first[k] = k;
      second[k] = p + k;
    }
    res.psi_difference =
        embed(psi, 2 * p, first) - embed(shift(psi, std::vector<long>(p, -1)), 2 * p, second);
    res.lambda = res.phi - res.psi_difference;
    res.lambda_degree_below_m = res.lambda.is_zero() || res.lambda.total_degree() < part.m();
    return res;
  }
  throw StabilizationError("interpolated polynomial did not validate within " + std::to_string(opts.max_rounds) +
                           " rounds\n" + log);
}

NumPoly univariate_phi(const ExtensionSpec& spec, const PhiOptions& opts) {
  spec.validate();
  const std::size_t m = spec.part.m();
  if (spec.defining.empty()) {
    auto c = ball_count_coeffs(m);
    for (auto& x : c) x *= static_cast<unsigned long>(spec.n);
    return tensor_product({c});
  }
  const Partition trivial = Partition::trivial(m);
  ExtensionSpec ball = spec;
  ball.part = trivial;
  const auto cs = extension_char_set(ball, trivial, opts.search_margin);
  const NumPoly psi = leader_psi(cs, trivial, spec.n);

  long spread = 0;
  for (long v : block_spreads(cs, trivial)) spread = std::max(spread, v);
  std::string log;
  for (unsigned round = 0; round < opts.max_rounds; ++round) {
    const long r0 = 2 * spread + 2 * static_cast<long>(round);
    bool ok = true;
    for (long r = r0; r < r0 + 3 && ok; ++r) {
      const Integer want = trdeg_oracle(ball, WindowSpec{{r}, {0}}, 2, opts.cap);
      const Rational got = psi.evaluate(std::vector<long>{r});
      if (got != Rational(want)) {
        ok = false;
        log += "radius " + std::to_string(r) + ": polynomial " + to_string(got) + " vs oracle " + want.get_str() + "\n";
      }
    }
    if (ok) {
      psi.require_integral("univariate_phi");
      return psi;
    }
  }
  throw StabilizationError("univariate polynomial did not match the oracle\n" + log);
}

}  // namespace dimpoly
