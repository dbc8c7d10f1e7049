#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "dimpoly/errors.hpp"
#include "dimpoly/extdim.hpp"
#include "dimpoly/parse.hpp"
#include "dimpoly/serialize.hpp"

using namespace dimpoly;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Positional key=value arguments such as blocks=1,2 r=3 s=0.
struct KeyValues {
  std::map<std::string, std::string> values;
  std::vector<std::string> files;

  explicit KeyValues(const std::vector<std::string>& args) {
    for (const auto& a : args) {
      auto eq = a.find('=');
      if (eq == std::string::npos)
        files.push_back(a);
      else
        values[a.substr(0, eq)] = a.substr(eq + 1);
    }
  }
  std::optional<std::string> get(const std::string& key) const {
    auto it = values.find(key);
    if (it == values.end()) return std::nullopt;
    return it->second;
  }
  std::string need(const std::string& key) const {
    auto v = get(key);
    if (!v) throw InputError("missing argument " + key + "=...");
    return *v;
  }
};

std::vector<long> radii(const std::string& text, const Partition& part, const char* what) {
  auto v = parse_int_list(text, what);
  if (v.size() == 1 && part.p() > 1) v.assign(part.p(), v[0]);
  if (v.size() != part.p())
    throw InputError(std::string(what) + " has " + std::to_string(v.size()) + " entries, expected p=" +
                     std::to_string(part.p()));
  return v;
}

std::string join(const std::vector<long>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
  return out;
}

std::vector<long> window_point(const WindowSpec& w) {
  std::vector<long> pt(w.r);
  pt.insert(pt.end(), w.s.begin(), w.s.end());
  return pt;
}

struct Options {
  bool json = false;
  bool oracle_check = false;
  std::uint64_t cap = 0;
  unsigned max_rounds = 5;
  std::string spec_path;
};

// Per-block radius past which the set polynomials agree with enumeration.
std::vector<long> set_threshold(const LatticeSet& set, const Partition& part) {
  std::vector<long> t(part.p(), 0);
  for (std::size_t c = 0; c < set.dim(); ++c) {
    long mx = 0;
    for (const auto& pt : set.points()) mx = std::max(mx, std::labs(pt[c]));
    t[part.block_of(c)] += mx;
  }
  return t;
}

int run_set(const KeyValues& kv, const Options& opt, Ambient ambient) {
  if (kv.files.size() != 1) throw InputError("expected one point-set file");
  const std::string text = read_file(kv.files[0]);
  const LatticeSet set = parse_lattice_set(text, ambient);
  const Partition part = kv.get("blocks") ? parse_partition(*kv.get("blocks")) : Partition::trivial(set.dim());
  if (!set.empty() && set.dim() != part.m())
    throw DimensionError("points have " + std::to_string(set.dim()) + " coordinates, partition has m=" +
                         std::to_string(part.m()));
  const NumPoly poly = ambient == Ambient::Nat ? omega(set, part) : phi_set(set, part);

  int status = 0;
  std::vector<std::string> mismatches;
  if (opt.oracle_check) {
    const auto base = set_threshold(set, part);
    for (long j = 0; j <= 3; ++j) {
      std::vector<long> r(base);
      for (auto& x : r) x += j;
      const Integer brute =
          ambient == Ambient::Nat ? count_V(set, part, r, opt.cap) : count_W(set, part, r, opt.cap);
      const Rational value = poly.evaluate(r);
      if (value != Rational(brute))
        mismatches.push_back("r=" + join(r) + ": polynomial " + to_string(value) + ", enumeration " + brute.get_str());
    }
    if (!mismatches.empty()) status = 1;
  }
  if (opt.json) {
    Json out{{"partition", part.block_sizes()}, {"polynomial", to_json(poly)}};
    if (opt.oracle_check) out["oracle_mismatches"] = mismatches;
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << poly.to_text() << "\n";
    if (opt.oracle_check) {
      for (const auto& m : mismatches) std::cout << "MISMATCH " << m << "\n";
      std::cout << (mismatches.empty() ? "oracle check: ok" : "oracle check: FAILED") << "\n";
    }
  }
  return status;
}

int run_shell(const KeyValues& kv, const Options& opt) {
  const Partition part = parse_partition(kv.need("blocks"));
  const auto r = radii(kv.need("r"), part, "r");
  const auto s = radii(kv.get("s").value_or("0"), part, "s");
  const Integer count = shell_count(part, r, s);
  int status = 0;
  std::optional<Integer> brute;
  if (opt.oracle_check) {
    brute = shell_enumerate(part, r, s, opt.cap);
    if (*brute != count) status = 1;
  }
  if (opt.json) {
    Json out{{"partition", part.block_sizes()}, {"r", r}, {"s", s}, {"count", count.get_str()}};
    if (brute) out["enumerated"] = brute->get_str();
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << count.get_str() << "\n";
    if (brute) std::cout << "oracle check: " << (status ? "FAILED (enumeration " + brute->get_str() + ")" : "ok") << "\n";
  }
  return status;
}

// blocks= line, gens= line, then h, then the elements of A.
int run_reduce(const KeyValues& kv, const Options& opt) {
  if (kv.files.size() != 1) throw InputError("expected one reduction file");
  const std::string text = read_file(kv.files[0]);
  std::istringstream in(text);
  std::string line;
  std::optional<Partition> part;
  std::optional<std::size_t> n;
  std::vector<DiffPolynomial> polys;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const std::string body = line.substr(first);
    if (!part) {
      if (body.rfind("blocks=", 0) != 0) throw ParseError("expected 'blocks=...'", lineno, 1);
      part = parse_partition(body);
    } else if (!n && body.rfind("gens=", 0) == 0) {
      auto v = parse_int_list(body.substr(5), "generator count");
      if (v.size() != 1 || v[0] < 1) throw ParseError("gens must be a positive integer", lineno, 6);
      n = static_cast<std::size_t>(v[0]);
    } else {
      polys.push_back(parse_polynomial(body, part->m(), n, lineno));
    }
  }
  if (!part) throw ParseError("missing 'blocks=...' line", lineno, 1);
  if (polys.empty()) throw ParseError("missing polynomial h", lineno, 1);
  const DiffPolynomial h = polys.front();
  const std::vector<DiffPolynomial> a(polys.begin() + 1, polys.end());
  const EReduction red = e_reduce(h, a, *part);

  int status = 0;
  bool identity_ok = true, reduced_ok = true;
  if (opt.oracle_check) {
    identity_ok = certificate_residual(h, a, red).is_zero();
    for (const auto& g : a) reduced_ok = reduced_ok && is_e_reduced(red.hbar, g, *part);
    if (!identity_ok || !reduced_ok) status = 1;
  }
  if (opt.json) {
    Json mult = Json::array();
    for (std::size_t i = 0; i < red.multipliers.size(); ++i) {
      Json terms = Json::array();
      for (const auto& m : red.multipliers[i])
        terms.push_back(Json{{"gamma", m.gamma}, {"coeff", to_text(m.coeff, *part)}});
      mult.push_back(terms);
    }
    Json out{{"hbar", to_text(red.hbar, *part)}, {"J", to_text(red.J, *part)}, {"multipliers", mult},
             {"steps", red.steps}};
    if (opt.oracle_check) out["certificate"] = Json{{"identity", identity_ok}, {"e_reduced", reduced_ok}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "hbar = " << to_text(red.hbar, *part) << "\n";
    std::cout << "J = " << to_text(red.J, *part) << "\n";
    for (std::size_t i = 0; i < red.multipliers.size(); ++i) {
      std::cout << "C" << i + 1 << ":";
      if (red.multipliers[i].empty()) std::cout << " 0";
      for (const auto& m : red.multipliers[i]) {
        ExpVector g = m.gamma;
        std::cout << " (" << to_text(m.coeff, *part) << ")*[" << join(g) << "]";
      }
      std::cout << "\n";
    }
    std::cout << "steps = " << red.steps << "\n";
    if (opt.oracle_check)
      std::cout << "oracle check: " << (status ? "FAILED" : "ok") << " (identity " << (identity_ok ? "holds" : "fails")
                << ", hbar " << (reduced_ok ? "E-reduced" : "not E-reduced") << ")\n";
  }
  return status;
}

ExtensionSpec load_spec(const Options& opt, const KeyValues& kv) {
  std::string path = opt.spec_path;
  if (path.empty()) {
    if (kv.files.size() != 1) throw InputError("expected --spec FILE");
    path = kv.files[0];
  }
  ExtensionSpec spec = parse_spec(read_file(path));
  spec.validate();
  return spec;
}

int run_charset(const KeyValues& kv, const Options& opt) {
  const ExtensionSpec spec = load_spec(opt, kv);
  const auto cs = extension_char_set(spec, spec.part);
  int status = 0;
  if (opt.oracle_check) {
    const auto wider = extension_char_set(spec, spec.part, 4);
    if (wider != cs) status = 1;
  }
  if (opt.json) {
    Json out = Json::array();
    for (const auto& g : cs) out.push_back(to_text(g, spec.part));
    std::cout << Json{{"charset", out}}.dump(2) << "\n";
  } else {
    for (const auto& g : cs) std::cout << to_text(g, spec.part) << "\n";
    if (opt.oracle_check) std::cout << "oracle check: " << (status ? "FAILED (margin-dependent)" : "ok") << "\n";
  }
  return status;
}

// Windows inside the stability region used by --oracle-check.
std::vector<WindowSpec> check_windows(const Thresholds& th) {
  std::vector<WindowSpec> out;
  const std::size_t p = th.r0.size();
  for (long j = 0; j < 3; ++j) {
    WindowSpec w{std::vector<long>(p), std::vector<long>(p)};
    for (std::size_t k = 0; k < p; ++k) {
      w.s[k] = th.s1[k] + j;
      w.r[k] = std::max(th.r0[k], w.s[k] + th.s0[k]) + j;
    }
    out.push_back(w);
  }
  return out;
}

int run_dimpoly(const KeyValues& kv, const Options& opt) {
  const ExtensionSpec spec = load_spec(opt, kv);
  PhiOptions po;
  po.max_rounds = opt.max_rounds;
  po.cap = opt.cap;
  const DimPolyResult res = compute_phi(spec, po);

  int status = 0;
  std::vector<std::string> checks;
  if (opt.oracle_check) {
    for (const auto& w : check_windows(res.thresholds)) {
      const Integer o = trdeg_oracle(spec, w, 2, opt.cap);
      const Rational v = res.phi.evaluate(window_point(w));
      const bool ok = v == Rational(o);
      if (!ok) status = 1;
      checks.push_back(std::string(ok ? "ok" : "MISMATCH") + " r=" + join(w.r) + " s=" + join(w.s) + ": Phi " +
                       to_string(v) + ", oracle " + o.get_str());
    }
  }
  if (opt.json) {
    Json out = to_json(res);
    if (opt.oracle_check) out["oracle_check"] = checks;
    std::cout << out.dump(2) << "\n";
    return status;
  }
  std::cout << "partition: " << spec.part.to_text() << "\n";
  std::cout << "Phi = " << res.phi.to_text() << "\n";
  std::cout << "power basis:\n";
  for (const auto& [idx, c] : res.phi.to_power_basis()) {
    std::string mono;
    for (std::size_t i = 0; i < idx.size(); ++i)
      for (unsigned e = 0; e < idx[i]; ++e) mono += (mono.empty() ? "" : "*") + std::string("t") + std::to_string(i + 1);
    std::cout << "  " << (mono.empty() ? "1" : mono) << ": " << to_string(c) << "\n";
  }
  std::cout << "thresholds: r0=" << join(res.thresholds.r0) << " s0=" << join(res.thresholds.s0)
            << " s1=" << join(res.thresholds.s1) << " rounds=" << res.rounds << "\n";
  const auto inv = invariants(res);
  std::cout << "degree: " << inv.total_degree << "\n";
  std::cout << "sigma-trdeg: " << to_string(inv.sigma_trdeg) << "\n";
  for (const auto& c : checks) std::cout << "oracle " << c << "\n";
  if (opt.oracle_check) std::cout << "oracle check: " << (status ? "FAILED" : "ok") << "\n";
  return status;
}

int run_univariate(const KeyValues& kv, const Options& opt) {
  const ExtensionSpec spec = load_spec(opt, kv);
  PhiOptions po;
  po.max_rounds = opt.max_rounds;
  po.cap = opt.cap;
  const NumPoly phi = univariate_phi(spec, po);
  int status = 0;
  std::vector<std::string> checks;
  if (opt.oracle_check) {
    ExtensionSpec flat = spec;
    flat.part = Partition::trivial(spec.part.m());
    const long start = static_cast<long>(phi.total_degree()) + 4;
    for (long r = start; r < start + 3; ++r) {
      const Integer o = trdeg_oracle(flat, WindowSpec{{r}, {0}}, 2, opt.cap);
      const Rational v = phi.evaluate(std::vector<long>{r});
      if (v != Rational(o)) status = 1;
      checks.push_back(std::string(v == Rational(o) ? "ok" : "MISMATCH") + " t=" + std::to_string(r) + ": phi " +
                       to_string(v) + ", oracle " + o.get_str());
    }
  }
  if (opt.json) {
    Json out{{"phi", to_json(phi)}, {"invariants", to_json(univariate_invariants(phi, spec.part))},
             {"leading_power_coeff", to_string(leading_power_coeff(phi))}};
    if (opt.oracle_check) out["oracle_check"] = checks;
    std::cout << out.dump(2) << "\n";
    return status;
  }
  std::cout << "phi = " << phi.to_text() << "\n";
  std::cout << "degree: " << phi.total_degree() << "\n";
  std::cout << "leading coefficient: " << to_string(leading_power_coeff(phi)) << "\n";
  for (const auto& c : checks) std::cout << "oracle " << c << "\n";
  if (opt.oracle_check) std::cout << "oracle check: " << (status ? "FAILED" : "ok") << "\n";
  return status;
}

void print_invariants(const InvariantSummary& inv) {
  std::cout << "kind: " << (inv.univariate ? "univariate" : "multivariate") << "\n";
  std::cout << "degree: " << inv.total_degree << "\n";
  std::cout << "top coefficients:\n";
  for (const auto& [idx, c] : inv.top_coeffs) {
    std::cout << "  (";
    for (std::size_t i = 0; i < idx.size(); ++i) std::cout << (i ? "," : "") << idx[i];
    std::cout << "): " << to_string(c) << "\n";
  }
  if (!inv.lex_max.empty()) {
    std::cout << "lex-max elements:\n";
    for (const auto& l : inv.lex_max) {
      std::cout << "  [";
      for (std::size_t i = 0; i < l.order.size(); ++i) std::cout << (i ? "," : "") << "t" << l.order[i] + 1;
      std::cout << "] (";
      for (std::size_t i = 0; i < l.element.size(); ++i) std::cout << (i ? "," : "") << l.element[i];
      std::cout << "): " << to_string(l.coeff) << "\n";
    }
  }
  std::cout << "sigma-trdeg: " << to_string(inv.sigma_trdeg) << "\n";
}

InvariantSummary spec_invariants(const ExtensionSpec& spec, bool univariate, const Options& opt) {
  PhiOptions po;
  po.max_rounds = opt.max_rounds;
  po.cap = opt.cap;
  if (univariate) return univariate_invariants(univariate_phi(spec, po), spec.part);
  return invariants(compute_phi(spec, po));
}

int run_invariants(const KeyValues& kv, const Options& opt, bool univariate) {
  const ExtensionSpec spec = load_spec(opt, kv);
  const auto inv = spec_invariants(spec, univariate, opt);
  if (opt.json)
    std::cout << to_json(inv).dump(2) << "\n";
  else
    print_invariants(inv);
  return 0;
}

int run_distinguish(const KeyValues& kv, const Options& opt, bool univariate) {
  if (kv.files.size() != 2) throw InputError("expected two spec files");
  ExtensionSpec a = parse_spec(read_file(kv.files[0]));
  ExtensionSpec b = parse_spec(read_file(kv.files[1]));
  a.validate();
  b.validate();
  const auto ia = spec_invariants(a, univariate, opt);
  const auto ib = spec_invariants(b, univariate, opt);
  const Verdict v = equivalence_distinguish(ia, ib);
  if (opt.json) {
    std::cout << Json{{"verdict", v.distinguished ? "DISTINGUISHED" : "NOT DISTINGUISHED"}, {"witness", v.witness}}.dump(2)
              << "\n";
  } else {
    std::cout << (v.distinguished ? "DISTINGUISHED" : "NOT DISTINGUISHED") << "\n";
    if (v.distinguished) std::cout << "witness: " << v.witness << "\n";
  }
  return 0;
}

int run_oracle(const KeyValues& kv, const Options& opt) {
  const ExtensionSpec spec = load_spec(opt, kv);
  WindowSpec w{radii(kv.need("r"), spec.part, "r"), radii(kv.get("s").value_or("0"), spec.part, "s")};
  const long margin = kv.get("margin") ? parse_int_list(*kv.get("margin"), "margin").at(0) : 2;
  const Integer t = trdeg_oracle(spec, w, margin, opt.cap);
  if (opt.json)
    std::cout << Json{{"r", w.r}, {"s", w.s}, {"trdeg", t.get_str()}}.dump(2) << "\n";
  else
    std::cout << t.get_str() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dimension polynomials of inversive difference field extensions"};
  app.require_subcommand(1, 1);
  Options opt;
  std::vector<std::string> args;
  bool univariate = false;

  auto add = [&](const std::string& name, const std::string& help, bool with_spec, bool with_check) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("args", args, "files and key=value arguments (blocks=, r=, s=)");
    sub->add_flag("--json", opt.json, "emit canonical JSON");
    sub->add_option("--max-enum", opt.cap, "enumeration cap (default: DIMPOLY_MAX_ENUM or 10^7)");
    if (with_check) sub->add_flag("--oracle-check", opt.oracle_check, "compare with the brute-force oracle");
    if (with_spec) {
      sub->add_option("--spec", opt.spec_path, "extension spec file");
      sub->add_option("--max-rounds", opt.max_rounds, "interpolation rounds (default 5)");
    }
    return sub;
  };
  auto* set_omega = add("set-omega", "dimension polynomial of a subset of N^m", false, true);
  auto* set_phi = add("set-phi", "dimension polynomial of a subset of Z^m", false, true);
  auto* shell = add("shell", "count lattice points with s_i <= ord_i <= r_i", false, true);
  auto* reduce = add("reduce", "E-reduce h (first polynomial) by the remaining ones", false, true);
  auto* charset = add("charset", "characteristic set of a linear defining ideal", true, true);
  auto* dimpoly = add("dimpoly", "2p-variate dimension polynomial of an extension", true, true);
  auto* univ = add("univariate", "univariate dimension polynomial of an extension", true, true);
  auto* invs = add("invariants", "invariants carried by the dimension polynomial", true, false);
  invs->add_flag("--univariate", univariate, "use the univariate polynomial");
  auto* dist = add("distinguish", "compare the invariants of two extensions", true, false);
  dist->add_flag("--univariate", univariate, "use the univariate polynomial");
  auto* orac = add("oracle", "exact transcendence degree of a window (margin=, r=, s=)", true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    const KeyValues kv(args);
    if (opt.cap == 0) opt.cap = default_enumeration_cap();
    if (*set_omega) return run_set(kv, opt, Ambient::Nat);
    if (*set_phi) return run_set(kv, opt, Ambient::Int);
    if (*shell) return run_shell(kv, opt);
    if (*reduce) return run_reduce(kv, opt);
    if (*charset) return run_charset(kv, opt);
    if (*dimpoly) return run_dimpoly(kv, opt);
    if (*univ) return run_univariate(kv, opt);
    if (*invs) return run_invariants(kv, opt, univariate);
    if (*dist) return run_distinguish(kv, opt, univariate);
    if (*orac) return run_oracle(kv, opt);
  } catch (const ParseError& e) {
    std::cerr << "parse error at " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
