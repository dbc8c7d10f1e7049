#include "dimpoly/parse.hpp"

#include <cctype>
#include <charconv>

#include "dimpoly/errors.hpp"

namespace dimpoly {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  while (true) {
    auto nl = text.find('\n');
    out.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

bool skippable(std::string_view line) {
  line = trim(line);
  return line.empty() || line.front() == '#';
}

class PolyParser {
 public:
  PolyParser(std::string_view s, std::size_t m, std::optional<std::size_t> n, std::size_t line)
      : s_(s), m_(m), n_(n), line_(line) {}

  DiffPolynomial parse() {
    DiffPolynomial p = poly();
    skip_ws();
    if (pos_ != s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, pos_ + 1); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }

  Integer natural() {
    skip_ws();
    const std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a number");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  long small(const Integer& v, const char* what) {
    if (!v.fits_slong_p()) fail(std::string(what) + " out of range");
    return v.get_si();
  }

  long integer() {
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    long v = small(natural(), "exponent");
    return neg ? -v : v;
  }

  DiffPolynomial poly() {
    bool neg = false;
    if (accept('-'))
      neg = true;
    else
      accept('+');
    DiffPolynomial out = term();
    if (neg) out = -out;
    while (true) {
      if (accept('+'))
        out = out + term();
      else if (accept('-'))
        out = out - term();
      else
        break;
    }
    return out;
  }

  DiffPolynomial term() {
    Rational coeff = 1;
    if (std::isdigit(static_cast<unsigned char>(peek()))) {
      Integer num = natural();
      Integer den = 1;
      if (accept('/')) {
        den = natural();
        if (den == 0) fail("zero denominator");
      }
      coeff = Rational(num, den);
      coeff.canonicalize();
      if (!accept('*')) return DiffPolynomial::constant(coeff);
    }
    DiffPolynomial out = factor();
    while (accept('*')) out = out * factor();
    return coeff * out;
  }

  DiffPolynomial factor() {
    DiffPolynomial a = atom();
    if (accept('^')) {
      long e = small(natural(), "power");
      a = pow(a, static_cast<unsigned>(e));
    }
    return a;
  }

  DiffPolynomial atom() {
    if (accept('(')) {
      DiffPolynomial p = poly();
      if (!accept(')')) fail("expected ')'");
      return p;
    }
    ExpVector gamma(m_, 0);
    while (accept('a')) {
      const std::size_t at = pos_;
      long idx = small(natural(), "translation index");
      if (idx < 1 || static_cast<std::size_t>(idx) > m_) {
        pos_ = at;
        fail("translation index a" + std::to_string(idx) + " exceeds m=" + std::to_string(m_));
      }
      long e = 1;
      if (accept('^')) e = integer();
      gamma[idx - 1] += e;
    }
    if (!accept('y')) fail("expected 'y'");
    const std::size_t at = pos_;
    long gen = small(natural(), "generator index");
    if (gen < 1 || (n_ && static_cast<std::size_t>(gen) > *n_)) {
      pos_ = at;
      fail("generator index y" + std::to_string(gen) + " out of range" +
           (n_ ? " (gens=" + std::to_string(*n_) + ")" : std::string()));
    }
    return DiffPolynomial::term(Term{gamma, static_cast<std::size_t>(gen - 1)});
  }

  std::string_view s_;
  std::size_t pos_ = 0;
  std::size_t m_;
  std::optional<std::size_t> n_;
  std::size_t line_;
};

}  // namespace

std::vector<long> parse_int_list(std::string_view text, std::string_view what) {
  std::vector<long> out;
  text = trim(text);
  if (text.empty()) throw InputError("empty " + std::string(what));
  while (true) {
    auto comma = text.find(',');
    auto piece = trim(text.substr(0, comma));
    long v = 0;
    auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), v);
    if (piece.empty() || ec != std::errc() || ptr != piece.data() + piece.size())
      throw InputError("malformed " + std::string(what) + " entry '" + std::string(piece) + "'");
    out.push_back(v);
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  return out;
}

Partition parse_partition(std::string_view text) {
  text = trim(text);
  if (text.substr(0, 7) == "blocks=") text.remove_prefix(7);
  auto sizes = parse_int_list(text, "block size list");
  std::vector<std::size_t> out;
  for (long v : sizes) {
    if (v < 1) throw InputError("block sizes must be positive");
    out.push_back(static_cast<std::size_t>(v));
  }
  return Partition(out);
}

LatticeSet parse_lattice_set(std::string_view text, Ambient ambient, std::optional<std::size_t> dim) {
  std::vector<Point> pts;
  std::size_t lineno = 0;
  for (auto line : split_lines(text)) {
    ++lineno;
    if (skippable(line)) continue;
    Point pt;
    try {
      pt = parse_int_list(line, "point");
    } catch (const InputError& e) {
      throw ParseError(e.what(), lineno, 1);
    }
    if (!dim) dim = pt.size();
    if (pt.size() != *dim)
      throw ParseError("point has " + std::to_string(pt.size()) + " coordinates, expected " + std::to_string(*dim),
                       lineno, 1);
    if (ambient == Ambient::Nat)
      for (long x : pt)
        if (x < 0) throw ParseError("negative coordinate in a subset of N^m", lineno, 1);
    pts.push_back(std::move(pt));
  }
  return LatticeSet(ambient, dim.value_or(0), std::move(pts));
}

DiffPolynomial parse_polynomial(std::string_view text, std::size_t m, std::optional<std::size_t> n, std::size_t line) {
  return PolyParser(text, m, n, line).parse();
}

ExtensionSpec parse_spec(std::string_view text) {
  ExtensionSpec spec;
  bool have_blocks = false, have_gens = false;
  std::size_t lineno = 0;
  for (auto raw : split_lines(text)) {
    ++lineno;
    if (skippable(raw)) continue;
    auto line = trim(raw);
    if (!have_blocks) {
      if (line.substr(0, 7) != "blocks=") throw ParseError("expected 'blocks=...'", lineno, 1);
      try {
        spec.part = parse_partition(line);
      } catch (const InputError& e) {
        throw ParseError(e.what(), lineno, 1);
      }
      have_blocks = true;
      continue;
    }
    if (!have_gens) {
      if (line.substr(0, 5) != "gens=") throw ParseError("expected 'gens=n'", lineno, 1);
      std::vector<long> v;
      try {
        v = parse_int_list(line.substr(5), "generator count");
      } catch (const InputError& e) {
        throw ParseError(e.what(), lineno, 6);
      }
      if (v.size() != 1 || v[0] < 1) throw ParseError("gens must be a positive integer", lineno, 6);
      spec.n = static_cast<std::size_t>(v[0]);
      have_gens = true;
      continue;
    }
    DiffPolynomial f = parse_polynomial(line, spec.part.m(), spec.n, lineno);
    if (f.is_constant()) throw ParseError("defining polynomial is constant", lineno, 1);
    if (!f.is_linear_homogeneous())
      throw ParseError("non-linear polynomial where a homogeneous linear one is required", lineno, 1);
    spec.defining.push_back(std::move(f));
  }
  if (!have_blocks) throw ParseError("missing 'blocks=...' line", lineno, 1);
  if (!have_gens) throw ParseError("missing 'gens=n' line", lineno, 1);
  return spec;
}

}  // namespace dimpoly
