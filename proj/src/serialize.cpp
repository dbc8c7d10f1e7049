#include "dimpoly/serialize.hpp"

#include "dimpoly/errors.hpp"

namespace dimpoly {

namespace {

Json longs(const std::vector<long>& v) { return Json(v); }

Json window_json(const WindowSpec& w) { return Json{{"r", longs(w.r)}, {"s", longs(w.s)}}; }

}  // namespace

Json to_json(const NumPoly& p) {
  Json terms = Json::array();
  for (const auto& [idx, c] : p.coeffs()) terms.push_back(Json{{"index", idx}, {"coeff", to_string(c)}});
  return Json{{"vars", p.num_vars()}, {"terms", terms}};
}

NumPoly numpoly_from_json(const Json& j) {
  try {
    const auto vars = j.at("vars").get<std::size_t>();
    NumPoly::Coeffs coeffs;
    for (const auto& t : j.at("terms")) {
      auto idx = t.at("index").get<NumPoly::Index>();
      if (idx.size() != vars) throw InputError("term index length differs from vars");
      Rational c(t.at("coeff").get<std::string>());
      c.canonicalize();
      coeffs[idx] += c;
    }
    return NumPoly(vars, std::move(coeffs));
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("malformed polynomial JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    throw InputError("malformed rational in polynomial JSON");
  }
}

Json to_json(const InvariantSummary& inv) {
  Json out;
  out["kind"] = inv.univariate ? "univariate" : "multivariate";
  out["partition"] = inv.part.block_sizes();
  out["degree"] = inv.total_degree;
  Json top = Json::array();
  for (const auto& [idx, c] : inv.top_coeffs) top.push_back(Json{{"index", idx}, {"coeff", to_string(c)}});
  out["top_coeffs"] = top;
  Json lex = Json::array();
  for (const auto& l : inv.lex_max)
    lex.push_back(Json{{"order", l.order}, {"element", l.element}, {"coeff", to_string(l.coeff)}});
  out["lex_max"] = lex;
  out["sigma_trdeg"] = to_string(inv.sigma_trdeg);
  return out;
}

Json to_json(const DimPolyResult& result) {
  Json out;
  out["phi"] = to_json(result.phi);
  out["thresholds"] = Json{{"r0", longs(result.thresholds.r0)},
                           {"s0", longs(result.thresholds.s0)},
                           {"s1", longs(result.thresholds.s1)},
                           {"rounds", result.rounds}};
  out["invariants"] = to_json(invariants(result));
  out["lambda_degree_below_m"] = result.lambda_degree_below_m;
  Json samples = Json::array();
  for (const auto& s : result.samples)
    samples.push_back(Json{{"window", window_json(s.window)},
                           {"u_prime", s.u_prime.get_str()},
                           {"u_double_prime", s.u_double_prime.get_str()},
                           {"held_out", s.held_out}});
  out["samples"] = samples;
  return out;
}

}  // namespace dimpoly
