/**
 * @file serialize.hpp
 * @brief JSON encoding of exact values, divisors, tables, certificates and
 *        regions, plus surface descriptions.
 *
 * Rationals are JSON integers when integral and within int64, strings such as
 * "-4/3" otherwise. Objects use nlohmann::json, whose keys are sorted.
 */
#pragma once

#include "kstab/dfcalc.hpp"
#include "kstab/parse.hpp"
#include "kstab/region.hpp"
#include "kstab/stability.hpp"

#include <json.hpp>

#include <limits>
#include <string>

namespace kstab {

using json = nlohmann::json;

inline json rational_to_json(const Rational& q) {
  if (denominator(q) == 1) {
    const Integer& n = numerator(q);
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max())
      return n.convert_to<std::int64_t>();
  }
  return q.str();
}

inline json integer_to_json(const Integer& n) { return rational_to_json(Rational(n)); }

inline Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return j.is_number_unsigned() ? Rational(Integer(j.get<std::uint64_t>())) : Rational(j.get<std::int64_t>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_float()) throw std::invalid_argument("floating-point JSON number is not exact; use \"p/q\"");
  throw std::invalid_argument("expected a rational, got " + j.dump());
}

inline std::optional<Rational> optional_rational_from_json(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return rational_from_json(j.at(key));
}

inline json optional_rational_to_json(const std::optional<Rational>& q) { return q ? rational_to_json(*q) : json(nullptr); }

// ExactScalar

inline void to_json(json& j, const ExactScalar& x) {
  if (x.is_rational()) {
    const Rational& q = x.rational_part();
    j = {{"kind", "rational"}, {"p", integer_to_json(numerator(q))}, {"q", integer_to_json(denominator(q))}};
  } else {
    j = {{"kind", "quadratic"},
         {"a", rational_to_json(x.rational_part())},
         {"b", rational_to_json(x.surd_coefficient())},
         {"d", integer_to_json(x.radicand())}};
  }
  j["display"] = x.str();
}

inline void from_json(const json& j, ExactScalar& x) {
  if (j.is_string()) {
    x = parse_scalar(j.get<std::string>());
    return;
  }
  if (j.is_number()) {
    x = ExactScalar(rational_from_json(j));
    return;
  }
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "rational") {
    Rational p = rational_from_json(j.at("p")), q = rational_from_json(j.at("q"));
    if (q == 0) throw std::invalid_argument("zero denominator in scalar JSON");
    x = ExactScalar(p / q);
  } else if (kind == "quadratic") {
    Rational d = rational_from_json(j.at("d"));
    if (denominator(d) != 1) throw std::invalid_argument("radicand must be an integer");
    x = ExactScalar::quadratic(rational_from_json(j.at("a")), rational_from_json(j.at("b")), numerator(d));
  } else {
    throw std::invalid_argument("unknown scalar kind '" + kind + "'");
  }
}

// AlgebraicReal and intervals

inline json algebraic_to_json(const AlgebraicReal& x) {
  if (x.is_exact()) return json(x.exact());
  const auto& r = x.isolated();
  json coeffs = json::array();
  for (const auto& c : r.poly().coefficients()) coeffs.push_back(rational_to_json(c));
  return {{"kind", "algebraic"},
          {"poly", coeffs},
          {"lo", rational_to_json(r.lo())},
          {"hi", rational_to_json(r.hi())},
          {"display", x.str()},
          {"approx", x.approx()}};
}

inline json interval_to_json(const AlgebraicInterval& iv) {
  if (iv.is_empty()) return {{"empty", true}, {"display", iv.str()}};
  auto end = [](const std::optional<Endpoint>& e) -> json {
    if (!e) return nullptr;
    return {{"value", algebraic_to_json(e->value)}, {"closed", e->closed}, {"approx", e->value.approx()}};
  };
  return {{"empty", false}, {"lower", end(iv.lower())}, {"upper", end(iv.upper())}, {"display", iv.str()}};
}

inline json intervals_to_json(const std::vector<AlgebraicInterval>& set) {
  json a = json::array();
  for (const auto& iv : set) a.push_back(interval_to_json(iv));
  return a;
}

// Divisors: signed-sum coefficients, coefficients[i] multiplies E_{i+1}.

inline void to_json(json& j, const DivisorClass& d) {
  json coeffs = json::array();
  for (int i = 1; i <= d.r(); ++i) coeffs.push_back(rational_to_json(d.signed_coefficient(i)));
  j = {{"expr", d.str()}, {"r", d.r()}, {"H", rational_to_json(d.h())}, {"E", coeffs}};
}

inline void from_json(const json& j, DivisorClass& d) {
  if (j.is_object() && j.contains("E")) {
    const auto& coeffs = j.at("E");
    if (j.contains("r") && j.at("r").get<int>() != static_cast<int>(coeffs.size()))
      throw std::invalid_argument("divisor JSON: r does not match the number of E coefficients");
    DivisorClass out(static_cast<int>(coeffs.size()));
    out = out + rational_from_json(j.at("H")) * DivisorClass::hyperplane(out.r());
    for (int i = 1; i <= out.r(); ++i)
      out = out + rational_from_json(coeffs.at(i - 1)) * DivisorClass::exceptional(out.r(), i);
    d = out;
    return;
  }
  if (j.is_object() && j.contains("expr") && j.contains("r")) {
    d = parse_divisor(j.at("expr").get<std::string>(), j.at("r").get<int>());
    return;
  }
  throw std::invalid_argument("divisor JSON needs {\"H\", \"E\"} or {\"expr\", \"r\"}");
}

// Surfaces

inline json surface_to_json(const SurfaceModel& s) {
  return {{"r", s.r()},
          {"general_position", s.general_position()},
          {"no_cuspidal_anticanonical", s.no_cuspidal_anticanonical()}};
}

/// "dp1".."dp9", "bl0".."bl8", "P2" or {"r":8,"general_position":true,"no_cuspidal_anticanonical":true}.
inline SurfaceModel parse_surface(const std::string& spec, std::optional<bool> general_position = std::nullopt,
                                  std::optional<bool> no_cuspidal = std::nullopt) {
  int r = -1;
  bool gp = true, nc = true;
  auto number_after = [&](std::size_t prefix) {
    std::string rest = spec.substr(prefix);
    if (rest.empty() || rest.size() > 2 || !std::all_of(rest.begin(), rest.end(), ::isdigit))
      throw std::invalid_argument("malformed surface '" + spec + "'");
    return std::stoi(rest);
  };
  if (!spec.empty() && spec.front() == '{') {
    json j;
    try {
      j = json::parse(spec);
    } catch (const json::exception& e) {
      throw std::invalid_argument(std::string("surface JSON: ") + e.what());
    }
    r = j.at("r").get<int>();
    gp = j.value("general_position", true);
    nc = j.value("no_cuspidal_anticanonical", true);
  } else if (spec == "P2") {
    r = 0;
  } else if (spec.rfind("dp", 0) == 0) {
    int degree = number_after(2);
    if (degree < 1 || degree > 9) throw std::invalid_argument("del Pezzo degree must be 1..9 in '" + spec + "'");
    r = 9 - degree;
  } else if (spec.rfind("bl", 0) == 0) {
    r = number_after(2);
  } else {
    throw std::invalid_argument("unknown surface '" + spec + "' (use dp1..dp9, bl0..bl8, P2 or JSON)");
  }
  if (general_position) gp = *general_position;
  if (no_cuspidal) nc = *no_cuspidal;
  return SurfaceModel(r, gp, nc);
}

// Alpha data

inline json alpha_bound_to_json(const AlphaBound& b) {
  return {{"lower", b.lower ? json(*b.lower) : json(nullptr)},
          {"upper", b.upper ? json(*b.upper) : json(nullptr)},
          {"provenance", b.provenance}};
}

inline void to_json(json& j, const FlagResolutionData& data) {
  json rows = json::array();
  for (const auto& row : data.rows)
    rows.push_back({{"a", rational_to_json(row.a)},
                    {"b", rational_to_json(row.b)},
                    {"c", rational_to_json(row.c)},
                    {"d", rational_to_json(row.d)}});
  j = {{"rows", rows}};
}

inline void from_json(const json& j, FlagResolutionData& data) {
  data.rows.clear();
  for (const auto& row : j.at("rows"))
    data.rows.push_back({rational_from_json(row.at("a")), rational_from_json(row.at("b")),
                         rational_from_json(row.at("c")), row.contains("d") ? rational_from_json(row.at("d")) : Rational(0)});
  data.validate();
}

// Intersection tables

inline void to_json(json& j, const IntersectionTable& t) {
  json le_r = json::array();
  for (const auto& v : t.LE_R) le_r.push_back(rational_to_json(v));
  j = {{"n", t.n},
       {"LK", optional_rational_to_json(t.LK)},
       {"Ln", optional_rational_to_json(t.Ln)},
       {"A", optional_rational_to_json(t.A)},
       {"B", optional_rational_to_json(t.B)},
       {"C", optional_rational_to_json(t.C)},
       {"Dn1", optional_rational_to_json(t.Dn1)},
       {"BD", optional_rational_to_json(t.BD)},
       {"Cexc", optional_rational_to_json(t.Cexc)},
       {"LE_R", le_r},
       {"LE_E", optional_rational_to_json(t.LE_E)},
       {"provenance", t.provenance}};
}

inline void from_json(const json& j, IntersectionTable& t) {
  static const std::set<std::string> known = {"n", "LK", "Ln", "A", "B", "C", "Dn1", "BD", "Cexc", "LE_R", "LE_E", "provenance"};
  if (!j.is_object()) throw std::invalid_argument("intersection table must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) throw std::invalid_argument("unknown intersection table field '" + key + "'");
  t = IntersectionTable{};
  t.n = j.value("n", 2);
  t.LK = optional_rational_from_json(j, "LK");
  t.Ln = optional_rational_from_json(j, "Ln");
  t.A = optional_rational_from_json(j, "A");
  t.B = optional_rational_from_json(j, "B");
  t.C = optional_rational_from_json(j, "C");
  t.Dn1 = optional_rational_from_json(j, "Dn1");
  t.BD = optional_rational_from_json(j, "BD");
  t.Cexc = optional_rational_from_json(j, "Cexc");
  if (j.contains("LE_R") && !j.at("LE_R").is_null())
    for (const auto& v : j.at("LE_R")) t.LE_R.push_back(rational_from_json(v));
  t.LE_E = optional_rational_from_json(j, "LE_E");
  t.provenance = j.value("provenance", std::string());
}

inline json df_result_to_json(const DfResult& r) {
  return {{"value", r.value},
          {"sign", r.value.sign()},
          {"beta", optional_rational_to_json(r.beta)},
          {"normalisation", r.normalisation},
          {"sign_lemmas", {{"valid", r.lemmas.valid}, {"flags", r.lemmas.flags}}},
          {"provenance", r.provenance}};
}

// Certificates

inline void to_json(json& j, const StabilityCertificate& c) {
  j = {{"verdict", to_string(c.verdict)},
       {"n", c.n},
       {"r", c.r},
       {"polarisation", c.polarisation},
       {"slope", c.slope},
       {"threshold", c.threshold},
       {"condition_i",
        {{"alpha_lower", c.condition_i.alpha_lower},
         {"threshold", c.condition_i.threshold},
         {"margin", c.condition_i.margin},
         {"pass", c.condition_i.pass}}},
       {"condition_ii",
        {{"tested_class", c.condition_ii.tested_class},
         {"nef", c.condition_ii.nef},
         {"witness", c.condition_ii.witness ? json(*c.condition_ii.witness) : json(nullptr)}}},
       {"hypotheses", c.hypotheses},
       {"alpha_provenance", c.alpha_provenance},
       {"beta", optional_rational_to_json(c.beta)}};
  if (c.beta) j["boundary_hypothesis"] = kLogBoundaryHypothesis;
}

inline void from_json(const json& j, StabilityCertificate& c) {
  const std::string v = j.at("verdict").get<std::string>();
  if (v == "KStableCertified") c.verdict = Verdict::KStableCertified;
  else if (v == "Inconclusive") c.verdict = Verdict::Inconclusive;
  else throw std::invalid_argument("unknown verdict '" + v + "'");
  c.n = j.at("n").get<int>();
  c.r = j.at("r").get<int>();
  c.polarisation = j.at("polarisation").get<DivisorClass>();
  c.slope = j.at("slope").get<ExactScalar>();
  c.threshold = j.at("threshold").get<ExactScalar>();
  const auto& ci = j.at("condition_i");
  c.condition_i.alpha_lower = ci.at("alpha_lower").get<ExactScalar>();
  c.condition_i.threshold = ci.at("threshold").get<ExactScalar>();
  c.condition_i.margin = ci.at("margin").get<ExactScalar>();
  c.condition_i.pass = ci.at("pass").get<bool>();
  const auto& cii = j.at("condition_ii");
  c.condition_ii.tested_class = cii.at("tested_class").get<DivisorClass>();
  c.condition_ii.nef = cii.at("nef").get<bool>();
  c.condition_ii.witness.reset();
  if (!cii.at("witness").is_null()) c.condition_ii.witness = cii.at("witness").get<DivisorClass>();
  c.hypotheses = j.at("hypotheses").get<std::vector<std::string>>();
  c.alpha_provenance = j.at("alpha_provenance").get<std::string>();
  c.beta = optional_rational_from_json(j, "beta");
}

// Regions

inline json constraint_to_json(const Constraint& c) {
  json coeffs = json::array();
  for (const auto& q : c.poly.coefficients()) coeffs.push_back(rational_to_json(q));
  return {{"poly", c.poly.str()}, {"coefficients", coeffs}, {"relation", to_string(c.rel)}, {"display", c.str()}};
}

inline json region_to_json(const RegionResult& r) {
  json endpoints = json::array();
  for (const auto& ep : r.endpoints) {
    json binding = json::array();
    for (const auto& b : ep.binding)
      binding.push_back({{"condition", b.condition}, {"constraint", constraint_to_json(b.constraint)}, {"witnesses", b.witnesses}});
    endpoints.push_back({{"value", algebraic_to_json(ep.value)},
                         {"side", ep.is_lower ? "lower" : "upper"},
                         {"criterion_holds_at_endpoint", ep.in_criterion_set},
                         {"binding", binding}});
  }
  return {{"parameter", r.parameter},
          {"ample_domain", intervals_to_json(r.ample)},
          {"certified", intervals_to_json(r.certified)},
          {"criterion_set", intervals_to_json(r.criterion_set)},
          {"endpoints", endpoints},
          {"hypotheses", r.hypotheses},
          {"alpha_provenance", r.alpha_provenance},
          {"empty", r.certified.empty()}};
}

}  // namespace kstab
