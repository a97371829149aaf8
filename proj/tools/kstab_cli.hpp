// Command-line front end. run() is separate from main() so tests can drive it.
#pragma once

#include "kstab/kstab.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <locale>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace kstab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kGrammarHelp = R"(divisors:  signed sums of [coeff] H and [coeff] Ek, coeff like 2, -4/3, 0.5;
           "E1 - ... - E7" expands the indices in between
           e.g. "3H - E1 - E2 - E3 - E4 - E5 - E6 - E7 - 4/3 E8"
families:  the same with terms carrying the parameter, e.g. "3H-E1-...-E7 - t*E8"
surfaces:  dp1..dp9, bl0..bl8, P2 or {"r":8,"general_position":true,"no_cuspidal_anticanonical":true}
alpha:     builtin:dp1 or an exact scalar such as 3/4 or (10-sqrt(10))/9 (needs --provenance)
)";

struct Options {
  std::string surface = "dp1";
  std::optional<bool> general_position;
  std::optional<bool> no_cuspidal;
  std::string output = "text";

  std::string a, b, divisor, base, dir, L, alpha, provenance, family, param = "t", table;
  std::optional<std::string> beta, lambda, scale, flag_file;
  std::optional<int> r;
  bool count = false;
  std::string eps, c;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json read_json_file(const std::string& path) {
  try {
    return json::parse(read_file(path));
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("malformed JSON in '" + path + "': " + e.what());
  }
}

struct ResolvedAlpha {
  ExactScalar lower;
  std::string provenance;
};

/// builtin:dp1 for L = c * L_lambda gives min{1/(2-lambda), 1} / c.
inline ResolvedAlpha resolve_alpha(const Options& o, const SurfaceModel& s, const DivisorClass& L) {
  if (o.alpha.empty()) throw std::invalid_argument("--alpha is required (builtin:dp1 or an exact scalar)");
  if (o.alpha == "builtin:dp1") {
    if (s.r() != 8) throw std::domain_error("builtin:dp1 needs the surface dp1 (r = 8)");
    Rational c = L.h() / 3;
    if (c.sign() <= 0) throw std::domain_error("builtin:dp1 needs L = c(3H - E1 - ... - E7 - lambda E8) with c > 0");
    for (int i = 0; i < 7; ++i)
      if (L.e()[i] != c)
        throw std::domain_error("builtin:dp1 needs L = c(3H - E1 - ... - E7 - lambda E8); got " + L.str());
    Rational lambda = L.e()[7] / c;
    AlphaBound b = alpha_scale(dp1_alpha_bound(s, lambda), c);
    return {*b.lower, b.provenance + " (lambda = " + lambda.str() + ")"};
  }
  if (o.alpha.rfind("builtin:", 0) == 0) throw std::invalid_argument("unknown built-in alpha bound '" + o.alpha + "'");
  if (o.provenance.empty()) throw std::invalid_argument("user-supplied --alpha needs --provenance");
  return {parse_scalar(o.alpha), o.provenance};
}

inline std::string yes_no(bool b) { return b ? "PASS" : "FAIL"; }

inline std::string certificate_text(const StabilityCertificate& c) {
  std::ostringstream os;
  os << "verdict: " << to_string(c.verdict) << "\n";
  os << "surface: Bl_" << c.r << " P^2, n = " << c.n << "\n";
  os << "polarisation L = " << c.polarisation.str() << "\n";
  os << "slope mu = (-K.L)/L^2 = " << c.slope.str() << "\n";
  os << "n/(n+1) mu = " << c.threshold.str() << "\n";
  if (c.beta) os << "cone angle beta = " << c.beta->str() << "\n";
  os << "condition (i): alpha_lb = " << c.condition_i.alpha_lower.str() << " > " << c.condition_i.threshold.str()
     << (c.beta ? " (= beta n/(n+1) mu)" : "") << ", margin " << c.condition_i.margin.str() << ": "
     << yes_no(c.condition_i.pass) << "\n";
  os << "condition (ii): -K - n/(n+1) mu L = " << c.condition_ii.tested_class.str() << " nef: " << yes_no(c.condition_ii.nef);
  if (c.condition_ii.witness) os << " (witness " << c.condition_ii.witness->str() << ")";
  os << "\n";
  os << "hypotheses:\n";
  for (const auto& h : c.hypotheses) os << "  - " << h << "\n";
  if (c.beta) os << "  - " << kLogBoundaryHypothesis << "\n";
  if (c.verdict == Verdict::Inconclusive) os << "note: the criterion is sufficient only; Inconclusive is not instability\n";
  return os.str();
}

}  // namespace detail

/**
 * Runs one command. args excludes the program name. Returns 0 on a computed
 * result (Inconclusive included), 1 on input errors and 2 on usage errors.
 */
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  out.imbue(std::locale::classic());
  err.imbue(std::locale::classic());
  Options o;
  CLI::App app{"exact K-stability certificates for polarised blow-ups of the plane", "kstab"};
  app.require_subcommand(1, 1);
  app.set_config("--config", "", "key=value file with default options (surface, general-position, no-cuspidal, output)");
  app.add_option("--surface", o.surface, "dp1..dp9, bl0..bl8, P2 or surface JSON")->capture_default_str();
  app.add_option("--general-position", o.general_position, "declare the blown-up points general (true/false)");
  app.add_option("--no-cuspidal", o.no_cuspidal, "declare |-K_X| free of cuspidal curves (true/false)");
  app.add_option("--output", o.output, "json or text")->check(CLI::IsMember({"json", "text"}))->capture_default_str();

  auto sub = [&](const char* name, const char* help) {
    auto* s = app.add_subcommand(name, help);
    s->fallthrough();
    return s;
  };
  auto* surface_info = sub("surface-info", "surface summary");
  auto* intersect_cmd = sub("intersect", "intersection number of two classes");
  intersect_cmd->add_option("--a", o.a, "first class")->required();
  intersect_cmd->add_option("--b", o.b, "second class")->required();
  auto* curves = sub("curves", "list or count the (-1)-curves");
  curves->add_option("--r", o.r, "number of blown-up points (defaults to the surface)");
  curves->add_flag("--count", o.count, "print only the number");
  auto* nef_cmd = sub("nef", "nefness test");
  nef_cmd->add_option("--D", o.divisor, "class")->required();
  auto* ample_cmd = sub("ample", "ampleness test");
  ample_cmd->add_option("--D", o.divisor, "class")->required();
  auto* nef_thr = sub("nef-threshold", "sup{t >= 0 : base - t dir nef}");
  nef_thr->add_option("--base", o.base, "nef class")->required();
  nef_thr->add_option("--dir", o.dir, "direction")->required();
  auto* slope_cmd = sub("slope", "slope (-K.L)/L^2");
  slope_cmd->add_option("--L", o.L, "polarisation")->required();
  auto* alpha_cmd = sub("alpha-bound", "alpha invariant bounds");
  alpha_cmd->add_option("--lambda", o.lambda, "dp1 parameter: lower bound min{1/(2-lambda), 1}");
  alpha_cmd->add_option("--flag", o.flag_file, "flag resolution JSON: upper bound");
  alpha_cmd->add_option("--beta", o.beta, "cone angle for the log flag bound");
  alpha_cmd->add_option("--scale", o.scale, "report the bound for c L instead of L");
  auto* certify = sub("certify", "check the criterion for (X, L)");
  certify->add_option("--L", o.L, "polarisation")->required();
  certify->add_option("--alpha", o.alpha, "builtin:dp1 or an exact lower bound")->required();
  certify->add_option("--provenance", o.provenance, "source of a user-supplied alpha bound");
  auto* log_certify = sub("log-certify", "check the log criterion with cone angle beta");
  log_certify->add_option("--L", o.L, "polarisation")->required();
  log_certify->add_option("--alpha", o.alpha, "exact lower bound for the log alpha invariant")->required();
  log_certify->add_option("--beta", o.beta, "cone angle in [0, 1]")->required();
  log_certify->add_option("--provenance", o.provenance, "source of the alpha bound");
  auto* max_beta = sub("max-beta", "largest certified cone angle");
  max_beta->add_option("--L", o.L, "polarisation")->required();
  max_beta->add_option("--alpha", o.alpha, "exact lower bound for the log alpha invariant")->required();
  max_beta->add_option("--provenance", o.provenance, "source of the alpha bound");
  auto* region = sub("region", "certified parameter region of a family");
  region->add_option("--family", o.family, "family such as \"3H-E1-...-E7 - t*E8\" (default: the dp1 family)");
  region->add_option("--param", o.param, "parameter name")->capture_default_str();
  region->add_option("--alpha", o.alpha, "builtin:dp1 or a constant exact lower bound")->required();
  region->add_option("--provenance", o.provenance, "source of a user-supplied alpha bound");
  auto* df_eval = sub("df-eval", "Donaldson-Futaki invariant from an intersection table");
  df_eval->add_option("--table", o.table, "table JSON file")->required();
  df_eval->add_option("--beta", o.beta, "cone angle for the log formula");
  auto* df_nc = sub("df-normal-cone", "table and DF of the deformation to the normal cone of a point");
  df_nc->add_option("--L", o.L, "ample polarisation")->required();
  auto* validate = sub("validate-table", "check the sign lemmas on a table");
  validate->add_option("--table", o.table, "table JSON file")->required();
  auto* perturb = sub("perturb-delta", "step delta = c eps / (2 alpha + eps)");
  perturb->add_option("--eps", o.eps, "epsilon > 0")->required();
  perturb->add_option("--c", o.c, "c > 0")->required();
  perturb->add_option("--alpha", o.alpha, "alpha > 0")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n\n" << kGrammarHelp;
    return kExitUsage;
  }

  const bool as_json = o.output == "json";
  auto emit = [&](const json& j, const std::string& text) {
    if (as_json) out << j.dump(2) << "\n";
    else out << text;
  };

  try {
    SurfaceModel s = parse_surface(o.surface, o.general_position, o.no_cuspidal);
    auto div = [&](const std::string& e) { return parse_divisor(e, s.r()); };
    auto rat = [](const std::string& e) { return parse_rational(e); };

    if (*surface_info) {
      json j = surface_to_json(s);
      j["K_squared"] = rational_to_json(intersect(s.canonical(), s.canonical()));
      j["canonical"] = s.canonical();
      j["exceptional_curve_count"] = s.exceptional_curves().size();
      j["nef_test_set_size"] = s.nef_test_set().size();
      j["anticanonical_ample"] = is_ample(s, s.anticanonical()).holds;
      std::ostringstream t;
      t << "Bl_" << s.r() << " P^2 (del Pezzo of degree " << 9 - s.r() << ")\n"
        << "K = " << s.canonical().str() << ", K^2 = " << intersect(s.canonical(), s.canonical()).str() << "\n"
        << "(-1)-curves: " << s.exceptional_curves().size() << ", nef test set: " << s.nef_test_set().size() << "\n"
        << "general position: " << (s.general_position() ? "declared" : "not declared") << "\n"
        << "no cuspidal anticanonical curves: " << (s.no_cuspidal_anticanonical() ? "declared" : "not declared") << "\n";
      emit(j, t.str());
    } else if (*intersect_cmd) {
      Rational v = intersect(div(o.a), div(o.b));
      emit({{"a", div(o.a)}, {"b", div(o.b)}, {"value", ExactScalar(v)}}, v.str() + "\n");
    } else if (*curves) {
      int r = o.r.value_or(s.r());
      auto list = enumerate_exceptional(r);
      json j = {{"r", r}, {"count", list.size()}};
      std::ostringstream t;
      if (o.count) {
        t << list.size() << "\n";
      } else {
        j["curves"] = list;
        for (const auto& cl : list) t << cl.str() << "\n";
      }
      emit(j, t.str());
    } else if (*nef_cmd) {
      DivisorClass d = div(o.divisor);
      auto res = is_nef(s, d);
      json j = {{"divisor", d}, {"nef", res.holds}, {"witness", res.witness ? json(*res.witness) : json(nullptr)}};
      std::string t = std::string(res.holds ? "nef" : "not nef") +
                      (res.witness ? " (witness " + res.witness->str() + ", D.C = " + intersect(d, *res.witness).str() + ")" : "") + "\n";
      emit(j, t);
    } else if (*ample_cmd) {
      DivisorClass d = div(o.divisor);
      auto res = is_ample(s, d);
      json j = {{"divisor", d},
                {"ample", res.holds},
                {"positive_square", res.positive_square},
                {"witness", res.witness ? json(*res.witness) : json(nullptr)}};
      std::string t = std::string(res.holds ? "ample" : "not ample");
      if (res.witness) t += " (witness " + res.witness->str() + ", D.C = " + intersect(d, *res.witness).str() + ")";
      else if (!res.positive_square) t += " (D^2 = " + intersect(d, d).str() + " <= 0)";
      emit(j, t + "\n");
    } else if (*nef_thr) {
      auto res = nef_threshold(s, div(o.base), div(o.dir));
      json j = {{"base", div(o.base)},
                {"direction", div(o.dir)},
                {"threshold", res.value ? json(ExactScalar(*res.value)) : json("infinity")},
                {"witness", res.witness ? json(*res.witness) : json(nullptr)}};
      std::string t = res.value ? res.value->str() : std::string("infinity");
      if (res.witness) t += " (binding class " + res.witness->str() + ")";
      emit(j, t + "\n");
    } else if (*slope_cmd) {
      DivisorClass L = div(o.L);
      ExactScalar mu = slope(s, L);
      emit({{"L", L}, {"slope", mu}}, mu.str() + "\n");
    } else if (*alpha_cmd) {
      if (!!o.lambda == !!o.flag_file) throw std::invalid_argument("alpha-bound needs exactly one of --lambda or --flag");
      AlphaBound b;
      if (o.lambda) {
        b = dp1_alpha_bound(s, parse_scalar(*o.lambda));
      } else {
        FlagResolutionData data = detail::read_json_file(*o.flag_file).get<FlagResolutionData>();
        if (o.beta) b = {std::nullopt, log_flag_upper_bound(data, rat(*o.beta)), "log flag-ideal bound, beta = " + *o.beta};
        else b = {std::nullopt, flag_upper_bound(data), "flag-ideal bound"};
      }
      if (o.scale) b = alpha_scale(b, rat(*o.scale));
      std::string t;
      if (b.lower) t += "alpha >= " + b.lower->str() + "\n";
      if (b.upper) t += "alpha <= " + b.upper->str() + "\n";
      emit(alpha_bound_to_json(b), t + "provenance: " + b.provenance + "\n");
    } else if (*certify) {
      DivisorClass L = div(o.L);
      auto a = detail::resolve_alpha(o, s, L);
      auto cert = check_criterion(s, L, a.lower, a.provenance);
      emit(json(cert), detail::certificate_text(cert));
    } else if (*log_certify) {
      DivisorClass L = div(o.L);
      if (o.alpha.rfind("builtin:", 0) == 0) throw std::invalid_argument("log-certify needs an explicit log alpha bound");
      auto a = detail::resolve_alpha(o, s, L);
      auto cert = check_log_criterion(s, L, a.lower, rat(*o.beta), a.provenance);
      emit(json(cert), detail::certificate_text(cert));
    } else if (*max_beta) {
      DivisorClass L = div(o.L);
      if (o.alpha.rfind("builtin:", 0) == 0) throw std::invalid_argument("max-beta needs an explicit log alpha bound");
      auto a = detail::resolve_alpha(o, s, L);
      auto res = max_certified_beta(s, L, a.lower);
      json j = {{"L", L},
                {"certified", res.certified},
                {"supremum", res.value},
                {"attained", res.attained},
                {"witness", res.witness ? json(*res.witness) : json(nullptr)},
                {"alpha_provenance", a.provenance},
                {"boundary_hypothesis", kLogBoundaryHypothesis}};
      std::string t;
      if (res.witness) t = "no beta certified: condition (ii) fails (witness " + res.witness->str() + ")\n";
      else if (!res.certified) t = "no beta certified: alpha bound is zero\n";
      else t = "certified for beta " + std::string(res.attained ? "<= " : "< ") + res.value.str() + "\n";
      emit(j, t);
    } else if (*region) {
      PolarisationFamily f;
      if (o.alpha == "builtin:dp1") {
        f = dp1_family(s);
        if (!o.family.empty()) {
          auto [base, dir] = parse_family(o.family, s.r(), o.param);
          if (base != f.base || dir != f.direction)
            throw std::invalid_argument("builtin:dp1 applies only to the family 3H - E1 - ... - E7 - t*E8");
          f.parameter = o.param;
        }
      } else {
        if (o.family.empty()) throw std::invalid_argument("region with a user alpha bound needs --family");
        if (o.provenance.empty()) throw std::invalid_argument("user-supplied --alpha needs --provenance");
        auto [base, dir] = parse_family(o.family, s.r(), o.param);
        f.surface = s;
        f.base = base;
        f.direction = dir;
        f.parameter = o.param;
        ExactScalar a = parse_scalar(o.alpha);
        if (!a.is_rational()) throw std::invalid_argument("region needs a rational constant alpha bound");
        f.alpha = {{std::nullopt, std::nullopt, RatPoly::constant(a.as_rational(), o.param), RatPoly::constant(1, o.param)}};
        f.alpha_provenance = o.provenance;
      }
      auto res = certified_region(f);
      json j = region_to_json(res);
      j["report"] = region_report(res);
      emit(j, region_report(res));
    } else if (*df_eval) {
      IntersectionTable t = detail::read_json_file(o.table).get<IntersectionTable>();
      auto res = df_report(t, o.beta ? std::optional<Rational>(rat(*o.beta)) : std::nullopt);
      std::ostringstream os;
      os << (res.beta ? "log DF (beta = " + res.beta->str() + ") = " : "DF = ") << res.value.str() << "\n"
         << "normalisation: " << res.normalisation << "\n";
      for (const auto& fl : res.lemmas.flags) os << "flag: " << fl << "\n";
      emit(df_result_to_json(res), os.str());
    } else if (*df_nc) {
      auto t = normal_cone_point_table(s, div(o.L));
      auto res = df_report(t);
      json j = df_result_to_json(res);
      j["table"] = t;
      emit(j, "DF = " + res.value.str() + "\nnormalisation: " + res.normalisation + "\ntable: " + json(t).dump() + "\n");
    } else if (*validate) {
      IntersectionTable t = detail::read_json_file(o.table).get<IntersectionTable>();
      auto rep = validate_sign_lemmas(t);
      std::string text = rep.valid ? "sign lemmas hold\n" : "";
      for (const auto& fl : rep.flags) text += "flag: " + fl + "\n";
      emit({{"valid", rep.valid}, {"flags", rep.flags}}, text);
    } else if (*perturb) {
      ExactScalar d = perturbation_delta(rat(o.eps), rat(o.c), parse_scalar(o.alpha));
      emit({{"delta", d}, {"eps", rational_to_json(rat(o.eps))}, {"c", rational_to_json(rat(o.c))}}, d.str() + "\n");
    }
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitOk;
}

}  // namespace kstab::cli
