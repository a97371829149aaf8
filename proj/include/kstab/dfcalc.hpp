/**
 * @file dfcalc.hpp
 * @brief Donaldson-Futaki invariants of flag-ideal semi-test configurations,
 *        evaluated from tables of intersection numbers.
 *
 * For B = Bl_I(X x P^1) with exceptional divisor E and L the pullback of L:
 *
 *   DF = -n (L^{n-1}.K_X) (L-E)^{n+1} + (n+1) (L^n) (L-E)^n.(K_X + K_{B/X x P^1})
 *
 * up to a positive constant, and with boundary D and cone angle beta
 *
 *   DF_beta = -n (L^{n-1}.(K_X + (1-beta)D)) (L-E)^{n+1}
 *             + (n+1) (L^n) (L-E)^n.(K_X + (1-beta)D + (K_{B/((X,(1-beta)D) x P^1)})_exc).
 *
 * The two carry different positive normalisations; only signs are compared.
 */
#pragma once

#include "kstab/picard.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kstab {

/**
 * Named intersection numbers. LK = L^{n-1}.K_X and Ln = L^n live on X; the
 * rest live on the blow-up: A = (L-E)^{n+1}, B = (L-E)^n.K_X (pulled back),
 * C = (L-E)^n.K_{B/X x P^1}. Log fields: Dn1 = L^{n-1}.D, BD = (L-E)^n.D
 * (pulled back), Cexc = (L-E)^n.(exceptional part of the log relative
 * canonical). Validation fields: LE_R = (L-E)^n.R for declared nef pullbacks
 * R, LE_E = (L-E)^n.E.
 */
struct IntersectionTable {
  int n = 2;
  std::optional<Rational> LK, Ln, A, B, C;
  std::optional<Rational> Dn1, BD, Cexc;
  std::vector<Rational> LE_R;
  std::optional<Rational> LE_E;
  std::string provenance;

  friend bool operator==(const IntersectionTable&, const IntersectionTable&) = default;
};

inline constexpr const char* kDfNormalisation =
    "intersection formula, up to multiplication by a positive constant: sign-meaningful only";
inline constexpr const char* kLogDfNormalisation =
    "log intersection formula (weights scaled by 2 a0^2), up to a positive constant: sign-meaningful only";

namespace detail {

inline const Rational& require(const std::optional<Rational>& field, const char* name) {
  if (!field) throw std::invalid_argument(std::string("intersection table is missing field ") + name);
  return *field;
}

inline void check_table(const IntersectionTable& t) {
  if (t.n < 1) throw std::invalid_argument("intersection table dimension n must be >= 1");
  if (require(t.Ln, "Ln").sign() <= 0) throw std::invalid_argument("intersection table needs Ln = L^n > 0");
}

}  // namespace detail

inline ExactScalar df_evaluate(const IntersectionTable& t) {
  detail::check_table(t);
  using detail::require;
  Rational n(t.n);
  return -n * require(t.LK, "LK") * require(t.A, "A") +
         (n + 1) * require(t.Ln, "Ln") * (require(t.B, "B") + require(t.C, "C"));
}

inline ExactScalar df_log_evaluate(const IntersectionTable& t, const Rational& beta) {
  if (beta.sign() < 0 || beta > 1) throw std::invalid_argument("beta must lie in [0, 1], got " + beta.str());
  detail::check_table(t);
  using detail::require;
  Rational n(t.n), w = 1 - beta;
  return -n * (require(t.LK, "LK") + w * require(t.Dn1, "Dn1")) * require(t.A, "A") +
         (n + 1) * require(t.Ln, "Ln") * (require(t.B, "B") + w * require(t.BD, "BD") + require(t.Cexc, "Cexc"));
}

/**
 * Table for deformation to the normal cone of one smooth point p, i.e. the
 * blow-up of (p, 0) in X x P^1 (flag ideal I_p + (t)). It uses E^3 = 1, the
 * vanishing of products of two pullbacks with E and of three pullbacks from a
 * surface, and K_{B/X x P^1} = 2E.
 */
inline IntersectionTable normal_cone_point_table(const SurfaceModel& s, const DivisorClass& L) {
  s.check(L);
  if (auto a = is_ample(s, L); !a.holds)
    throw std::domain_error("normal_cone_point_table: " + L.str() + " is not ample" +
                            (a.witness ? " (witness " + a.witness->str() + ")" : ""));
  IntersectionTable t;
  t.n = 2;
  t.LK = intersect(L, s.canonical());
  t.Ln = intersect(L, L);
  t.A = Rational(-1);
  t.B = Rational(0);
  t.C = Rational(2);
  t.LE_E = Rational(1);
  t.LE_R = {Rational(0)};
  t.provenance = "deformation to the normal cone of a smooth point of Bl_" + std::to_string(s.r()) + " P^2, L = " +
                 L.str() + "; E^3 = 1, pullback triples vanish, K_{B/X x P^1} = 2E, R = L";
  return t;
}

/// Table of the test configuration with ideal I^k and L -> kL: every number of
/// total degree m in (L, E) picks up k^m, so DF scales by k^{2n}.
inline IntersectionTable scale_table(const IntersectionTable& t, const Rational& k) {
  if (k.sign() <= 0) throw std::invalid_argument("scale_table: factor must be positive");
  auto pw = [&](int e) {
    Rational p = 1;
    for (int i = 0; i < e; ++i) p *= k;
    return p;
  };
  auto scaled = [&](const std::optional<Rational>& v, int e) -> std::optional<Rational> {
    if (!v) return std::nullopt;
    return *v * pw(e);
  };
  IntersectionTable out = t;
  out.LK = scaled(t.LK, t.n - 1);
  out.Ln = scaled(t.Ln, t.n);
  out.A = scaled(t.A, t.n + 1);
  out.B = scaled(t.B, t.n);
  out.C = scaled(t.C, t.n);
  out.Dn1 = scaled(t.Dn1, t.n - 1);
  out.BD = scaled(t.BD, t.n);
  out.Cexc = scaled(t.Cexc, t.n);
  out.LE_E = scaled(t.LE_E, t.n);
  for (auto& v : out.LE_R) v *= pw(t.n);
  out.provenance = t.provenance + "; scaled (L, E) -> " + k.str() + "(L, E)";
  return out;
}

struct SignLemmaReport {
  bool valid = true;
  std::vector<std::string> flags;
};

/// A table from an honest semi-test configuration has (L-E)^n.R <= 0 for nef R
/// and (L-E)^n.E > 0.
inline SignLemmaReport validate_sign_lemmas(const IntersectionTable& t) {
  SignLemmaReport rep;
  auto flag = [&](std::string msg) {
    rep.valid = false;
    rep.flags.push_back(std::move(msg));
  };
  for (std::size_t i = 0; i < t.LE_R.size(); ++i)
    if (t.LE_R[i].sign() > 0)
      flag("nef-pullback lemma fails: LE_R[" + std::to_string(i) + "] = " + t.LE_R[i].str() + " > 0");
  if (!t.LE_E) flag("missing validation field LE_E");
  else if (t.LE_E->sign() <= 0) flag("degenerate: E-positivity fails (LE_E = " + t.LE_E->str() + ")");
  return rep;
}

struct DfResult {
  ExactScalar value;
  std::optional<Rational> beta;
  std::string normalisation;
  SignLemmaReport lemmas;
  std::string provenance;
};

inline DfResult df_report(const IntersectionTable& t, std::optional<Rational> beta = std::nullopt) {
  DfResult r;
  r.beta = beta;
  r.value = beta ? df_log_evaluate(t, *beta) : df_evaluate(t);
  r.normalisation = beta ? kLogDfNormalisation : kDfNormalisation;
  r.lemmas = validate_sign_lemmas(t);
  r.provenance = t.provenance;
  return r;
}

}  // namespace kstab
