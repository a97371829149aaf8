/**
 * @file alpha.hpp
 * @brief Certified bounds on alpha invariants.
 *
 * Alpha invariants are never computed outright; this module carries lower and
 * upper bounds with a provenance tag and implements the rules that transform
 * them (scaling, adding an ample class, continuity) plus the concrete bounds:
 * the degree one del Pezzo lower bound and the flag-ideal upper bounds.
 */
#pragma once

#include "kstab/picard.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kstab {

struct AlphaBound {
  std::optional<ExactScalar> lower;
  std::optional<ExactScalar> upper;
  std::string provenance;

  void validate() const {
    if (lower && lower->sign() < 0) throw std::invalid_argument("alpha lower bound must be non-negative");
    if (lower && upper && *upper < *lower) throw std::invalid_argument("alpha bounds cross: lower > upper");
  }
};

/// alpha(X, cL) = alpha(X, L) / c.
inline AlphaBound alpha_scale(const AlphaBound& b, const Rational& c) {
  if (c.sign() <= 0) throw std::invalid_argument("alpha_scale: factor must be positive, got " + c.str());
  AlphaBound out;
  if (b.lower) out.lower = *b.lower / ExactScalar(c);
  if (b.upper) out.upper = *b.upper / ExactScalar(c);
  out.provenance = b.provenance + "; scaled L -> (" + c.str() + ")L";
  return out;
}

/// Bound for alpha(X, L + D) with D ample: alpha(X, L + D) <= alpha(X, L), nothing below.
inline AlphaBound alpha_add_ample_upper(const AlphaBound& b_of_L) {
  AlphaBound out;
  out.upper = b_of_L.upper;
  out.provenance = b_of_L.provenance + "; added ample class (upper bound only)";
  return out;
}

/**
 * Step size delta = c*eps / (2*alpha + eps). When L + cD and L - cD are both
 * ample, |alpha(X,L) - alpha(X,L + delta*D)| <= eps/2.
 */
inline ExactScalar perturbation_delta(const Rational& eps, const Rational& c, const ExactScalar& alpha) {
  if (eps.sign() <= 0) throw std::invalid_argument("perturbation_delta: eps must be positive");
  if (c.sign() <= 0) throw std::invalid_argument("perturbation_delta: c must be positive");
  if (alpha.sign() <= 0) throw std::invalid_argument("perturbation_delta: alpha must be positive");
  ExactScalar e(eps);
  return ExactScalar(c) * e / (ExactScalar(2) * alpha + e);
}

/**
 * Lower bound min{1/(2 - lambda), 1} for alpha(X, L_lambda) on a general
 * degree one del Pezzo surface, L_lambda = 3H - E1 - ... - E7 - lambda*E8.
 *
 * Refuses unless the surface is Bl_8 P^2 flagged as having no cuspidal
 * anticanonical curves, and 0 <= lambda < 2.
 */
inline ExactScalar dp1_alpha_lower(const SurfaceModel& s, const ExactScalar& lambda) {
  if (s.r() != 8) throw std::domain_error("dp1 alpha bound needs the degree one del Pezzo surface (r = 8)");
  if (!s.no_cuspidal_anticanonical())
    throw std::domain_error("dp1 alpha bound needs |-K_X| without cuspidal curves; surface is not flagged generic");
  if (lambda.sign() < 0) throw std::domain_error("dp1 alpha bound needs lambda >= 0, got " + lambda.str());
  if (lambda >= ExactScalar(2)) throw std::domain_error("dp1 alpha bound needs lambda < 2, got " + lambda.str());
  ExactScalar first = ExactScalar(1) / (ExactScalar(2) - lambda);
  return first < ExactScalar(1) ? first : ExactScalar(1);
}

inline constexpr const char* kDp1Provenance = "general degree one del Pezzo: alpha(X, L_lambda) >= min{1/(2-lambda), 1}";

inline AlphaBound dp1_alpha_bound(const SurfaceModel& s, const ExactScalar& lambda) {
  return {dp1_alpha_lower(s, lambda), std::nullopt, kDp1Provenance};
}

/// One exceptional divisor of a flag-ideal blow-up: discrepancy a, multiplicity
/// b of X x {0}, valuation c of the ideal, multiplicity d of the boundary.
struct FlagRow {
  Rational a, b, c, d{0};
};

struct FlagResolutionData {
  std::vector<FlagRow> rows;

  void validate() const {
    if (rows.empty()) throw std::invalid_argument("flag resolution data has no rows");
    for (const auto& row : rows)
      if (row.c.sign() <= 0) throw std::invalid_argument("flag row valuation c must be positive, got " + row.c.str());
  }
};

/// min_i (a_i - b_i + 1 - (1 - beta)*d_i) / c_i.
inline ExactScalar log_flag_upper_bound(const FlagResolutionData& data, const Rational& beta) {
  if (beta.sign() < 0 || beta > 1) throw std::invalid_argument("beta must lie in [0, 1], got " + beta.str());
  data.validate();
  std::optional<Rational> best;
  for (const auto& row : data.rows) {
    Rational v = (row.a - row.b + 1 - (1 - beta) * row.d) / row.c;
    if (!best || v < *best) best = v;
  }
  return *best;
}

/// min_i (a_i - b_i + 1) / c_i.
inline ExactScalar flag_upper_bound(const FlagResolutionData& data) {
  data.validate();
  std::optional<Rational> best;
  for (const auto& row : data.rows) {
    Rational v = (row.a - row.b + 1) / row.c;
    if (!best || v < *best) best = v;
  }
  return *best;
}

}  // namespace kstab
