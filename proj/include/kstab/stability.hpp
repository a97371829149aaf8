/**
 * @file stability.hpp
 * @brief The alpha-invariant K-stability criterion for polarised surfaces,
 *        its log variant with cone angle beta, and the related diagnostics.
 *
 * For (X, L) of dimension n the criterion certifies K-stability when
 *   (i)  alpha(X, L) > n/(n+1) * mu(X, L)          (strict), and
 *   (ii) -K_X - n/(n+1) * mu(X, L) * L is nef,
 * with mu(X, L) = (-K_X . L^{n-1}) / L^n. The log variant multiplies the right
 * side of (i) by beta. It is a sufficient condition only: a failed check is
 * reported as Inconclusive, never as unstable.
 */
#pragma once

#include "kstab/alpha.hpp"
#include "kstab/picard.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kstab {

inline constexpr int kSurfaceDimension = 2;

inline constexpr const char* kLogBoundaryHypothesis = "D in |-K_X| reduced Cartier, (X, D) log canonical (declared)";

enum class Verdict { KStableCertified, Inconclusive };

inline std::string to_string(Verdict v) { return v == Verdict::KStableCertified ? "KStableCertified" : "Inconclusive"; }

class not_ample : public std::domain_error {
 public:
  not_ample(const DivisorClass& L, std::optional<DivisorClass> witness)
      : std::domain_error("polarisation " + L.str() + " is not ample" +
                          (witness ? " (witness " + witness->str() + ")" : " (L^2 <= 0)")),
        witness_(std::move(witness)) {}
  const std::optional<DivisorClass>& witness() const { return witness_; }

 private:
  std::optional<DivisorClass> witness_;
};

struct ConditionI {
  ExactScalar alpha_lower;
  ExactScalar threshold;  // n/(n+1) mu, times beta in the log case
  ExactScalar margin;     // alpha_lower - threshold
  bool pass = false;      // margin > 0

  friend bool operator==(const ConditionI&, const ConditionI&) = default;
};

struct ConditionII {
  DivisorClass tested_class;  // -K - n/(n+1) mu L
  bool nef = false;
  std::optional<DivisorClass> witness;

  friend bool operator==(const ConditionII&, const ConditionII&) = default;
};

struct StabilityCertificate {
  Verdict verdict = Verdict::Inconclusive;
  int n = kSurfaceDimension;
  int r = 0;
  DivisorClass polarisation;
  ExactScalar slope;
  ExactScalar threshold;  // n/(n+1) mu
  ConditionI condition_i;
  ConditionII condition_ii;
  std::vector<std::string> hypotheses;
  std::string alpha_provenance;
  std::optional<Rational> beta;  // set for the log criterion; implies the boundary hypothesis below

  friend bool operator==(const StabilityCertificate&, const StabilityCertificate&) = default;
};

/// n/(n+1) * mu.
inline ExactScalar criterion_threshold(int n, const ExactScalar& mu) {
  if (n < 1) throw std::invalid_argument("dimension must be positive");
  return ExactScalar(Rational(n, n + 1)) * mu;
}

/// mu(X, L) = (-K . L) / L^2.
inline ExactScalar slope(const SurfaceModel& s, const DivisorClass& L) {
  s.check(L);
  Rational sq = intersect(L, L);
  if (sq.sign() <= 0) throw std::domain_error("degenerate polarisation " + L.str() + ": L^2 = " + sq.str() + " <= 0");
  return ExactScalar(intersect(s.anticanonical(), L) / sq);
}

namespace detail {

inline std::vector<std::string> surface_hypotheses(const SurfaceModel& s) {
  std::vector<std::string> h;
  h.push_back("X = Bl_" + std::to_string(s.r()) + " P^2 is smooth: Q-Gorenstein and log canonical");
  h.push_back(s.general_position() ? "blown-up points in general position (declared)"
                                   : "blown-up points NOT declared in general position");
  if (s.no_cuspidal_anticanonical()) h.push_back("|-K_X| contains no cuspidal curves (declared)");
  h.push_back(s.uses_enlarged_test_set()
                  ? "nef test set: (-1)-curves plus extra extremal classes (r <= 1)"
                  : "nef test set: the (-1)-curves");
  return h;
}

inline StabilityCertificate evaluate_criterion(const SurfaceModel& s, const DivisorClass& L, const ExactScalar& alpha_lb,
                                               std::optional<Rational> beta, std::string provenance) {
  s.check(L);
  if (auto a = is_ample(s, L); !a.holds) throw not_ample(L, a.witness);
  if (alpha_lb.sign() < 0) throw std::invalid_argument("alpha lower bound must be non-negative, got " + alpha_lb.str());
  if (beta && (beta->sign() < 0 || *beta > 1)) throw std::invalid_argument("beta must lie in [0, 1], got " + beta->str());

  StabilityCertificate cert;
  cert.n = kSurfaceDimension;
  cert.r = s.r();
  cert.polarisation = L;
  cert.slope = slope(s, L);
  cert.threshold = criterion_threshold(cert.n, cert.slope);
  cert.beta = beta;
  cert.alpha_provenance = std::move(provenance);

  cert.condition_i.alpha_lower = alpha_lb;
  cert.condition_i.threshold = beta ? ExactScalar(*beta) * cert.threshold : cert.threshold;
  cert.condition_i.margin = alpha_lb - cert.condition_i.threshold;
  cert.condition_i.pass = cert.condition_i.margin.sign() > 0;

  // The threshold is rational because L has rational coefficients.
  cert.condition_ii.tested_class = s.anticanonical() - cert.threshold.as_rational() * L;
  auto nef = is_nef(s, cert.condition_ii.tested_class);
  cert.condition_ii.nef = nef.holds;
  cert.condition_ii.witness = nef.witness;

  cert.hypotheses = surface_hypotheses(s);
  cert.hypotheses.push_back("L ample (verified against the nef test set and L^2 > 0)");
  cert.hypotheses.push_back("alpha lower bound: " + cert.alpha_provenance);

  cert.verdict = cert.condition_i.pass && cert.condition_ii.nef ? Verdict::KStableCertified : Verdict::Inconclusive;
  return cert;
}

}  // namespace detail

/// Evaluates both conditions for an ample L; throws not_ample otherwise.
inline StabilityCertificate check_criterion(const SurfaceModel& s, const DivisorClass& L, const ExactScalar& alpha_lb,
                                            std::string provenance = "user-supplied") {
  return detail::evaluate_criterion(s, L, alpha_lb, std::nullopt, std::move(provenance));
}

/// Log variant along an anticanonical boundary with cone angle beta.
inline StabilityCertificate check_log_criterion(const SurfaceModel& s, const DivisorClass& L,
                                                const ExactScalar& alpha_log_lb, const Rational& beta,
                                                std::string provenance = "user-supplied") {
  return detail::evaluate_criterion(s, L, alpha_log_lb, beta, std::move(provenance));
}

struct BetaSupremum {
  bool certified = false;  // some beta in [0, 1] is certified
  ExactScalar value;       // sup of certified beta
  bool attained = false;   // value itself is certified (only when it is 1)
  std::optional<DivisorClass> witness;  // condition (ii) failure
};

/// sup{beta in [0,1] : alpha_log_lb > beta * 2/3 * mu}, provided condition (ii) holds.
inline BetaSupremum max_certified_beta(const SurfaceModel& s, const DivisorClass& L, const ExactScalar& alpha_log_lb) {
  ExactScalar mu = slope(s, L);
  if (mu.sign() <= 0) throw std::domain_error("max_certified_beta needs a positive slope, got " + mu.str());
  if (alpha_log_lb.sign() < 0) throw std::invalid_argument("alpha lower bound must be non-negative");
  BetaSupremum out;
  ExactScalar thr = criterion_threshold(kSurfaceDimension, mu);
  auto nef = is_nef(s, s.anticanonical() - thr.as_rational() * L);
  if (!nef.holds) {
    out.witness = nef.witness;
    return out;
  }
  ExactScalar ratio = alpha_log_lb / thr;
  if (ratio > ExactScalar(1)) {
    out = {true, ExactScalar(1), true, std::nullopt};
  } else {
    out = {ratio.sign() > 0, ratio, false, std::nullopt};
  }
  return out;
}

enum class NumericalType { Fano, CalabiYau, Inapplicable };

inline std::string to_string(NumericalType t) {
  switch (t) {
    case NumericalType::Fano: return "Fano";
    case NumericalType::CalabiYau: return "CalabiYau";
    case NumericalType::Inapplicable: return "Inapplicable";
  }
  return "?";
}

/// Condition (ii) forces X to be numerically Fano (mu > 0) or Calabi-Yau (mu = 0, -K nef).
inline NumericalType classify_numerical_type(const ExactScalar& mu, bool condition_ii_holds, bool anticanonical_nef) {
  if (mu.sign() > 0 && condition_ii_holds) return NumericalType::Fano;
  if (mu.sign() == 0 && anticanonical_nef) return NumericalType::CalabiYau;
  return NumericalType::Inapplicable;
}

inline NumericalType classify_numerical_type(const SurfaceModel& s, const DivisorClass& L) {
  ExactScalar mu = slope(s, L);
  ExactScalar thr = criterion_threshold(kSurfaceDimension, mu);
  bool cond_ii = is_nef(s, s.anticanonical() - thr.as_rational() * L).holds;
  return classify_numerical_type(mu, cond_ii, is_nef(s, s.anticanonical()).holds);
}

struct OpennessReport {
  bool strict_i = false;
  bool strict_ii = false;  // tested class ample, not just nef
  ExactScalar margin_i;
  std::optional<DivisorClass> ample_witness;
  bool open_under_perturbation = false;
  std::string annotation;
};

/// Strict forms of both conditions: when they hold, every small perturbation
/// L + eps*D stays certified.
inline OpennessReport openness_margins(const SurfaceModel& s, const StabilityCertificate& cert) {
  OpennessReport rep;
  rep.margin_i = cert.condition_i.margin;
  rep.strict_i = cert.condition_i.pass;
  auto ample = is_ample(s, cert.condition_ii.tested_class);
  rep.strict_ii = ample.holds;
  rep.ample_witness = ample.witness;
  rep.open_under_perturbation = cert.verdict == Verdict::KStableCertified && rep.strict_i && rep.strict_ii;
  if (rep.open_under_perturbation) rep.annotation = "K-stability open under perturbation of L";
  else if (cert.verdict != Verdict::KStableCertified) rep.annotation = "not certified";
  else rep.annotation = "certified on the nef boundary of condition (ii); openness not guaranteed";
  return rep;
}

}  // namespace kstab
