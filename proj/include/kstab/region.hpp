/**
 * @file region.hpp
 * @brief Exact parameter regions of one-parameter polarisation families
 *        L_t = base + t*direction on which the criterion certifies K-stability.
 *
 * Both conditions are cleared to polynomial sign systems in t, piece by piece
 * over a piecewise-rational alpha lower bound, and solved exactly.
 */
#pragma once

#include "kstab/solve.hpp"
#include "kstab/stability.hpp"

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace kstab {

/// alpha_lb(t) = num(t)/den(t) on [lo, hi); a missing bound is infinite.
struct AlphaPiece {
  std::optional<Rational> lo, hi;
  RatPoly num, den;

  bool covers(const Rational& t) const { return (!lo || t >= *lo) && (!hi || t < *hi); }
  AlgebraicInterval interval() const {
    std::optional<Endpoint> a, b;
    if (lo) a = Endpoint{*lo, true};
    if (hi) b = Endpoint{*hi, false};
    return AlgebraicInterval::make(a, b);
  }
};

struct PolarisationFamily {
  SurfaceModel surface{0};
  DivisorClass base;
  DivisorClass direction;
  std::string parameter = "t";
  std::vector<AlphaPiece> alpha;
  std::string alpha_provenance;

  DivisorClass at(const Rational& t) const { return base + t * direction; }

  ExactScalar alpha_at(const Rational& t) const {
    for (const auto& p : alpha)
      if (p.covers(t)) return ExactScalar(p.num(t) / p.den(t));
    throw std::domain_error("alpha lower bound has no piece covering " + parameter + " = " + t.str());
  }

  /// Breakpoints increasing, pieces disjoint, denominators of constant sign on their piece.
  void validate() const {
    surface.check(base);
    surface.check(direction);
    if (base.is_zero() && direction.is_zero()) throw std::invalid_argument("degenerate family: base and direction are both zero");
    if (alpha.empty()) throw std::invalid_argument("family has no alpha lower bound pieces");
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      const auto& p = alpha[i];
      if (p.lo && p.hi && !(*p.lo < *p.hi)) throw std::invalid_argument("alpha piece " + std::to_string(i) + " is empty");
      if (i > 0) {
        const auto& prev = alpha[i - 1];
        if (!prev.hi || !p.lo || *p.lo < *prev.hi)
          throw std::invalid_argument("alpha pieces must have increasing, non-overlapping breakpoints");
      }
      if (p.den.is_zero()) throw std::invalid_argument("alpha piece " + std::to_string(i) + " has a zero denominator");
      if (p.den.degree() > 0)
        for (const auto& root : isolate_roots(p.den))
          if (p.interval().contains(root.value))
            throw std::invalid_argument("alpha piece " + std::to_string(i) + " denominator " + p.den.str() +
                                        " vanishes at " + root.value.str() + " inside its piece");
    }
  }
};

/**
 * L_t = 3H - E1 - ... - E7 - t*E8 on the general degree one del Pezzo surface
 * with alpha_lb = 1/(2 - t) on [0, 1) and 1 on [1, 2).
 */
inline PolarisationFamily dp1_family(const SurfaceModel& s) {
  if (s.r() != 8) throw std::domain_error("the dp1 family lives on Bl_8 P^2");
  dp1_alpha_lower(s, ExactScalar(1));  // refuses surfaces not flagged generic
  PolarisationFamily f;
  f.surface = s;
  f.base = Rational(3) * s.H();
  for (int i = 1; i <= 7; ++i) f.base = f.base - s.E(i);
  f.direction = -s.E(8);
  f.parameter = "t";
  f.alpha = {
      {Rational(0), Rational(1), RatPoly::constant(1), RatPoly::linear(2, -1)},
      {Rational(1), Rational(2), RatPoly::constant(1), RatPoly::constant(1)},
  };
  f.alpha_provenance = kDp1Provenance;
  return f;
}

namespace detail {

/// L_t . C as a polynomial in t.
inline RatPoly pairing(const PolarisationFamily& f, const DivisorClass& c) {
  return RatPoly::linear(intersect(f.base, c), intersect(f.direction, c), f.parameter);
}

inline RatPoly self_intersection(const PolarisationFamily& f) {
  return RatPoly::quadratic(intersect(f.base, f.base), 2 * intersect(f.base, f.direction),
                            intersect(f.direction, f.direction), f.parameter);
}

/// Same truth set, integer coefficients, positive constant term (or positive
/// leading coefficient when the constant term vanishes).
inline Constraint normalised(Constraint c) {
  if (c.poly.is_zero()) return c;
  RatPoly p = c.poly.primitive();
  if (p.leading().sign() != c.poly.leading().sign()) c.rel = flipped(c.rel);
  Rational lead = p.coeff(0) != 0 ? p.coeff(0) : p.leading();
  if (lead.sign() < 0) {
    p = -p;
    c.rel = flipped(c.rel);
  }
  c.poly = p;
  return c;
}

struct TaggedConstraint {
  Constraint constraint;
  std::string condition;  // "ample", "(i)", "(ii)"
  std::vector<DivisorClass> witnesses;
};

/// Merges constraints that agree up to a positive factor, collecting witnesses.
inline void add_constraint(std::vector<TaggedConstraint>& list, TaggedConstraint c) {
  c.constraint = normalised(c.constraint);
  for (auto& existing : list)
    if (existing.condition == c.condition && existing.constraint.rel == c.constraint.rel &&
        existing.constraint.poly == c.constraint.poly) {
      existing.witnesses.insert(existing.witnesses.end(), c.witnesses.begin(), c.witnesses.end());
      return;
    }
  list.push_back(std::move(c));
}

inline std::vector<Constraint> bare(const std::vector<TaggedConstraint>& tagged) {
  std::vector<Constraint> out;
  for (const auto& t : tagged) out.push_back(t.constraint);
  return out;
}

inline std::vector<TaggedConstraint> ample_constraints(const PolarisationFamily& f) {
  std::vector<TaggedConstraint> out;
  for (const auto& c : f.surface.nef_test_set()) add_constraint(out, {{pairing(f, c), Relation::Greater}, "ample", {c}});
  add_constraint(out, {{self_intersection(f), Relation::Greater}, "ample", {}});
  return out;
}

/// Condition (ii): 3 (-K.C) L_t^2 - 2 (-K.L_t)(L_t.C) >= 0 for every test class C.
inline std::vector<TaggedConstraint> nef_constraints(const PolarisationFamily& f) {
  std::vector<TaggedConstraint> out;
  RatPoly sq = self_intersection(f), antican = pairing(f, f.surface.anticanonical());
  for (const auto& c : f.surface.nef_test_set()) {
    Rational kc = intersect(f.surface.anticanonical(), c);
    RatPoly p = Rational(3) * kc * sq - Rational(2) * antican * pairing(f, c);
    add_constraint(out, {{p, Relation::GreaterEqual}, "(ii)", {c}});
  }
  return out;
}

/// Condition (i) on one piece: 3 num L_t^2 - 2 den (-K.L_t) > 0, flipped when den < 0 there.
inline TaggedConstraint alpha_constraint(const PolarisationFamily& f, const AlphaPiece& piece) {
  RatPoly sq = self_intersection(f), antican = pairing(f, f.surface.anticanonical());
  RatPoly p = Rational(3) * piece.num * sq - Rational(2) * piece.den * antican;
  AlgebraicInterval iv = piece.interval();
  Rational sample = iv.lower() ? iv.lower()->value.exact().as_rational()
                               : (iv.upper() ? iv.upper()->value.exact().as_rational() - 1 : Rational(0));
  Relation rel = piece.den(sample).sign() > 0 ? Relation::Greater : Relation::Less;
  TaggedConstraint out{{p.with_var(f.parameter), rel}, "(i)", {}};
  out.constraint = normalised(out.constraint);
  return out;
}

}  // namespace detail

/// Exact set {t : L_t ample}.
inline std::vector<AlgebraicInterval> ample_domain(const PolarisationFamily& f) {
  f.surface.check(f.base);
  f.surface.check(f.direction);
  if (f.base.is_zero() && f.direction.is_zero()) throw std::invalid_argument("degenerate family: base and direction are both zero");
  return solve_sign_system(detail::bare(detail::ample_constraints(f)));
}

struct BindingConstraint {
  std::string condition;  // "ample", "(i)", "(ii)" or "alpha breakpoint"
  Constraint constraint;
  std::vector<DivisorClass> witnesses;
};

struct RegionEndpoint {
  AlgebraicReal value;
  bool is_lower = true;
  bool in_criterion_set = false;  // the criterion holds at the endpoint itself
  std::vector<BindingConstraint> binding;
};

struct RegionResult {
  std::string parameter = "t";
  std::vector<AlgebraicInterval> ample;
  std::vector<AlgebraicInterval> criterion_set;  // exact set where both conditions hold
  std::vector<AlgebraicInterval> certified;      // its interior
  std::vector<RegionEndpoint> endpoints;
  std::vector<std::string> hypotheses;
  std::string alpha_provenance;

  bool contains(const Rational& t) const { return kstab::contains(certified, AlgebraicReal(t)); }
};

inline RegionResult certified_region(const PolarisationFamily& f) {
  f.validate();
  RegionResult res;
  res.parameter = f.parameter;
  res.alpha_provenance = f.alpha_provenance;
  auto ample_cs = detail::ample_constraints(f);
  res.ample = solve_sign_system(detail::bare(ample_cs));

  // Every ample parameter needs an alpha bound.
  std::vector<AlgebraicInterval> covered;
  for (const auto& p : f.alpha) covered.push_back(p.interval());
  covered = unite(covered);
  for (const auto& a : res.ample) {
    bool inside = std::any_of(covered.begin(), covered.end(), [&](const AlgebraicInterval& c) { return intersect(a, c) == a; });
    if (!inside) throw std::invalid_argument("alpha lower bound pieces do not cover the ample domain " + a.str());
  }

  auto nef_cs = detail::nef_constraints(f);
  std::vector<detail::TaggedConstraint> all_tagged = ample_cs;
  all_tagged.insert(all_tagged.end(), nef_cs.begin(), nef_cs.end());
  std::vector<AlgebraicInterval> parts;
  for (const auto& piece : f.alpha) {
    auto alpha_c = detail::alpha_constraint(f, piece);
    all_tagged.push_back(alpha_c);
    std::vector<Constraint> system = detail::bare(nef_cs);
    system.push_back(alpha_c.constraint);
    for (const auto& a : res.ample) {
      AlgebraicInterval dom = intersect(a, piece.interval());
      for (auto& iv : solve_sign_system(system, dom)) parts.push_back(std::move(iv));
    }
  }
  res.criterion_set = unite(parts);
  for (const auto& iv : res.criterion_set)
    if (auto in = iv.interior(); !in.is_empty()) res.certified.push_back(in);

  std::vector<Rational> breakpoints;
  for (const auto& p : f.alpha) {
    if (p.lo) breakpoints.push_back(*p.lo);
    if (p.hi) breakpoints.push_back(*p.hi);
  }
  for (const auto& iv : res.certified) {
    for (bool lower : {true, false}) {
      const auto& e = lower ? iv.lower() : iv.upper();
      if (!e) continue;
      RegionEndpoint ep;
      ep.value = e->value;
      ep.is_lower = lower;
      ep.in_criterion_set = contains(res.criterion_set, e->value);
      for (const auto& t : all_tagged)
        if (sign_at(t.constraint.poly, e->value) == 0 && t.constraint.poly.degree() > 0)
          ep.binding.push_back({t.condition, t.constraint, t.witnesses});
      for (const auto& b : breakpoints)
        if (AlgebraicReal(b) == e->value)
          ep.binding.push_back({"alpha breakpoint", {RatPoly::linear(-b, 1, f.parameter), Relation::GreaterEqual}, {}});
      res.endpoints.push_back(std::move(ep));
    }
  }

  res.hypotheses = detail::surface_hypotheses(f.surface);
  res.hypotheses.push_back("alpha lower bound: " + f.alpha_provenance);
  return res;
}

inline std::string describe_condition(const std::string& c) {
  if (c == "(i)") return "condition (i) (alpha bound)";
  if (c == "(ii)") return "condition (ii) (nef)";
  if (c == "ample") return "ampleness";
  return c;
}

/// Human-readable report with exact endpoints, approximate decimals and binding constraints.
inline std::string region_report(const RegionResult& r) {
  std::ostringstream os;
  os.imbue(std::locale::classic());
  os << "ample domain: ";
  if (r.ample.empty()) os << "{}";
  for (std::size_t i = 0; i < r.ample.size(); ++i) os << (i ? " U " : "") << r.ample[i].str();
  os << "\n";
  if (r.certified.empty()) {
    os << "no certified parameters\n";
  } else {
    os << "certified region (" << r.parameter << "):\n";
    for (const auto& iv : r.certified) {
      os << "  " << iv.str();
      if (iv.lower() || iv.upper()) {
        os << "  ~ (";
        os << (iv.lower() ? std::to_string(iv.lower()->value.approx()) : "-inf") << ", ";
        os << (iv.upper() ? std::to_string(iv.upper()->value.approx()) : "+inf") << ") [approximate]";
      }
      os << "\n";
    }
  }
  for (const auto& ep : r.endpoints) {
    os << (ep.is_lower ? "lower" : "upper") << " endpoint " << r.parameter << " = " << ep.value.str() << " ~ "
       << std::to_string(ep.value.approx()) << " [approximate]";
    if (ep.in_criterion_set) os << " (nef boundary, not strict)";
    os << "\n";
    for (const auto& b : ep.binding) {
      os << "  bound by " << describe_condition(b.condition) << ": " << b.constraint.str();
      if (!b.witnesses.empty()) {
        os << ", witness " << b.witnesses.front().str();
        if (b.witnesses.size() > 1) os << " (+" << b.witnesses.size() - 1 << " more)";
      }
      os << "\n";
    }
  }
  os << "hypotheses:\n";
  for (const auto& h : r.hypotheses) os << "  - " << h << "\n";
  return os.str();
}

}  // namespace kstab
