/**
 * @file solve.hpp
 * @brief Intervals with exact algebraic endpoints and the one-variable
 *        polynomial sign-system solver.
 */
#pragma once

#include "kstab/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kstab {

struct Endpoint {
  AlgebraicReal value;
  bool closed = false;
};

/// Interval of the real line; a missing endpoint means infinity on that side.
class AlgebraicInterval {
 public:
  AlgebraicInterval() : empty_(true) {}

  static AlgebraicInterval empty() { return {}; }
  static AlgebraicInterval real_line() { return make(std::nullopt, std::nullopt); }
  static AlgebraicInterval open(AlgebraicReal a, AlgebraicReal b) {
    return make(Endpoint{std::move(a), false}, Endpoint{std::move(b), false});
  }
  static AlgebraicInterval closed(AlgebraicReal a, AlgebraicReal b) {
    return make(Endpoint{std::move(a), true}, Endpoint{std::move(b), true});
  }
  static AlgebraicInterval point(const AlgebraicReal& a) { return closed(a, a); }

  /// Normalises to the empty interval when the bounds cross.
  static AlgebraicInterval make(std::optional<Endpoint> lower, std::optional<Endpoint> upper) {
    AlgebraicInterval i;
    i.empty_ = false;
    i.lower_ = std::move(lower);
    i.upper_ = std::move(upper);
    if (i.lower_ && i.upper_) {
      auto o = i.lower_->value <=> i.upper_->value;
      if (o > 0 || (o == 0 && !(i.lower_->closed && i.upper_->closed))) return empty();
    }
    return i;
  }

  bool is_empty() const { return empty_; }
  const std::optional<Endpoint>& lower() const { return lower_; }
  const std::optional<Endpoint>& upper() const { return upper_; }
  bool is_point() const { return !empty_ && lower_ && upper_ && lower_->value == upper_->value; }

  bool contains(const AlgebraicReal& x) const {
    if (empty_) return false;
    if (lower_) {
      auto o = x <=> lower_->value;
      if (o < 0 || (o == 0 && !lower_->closed)) return false;
    }
    if (upper_) {
      auto o = x <=> upper_->value;
      if (o > 0 || (o == 0 && !upper_->closed)) return false;
    }
    return true;
  }

  AlgebraicInterval interior() const {
    if (empty_) return *this;
    auto lo = lower_, hi = upper_;
    if (lo) lo->closed = false;
    if (hi) hi->closed = false;
    return make(lo, hi);
  }

  /// "(a, b]" style with exact endpoint strings; "{}" when empty.
  std::string str() const {
    if (empty_) return "{}";
    std::string s = lower_ ? (lower_->closed ? "[" : "(") + lower_->value.str() : "(-inf";
    s += ", ";
    s += upper_ ? upper_->value.str() + (upper_->closed ? "]" : ")") : "+inf)";
    return s;
  }

  friend bool operator==(const AlgebraicInterval& a, const AlgebraicInterval& b) {
    if (a.empty_ || b.empty_) return a.empty_ == b.empty_;
    auto same = [](const std::optional<Endpoint>& x, const std::optional<Endpoint>& y) {
      if (!x || !y) return !x && !y;
      return x->closed == y->closed && x->value == y->value;
    };
    return same(a.lower_, b.lower_) && same(a.upper_, b.upper_);
  }

 private:
  bool empty_;
  std::optional<Endpoint> lower_, upper_;
};

inline std::ostream& operator<<(std::ostream& os, const AlgebraicInterval& i) { return os << i.str(); }

inline AlgebraicInterval intersect(const AlgebraicInterval& a, const AlgebraicInterval& b) {
  if (a.is_empty() || b.is_empty()) return AlgebraicInterval::empty();
  auto tighter = [](const std::optional<Endpoint>& x, const std::optional<Endpoint>& y, bool is_lower) {
    if (!x) return y;
    if (!y) return x;
    auto o = x->value <=> y->value;
    if (o == 0) return std::optional<Endpoint>(Endpoint{x->value, x->closed && y->closed});
    bool x_tighter = is_lower ? o > 0 : o < 0;
    return x_tighter ? x : y;
  };
  return AlgebraicInterval::make(tighter(a.lower(), b.lower(), true), tighter(a.upper(), b.upper(), false));
}

/// Sorted, disjoint, non-adjacent union of the given intervals.
inline std::vector<AlgebraicInterval> unite(std::vector<AlgebraicInterval> parts) {
  std::erase_if(parts, [](const AlgebraicInterval& i) { return i.is_empty(); });
  auto lower_less = [](const AlgebraicInterval& a, const AlgebraicInterval& b) {
    if (!b.lower()) return false;
    if (!a.lower()) return true;
    auto o = a.lower()->value <=> b.lower()->value;
    if (o != 0) return o < 0;
    return a.lower()->closed && !b.lower()->closed;
  };
  std::sort(parts.begin(), parts.end(), lower_less);
  std::vector<AlgebraicInterval> out;
  for (auto& p : parts) {
    if (!out.empty()) {
      const auto& last = out.back();
      // Merge when p starts before last ends, or they touch with one side closed.
      bool joins = !last.upper() || !p.lower();
      if (!joins) {
        auto o = p.lower()->value <=> last.upper()->value;
        joins = o < 0 || (o == 0 && (p.lower()->closed || last.upper()->closed));
      }
      if (joins) {
        std::optional<Endpoint> hi = last.upper();
        if (hi) {
          if (!p.upper()) hi.reset();
          else {
            auto o = p.upper()->value <=> hi->value;
            if (o > 0) hi = p.upper();
            else if (o == 0) hi->closed = hi->closed || p.upper()->closed;
          }
        }
        out.back() = AlgebraicInterval::make(last.lower(), hi);
        continue;
      }
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline bool contains(const std::vector<AlgebraicInterval>& set, const AlgebraicReal& x) {
  return std::any_of(set.begin(), set.end(), [&](const AlgebraicInterval& i) { return i.contains(x); });
}

enum class Relation { Greater, GreaterEqual, Less, LessEqual };

inline std::string to_string(Relation r) {
  switch (r) {
    case Relation::Greater: return ">";
    case Relation::GreaterEqual: return ">=";
    case Relation::Less: return "<";
    case Relation::LessEqual: return "<=";
  }
  return "?";
}

inline Relation parse_relation(std::string_view s) {
  if (s == ">") return Relation::Greater;
  if (s == ">=") return Relation::GreaterEqual;
  if (s == "<") return Relation::Less;
  if (s == "<=") return Relation::LessEqual;
  throw std::invalid_argument("unknown relation '" + std::string(s) + "'");
}

inline bool holds(Relation r, int sign) {
  switch (r) {
    case Relation::Greater: return sign > 0;
    case Relation::GreaterEqual: return sign >= 0;
    case Relation::Less: return sign < 0;
    case Relation::LessEqual: return sign <= 0;
  }
  return false;
}

/// Same truth set as (rel), mirrored: p rel 0  <=>  -p flip(rel) 0.
inline Relation flipped(Relation r) {
  switch (r) {
    case Relation::Greater: return Relation::Less;
    case Relation::GreaterEqual: return Relation::LessEqual;
    case Relation::Less: return Relation::Greater;
    case Relation::LessEqual: return Relation::GreaterEqual;
  }
  return r;
}

/// The constraint "poly rel 0".
struct Constraint {
  RatPoly poly;
  Relation rel = Relation::Greater;

  bool satisfied_at(const AlgebraicReal& x) const { return holds(rel, sign_at(poly, x)); }
  std::string str() const { return poly.str() + " " + to_string(rel) + " 0"; }
};

/**
 * Exact solution set of a conjunction of polynomial sign conditions inside
 * `domain`, as an increasing list of disjoint intervals.
 *
 * Cylindrical decomposition in one variable: the roots of every constraint
 * and the domain endpoints cut the line into points and open cells, each
 * cell is decided at one exact sample, and runs of true cells are merged.
 */
inline std::vector<AlgebraicInterval> solve_sign_system(const std::vector<Constraint>& constraints,
                                                        const AlgebraicInterval& domain = AlgebraicInterval::real_line()) {
  for (const auto& c : constraints)
    if (c.poly.degree() > kMaxSolverDegree)
      throw unsupported_degree("solve_sign_system: constraint " + c.str() + " has degree " +
                               std::to_string(c.poly.degree()));
  if (domain.is_empty()) return {};

  std::vector<AlgebraicReal> cuts;
  for (const auto& c : constraints)
    if (c.poly.degree() > 0)
      for (auto& r : isolate_roots(c.poly)) cuts.push_back(std::move(r.value));
  if (domain.lower()) cuts.push_back(domain.lower()->value);
  if (domain.upper()) cuts.push_back(domain.upper()->value);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  auto all_hold = [&](const AlgebraicReal& x) {
    return std::all_of(constraints.begin(), constraints.end(), [&](const Constraint& c) { return c.satisfied_at(x); });
  };

  // Cells in order: open(-inf, c0), {c0}, open(c0, c1), ..., {ck}, open(ck, inf).
  struct Cell {
    bool is_point;
    std::size_t index;  // point: cuts[index]; open cell: between cuts[index-1] and cuts[index]
    bool truth;
  };
  std::vector<Cell> cells;
  const std::size_t k = cuts.size();
  for (std::size_t i = 0; i <= k; ++i) {
    AlgebraicReal sample;
    if (k == 0) sample = AlgebraicReal(0);
    else if (i == 0) sample = rational_below(cuts[0]);
    else if (i == k) sample = rational_above(cuts[k - 1]);
    else sample = rational_between(cuts[i - 1], cuts[i]);
    cells.push_back({false, i, domain.contains(sample) && all_hold(sample)});
    if (i < k) cells.push_back({true, i, domain.contains(cuts[i]) && all_hold(cuts[i])});
  }

  std::vector<AlgebraicInterval> out;
  for (std::size_t i = 0; i < cells.size();) {
    if (!cells[i].truth) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < cells.size() && cells[j + 1].truth) ++j;
    std::optional<Endpoint> lo, hi;
    const Cell& first = cells[i];
    const Cell& last = cells[j];
    if (first.is_point) lo = Endpoint{cuts[first.index], true};
    else if (first.index > 0) lo = Endpoint{cuts[first.index - 1], false};
    if (last.is_point) hi = Endpoint{cuts[last.index], true};
    else if (last.index < k) hi = Endpoint{cuts[last.index], false};
    out.push_back(AlgebraicInterval::make(lo, hi));
    i = j + 1;
  }
  return out;
}

}  // namespace kstab
