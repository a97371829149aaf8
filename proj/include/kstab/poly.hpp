/**
 * @file poly.hpp
 * @brief Univariate rational polynomials, Sturm sequences and exact real root isolation.
 */
#pragma once

#include "kstab/exact.hpp"

#include <algorithm>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kstab {

/// Largest degree accepted by isolate_roots and solve_sign_system.
inline constexpr int kMaxSolverDegree = 4;

/// Polynomial with rational coefficients, stored in ascending order and trimmed.
class RatPoly {
 public:
  RatPoly() = default;
  explicit RatPoly(std::vector<Rational> ascending, std::string var = "t")
      : c_(std::move(ascending)), var_(std::move(var)) {
    trim();
  }

  static RatPoly constant(Rational c, std::string var = "t") { return RatPoly({std::move(c)}, std::move(var)); }
  static RatPoly linear(Rational c0, Rational c1, std::string var = "t") {
    return RatPoly({std::move(c0), std::move(c1)}, std::move(var));
  }
  static RatPoly quadratic(Rational c0, Rational c1, Rational c2, std::string var = "t") {
    return RatPoly({std::move(c0), std::move(c1), std::move(c2)}, std::move(var));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rational>& coefficients() const { return c_; }
  Rational coeff(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }
  const Rational& leading() const {
    if (c_.empty()) throw std::domain_error("zero polynomial has no leading coefficient");
    return c_.back();
  }
  const std::string& var() const { return var_; }
  RatPoly with_var(std::string v) const {
    RatPoly p = *this;
    p.var_ = std::move(v);
    return p;
  }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  ExactScalar operator()(const ExactScalar& x) const {
    ExactScalar acc;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + ExactScalar(*it);
    return acc;
  }

  RatPoly derivative() const {
    std::vector<Rational> d;
    for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long long>(i)));
    return RatPoly(std::move(d), var_);
  }

  RatPoly monic() const {
    if (is_zero()) return *this;
    RatPoly p = *this;
    Rational lc = leading();
    for (auto& c : p.c_) c /= lc;
    return p;
  }

  /// Integer coefficients with content 1 and positive leading coefficient.
  RatPoly primitive() const {
    if (is_zero()) return *this;
    Integer l = 1;
    for (const auto& c : c_) l = mp::lcm(l, denominator(c));
    Integer g = 0;
    for (const auto& c : c_) g = mp::gcd(g, numerator(c * Rational(l)));
    RatPoly p = *this;
    Rational scale(l, g);
    if (leading().sign() < 0) scale = -scale;
    for (auto& c : p.c_) c *= scale;
    return p;
  }

  RatPoly operator-() const {
    RatPoly p = *this;
    for (auto& c : p.c_) c = -c;
    return p;
  }
  friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
    std::vector<Rational> c(std::max(a.c_.size(), b.c_.size()));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
    return RatPoly(std::move(c), pick_var(a, b));
  }
  friend RatPoly operator-(const RatPoly& a, const RatPoly& b) { return a + (-b); }
  friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
    if (a.is_zero() || b.is_zero()) return RatPoly({}, pick_var(a, b));
    std::vector<Rational> c(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return RatPoly(std::move(c), pick_var(a, b));
  }
  friend RatPoly operator*(const Rational& s, const RatPoly& p) { return RatPoly::constant(s, p.var_) * p; }

  friend bool operator==(const RatPoly& a, const RatPoly& b) { return a.c_ == b.c_; }

  /// Euclidean division over Q; throws on a zero divisor.
  friend std::pair<RatPoly, RatPoly> divmod(const RatPoly& num, const RatPoly& den) {
    if (den.is_zero()) throw std::domain_error("polynomial division by zero");
    std::vector<Rational> r = num.c_;
    int dn = den.degree();
    std::vector<Rational> q(std::max(0, num.degree() - dn + 1));
    for (int i = num.degree(); i >= dn; --i) {
      Rational f = r[i] / den.leading();
      q[i - dn] = f;
      for (int j = 0; j <= dn; ++j) r[i - dn + j] -= f * den.c_[j];
    }
    return {RatPoly(std::move(q), num.var_), RatPoly(std::move(r), num.var_)};
  }

  /// Monic gcd; gcd(0, 0) is the zero polynomial.
  friend RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
      RatPoly r = divmod(a, b).second;
      a = std::move(b);
      b = std::move(r);
    }
    return a.monic();
  }

  /// Ascending display such as "6 - 4t - t^2" or "2 + (1/3)t".
  std::string str() const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      const Rational& c = c_[i];
      if (c.sign() == 0) continue;
      Rational m = abs(c);
      if (first) out += c.sign() < 0 ? "-" : "";
      else out += c.sign() < 0 ? " - " : " + ";
      first = false;
      std::string mono = i == 0 ? "" : (i == 1 ? var_ : var_ + "^" + std::to_string(i));
      if (i == 0) out += m.str();
      else if (m == 1) out += mono;
      else if (denominator(m) == 1) out += m.str() + mono;
      else out += "(" + m.str() + ")" + mono;
    }
    return out;
  }

 private:
  static const std::string& pick_var(const RatPoly& a, const RatPoly& b) {
    return a.degree() <= 0 && b.degree() > 0 ? b.var_ : a.var_;
  }
  void trim() {
    while (!c_.empty() && c_.back().sign() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
  std::string var_ = "t";
};

inline std::ostream& operator<<(std::ostream& os, const RatPoly& p) { return os << p.str(); }

/// p / gcd(p, p').
inline RatPoly square_free_part(const RatPoly& p) {
  if (p.degree() <= 0) return p;
  return divmod(p, gcd(p, p.derivative())).first;
}

// Yun's algorithm: p = c * prod f_i^i with the f_i square-free and pairwise coprime.
inline std::vector<std::pair<RatPoly, int>> square_free_decomposition(const RatPoly& p) {
  std::vector<std::pair<RatPoly, int>> out;
  if (p.degree() <= 0) return out;
  RatPoly dp = p.derivative();
  RatPoly a = gcd(p, dp);
  RatPoly b = divmod(p, a).first;
  RatPoly c = divmod(dp, a).first;
  RatPoly d = c - b.derivative();
  for (int i = 1; b.degree() > 0; ++i) {
    RatPoly f = gcd(b, d);
    b = divmod(b, f).first;
    c = divmod(d, f).first;
    d = c - b.derivative();
    if (f.degree() > 0) out.emplace_back(f, i);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sturm sequences

inline std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
  std::vector<RatPoly> seq{p};
  RatPoly next = p.derivative();
  while (!next.is_zero()) {
    seq.push_back(next);
    next = -divmod(seq[seq.size() - 2], seq.back()).second;
  }
  return seq;
}

inline int sign_variations(const std::vector<RatPoly>& seq, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& q : seq) {
    int s = q(x).sign();
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

inline int sign_variations_at_infinity(const std::vector<RatPoly>& seq, bool positive) {
  int count = 0, last = 0;
  for (const auto& q : seq) {
    if (q.is_zero()) continue;
    int s = q.leading().sign();
    if (!positive && q.degree() % 2) s = -s;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

/// Number of distinct real roots of p in (lo, hi].
inline int count_roots(const RatPoly& p, const Rational& lo, const Rational& hi) {
  if (p.is_zero()) throw std::invalid_argument("count_roots: zero polynomial");
  if (p.degree() == 0 || hi <= lo) return 0;
  auto seq = sturm_sequence(square_free_part(p));
  return sign_variations(seq, lo) - sign_variations(seq, hi);
}

inline int count_real_roots(const RatPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("count_real_roots: zero polynomial");
  if (p.degree() == 0) return 0;
  auto seq = sturm_sequence(square_free_part(p));
  return sign_variations_at_infinity(seq, false) - sign_variations_at_infinity(seq, true);
}

/// Cauchy bound: every real root has absolute value strictly below it.
inline Rational root_bound(const RatPoly& p) {
  Rational m = 0;
  for (int i = 0; i < p.degree(); ++i) m = std::max(m, abs(p.coeff(i) / p.leading()));
  return m + 1;
}

namespace detail {

inline std::vector<Integer> positive_divisors(Integer n) {
  if (n.sign() < 0) n = -n;
  std::vector<Integer> small, large;
  for (Integer k = 1; k * k <= n; ++k) {
    if (n % k != 0) continue;
    small.push_back(k);
    if (k * k != n) large.push_back(n / k);
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace detail

/// Distinct rational roots, increasing.
inline std::vector<Rational> rational_roots(const RatPoly& p) {
  std::vector<Rational> roots;
  if (p.degree() <= 0) return roots;
  RatPoly q = p.primitive();
  if (q.coeff(0) == 0) {
    roots.emplace_back(0);
    std::size_t k = 0;
    while (q.coeff(k) == 0) ++k;
    q = RatPoly(std::vector<Rational>(q.coefficients().begin() + static_cast<long>(k), q.coefficients().end()), q.var());
  }
  if (q.degree() > 0) {
    auto ps = detail::positive_divisors(numerator(q.coeff(0)));
    auto qs = detail::positive_divisors(numerator(q.leading()));
    for (const auto& a : ps)
      for (const auto& b : qs)
        for (int s : {1, -1}) {
          Rational cand(Integer(s) * a, b);
          if (q(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end()) roots.push_back(cand);
        }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---------------------------------------------------------------------------
// Real algebraic numbers

/**
 * A real root of a square-free polynomial with no rational roots, pinned down
 * by an open rational interval that contains exactly that one root.
 */
class IsolatedRoot {
 public:
  IsolatedRoot(RatPoly poly, Rational lo, Rational hi) : poly_(std::move(poly)), lo_(std::move(lo)), hi_(std::move(hi)) {
    sturm_ = sturm_sequence(poly_);
    if (poly_(lo_) == 0 || poly_(hi_) == 0 || roots_in(lo_, hi_) != 1)
      throw std::invalid_argument("IsolatedRoot: interval does not isolate a single root of " + poly_.str());
  }

  const RatPoly& poly() const { return poly_; }
  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  /// Halves the isolating interval.
  void refine() {
    Rational mid = (lo_ + hi_) / 2;
    if (poly_(mid) == 0) mid = (lo_ + 2 * hi_) / 3;  // only one root inside, so this one is clear
    if (roots_in(lo_, mid) == 1) hi_ = mid;
    else lo_ = mid;
  }

  double approx() const {
    IsolatedRoot r = *this;
    while ((r.hi_ - r.lo_) > Rational(1, 1LL << 50)) r.refine();
    return ((r.lo_ + r.hi_) / 2).convert_to<double>();
  }

 private:
  int roots_in(const Rational& a, const Rational& b) const { return sign_variations(sturm_, a) - sign_variations(sturm_, b); }

  RatPoly poly_;
  std::vector<RatPoly> sturm_;
  Rational lo_, hi_;
};

/// Either an ExactScalar or an isolated root of a cubic/quartic.
class AlgebraicReal {
 public:
  AlgebraicReal() : v_(ExactScalar()) {}
  AlgebraicReal(ExactScalar x) : v_(std::move(x)) {}           // NOLINT(google-explicit-constructor)
  AlgebraicReal(Rational q) : v_(ExactScalar(std::move(q))) {}  // NOLINT(google-explicit-constructor)
  AlgebraicReal(int v) : v_(ExactScalar(v)) {}                  // NOLINT(google-explicit-constructor)
  AlgebraicReal(IsolatedRoot r) : v_(std::move(r)) {}          // NOLINT(google-explicit-constructor)

  bool is_exact() const { return std::holds_alternative<ExactScalar>(v_); }
  bool is_rational() const { return is_exact() && exact().is_rational(); }
  const ExactScalar& exact() const { return std::get<ExactScalar>(v_); }
  const IsolatedRoot& isolated() const { return std::get<IsolatedRoot>(v_); }

  /// Rationals lo <= x <= hi with hi - lo <= width.
  std::pair<Rational, Rational> bracket(const Rational& width) const {
    if (!is_exact()) {
      IsolatedRoot r = isolated();
      while (r.hi() - r.lo() > width) r.refine();
      return {r.lo(), r.hi()};
    }
    const ExactScalar& x = exact();
    if (x.is_rational()) return {x.rational_part(), x.rational_part()};
    Rational b = abs(x.surd_coefficient());
    Integer scale = 1;
    while (b / Rational(scale) > width) scale *= 2;
    Integer s = mp::sqrt(x.radicand() * scale * scale);  // s <= scale*sqrt(d) < s + 1
    Rational lo = x.surd_coefficient() * Rational(s, scale);
    Rational hi = x.surd_coefficient() * Rational(s + 1, scale);
    if (lo > hi) std::swap(lo, hi);
    return {x.rational_part() + lo, x.rational_part() + hi};
  }

  double approx() const { return is_exact() ? exact().approx() : isolated().approx(); }

  std::string str() const {
    if (is_exact()) return exact().str();
    const auto& r = isolated();
    return "root of " + r.poly().str() + " in (" + r.lo().str() + ", " + r.hi().str() + ")";
  }

  friend std::strong_ordering operator<=>(const AlgebraicReal& x, const AlgebraicReal& y) {
    int s = compare_sign(x, y);
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }
  friend bool operator==(const AlgebraicReal& x, const AlgebraicReal& y) { return compare_sign(x, y) == 0; }

 private:
  // sign(r - y) for an isolated root against an exact value.
  static int compare_isolated(IsolatedRoot r, const ExactScalar& y) {
    if (r.poly()(y).sign() == 0 && y > ExactScalar(r.lo()) && y < ExactScalar(r.hi())) return 0;
    for (;;) {
      if (y <= ExactScalar(r.lo())) return 1;
      if (y >= ExactScalar(r.hi())) return -1;
      r.refine();
    }
  }

  static int compare_sign(const AlgebraicReal& x, const AlgebraicReal& y) {
    if (x.is_exact() && y.is_exact()) {
      auto o = x.exact() <=> y.exact();
      return o < 0 ? -1 : (o > 0 ? 1 : 0);
    }
    if (!x.is_exact() && y.is_exact()) return compare_isolated(x.isolated(), y.exact());
    if (x.is_exact()) return -compare_isolated(y.isolated(), x.exact());
    IsolatedRoot a = x.isolated(), b = y.isolated();
    RatPoly g = gcd(a.poly(), b.poly());
    if (g.degree() > 0) {
      Rational lo = std::max(a.lo(), b.lo()), hi = std::min(a.hi(), b.hi());
      // Each interval holds exactly one root of its polynomial, so a common
      // root inside the overlap is both numbers.
      if (lo < hi && count_roots(g, lo, hi) > 0) return 0;
    }
    for (;;) {
      if (a.hi() <= b.lo()) return -1;
      if (b.hi() <= a.lo()) return 1;
      a.refine();
      b.refine();
    }
  }

  std::variant<ExactScalar, IsolatedRoot> v_;
};

inline std::ostream& operator<<(std::ostream& os, const AlgebraicReal& x) { return os << x.str(); }

/// Exact sign of p at x.
inline int sign_at(const RatPoly& p, const AlgebraicReal& x) {
  if (p.is_zero()) return 0;
  if (x.is_exact()) return p(x.exact()).sign();
  IsolatedRoot r = x.isolated();
  RatPoly sq = square_free_part(p);
  RatPoly g = gcd(sq, r.poly());
  if (g.degree() > 0 && count_roots(g, r.lo(), r.hi()) > 0) return 0;
  for (;;) {
    if (sq(r.lo()) != 0 && count_roots(sq, r.lo(), r.hi()) == 0) return p(r.lo()).sign();
    r.refine();
  }
}

/// A rational strictly between a and b; requires a < b.
inline Rational rational_between(const AlgebraicReal& a, const AlgebraicReal& b) {
  if (!(a < b)) throw std::invalid_argument("rational_between: empty gap");
  Rational width = 1;
  for (;;) {
    auto [alo, ahi] = a.bracket(width);
    auto [blo, bhi] = b.bracket(width);
    if (ahi < blo) return (ahi + blo) / 2;
    width /= 4;
  }
}

inline Rational rational_below(const AlgebraicReal& a) { return Rational(floor(a.bracket(1).first) - 1); }
inline Rational rational_above(const AlgebraicReal& a) { return Rational(ceil(a.bracket(1).second) + 1); }

struct RealRoot {
  AlgebraicReal value;
  int multiplicity = 1;
};

/**
 * All real roots of p in increasing order with multiplicities. Linear and
 * quadratic factors give closed forms; whatever cubic or quartic factor is left
 * after removing rational roots comes back as an IsolatedRoot.
 */
inline std::vector<RealRoot> isolate_roots(const RatPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("isolate_roots: zero polynomial (indeterminate sign everywhere)");
  if (p.degree() > kMaxSolverDegree)
    throw unsupported_degree("isolate_roots: degree " + std::to_string(p.degree()) + " exceeds " +
                             std::to_string(kMaxSolverDegree));
  std::vector<RealRoot> roots;
  for (auto [factor, mult] : square_free_decomposition(p)) {
    RatPoly rest = factor;
    for (const auto& r : rational_roots(factor)) {
      roots.push_back({AlgebraicReal(r), mult});
      rest = divmod(rest, RatPoly::linear(-r, 1, rest.var())).first;
    }
    if (rest.degree() == 2) {
      RatPoly q = rest.primitive();
      Integer a = numerator(q.coeff(2)), b = numerator(q.coeff(1)), c = numerator(q.coeff(0));
      Integer disc = b * b - 4 * a * c;
      if (disc.sign() > 0) {
        for (int s : {-1, 1})
          roots.push_back({AlgebraicReal(ExactScalar::quadratic(Rational(-b, 2 * a), Rational(Integer(s), 2 * a), disc)), mult});
      }
    } else if (rest.degree() >= 3) {
      Rational bound = root_bound(rest);
      auto seq = sturm_sequence(rest);
      std::vector<std::pair<Rational, Rational>> work{{-bound, bound}};
      while (!work.empty()) {
        auto [lo, hi] = work.back();
        work.pop_back();
        int n = sign_variations(seq, lo) - sign_variations(seq, hi);
        if (n == 0) continue;
        if (n == 1) {
          roots.push_back({AlgebraicReal(IsolatedRoot(rest, lo, hi)), mult});
          continue;
        }
        Rational mid = (lo + hi) / 2;  // never a root: rest has no rational roots
        work.emplace_back(lo, mid);
        work.emplace_back(mid, hi);
      }
    }
  }
  std::sort(roots.begin(), roots.end(), [](const RealRoot& x, const RealRoot& y) { return x.value < y.value; });
  return roots;
}

}  // namespace kstab
