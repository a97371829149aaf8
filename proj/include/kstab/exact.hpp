/**
 * @file exact.hpp
 * @brief Exact scalars: arbitrary precision rationals and elements a + b*sqrt(d)
 *        of real quadratic fields.
 *
 * Nothing in here touches floating point except approx(), which is for display.
 */
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cmath>
#include <compare>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace kstab {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::cpp_int_backend<>, mp::et_off>;
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

/// Thrown when a polynomial exceeds the degree the exact kernel handles.
class unsupported_degree : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline std::string to_string(const Rational& q) { return q.str(); }

inline Integer floor(const Rational& q) {
  Integer n = numerator(q), d = denominator(q);
  Integer f = n / d;  // truncates toward zero
  if (n.sign() < 0 && f * d != n) f -= 1;
  return f;
}

inline Integer ceil(const Rational& q) { return -floor(-q); }

inline Rational abs(const Rational& q) { return q.sign() < 0 ? Rational(-q) : q; }

/// Parses "7", "-4/3", "+2", "1.25". Throws std::invalid_argument on anything else.
inline Rational parse_rational(std::string_view text) {
  auto trim = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  std::string_view s = trim(text);
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("malformed rational '" + std::string(text) + "'");
  };
  if (s.empty()) return fail();
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  auto digits = [](std::string_view d) {
    if (d.empty()) return false;
    for (char c : d)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  Rational value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = trim(s.substr(0, slash)), den = trim(s.substr(slash + 1));
    if (!digits(num) || !digits(den)) return fail();
    Integer d{std::string(den)};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
    value = Rational(Integer{std::string(num)}, d);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    auto whole = s.substr(0, dot), frac = s.substr(dot + 1);
    if ((!whole.empty() && !digits(whole)) || (!frac.empty() && !digits(frac)) ||
        (whole.empty() && frac.empty()))
      return fail();
    Integer scale = mp::pow(Integer(10), static_cast<unsigned>(frac.size()));
    Integer w = whole.empty() ? Integer(0) : Integer(std::string(whole));
    Integer f = frac.empty() ? Integer(0) : Integer(std::string(frac));
    value = Rational(w * scale + f, scale);
  } else {
    if (!digits(s)) return fail();
    value = Rational(Integer(std::string(s)));
  }
  return negative ? Rational(-value) : value;
}

/// Writes n = k^2 * m with m square-free; n must be positive.
inline std::pair<Integer, Integer> split_square(Integer n) {
  if (n.sign() <= 0) throw std::domain_error("split_square: non-positive argument");
  Integer k = 1, m = 1;
  for (Integer p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    for (int i = 0; i < e / 2; ++i) k *= p;
    if (e % 2) m *= p;
  }
  m *= n;
  return {k, m};
}

/**
 * An exact real number: either a rational, or a + b*sqrt(d) with d >= 2
 * square-free and b != 0.
 *
 * Arithmetic is closed inside one quadratic field; combining sqrt(d1) with
 * sqrt(d2) for d1 != d2 throws std::domain_error. Ordering works across fields.
 */
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(Rational q) : a_(std::move(q)) {}  // NOLINT(google-explicit-constructor)
  ExactScalar(int v) : a_(v) {}                  // NOLINT(google-explicit-constructor)

  static ExactScalar quadratic(Rational a, Rational b, const Integer& d) {
    if (b.sign() == 0 || d == 0) return ExactScalar(std::move(a));
    if (d.sign() < 0) throw std::domain_error("negative radicand: only real quadratic fields are supported");
    auto [k, m] = split_square(d);
    ExactScalar x;
    x.a_ = std::move(a);
    if (m == 1) {
      x.a_ += b * Rational(k);
      return x;
    }
    x.b_ = b * Rational(k);
    x.d_ = m;
    return x;
  }

  /// sqrt(q) for q >= 0.
  static ExactScalar sqrt(const Rational& q) {
    if (q.sign() < 0) throw std::domain_error("square root of a negative rational");
    if (q.sign() == 0) return ExactScalar();
    Integer n = numerator(q), d = denominator(q);
    return quadratic(Rational(0), Rational(Integer(1), d), n * d);
  }

  bool is_rational() const { return d_ == 0; }
  const Rational& rational_part() const { return a_; }
  const Rational& surd_coefficient() const { return b_; }
  const Integer& radicand() const { return d_; }

  const Rational& as_rational() const {
    if (!is_rational()) throw std::domain_error("value " + str() + " is irrational");
    return a_;
  }

  int sign() const {
    int sa = a_.sign(), sb = b_.sign();
    if (sb == 0) return sa;
    if (sa == 0 || sa == sb) return sb;
    Rational diff = a_ * a_ - b_ * b_ * Rational(d_);
    return diff.sign() > 0 ? sa : sb;
  }

  double approx() const {
    double v = a_.convert_to<double>();
    if (!is_rational()) v += b_.convert_to<double>() * std::sqrt(d_.convert_to<double>());
    return v;
  }

  ExactScalar operator-() const {
    ExactScalar x = *this;
    x.a_ = -x.a_;
    x.b_ = -x.b_;
    return x;
  }

  friend ExactScalar operator+(const ExactScalar& x, const ExactScalar& y) {
    Integer d = common_field(x, y);
    return quadratic(x.a_ + y.a_, x.b_ + y.b_, d);
  }
  friend ExactScalar operator-(const ExactScalar& x, const ExactScalar& y) { return x + (-y); }
  friend ExactScalar operator*(const ExactScalar& x, const ExactScalar& y) {
    Integer d = common_field(x, y);
    Rational rd(d);
    return quadratic(x.a_ * y.a_ + x.b_ * y.b_ * rd, x.a_ * y.b_ + x.b_ * y.a_, d);
  }
  ExactScalar inverse() const {
    if (sign() == 0) throw std::domain_error("division by zero");
    if (is_rational()) return ExactScalar(Rational(1) / a_);
    Rational norm = a_ * a_ - b_ * b_ * Rational(d_);
    return quadratic(a_ / norm, -b_ / norm, d_);
  }
  friend ExactScalar operator/(const ExactScalar& x, const ExactScalar& y) { return x * y.inverse(); }

  ExactScalar& operator+=(const ExactScalar& y) { return *this = *this + y; }
  ExactScalar& operator-=(const ExactScalar& y) { return *this = *this - y; }
  ExactScalar& operator*=(const ExactScalar& y) { return *this = *this * y; }
  ExactScalar& operator/=(const ExactScalar& y) { return *this = *this / y; }

  friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
    return x.a_ == y.a_ && x.b_ == y.b_ && x.d_ == y.d_;
  }
  friend std::strong_ordering operator<=>(const ExactScalar& x, const ExactScalar& y) {
    int s = difference_sign(x, y);
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  /// Display form, e.g. "4/3", "(10-sqrt(10))/9", "sqrt(10)-2".
  std::string str() const {
    if (is_rational()) return a_.str();
    Integer den = mp::lcm(denominator(a_), denominator(b_));
    Integer A = numerator(a_) * (den / denominator(a_));
    Integer B = numerator(b_) * (den / denominator(b_));
    std::string surd;
    Integer absB = B.sign() < 0 ? Integer(-B) : B;
    if (absB != 1) surd = absB.str() + "*";
    surd += "sqrt(" + d_.str() + ")";
    std::string inner;
    if (A == 0) {
      inner = (B.sign() < 0 ? "-" : "") + surd;
    } else if (A.sign() < 0 && B.sign() > 0) {
      inner = surd + A.str();
    } else {
      inner = A.str() + (B.sign() < 0 ? "-" : "+") + surd;
    }
    if (den == 1) return inner;
    if (A == 0) return inner + "/" + den.str();
    return "(" + inner + ")/" + den.str();
  }

 private:
  static Integer common_field(const ExactScalar& x, const ExactScalar& y) {
    if (x.is_rational()) return y.d_;
    if (y.is_rational() || x.d_ == y.d_) return x.d_;
    throw std::domain_error("arithmetic mixing sqrt(" + x.d_.str() + ") and sqrt(" + y.d_.str() +
                            ") is not supported");
  }

  // sign(x - y), valid across different quadratic fields.
  static int difference_sign(const ExactScalar& x, const ExactScalar& y) {
    if (x.is_rational() || y.is_rational() || x.d_ == y.d_) return (x - y).sign();
    // x - y = P - Q with P = (a1 - a2) + b1*sqrt(d1) and Q = b2*sqrt(d2).
    ExactScalar p = quadratic(x.a_ - y.a_, x.b_, x.d_);
    int sp = p.sign(), sq = y.b_.sign();
    if (sp != sq) return sp == 0 ? -sq : sp;
    ExactScalar squares = p * p - ExactScalar(y.b_ * y.b_ * Rational(y.d_));
    return sp * squares.sign();
  }

  Rational a_{0};
  Rational b_{0};
  Integer d_{0};
};

inline std::strong_ordering scalar_cmp(const ExactScalar& x, const ExactScalar& y) { return x <=> y; }

inline std::ostream& operator<<(std::ostream& os, const ExactScalar& x) { return os << x.str(); }

namespace detail {

// Recursive-descent evaluator for the display grammar:
//   expr := term (('+'|'-') term)*
//   term := unary (('*'|'/') unary)*
//   unary := ('-'|'+') unary | atom
//   atom := number | 'sqrt' '(' expr ')' | '(' expr ')'
class ScalarParser {
 public:
  explicit ScalarParser(std::string_view s) : s_(s) {}

  ExactScalar parse() {
    ExactScalar v = expr();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    throw std::invalid_argument("cannot parse exact scalar '" + std::string(s_) + "': " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  ExactScalar expr() {
    ExactScalar v = term();
    for (;;) {
      if (accept('+')) v += term();
      else if (accept('-')) v -= term();
      else return v;
    }
  }
  ExactScalar term() {
    ExactScalar v = unary();
    for (;;) {
      if (accept('*')) v *= unary();
      else if (accept('/')) v /= unary();
      else return v;
    }
  }
  ExactScalar unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return atom();
  }
  ExactScalar atom() {
    skip();
    if (accept('(')) {
      ExactScalar v = expr();
      if (!accept(')')) error("missing ')'");
      return v;
    }
    if (s_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      if (!accept('(')) error("expected '(' after sqrt");
      ExactScalar v = expr();
      if (!accept(')')) error("missing ')'");
      return ExactScalar::sqrt(v.as_rational());
    }
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (start == pos_) error(pos_ < s_.size() ? "unexpected '" + std::string(1, s_[pos_]) + "'" : "unexpected end");
    return ExactScalar(parse_rational(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Inverse of ExactScalar::str(); also accepts any +,-,*,/ expression over
/// rationals and square roots of rationals that stays inside one field.
inline ExactScalar parse_scalar(std::string_view text) { return detail::ScalarParser(text).parse(); }

}  // namespace kstab
