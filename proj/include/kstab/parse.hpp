/**
 * @file parse.hpp
 * @brief Text grammar for divisor classes and one-parameter families.
 *
 *   expr  := term (('+' | '-') term)*      with an optional leading sign
 *   term  := [coeff ['*']] [param ['*']] symbol | '...'
 *   coeff := integer | integer '/' integer | decimal
 *   symbol:= 'H' | 'E' k                  (1 <= k <= r)
 *
 * "E1 - ... - E7" expands to every index in between with the same coefficient.
 */
#pragma once

#include "kstab/picard.hpp"

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kstab {

class parse_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

namespace detail {

struct ParsedTerm {
  Rational coeff;
  bool parametric = false;
  int index = 0;  // 0 for H, k for E_k, -1 for an ellipsis
};

class DivisorLexer {
 public:
  DivisorLexer(std::string_view text, int r, std::optional<std::string> param)
      : text_(text), r_(r), param_(std::move(param)) {}

  std::vector<ParsedTerm> terms() {
    std::vector<ParsedTerm> out;
    skip();
    if (pos_ == text_.size()) fail("empty divisor expression");
    bool first = true;
    while (pos_ < text_.size()) {
      Rational sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      ParsedTerm t = term();
      t.coeff *= sign;
      out.push_back(t);
      skip();
    }
    return expand(out);
  }

 private:
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw parse_error(msg + " at position " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }
  bool digit() const { return std::isdigit(static_cast<unsigned char>(peek())) != 0; }

  ParsedTerm term() {
    ParsedTerm t;
    t.coeff = 1;
    if (text_.substr(pos_, 3) == "...") {
      pos_ += 3;
      t.index = -1;
      return t;
    }
    if (digit() || peek() == '.') {
      std::size_t start = pos_;
      while (digit() || peek() == '.') ++pos_;
      if (peek() == '/') {
        ++pos_;
        if (!digit()) fail("malformed rational");
        while (digit()) ++pos_;
      }
      try {
        t.coeff = parse_rational(text_.substr(start, pos_ - start));
      } catch (const std::invalid_argument& e) {
        fail(std::string("malformed rational: ") + e.what());
      }
      skip();
      // A bare 0 is the printed form of the zero class.
      if (t.coeff == 0 && (peek() == '\0' || peek() == '+' || peek() == '-')) return t;
      if (peek() == '*') {
        ++pos_;
        skip();
      }
    }
    if (param_ && text_.substr(pos_, param_->size()) == *param_) {
      std::size_t after = pos_ + param_->size();
      char next = after < text_.size() ? text_[after] : '\0';
      if (!std::islower(static_cast<unsigned char>(next))) {
        pos_ = after;
        t.parametric = true;
        skip();
        if (peek() == '*') {
          ++pos_;
          skip();
        }
      }
    }
    if (peek() == 'H') {
      ++pos_;
      t.index = 0;
    } else if (peek() == 'E') {
      ++pos_;
      if (!digit()) fail("expected an index after 'E'");
      std::size_t start = pos_;
      while (digit()) ++pos_;
      auto idx = std::string(text_.substr(start, pos_ - start));
      if (idx.size() > 3) fail("exceptional index out of range");
      t.index = std::stoi(idx);
      if (t.index < 1 || t.index > r_)
        fail("E" + idx + " does not exist on Bl_" + std::to_string(r_) + " P^2 (need 1 <= k <= " + std::to_string(r_) + ")");
    } else {
      std::size_t start = pos_;
      while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != '+' &&
             text_[pos_] != '-')
        ++pos_;
      std::string sym(text_.substr(start, pos_ - start));
      pos_ = start;
      if (sym.empty() && pos_ < text_.size()) sym = std::string(1, text_[pos_]);
      fail("unknown symbol '" + (sym.empty() ? std::string("<end>") : sym) + "'");
    }
    if (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') fail("unknown symbol");
    return t;
  }

  std::vector<ParsedTerm> expand(const std::vector<ParsedTerm>& in) const {
    std::vector<ParsedTerm> out;
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (in[i].index != -1) {
        out.push_back(in[i]);
        continue;
      }
      if (i == 0 || i + 1 >= in.size() || in[i - 1].index < 1 || in[i + 1].index <= in[i - 1].index)
        throw parse_error("'...' must sit between E_a and E_b with a < b in '" + std::string(text_) + "'");
      const ParsedTerm& a = in[i - 1];
      const ParsedTerm& b = in[i + 1];
      if (a.coeff != b.coeff || a.parametric != b.parametric || in[i].coeff != Rational(a.coeff.sign()))
        throw parse_error("'...' needs matching terms and signs on both sides in '" + std::string(text_) + "'");
      for (int k = a.index + 1; k < b.index; ++k) out.push_back({a.coeff, a.parametric, k});
    }
    return out;
  }

  std::string_view text_;
  int r_;
  std::optional<std::string> param_;
  std::size_t pos_ = 0;
};

inline void accumulate(DivisorClass& d, const ParsedTerm& t) {
  if (t.index == 0) d = d + t.coeff * DivisorClass::hyperplane(d.r());
  else d = d + t.coeff * DivisorClass::exceptional(d.r(), t.index);
}

}  // namespace detail

/// Exact class of a signed sum such as "3H - E1 - E2 - 4/3 E8".
inline DivisorClass parse_divisor(std::string_view expr, int r) {
  if (r < 0 || r > kMaxBlownUpPoints) throw std::invalid_argument("r must be in 0..8");
  DivisorClass d(r);
  for (const auto& t : detail::DivisorLexer(expr, r, std::nullopt).terms()) detail::accumulate(d, t);
  return d;
}

/// Splits "3H - E1 - ... - E7 - t*E8" into (base, direction) with L_t = base + t*direction.
inline std::pair<DivisorClass, DivisorClass> parse_family(std::string_view expr, int r, const std::string& param = "t") {
  if (r < 0 || r > kMaxBlownUpPoints) throw std::invalid_argument("r must be in 0..8");
  if (param.empty() || param == "H" || param == "E") throw std::invalid_argument("invalid parameter name '" + param + "'");
  DivisorClass base(r), dir(r);
  for (const auto& t : detail::DivisorLexer(expr, r, param).terms()) detail::accumulate(t.parametric ? dir : base, t);
  return {base, dir};
}

}  // namespace kstab
