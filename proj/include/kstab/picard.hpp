/**
 * @file picard.hpp
 * @brief Picard lattice of the plane blown up in r <= 8 points: intersection
 *        form, canonical class, (-1)-curves and nef/ample tests.
 *
 * Basis {H, E1..Er} with H^2 = 1, Ei.Ej = -delta_ij, H.Ei = 0. A class is
 * stored as D = h*H - sum e_i*E_i, so e_i > 0 subtracts E_i.
 */
#pragma once

#include "kstab/exact.hpp"

#include <algorithm>
#include <compare>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace kstab {

inline constexpr int kMaxBlownUpPoints = 8;

class DivisorClass {
 public:
  DivisorClass() = default;
  explicit DivisorClass(int r) : e_(static_cast<std::size_t>(r)) {}
  DivisorClass(Rational h, std::vector<Rational> e) : h_(std::move(h)), e_(std::move(e)) {}

  static DivisorClass hyperplane(int r) { return DivisorClass(Rational(1), std::vector<Rational>(r)); }
  /// The class E_i (1-based).
  static DivisorClass exceptional(int r, int i) {
    if (i < 1 || i > r) throw std::invalid_argument("E" + std::to_string(i) + " does not exist for r = " + std::to_string(r));
    DivisorClass d(r);
    d.e_[i - 1] = -1;
    return d;
  }

  int r() const { return static_cast<int>(e_.size()); }
  const Rational& h() const { return h_; }
  const std::vector<Rational>& e() const { return e_; }
  /// Coefficient of E_i in the signed sum h*H + sum c_i*E_i (1-based), i.e. -e_i.
  Rational signed_coefficient(int i) const { return -e_.at(i - 1); }
  bool is_zero() const {
    return h_ == 0 && std::all_of(e_.begin(), e_.end(), [](const Rational& x) { return x == 0; });
  }

  DivisorClass operator-() const { return Rational(-1) * *this; }
  friend DivisorClass operator+(const DivisorClass& a, const DivisorClass& b) {
    check_same_r(a, b);
    DivisorClass d = a;
    d.h_ += b.h_;
    for (std::size_t i = 0; i < d.e_.size(); ++i) d.e_[i] += b.e_[i];
    return d;
  }
  friend DivisorClass operator-(const DivisorClass& a, const DivisorClass& b) { return a + (-b); }
  friend DivisorClass operator*(const Rational& s, const DivisorClass& a) {
    DivisorClass d = a;
    d.h_ *= s;
    for (auto& x : d.e_) x *= s;
    return d;
  }

  friend bool operator==(const DivisorClass&, const DivisorClass&) = default;
  /// Lexicographic on (h, e_1, ..., e_r); fixes the order of curve lists and witnesses.
  friend std::strong_ordering operator<=>(const DivisorClass& a, const DivisorClass& b) {
    if (auto o = cmp(a.h_, b.h_); o != 0) return o;
    return std::lexicographical_compare_three_way(a.e_.begin(), a.e_.end(), b.e_.begin(), b.e_.end(),
                                                  [](const Rational& x, const Rational& y) { return cmp(x, y); });
  }

  /// Signed-sum form, e.g. "3H - E1 - E2 - 4/3 E8".
  std::string str() const {
    std::string out;
    auto term = [&](const Rational& c, const std::string& sym) {
      if (c == 0) return;
      Rational m = abs(c);
      if (out.empty()) out += c.sign() < 0 ? "-" : "";
      else out += c.sign() < 0 ? " - " : " + ";
      if (m == 1) out += sym;
      else if (denominator(m) == 1) out += m.str() + sym;
      else out += m.str() + " " + sym;
    };
    term(h_, "H");
    for (int i = 1; i <= r(); ++i) term(signed_coefficient(i), "E" + std::to_string(i));
    return out.empty() ? "0" : out;
  }

  static void check_same_r(const DivisorClass& a, const DivisorClass& b) {
    if (a.r() != b.r())
      throw std::invalid_argument("divisor classes live on different surfaces (r = " + std::to_string(a.r()) +
                                  " vs " + std::to_string(b.r()) + ")");
  }

 private:
  static std::strong_ordering cmp(const Rational& x, const Rational& y) {
    return x < y ? std::strong_ordering::less : (y < x ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

  Rational h_{0};
  std::vector<Rational> e_;
};

inline std::ostream& operator<<(std::ostream& os, const DivisorClass& d) { return os << d.str(); }

/// h1*h2 - sum e1_i*e2_i.
inline Rational intersect(const DivisorClass& a, const DivisorClass& b) {
  DivisorClass::check_same_r(a, b);
  Rational s = a.h() * b.h();
  for (int i = 0; i < a.r(); ++i) s -= a.e()[i] * b.e()[i];
  return s;
}

inline DivisorClass canonical_class(int r) {
  return DivisorClass(Rational(-3), std::vector<Rational>(static_cast<std::size_t>(r), Rational(-1)));
}

/**
 * All (-1)-classes of Bl_r P^2, built from the seven classical families
 * (points; lines through 2; conics through 5; cubics through 7 double at one;
 * quartics through 8 double at 3; quintics through 8 double at 6; sextics
 * through 8 double at 7 and triple at one). Sorted lexicographically.
 */
inline std::vector<DivisorClass> enumerate_exceptional(int r) {
  if (r < 0 || r > kMaxBlownUpPoints)
    throw std::invalid_argument("number of blown-up points must be in 0..8, got " + std::to_string(r));
  struct Family {
    int degree;
    std::vector<int> multiplicities;  // non-zero point multiplicities
  };
  static const std::vector<Family> families = {
      {0, {-1}},
      {1, {1, 1}},
      {2, {1, 1, 1, 1, 1}},
      {3, {2, 1, 1, 1, 1, 1, 1}},
      {4, {2, 2, 2, 1, 1, 1, 1, 1}},
      {5, {2, 2, 2, 2, 2, 2, 1, 1}},
      {6, {3, 2, 2, 2, 2, 2, 2, 2}},
  };
  std::set<DivisorClass> found;
  for (const auto& f : families) {
    if (static_cast<int>(f.multiplicities.size()) > r) continue;
    std::vector<int> m = f.multiplicities;
    m.resize(static_cast<std::size_t>(r), 0);
    std::sort(m.begin(), m.end());
    do {
      std::vector<Rational> e;
      for (int x : m) e.emplace_back(x);
      found.insert(DivisorClass(Rational(f.degree), std::move(e)));
    } while (std::next_permutation(m.begin(), m.end()));
  }
  return {found.begin(), found.end()};
}

/**
 * Bl_r P^2 with declared genericity flags. Caches are built eagerly and
 * shared between copies.
 *
 * The nef test set is the (-1)-curves for r >= 2; r = 1 adds H - E1 and
 * r = 0 uses {H}, since those surfaces have extremal rays with C^2 >= 0.
 */
class SurfaceModel {
 public:
  explicit SurfaceModel(int r, bool general_position = true, bool no_cuspidal_anticanonical = true)
      : data_(std::make_shared<Data>()) {
    if (r < 0 || r > kMaxBlownUpPoints)
      throw std::invalid_argument("number of blown-up points must be in 0..8, got " + std::to_string(r));
    data_->r = r;
    data_->general_position = general_position;
    data_->no_cuspidal_anticanonical = no_cuspidal_anticanonical;
    data_->canonical = canonical_class(r);
    data_->exceptional = enumerate_exceptional(r);
    if (r == 0) data_->extra_extremal = {DivisorClass::hyperplane(0)};
    if (r == 1) data_->extra_extremal = {DivisorClass::hyperplane(1) - DivisorClass::exceptional(1, 1)};
    data_->test_set = data_->exceptional;
    data_->test_set.insert(data_->test_set.end(), data_->extra_extremal.begin(), data_->extra_extremal.end());
    std::sort(data_->test_set.begin(), data_->test_set.end());
  }

  /// The general del Pezzo surface of the given degree 1..9 (r = 9 - degree).
  static SurfaceModel del_pezzo(int degree) {
    if (degree < 1 || degree > 9) throw std::invalid_argument("del Pezzo degree must be in 1..9");
    return SurfaceModel(9 - degree, true, true);
  }

  int r() const { return data_->r; }
  bool general_position() const { return data_->general_position; }
  bool no_cuspidal_anticanonical() const { return data_->no_cuspidal_anticanonical; }
  const DivisorClass& canonical() const { return data_->canonical; }
  DivisorClass anticanonical() const { return -data_->canonical; }
  const std::vector<DivisorClass>& exceptional_curves() const { return data_->exceptional; }
  const std::vector<DivisorClass>& extra_extremal() const { return data_->extra_extremal; }
  const std::vector<DivisorClass>& nef_test_set() const { return data_->test_set; }
  bool uses_enlarged_test_set() const { return r() <= 1; }

  DivisorClass H() const { return DivisorClass::hyperplane(r()); }
  DivisorClass E(int i) const { return DivisorClass::exceptional(r(), i); }

  void check(const DivisorClass& d) const {
    if (d.r() != r())
      throw std::invalid_argument("divisor " + d.str() + " has " + std::to_string(d.r()) +
                                  " exceptional coefficients, surface has r = " + std::to_string(r()));
  }

 private:
  struct Data {
    int r = 0;
    bool general_position = true;
    bool no_cuspidal_anticanonical = true;
    DivisorClass canonical;
    std::vector<DivisorClass> exceptional, extra_extremal, test_set;
  };
  std::shared_ptr<Data> data_;
};

inline Rational intersect(const SurfaceModel& s, const DivisorClass& a, const DivisorClass& b) {
  s.check(a);
  s.check(b);
  return intersect(a, b);
}

struct NefResult {
  bool holds = false;
  std::optional<DivisorClass> witness;  // first test class with D.C < 0
};

struct AmpleResult {
  bool holds = false;
  bool positive_square = false;
  std::optional<DivisorClass> witness;  // first test class with D.C <= 0
};

inline NefResult is_nef(const SurfaceModel& s, const DivisorClass& d) {
  s.check(d);
  for (const auto& c : s.nef_test_set())
    if (intersect(d, c).sign() < 0) return {false, c};
  return {true, std::nullopt};
}

inline AmpleResult is_ample(const SurfaceModel& s, const DivisorClass& d) {
  s.check(d);
  AmpleResult res;
  res.positive_square = intersect(d, d).sign() > 0;
  for (const auto& c : s.nef_test_set())
    if (intersect(d, c).sign() <= 0) {
      res.witness = c;
      return res;
    }
  res.holds = res.positive_square;
  return res;
}

struct NefThreshold {
  std::optional<Rational> value;  // nullopt: unbounded
  std::optional<DivisorClass> witness;
};

/// sup{t >= 0 : base - t*dir nef}; base must be nef.
inline NefThreshold nef_threshold(const SurfaceModel& s, const DivisorClass& base, const DivisorClass& dir) {
  s.check(base);
  s.check(dir);
  if (auto n = is_nef(s, base); !n.holds)
    throw std::domain_error("nef_threshold: base " + base.str() + " is not nef (witness " + n.witness->str() + ")");
  NefThreshold out;
  for (const auto& c : s.nef_test_set()) {
    Rational dc = intersect(dir, c);
    if (dc.sign() <= 0) continue;
    Rational t = intersect(base, c) / dc;
    if (!out.value || t < *out.value) {
      out.value = t;
      out.witness = c;
    }
  }
  return out;
}

}  // namespace kstab
