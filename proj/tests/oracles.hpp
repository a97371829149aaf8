// Independent reference computations used to freeze expected values.
#pragma once

#include "kstab/kstab.hpp"

#include <array>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using kstab::Rational;

/// Brute-force search for C = dH - sum m_i E_i with 3d - sum m_i = 1 and
/// d^2 - sum m_i^2 = -1, 0 <= d <= 6, |m_i| <= 3. Returns (d, m) tuples.
inline std::vector<std::pair<int, std::vector<int>>> diophantine_exceptional(int r) {
  std::vector<std::pair<int, std::vector<int>>> out;
  std::vector<int> m(static_cast<std::size_t>(r));
  for (int d = 0; d <= 6; ++d) {
    const int lin_target = 3 * d - 1;  // sum m_i
    const int sq_target = d * d + 1;   // sum m_i^2
    std::function<void(int, int, int)> rec = [&](int i, int lin, int sq) {
      int left = r - i;
      int need_lin = lin_target - lin, need_sq = sq_target - sq;
      if (need_sq < 0 || need_sq > 9 * left) return;
      // Cauchy-Schwarz: (sum of the rest)^2 <= left * (sum of squares of the rest).
      if (static_cast<long>(need_lin) * need_lin > static_cast<long>(left) * need_sq) return;
      if (left == 0) {
        if (need_lin == 0 && need_sq == 0) out.push_back({d, m});
        return;
      }
      for (int v = -3; v <= 3; ++v) {
        m[i] = v;
        rec(i + 1, lin + v, sq + v * v);
      }
      m[i] = 0;
    };
    rec(0, 0, 0);
  }
  return out;
}

/**
 * Intersection ring of B = Bl_{(p,0)}(X x P^1) for a surface X, on the
 * generators: pullbacks of classes of X, the fibre F = X x {pt}, and the
 * exceptional divisor E ~ P^2 with normal bundle O(-1).
 */
struct RingClass {
  std::vector<std::pair<Rational, kstab::DivisorClass>> pulled;  // sum c * pullback(D)
  Rational f{0};
  Rational e{0};
};

inline Rational triple(const RingClass& x, const RingClass& y, const RingClass& z) {
  // Monomials: D1.D2.F = D1.D2 on X; three surface pullbacks vanish; F^2 = 0;
  // any monomial with one or two E factors vanishes; E^3 = 1.
  Rational total = 0;
  auto dd = [](const RingClass& a, const RingClass& b) {
    Rational s = 0;
    for (const auto& [ca, da] : a.pulled)
      for (const auto& [cb, db] : b.pulled) s += ca * cb * kstab::intersect(da, db);
    return s;
  };
  total += dd(x, y) * z.f + dd(x, z) * y.f + dd(y, z) * x.f;
  total += x.e * y.e * z.e;
  return total;
}

struct NormalConeNumbers {
  Rational LK, Ln, A, B, C, LE_E, LE_L;
};

/// Direct expansion of every table entry for the point normal cone.
inline NormalConeNumbers normal_cone_numbers(const kstab::SurfaceModel& s, const kstab::DivisorClass& L) {
  RingClass Lm{{{Rational(1), L}}, 0, -1};  // pullback(L) - E
  RingClass K{{{Rational(1), s.canonical()}}, 0, 0};
  RingClass E{{}, 0, 1};
  RingClass Lpull{{{Rational(1), L}}, 0, 0};
  RingClass rel{{}, 0, 2};  // relative canonical of a point blow-up in a threefold: (3 - 1) E
  NormalConeNumbers n;
  n.LK = kstab::intersect(L, s.canonical());
  n.Ln = kstab::intersect(L, L);
  n.A = triple(Lm, Lm, Lm);
  n.B = triple(Lm, Lm, K);
  n.C = triple(Lm, Lm, rel);
  n.LE_E = triple(Lm, Lm, E);
  n.LE_L = triple(Lm, Lm, Lpull);
  return n;
}

/// The Donaldson-Futaki combination in dimension 2 written out again.
inline Rational df_surface(const NormalConeNumbers& n) { return Rational(-2) * n.LK * n.A + Rational(3) * n.Ln * (n.B + n.C); }

/// Brute-force truth of a constraint system at a rational point.
inline bool system_holds(const std::vector<kstab::Constraint>& cs, const Rational& x) {
  for (const auto& c : cs)
    if (!kstab::holds(c.rel, c.poly(x).sign())) return false;
  return true;
}

inline Rational random_rational(std::mt19937_64& rng, int num_range, int den_max) {
  std::uniform_int_distribution<int> num(-num_range, num_range), den(1, den_max);
  return Rational(num(rng), den(rng));
}

}  // namespace oracle
