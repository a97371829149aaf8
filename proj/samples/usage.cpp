// Walks through the library on the degree one del Pezzo surface.
#include "kstab/kstab.hpp"

#include <iostream>

int main() {
  using namespace kstab;

  SurfaceModel s = SurfaceModel::del_pezzo(1);
  std::cout << "(-1)-curves on Bl_8 P^2: " << s.exceptional_curves().size() << "\n";

  // Where does 3H - E1 - ... - E7 - t E8 stop being nef?
  auto base = parse_divisor("3H - E1 - ... - E7", s.r());
  auto thr = nef_threshold(s, base, s.E(8));
  std::cout << "nef up to t = " << thr.value->str() << ", blocked by " << thr.witness->str() << "\n";

  // One pointwise certificate.
  Rational lambda(1, 1);
  auto L = base - lambda * s.E(8);
  auto cert = check_criterion(s, L, dp1_alpha_lower(s, ExactScalar(lambda)), kDp1Provenance);
  std::cout << "lambda = 1: " << to_string(cert.verdict) << ", margin " << cert.condition_i.margin.str() << "\n";

  // The whole family at once.
  auto region = certified_region(dp1_family(s));
  std::cout << region_report(region);

  // DF of the point normal cone on P^2 with L = O(2).
  SurfaceModel p2(0);
  auto table = normal_cone_point_table(p2, Rational(2) * p2.H());
  std::cout << "DF(normal cone, O(2)) = " << df_evaluate(table).str() << "\n";

  json j = cert;
  std::cout << j.dump(2) << "\n";
}
