#pragma once

// Groups shared by the unit tests and the acceptance binary.

#include <string>
#include <vector>

#include "plgroups/plgroups.hpp"

namespace fixture {

using namespace plg;

inline Scalar q(long long p, long long d = 1) { return Scalar::fraction(p, d); }

inline std::vector<NamedMap> named(const std::vector<PLMap>& maps, const std::vector<std::string>& names) {
  std::vector<NamedMap> out;
  for (std::size_t i = 0; i < maps.size(); ++i) out.push_back({names[i], maps[i]});
  return out;
}

inline FGGroup unit_group(const std::vector<PLMap>& maps, const std::vector<std::string>& names,
                          SlopeGroup P, ModuleSpec A = ModuleSpec::rationals()) {
  return FGGroup(Interval::compact(q(1)), std::move(P), std::move(A), named(maps, names));
}

inline FGGroup thompson() {
  return unit_group({construct::dyadic_bump(q(0), q(1)), construct::dyadic_bump(q(1, 2), q(1))}, {"x0", "x1"},
                    SlopeGroup::rational({2}), ModuleSpec::dyadic_like(2));
}

inline FGGroup dyadic_gs(long long s3) {
  auto fgh = construct::dyadic_fgh(q(s3));
  return unit_group({fgh.f, fgh.g, fgh.h}, {"f", "g", "h"}, SlopeGroup::rational({2, Rational(s3)}),
                    s3 == 2 ? ModuleSpec::dyadic_like(2) : ModuleSpec::rationals());
}

/// Bumps of slopes 2 and 3 on (0,3/4) and shifted copies on (1/4,1).
inline FGGroup independent_bumps_23() {
  return unit_group(construct::independent_bumps({q(2), q(3)}, {q(2), q(3)}, q(3, 4), q(1)),
                    {"f1", "f2", "g1", "g2"}, SlopeGroup::rational({2, 3}));
}

inline FGGroup single_bump() {
  return unit_group({construct::bump(q(2), q(1))}, {"f"}, SlopeGroup::rational({2}));
}

/// sigma_r = sigma_l^2 on every generator: slopes 2, 1/2, 1, 4 on dyadic
/// pieces, and a bump with both ends fixed.
inline PLMap gnu2_generator() {
  return PLMap::from_raw(AffineMap::identity(),
                         {{q(0), q(0)}, {q(1, 16), q(1, 8)}, {q(9, 16), q(3, 8)}, {q(15, 16), q(3, 4)}, {q(1), q(1)}},
                         AffineMap::identity());
}

inline FGGroup gnu2_group() {
  return unit_group({gnu2_generator(), construct::dyadic_bump(q(1, 4), q(3, 4))}, {"a", "b"},
                    SlopeGroup::rational({2}), ModuleSpec::dyadic_like(2));
}

inline FGGroup end_bumps_23() {
  return unit_group(construct::end_bump_family(q(2), q(3)), {"f", "g", "u", "v"}, SlopeGroup::rational({2, 3}));
}

inline FGGroup half_line() {
  return FGGroup(Interval::half_line(), SlopeGroup::rational({2, 3}), ModuleSpec::dyadic_like(6),
                 named(construct::half_line_translations(), {"a", "b", "c"}));
}

}  // namespace fixture
