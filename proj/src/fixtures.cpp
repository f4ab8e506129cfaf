#include "ultrakit/fixtures.hpp"

#include <numbers>

namespace ultrakit {

std::vector<NamedFixture> standard_fixtures() {
  using std::numbers::pi;
  GaussSum bumps = ExpPoly::gaussian(2.0, -4.0, -2.0);
  bumps += ExpPoly({0.5}, 3.0, 4.2, -1.47);
  return {
      {"gauss", ExpPoly::gaussian(pi)},
      {"shifted", ExpPoly::gaussian(pi, 2.0 * pi, -pi)},
      {"modulated", ExpPoly::gaussian(pi, cplx(0.0, pi))},
      {"hermite", ExpPoly({-0.3, 0.0, 1.0}, 1.5)},
      {"two-bump", bumps},
  };
}

}  // namespace ultrakit
