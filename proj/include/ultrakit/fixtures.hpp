#pragma once

#include <string>
#include <vector>

#include "ultrakit/gaussalg.hpp"

namespace ultrakit {

struct NamedFixture {
  std::string name;
  GaussSum f;
};

// Five Gaussian-class test functions: centred, shifted, modulated,
// polynomial-weighted and a two-bump sum.
std::vector<NamedFixture> standard_fixtures();

}  // namespace ultrakit
