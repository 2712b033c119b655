#pragma once

// Closed-form Weierstrass data for the standard examples.
//
//   paraboloid       (z, k z)                       k      = 1/2
//   rotational       (z, sign r^2 / z)              r, sign = 1, +1
//   two_end          (z, a z + b / z + c), |a| != 1 a, b, c = 2, 1, 0
//   multivalued      (z, sign j r^2 / z)            r, sign = 1, +1
//   one_end          (z, z + z^2)
//   helicoidal       (a e^z, -a e^-z)               a      = 1
//   punctured_split  Phi = (j z, z^3/3, 1), eps = -1

#include <map>
#include <string>
#include <vector>

#include "ias/weier.hpp"

namespace ias::gallery {

/// Parameter values as text, parsed per key by the example (C_eps literals
/// for a, b, c, k; reals for r; +1/-1 for sign and eps).
using Params = std::map<std::string, std::string>;

struct ExampleInfo {
  std::string name;
  std::vector<std::string> keys;  // accepted parameter keys besides eps
  Params defaults;
  int default_eps;
  bool eps_fixed;  // eps is forced (annulus domains, split-only examples)
};

const std::vector<ExampleInfo>& examples();
const ExampleInfo& info(const std::string& name);

/// Data with the example's default domain (64 x 64 samples). Unknown names
/// or keys and parameters outside the allowed set throw InvalidParameter.
weier::WeierstrassData get_example(const std::string& name, const Params& params = {});

/// Same data on a different grid resolution, keeping the default ranges.
weier::WeierstrassData get_example(const std::string& name, const Params& params, int n1, int n2);

}  // namespace ias::gallery
