#pragma once

// Prime factorization by trial division.

#include <cstdint>
#include <map>

namespace oracle {

inline std::map<std::uint64_t, int> trial_factor(std::uint64_t n) {
  std::map<std::uint64_t, int> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      ++out[p];
      n /= p;
    }
  }
  if (n > 1) ++out[n];
  return out;
}

}  // namespace oracle
