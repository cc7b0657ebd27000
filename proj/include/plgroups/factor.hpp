#pragma once

// Prime factorization of arbitrary-precision integers whose prime factors fit
// in 64 bits: trial division, deterministic Miller-Rabin and Pollard-Brent.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "plgroups/error.hpp"
#include "plgroups/scalar.hpp"

namespace plg {

namespace detail {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Deterministic for all n < 2^64 with these witnesses.
inline bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline u64 pollard_brent(u64 n) {
  if (n % 2 == 0) return 2;
  for (u64 c = 1;; ++c) {
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    const u64 m = 128;
    u64 r = 1;
    auto step = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = step(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(m, r - k); ++i) {
          y = step(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r <<= 1;
    } while (g == 1);
    if (g == n) {
      do {
        ys = step(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_u64(u64 n, std::map<Integer, int>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    ++out[Integer(n)];
    return;
  }
  u64 d = pollard_brent(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

}  // namespace detail

/// Prime factorization of n >= 1 as prime -> multiplicity.
inline std::map<Integer, int> factorize(Integer n) {
  if (n < 1) fail(ErrorKind::InvalidInput, "factorize needs a positive integer");
  std::map<Integer, int> out;
  for (unsigned p = 2; p < 1000; p += (p == 2 ? 1 : 2)) {
    while (n % p == 0) {
      ++out[Integer(p)];
      n /= p;
    }
  }
  if (n == 1) return out;
  if (n > Integer(std::numeric_limits<std::uint64_t>::max())) {
    fail(ErrorKind::Unsupported,
         "cofactor " + n.str() + " exceeds 64 bits; factorization is not supported");
  }
  detail::factor_u64(n.convert_to<std::uint64_t>(), out);
  return out;
}

/// Exponents of the primes in a positive rational: q = prod p^e.
inline std::map<Integer, Integer> prime_exponents(const Rational& q) {
  if (q.sign() <= 0) fail(ErrorKind::InvalidInput, "prime exponents need a positive rational");
  std::map<Integer, Integer> out;
  for (auto& [p, e] : factorize(numerator(q))) out[p] += e;
  for (auto& [p, e] : factorize(denominator(q))) out[p] -= e;
  return out;
}

}  // namespace plg
