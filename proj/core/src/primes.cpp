#include "glint/primes.hpp"

#include <array>

#include "glint/error.hpp"

namespace glint {
namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>((u128)a * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

// Strong pseudoprime test to base a; n odd, n > 2, n-1 = 2^s * d.
bool witness_passes(u64 n, u64 a, u64 d, int s) {
  a %= n;
  if (a == 0) return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1) return true;
  for (int i = 1; i < s; ++i) {
    x = mulmod(x, x, n);
    if (x == n - 1) return true;
  }
  return false;
}

// Exact for all n < 3.317e24 (covers the full 63-bit contract).
constexpr std::array<u64, 12> kWitnesses = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  const u64 un = static_cast<u64>(n);
  for (u64 p : kWitnesses) {
    if (un == p) return true;
    if (un % p == 0) return false;
  }
  u64 d = un - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kWitnesses) {
    if (!witness_passes(un, a, d, s)) return false;
  }
  return true;
}

std::int64_t next_prime(std::int64_t n) {
  if (n < 0) throw ValidationError("next_prime: negative input");
  if (n <= 2) return 2;
  constexpr std::int64_t kLargest63BitPrime = 9223372036854775783LL;
  if (n > kLargest63BitPrime) throw ValidationError("next_prime: no 63-bit prime >= input");
  std::int64_t c = n | 1;  // first odd candidate >= n
  while (!is_prime(c)) c += 2;
  return c;
}

}  // namespace glint
