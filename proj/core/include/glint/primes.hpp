#pragma once

#include <cstdint>

namespace glint {

/// Deterministic primality test for n in [0, 2^63). Strong-pseudoprime test
/// with the fixed 12-witness set exact below 3.3e24; no probabilistic
/// failure mode.
bool is_prime(std::int64_t n);

/// Smallest prime >= n. Throws ValidationError if that prime would not fit
/// in 63 bits (n above 9223372036854775783) or n is negative.
std::int64_t next_prime(std::int64_t n);

}  // namespace glint
