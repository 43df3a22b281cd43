#pragma once

#include <cstdint>

namespace glint {

/// Counter-based splittable random stream (splitmix64 core).
///
/// Streams form a tree: `root(seed)` is the trunk, `child(tag)` derives an
/// independent-quality substream for any 64-bit tag, and `next()` walks the
/// stream itself. The same (seed, chain of tags) always replays the same
/// sequence, regardless of what other streams were consumed in between, so
/// work items can run in any order or in parallel without changing results.
class RngStream {
 public:
  explicit constexpr RngStream(std::uint64_t state) : state_(state) {}

  static RngStream root(std::uint64_t seed) { return RngStream(fmix64(seed ^ kRootSalt)); }

  /// Derive the substream identified by `tag`. Distinct tags (and distinct
  /// parents) give streams that behave independently.
  RngStream child(std::uint64_t tag) const {
    return RngStream(fmix64(state_ + kGamma * tag + kChildSalt));
  }

  std::uint64_t next() {
    state_ += kGamma;
    return fmix64(state_);
  }

  /// Uniform on [0,1) with 53-bit resolution.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

  /// Unbiased uniform integer in [0, n); rejection sampling, no modulo bias.
  std::uint64_t below(std::uint64_t n) {
    // Accept only the first floor(2^64 / n) * n values.
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      const std::uint64_t x = next();
      if (x >= threshold) return x % n;
    }
  }

  std::uint64_t state() const { return state_; }

 private:
  static constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ull;
  static constexpr std::uint64_t kRootSalt = 0x5161737A6B2D4A61ull;
  static constexpr std::uint64_t kChildSalt = 0x632BE59BD9B4E019ull;

  static constexpr std::uint64_t fmix64(std::uint64_t x) {
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
  }

  std::uint64_t state_;
};

}  // namespace glint
