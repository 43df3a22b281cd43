#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "glint/rng.hpp"

namespace glint {

/// One random draw defining a node sequence: shift vector H with entries in
/// [1, N) and anchor z with entries in [0, N).
struct LatticeDraw {
  std::vector<std::int64_t> shift;   // H
  std::vector<std::int64_t> anchor;  // z
};

/// d iid uniform integers in [1, N); coordinate i comes from rng.child(i).
std::vector<std::int64_t> draw_shift(std::int64_t N, int d, RngStream rng);

/// d iid uniform integers in [0, N); coordinate i comes from rng.child(i).
std::vector<std::int64_t> draw_anchor(std::int64_t N, int d, RngStream rng);

/// One coordinate of (z - l*H) mod N, exact for |l*H| up to 127 bits.
std::int64_t node_coord(std::int64_t z, std::int64_t h, std::int64_t l, std::int64_t N);

/// Node m = (z - l*H) mod N, written into `out` (size d).
void node_into(std::span<const std::int64_t> z, std::span<const std::int64_t> h,
               std::int64_t l, std::int64_t N, std::span<std::int64_t> out);

std::vector<std::int64_t> node(std::span<const std::int64_t> z,
                               std::span<const std::int64_t> h, std::int64_t l,
                               std::int64_t N);

/// m/N as a double, via one long-double division. Shared by the jittered
/// path with u = 0 so the two agree bitwise.
double grid_coord(std::int64_t m, std::int64_t N);

/// (m+u)/N in one long-double division, then rounded to double; u in [0,1).
/// The long-double numerator keeps sub-1/N jitter representable even at
/// N ~ 2^42, and the result never reaches 1.
double jittered_coord(std::int64_t m, double u, std::int64_t N);

/// The exact grid point m/N, componentwise.
void grid_point_into(std::span<const std::int64_t> m, std::int64_t N, std::span<double> out);

/// Jittered point: coordinate i is (m_i + u_i)/N with u_i from rng.child(i).
void jittered_point_into(std::span<const std::int64_t> m, std::int64_t N, RngStream rng,
                         std::span<double> out);

std::vector<double> grid_point(std::span<const std::int64_t> m, std::int64_t N);
std::vector<double> jittered_point(std::span<const std::int64_t> m, std::int64_t N,
                                   RngStream rng);

/// Componentwise fractional part x - floor(x), in [0,1).
std::vector<double> frac(std::span<const double> x);

}  // namespace glint
