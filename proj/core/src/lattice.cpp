#include "glint/lattice.hpp"

#include <cassert>
#include <cmath>

namespace glint {

std::vector<std::int64_t> draw_shift(std::int64_t N, int d, RngStream rng) {
  std::vector<std::int64_t> h(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    auto axis = rng.child(static_cast<std::uint64_t>(i));
    h[static_cast<std::size_t>(i)] =
        1 + static_cast<std::int64_t>(axis.below(static_cast<std::uint64_t>(N - 1)));
  }
  return h;
}

std::vector<std::int64_t> draw_anchor(std::int64_t N, int d, RngStream rng) {
  std::vector<std::int64_t> z(static_cast<std::size_t>(d));
  for (int i = 0; i < d; ++i) {
    auto axis = rng.child(static_cast<std::uint64_t>(i));
    z[static_cast<std::size_t>(i)] =
        static_cast<std::int64_t>(axis.below(static_cast<std::uint64_t>(N)));
  }
  return z;
}

std::int64_t node_coord(std::int64_t z, std::int64_t h, std::int64_t l, std::int64_t N) {
  // l*h reaches ~L*N (up to 127 bits in the general contract): keep it exact.
  const __int128 v = static_cast<__int128>(z) - static_cast<__int128>(l) * h;
  std::int64_t m = static_cast<std::int64_t>(v % N);
  return m < 0 ? m + N : m;
}

void node_into(std::span<const std::int64_t> z, std::span<const std::int64_t> h,
               std::int64_t l, std::int64_t N, std::span<std::int64_t> out) {
  assert(z.size() == h.size() && out.size() == z.size());
  for (std::size_t i = 0; i < z.size(); ++i) out[i] = node_coord(z[i], h[i], l, N);
}

std::vector<std::int64_t> node(std::span<const std::int64_t> z,
                               std::span<const std::int64_t> h, std::int64_t l,
                               std::int64_t N) {
  std::vector<std::int64_t> m(z.size());
  node_into(z, h, l, N, m);
  return m;
}

double grid_coord(std::int64_t m, std::int64_t N) {
  return static_cast<double>(static_cast<long double>(m) / static_cast<long double>(N));
}

double jittered_coord(std::int64_t m, double u, std::int64_t N) {
  // Single extended-precision division: the real value (m+u)/N lies in the
  // cell [m/N, (m+1)/N) exactly, and the 64-bit mantissa keeps u >= 2^-20
  // visible in the numerator for every m below 2^43.
  const long double x =
      (static_cast<long double>(m) + static_cast<long double>(u)) / static_cast<long double>(N);
  double v = static_cast<double>(x);
  if (v >= 1.0) v = 0x1.fffffffffffffp-1;  // final rounding must not escape [0,1)
  return v;
}

void grid_point_into(std::span<const std::int64_t> m, std::int64_t N, std::span<double> out) {
  assert(out.size() == m.size());
  for (std::size_t i = 0; i < m.size(); ++i) out[i] = grid_coord(m[i], N);
}

void jittered_point_into(std::span<const std::int64_t> m, std::int64_t N, RngStream rng,
                         std::span<double> out) {
  assert(out.size() == m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    auto axis = rng.child(static_cast<std::uint64_t>(i));
    out[i] = jittered_coord(m[i], axis.next_unit(), N);
  }
}

std::vector<double> grid_point(std::span<const std::int64_t> m, std::int64_t N) {
  std::vector<double> x(m.size());
  grid_point_into(m, N, x);
  return x;
}

std::vector<double> jittered_point(std::span<const std::int64_t> m, std::int64_t N,
                                   RngStream rng) {
  std::vector<double> x(m.size());
  jittered_point_into(m, N, rng, x);
  return x;
}

std::vector<double> frac(std::span<const double> x) {
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    double v = x[i] - std::floor(x[i]);
    if (v >= 1.0) v = 0.0;  // {-tiny} rounds up to 1.0; wrap it
    y[i] = v;
  }
  return y;
}

}  // namespace glint
