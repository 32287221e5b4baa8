#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bel {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

inline bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

// C^2 ramp: 0 for t <= 0, 1 for t >= 1, quintic smoothstep in between.
// Fixed once so that every smoothed kernel and mask is reproducible.
inline double smoothstep(double t) {
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    return t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
}

// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

// FNV-1a, used for config hashes in reports.
std::uint64_t fnv1a(std::string_view bytes);

// Runs fn(i) for i in [begin, end), split across hardware threads.
void parallel_for(std::int64_t begin, std::int64_t end,
                  const std::function<void(std::int64_t)>& fn);

}  // namespace bel
