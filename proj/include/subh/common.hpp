#pragma once

#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace subh {

using complexd = std::complex<double>;

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();
inline constexpr double pos_inf = std::numeric_limits<double>::infinity();

inline bool is_neg_inf(double v) { return std::isinf(v) && v < 0; }

// Wrap an angle into [0, 2*pi).
inline double wrap_angle(double t) {
    double w = std::fmod(t, 2.0 * pi);
    if (w < 0) w += 2.0 * pi;
    // fmod can return 2*pi after the correction when t is a tiny negative number
    if (w >= 2.0 * pi) w -= 2.0 * pi;
    return w;
}

// Fixed-width shortest-round-trip-ish formatting used by every report writer.
// Reports must be byte-identical across runs, so all user-facing numbers go
// through this single function.
inline std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline std::string fmt(complexd z) {
    return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")";
}

}  // namespace subh
