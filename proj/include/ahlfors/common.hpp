#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace ahlfors {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
inline constexpr double neg_inf = -std::numeric_limits<double>::infinity();

inline double sqr(double x) { return x * x; }
inline double abs2(cplx z) { return z.real() * z.real() + z.imag() * z.imag(); }

// Wrap a coordinate to [0,1).
inline double frac_unit(double x) {
    double f = x - std::floor(x);
    if (f >= 1.0) f = 0.0;  // guards against -1e-18 rounding up
    return f;
}

// Representative of [z] in the fundamental domain {0 <= Re,Im < 1} of Z + Zi.
inline cplx torus_class(cplx z) {
    return {frac_unit(z.real()), frac_unit(z.imag())};
}

// Distance on C/(Z+Zi), exact for values < 1/2 (minimum over 9 translates).
inline double torus_dist(cplx a, cplx b) {
    cplx d = torus_class(a) - torus_class(b);
    double best = std::numeric_limits<double>::infinity();
    for (int dx = -1; dx <= 1; ++dx)
        for (int dy = -1; dy <= 1; ++dy)
            best = std::min(best, std::abs(d + cplx(dx, dy)));
    return best;
}

// log(1 + e^{2v}) without overflow for |v| up to ~1e308.
inline double log1p_exp2(double v) {
    if (v > 0.0) return 2.0 * v + std::log1p(std::exp(-2.0 * v));
    return std::log1p(std::exp(2.0 * v));
}

// s = e^{2v} / (1 + e^{2v}), stable for all v.
inline double sigmoid2(double v) {
    if (v > 0.0) return 1.0 / (1.0 + std::exp(-2.0 * v));
    double e = std::exp(2.0 * v);
    return e / (1.0 + e);
}

}  // namespace ahlfors
