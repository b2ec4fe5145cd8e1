#pragma once

#include "ahlfors/common.hpp"
#include "ahlfors/lattice.hpp"
#include "ahlfors/summation.hpp"

namespace ahlfors {

// ---------------------------------------------------------------------------
// Genus-2 canonical product psi(z) = prod (1 - z/lambda) exp(z/lambda + z^2/2lambda^2)
// evaluated in log space. The raw product reaches e^{K r^2} magnitudes and is
// never formed.
// ---------------------------------------------------------------------------

/// log |E(w)| for the primary factor E(w) = (1 - w) e^{w + w^2/2}.
/// Returns -inf at w = 1. Accurate for small |w| via log1p.
inline double primary_factor_log(cplx w) {
    double a = w.real(), b = w.imag();
    double u = a * a + b * b - 2.0 * a;  // |1-w|^2 = 1 + u
    double lg = (std::abs(u) < 0.5) ? 0.5 * std::log1p(u) : 0.5 * std::log(1.0 + u);
    return lg + a + 0.5 * (a * a - b * b);
}

/// Principal argument of the primary factor, arg(1-w) + Im(w + w^2/2).
inline double primary_factor_arg(cplx w) {
    return std::atan2(-w.imag(), 1.0 - w.real()) + w.imag() + w.real() * w.imag();
}

struct ProductEvaluation {
    double log_abs = 0.0;    // -inf exactly on the zero set
    double arg = 0.0;        // mod 2pi, meaningless at zeros
    double tail_bound = 0.0; // bound on the omitted-annuli contribution to log_abs
    bool at_zero = false;
};

/// Tail bound for omitted annuli ell = first_omitted, first_omitted+1, ...
/// following the schedule's continuation law. Uses |log E(z/lambda)| <=
/// sum_{n>=3} |z/lambda|^n / n <= x^3 / (3(1-x)) with x = 9|z|/r_ell, and the
/// cardinality bound |B_ell| <= kappa (r_ell/c)^2.
inline double annulus_tail_bound(cplx z, size_t first_omitted, const RadiiSchedule& schedule,
                                 const LatticeConfig& cfg, double kappa_card = 3.0) {
    const double az = std::abs(z);
    if (az == 0.0) return 0.0;
    if (schedule.empty()) return 0.0;  // synthetic locus: psi is exactly the finite product
    CompensatedSum total;
    for (size_t ell = first_omitted;; ++ell) {
        double r = schedule.continued_radius(ell);
        if (!(r / 3.0 > 3.0 * az))
            throw std::domain_error("annulus_tail_bound: omitted annulus too close (needs r_l/3 > 3|z|)");
        double x = 9.0 * az / r;
        // card * x^3 = kappa (r/c)^2 (9|z|/r)^3 = 729 kappa |z|^3 / (c^2 r),
        // written without forming the overflowing cardinality.
        double term = 243.0 * kappa_card * az * az * az / (sqr(static_cast<double>(cfg.c)) * r * (1.0 - x));
        total.add(term);
        if (term < 1e-300 || r >= 1e300) break;
        if (ell > first_omitted + 64) break;  // saturated continuation
    }
    return total.value();
}

namespace detail {

struct LogSum {
    CompensatedSum log_abs, arg;
    bool at_zero = false;
};

template <class Skip>
inline LogSum sum_factors(cplx z, const std::vector<LocusPoint>& pts, Skip skip) {
    LogSum s;
    for (size_t k = 0; k < pts.size(); ++k) {
        if (skip(k)) continue;
        cplx lam = pts[k].pos;
        cplx w = z / lam;
        if (z == lam) { s.at_zero = true; continue; }
        s.log_abs.add(primary_factor_log(w));
        s.arg.add(primary_factor_arg(w));
    }
    return s;
}

}  // namespace detail

/// log |psi(z)| over the finite locus, with the tail bound for the unbuilt
/// annuli attached. log_abs is -inf iff z is a locus point.
inline ProductEvaluation log_abs_psi(cplx z, const ZeroLocus& locus) {
    auto s = detail::sum_factors(z, locus.points(), [](size_t) { return false; });
    ProductEvaluation ev;
    ev.at_zero = s.at_zero;
    ev.log_abs = s.at_zero ? neg_inf : s.log_abs.value();
    ev.arg = std::remainder(s.arg.value(), two_pi);
    ev.tail_bound = annulus_tail_bound(z, locus.schedule().count() + 1, locus.schedule(),
                                       locus.config());
    return ev;
}

/// log |psi_1(z)|: the same sum omitting the (at most one) lambda with
/// |z - lambda| < 1. Finite for every z.
inline ProductEvaluation log_abs_psi1(cplx z, const ZeroLocus& locus) {
    long omit = locus.nearest_within(z, 1.0);
    auto s = detail::sum_factors(z, locus.points(),
                                 [omit](size_t k) { return static_cast<long>(k) == omit; });
    ProductEvaluation ev;
    ev.log_abs = s.log_abs.value();
    ev.arg = std::remainder(s.arg.value(), two_pi);
    ev.tail_bound = annulus_tail_bound(z, locus.schedule().count() + 1, locus.schedule(),
                                       locus.config());
    return ev;
}

/// psi'/psi (z) = sum over lambda of 1/(z-lambda) + 1/lambda + z/lambda^2.
inline cplx log_derivative_psi(cplx z, const ZeroLocus& locus) {
    CompensatedSum re, im;
    for (const auto& p : locus.points()) {
        if (z == p.pos) throw std::domain_error("log_derivative_psi: pole at a locus point");
        cplx inv_l = 1.0 / p.pos;
        cplx t = 1.0 / (z - p.pos) + inv_l + z * inv_l * inv_l;
        re.add(t.real());
        im.add(t.imag());
    }
    return {re.value(), im.value()};
}

/// Brute-force reference in extended precision (test oracle).
inline long double log_abs_psi_reference(cplx z, const ZeroLocus& locus) {
    long double acc = 0.0L;
    for (const auto& p : locus.points()) {
        std::complex<long double> w(z.real(), z.imag());
        std::complex<long double> lam(p.pos.real(), p.pos.imag());
        std::complex<long double> q = w / lam;
        std::complex<long double> f = (1.0L - q) * std::exp(q + q * q * 0.5L);
        acc += std::log(std::abs(f));
    }
    return acc;
}

}  // namespace ahlfors
