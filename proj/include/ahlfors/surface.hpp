#pragma once

#include <memory>

#include "ahlfors/common.hpp"
#include "ahlfors/product.hpp"

namespace ahlfors {

// ---------------------------------------------------------------------------
// X = P(L_m + C) over the square torus, with ||s_m|| = e^{m alpha |z|^2} and
// omega_X = pi_1* omega_C - eps1 * Theta. Conventions: dd^c u has Lebesgue
// density Lap(u)/(4 pi), so pi_1* omega_C pulls back to the constant 1/pi and
// area(D_r) = r^2 for the trivial section.
// ---------------------------------------------------------------------------

class SurfaceModel {
  public:
    double alpha = 0.05;
    int m = 4;
    double eps1 = 0.1;
    double kappa_growth = 2.0;  // fitted K of the growth criterion m*alpha > K/c^2
    std::shared_ptr<const ZeroLocus> locus;

    double malpha() const { return m * alpha; }
    int c() const { return locus ? locus->config().c : 5; }
    const ZeroLocus& zeros() const {
        if (!locus) throw std::logic_error("SurfaceModel: no locus attached");
        return *locus;
    }

    void validate() const {
        if (!(alpha > 0.0) || m < 1 || !(eps1 > 0.0))
            throw std::invalid_argument("SurfaceModel: alpha, m, eps1 must be positive");
        if (!(malpha() - kappa_growth / sqr(static_cast<double>(c())) > 0.0))
            throw std::invalid_argument("SurfaceModel: m*alpha must exceed kappa_growth/c^2");
        // Kahler sanity: the pulled-back density must be positive on a coarse grid.
        for (int i = 0; i < 16; ++i) {
            cplx z(0.37 * i, 0.61 * i);
            if (!(pullback_density_value(z) > 0.0))
                throw std::invalid_argument("SurfaceModel: nonpositive density on validation grid");
        }
    }

    /// log ||s_m||_{h_m}(z) = m alpha |z|^2.
    double section_log_norm(cplx z) const { return malpha() * abs2(z); }

    /// v(z) = log ||psi s_m||_{h_m} = log|psi(z)| + m alpha |z|^2; -inf on Lambda.
    double fiber_log_norm(cplx z) const {
        return log_abs_psi(z, zeros()).log_abs + section_log_norm(z);
    }

    double pullback_density_value(cplx z) const;  // defined below

  private:
    friend struct FiberPoint;
};

/// One-pass evaluation of v = fiber_log_norm and dv = (d/dz) v =
/// (1/2) psi'/psi + m alpha conj(z), the two quantities every density and
/// region query needs.
struct FiberPoint {
    double v = 0.0;
    cplx dv{0.0, 0.0};
    bool at_zero = false;
};

inline FiberPoint fiber_point(cplx z, const SurfaceModel& model) {
    FiberPoint fp;
    CompensatedSum lg, dre, dim;
    for (const auto& p : model.zeros().points()) {
        if (z == p.pos) { fp.at_zero = true; continue; }
        cplx inv_l = 1.0 / p.pos;
        cplx w = z * inv_l;
        lg.add(primary_factor_log(w));
        cplx t = 1.0 / (z - p.pos) + inv_l + z * inv_l * inv_l;
        dre.add(t.real());
        dim.add(t.imag());
    }
    double ma = model.malpha();
    fp.v = (fp.at_zero ? neg_inf : lg.value()) + ma * abs2(z);
    fp.dv = 0.5 * cplx(dre.value(), dim.value()) + ma * std::conj(z);
    return fp;
}

struct PulledBackDensity {
    double value = 0.0;
    double base = 0.0;   // from pi_1* omega_C
    double fiber = 0.0;  // from -Theta; value = base + eps1 * fiber
};

/// Density of -f*Theta = dd^c log(1+e^{2v}) w.r.t. Lebesgue measure:
/// (1/4pi) [ 8 m alpha s + 16 s(1-s) |dv|^2 ],  s = e^{2v}/(1+e^{2v}).
inline double fiber_density_from(double v, cplx dv, double malpha) {
    double s, s1s;
    if (v >= 0.0) {
        double t = std::exp(-2.0 * v);  // underflows harmlessly for huge v
        s = 1.0 / (1.0 + t);
        s1s = t / sqr(1.0 + t);
    } else {
        double e = std::exp(2.0 * v);
        s = e / (1.0 + e);
        s1s = e / sqr(1.0 + e);
    }
    return (8.0 * malpha * s + 16.0 * s1s * abs2(dv)) / (4.0 * pi);
}

/// Total function: away from Lambda the direct formula, on (or within 1e-7 of)
/// Lambda the removable-singularity limit through the omitted-factor split
/// psi = E(z/lambda) psi_1, which gives
///   s |dv|^2 -> (1/4) e^{3} |psi_1(lambda)|^2 e^{2 m alpha |lambda|^2} / |lambda|^2.
/// The limit is finite but can exceed double range deep in the construction;
/// it then reports +inf (the mass in any disc stays finite and is integrated
/// by boundary formulas, never by sampling this value).
inline PulledBackDensity pullback_density(cplx z, const SurfaceModel& model) {
    PulledBackDensity d;
    d.base = 1.0 / pi;
    const ZeroLocus& locus = model.zeros();
    long near = locus.nearest_within(z, 1.0);
    double dist = near < 0 ? std::numeric_limits<double>::infinity()
                           : std::abs(locus.points()[static_cast<size_t>(near)].pos - z);
    if (dist < 1e-7) {
        cplx lam = locus.points()[static_cast<size_t>(near)].pos;
        double lp1 = log_abs_psi1(lam, locus).log_abs;
        double expo = 3.0 + 2.0 * lp1 - 2.0 * std::log(std::abs(lam)) +
                      2.0 * model.malpha() * abs2(lam);
        d.fiber = std::exp(expo) / pi;
    } else {
        FiberPoint fp = fiber_point(z, model);
        d.fiber = fiber_density_from(fp.v, fp.dv, model.malpha());
    }
    d.value = d.base + model.eps1 * d.fiber;
    return d;
}

inline double SurfaceModel::pullback_density_value(cplx z) const {
    return pullback_density(z, *this).value;
}

/// Length element of the image curve: length f(dD_r) = int_0^{2pi} speed r dtheta.
inline double curve_speed(cplx z, const SurfaceModel& model) {
    return std::sqrt(pullback_density(z, model).value);
}

}  // namespace ahlfors
