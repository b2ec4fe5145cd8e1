#pragma once

#include "ahlfors/quadrature.hpp"

namespace ahlfors {

// ---------------------------------------------------------------------------
// Areas, order functions and the Jensen-formula cross checks. The adopted
// convention makes area(D_r) = r^2 and T(r) = (r^2 - 1)/2 for the trivial
// section, so every identity below is checked against closed forms.
// ---------------------------------------------------------------------------

inline AreaReport to_area_report(const RegionIntegral& ri, double eps1) {
    AreaReport rep;
    rep.area = ri.total(eps1);
    rep.estimated_error = ri.err;
    rep.converged = ri.converged;
    return rep;
}

/// Mass of f_* [D_r] against omega_X (area of the image with multiplicity).
inline AreaReport disc_area(double r, const DiscIntegrator& integ) {
    if (!(r > 0.0)) throw std::invalid_argument("disc_area: r must be positive");
    const SurfaceModel& model = integ.context().model();
    double rr = nudge_radius(r, model.zeros());
    RegionIntegral ri = integ.run(rr, RegionSpec{}, [](cplx) { return 1.0; });
    return to_area_report(ri, model.eps1);
}

/// Nevanlinna order function T_{f,r}(omega_X) = int_1^r dt/t area(D_t),
/// computed as one weighted disc integral with w(z) = log(r / max(|z|,1))
/// (exact Fubini rearrangement; no t-grid).
inline AreaReport order_function(double r, const DiscIntegrator& integ) {
    if (!(r >= 1.0)) throw std::invalid_argument("order_function: r must be >= 1");
    const SurfaceModel& model = integ.context().model();
    double rr = nudge_radius(r, model.zeros());
    auto w = [rr](cplx z) { return std::log(rr / std::max(std::abs(z), 1.0)); };
    RegionIntegral ri = integ.run(rr, RegionSpec{}, w);
    return to_area_report(ri, model.eps1);
}

/// int_1^r dt/t int_{D_t} f* Theta  by Jensen's formula:
///   -(1/4pi) oint log(e^{2v}+1)(r e^{i th}) dth + (1/4pi) oint (e^{i th}) dth.
/// Nonpositive; order_function = base part - eps1 * jensen_fiber_T.
struct JensenResult {
    double value = 0.0;
    double err = 0.0;
    bool converged = true;
};

inline JensenResult jensen_fiber_T(double r, const SurfaceModel& model) {
    if (!(r >= 1.0)) throw std::invalid_argument("jensen_fiber_T: r must be >= 1");
    double rr = nudge_radius(r, model.zeros());
    auto mean_at = [&](double rho) {
        auto f = [&](double th) {
            cplx z = rho * cplx(std::cos(th), std::sin(th));
            return log1p_exp2(model.fiber_log_norm(z));
        };
        return circle_integral(f, 1e-7 * std::max(1.0, rho * rho));
    };
    CircleIntegral outer = mean_at(rr);
    CircleIntegral inner = mean_at(1.0);
    JensenResult jr;
    jr.value = (-outer.value + inner.value) / (4.0 * pi);
    jr.err = (outer.err + inner.err) / (4.0 * pi);
    jr.converged = outer.converged && inner.converged;
    return jr;
}

enum class CircleKind { psi, psi_factor, section };

/// (1/2pi) oint log |g| over the circle |z - center| = radius, for
/// g = psi, one Weierstrass factor E(z/lambda), or the section norm.
inline double circle_mean_log_modulus(cplx center, double radius, CircleKind kind,
                                      const SurfaceModel& model, cplx lambda = {0.0, 0.0}) {
    auto f = [&](double th) -> double {
        cplx z = center + radius * cplx(std::cos(th), std::sin(th));
        switch (kind) {
            case CircleKind::psi: return log_abs_psi(z, model.zeros()).log_abs;
            case CircleKind::psi_factor: return primary_factor_log(z / lambda);
            case CircleKind::section: return model.section_log_norm(z);
        }
        return 0.0;
    };
    CircleIntegral ci = circle_integral(f, 1e-10 * std::max(1.0, abs2(center)));
    return ci.value / two_pi;
}

/// Area of f(D(lambda, eps)) for a locus point, eps < 1/2. Computed from the
/// exact capture mass (base eps^2 plus eps1 times the Green-identity fiber
/// mass); grid quadrature cannot see the spike.
inline AreaReport small_disc_area(size_t locus_index, double eps, const ModelContext& ctx) {
    if (!(eps > 0.0 && eps < 0.5))
        throw std::invalid_argument("small_disc_area: need 0 < eps < 1/2");
    CaptureMass cm = capture_mass(locus_index, eps, -1e30, ctx);
    AreaReport rep;
    rep.area = cm.base + ctx.model().eps1 * cm.fiber_total;
    rep.estimated_error = cm.err * ctx.model().eps1 + 1e-12;
    rep.converged = rep.estimated_error <= 0.05 * rep.area;
    return rep;
}

/// length(f(dD_r)) / area(f(D_r)) — the quantity whose smallness along the
/// chosen radii makes the limit currents closed.
struct LengthAreaRatio {
    double length = 0.0;
    double area = 0.0;
    double ratio = 0.0;
    bool converged = true;
};

inline LengthAreaRatio length_area_ratio(double r, const DiscIntegrator& integ) {
    const SurfaceModel& model = integ.context().model();
    double rr = nudge_radius(r, model.zeros());
    auto f = [&](double th) {
        cplx z = rr * cplx(std::cos(th), std::sin(th));
        return curve_speed(z, model) * rr;
    };
    CircleIntegral len = circle_integral(f, 1e-8 * std::max(1.0, rr));
    AreaReport area = disc_area(rr, integ);
    LengthAreaRatio out;
    out.length = len.value;
    out.area = area.area;
    out.ratio = area.area > 0.0 ? len.value / area.area : 0.0;
    out.converged = len.converged && area.converged;
    return out;
}

}  // namespace ahlfors
