#pragma once

#include <functional>

#include "ahlfors/summation.hpp"
#include "ahlfors/surface.hpp"

namespace ahlfors {

// ---------------------------------------------------------------------------
// Region integration of f* omega_X over discs.
//
// The fiber measure dd^c log(1+e^{2v}) carries ~unit mass per zero lambda,
// concentrated in a disc of radius ~e^{-v1(lambda)} which no grid resolves.
// Integrals are therefore split: midpoint-polar quadrature outside per-zero
// capture discs, plus the exact Green-identity boundary mass of each capture
// disc. Where the capture boundary sits in the near-infinity regime the mass
// has the closed form 1 + 2 m alpha rho^2 (up to e^{-2v} corrections); tame
// zeros (synthetic small configurations) fall back to a log-polar local grid.
// ---------------------------------------------------------------------------

struct QuadratureGrid {
    int n_radial = 360;
    int n_angular = 360;
    double refinement_radius = 1.0;  // cells this close to a zero get subdivided
    double capture_radius = 0.35;    // radius of the exact-mass discs around zeros

    void validate() const {
        if (n_radial < 8 || n_angular < 8)
            throw std::invalid_argument("QuadratureGrid: grid too small");
        if (!(refinement_radius > 0.0) || !(capture_radius > 0.0) ||
            capture_radius > refinement_radius)
            throw std::invalid_argument("QuadratureGrid: need 0 < capture_radius <= refinement_radius");
    }
    QuadratureGrid halved() const {
        return {std::max(8, n_radial / 2), std::max(8, n_angular / 2), refinement_radius,
                capture_radius};
    }
};

struct AreaReport {
    double area = 0.0;
    double estimated_error = 0.0;
    bool converged = true;
};

// --- adaptive circle integrals ----------------------------------------------

struct CircleIntegral {
    double value = 0.0;   // integral over theta in [0, 2pi)
    double err = 0.0;
    bool converged = true;
};

namespace detail {

inline void adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                             double fa, double fm, double fb, double tol, int depth,
                             CircleIntegral& out) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
        out.value += left + right + delta / 15.0;
        out.err += std::abs(delta) / 15.0;
        if (depth <= 0 && std::abs(delta) > 15.0 * tol) out.converged = false;
        return;
    }
    adaptive_simpson(f, a, m, fa, flm, fm, tol * 0.5, depth - 1, out);
    adaptive_simpson(f, m, b, fm, frm, fb, tol * 0.5, depth - 1, out);
}

}  // namespace detail

/// Adaptive Simpson over [0, 2pi), split into 16 base arcs; tolerant of the
/// integrable log singularities that circles brushing Lambda produce.
inline CircleIntegral circle_integral(const std::function<double(double)>& f, double abs_tol,
                                      int max_depth = 22) {
    CircleIntegral out;
    constexpr int base = 16;
    double prev = f(0.0);
    for (int k = 0; k < base; ++k) {
        double a = two_pi * k / base, b = two_pi * (k + 1) / base;
        double fm = f(0.5 * (a + b));
        double fb = (k + 1 == base) ? f(0.0) : f(b);
        detail::adaptive_simpson(f, a, b, prev, fm, fb, abs_tol / base, max_depth, out);
        prev = fb;
    }
    return out;
}

// --- per-model caches ---------------------------------------------------------

/// Caches v1(lambda) = log|psi_1(lambda)| + m alpha |lambda|^2 for every locus
/// point: the scale that decides whether a zero is in the "hot" regime (its
/// density spike is exponentially narrow and its capture masses have closed
/// forms). Build once per (locus, model) pair.
class ModelContext {
  public:
    ModelContext(const SurfaceModel& model, const ThreadPool& pool = global_pool())
        : model_(model) {
        const auto& pts = model.zeros().points();
        v1_.resize(pts.size());
        pool.run_chunked(pts.size(), kDefaultChunks, [&](size_t, size_t b, size_t e) {
            for (size_t i = b; i < e; ++i)
                v1_[i] = log_abs_psi1(pts[i].pos, model.zeros()).log_abs +
                         model.malpha() * abs2(pts[i].pos);
        });
    }

    const SurfaceModel& model() const { return model_; }

    double v1(size_t idx) const { return v1_[idx]; }

    // Local model of the fiber norm near lambda: v(z) ~ local_level + log|z-lambda|.
    double local_level(size_t idx) const {
        const auto& p = model_.zeros().points()[idx];
        return v1_[idx] - std::log(std::abs(p.pos)) + 1.5;
    }

    bool hot(size_t idx, double rho, double v_threshold) const {
        double lvl = local_level(idx) + std::log(rho);
        return lvl > 35.0 && lvl > v_threshold + 12.0;
    }

  private:
    const SurfaceModel& model_;
    std::vector<double> v1_;
};

// --- capture masses -----------------------------------------------------------

/// Exact fiber mass of D(lambda, rho) by the Green identity
///   mass = (rho/pi) int_0^{2pi} s(v) Re( dv * e^{i theta} ) dtheta,
/// valid for any v (the potential log(1+e^{2v}) is smooth across lambda).
inline CircleIntegral capture_fiber_mass_green(cplx lambda, double rho, const SurfaceModel& model) {
    auto f = [&](double th) {
        cplx z = lambda + rho * cplx(std::cos(th), std::sin(th));
        FiberPoint fp = fiber_point(z, model);
        double s = sigmoid2(fp.v);
        return s * (fp.dv * cplx(std::cos(th), std::sin(th))).real();
    };
    CircleIntegral ci = circle_integral(f, 1e-10);
    ci.value *= rho / pi;
    ci.err *= rho / pi;
    return ci;
}

/// Weighted region masses of one capture disc.
struct CaptureMass {
    double fiber_total = 0.0;   // full fiber mass of the disc
    double fiber_low = 0.0;     // part with v <= v_threshold (the C_0-side spike)
    double base = 0.0;          // base mass of the disc (rho^2 up to micro terms)
    double err = 0.0;
};

/// Local log-polar quadrature for tame zeros: resolves the sigmoid transition
/// in log|z - lambda| down to 1e-16 rho.
inline CaptureMass capture_mass_local_quadrature(cplx lambda, double rho, double v_threshold,
                                                 const SurfaceModel& model) {
    CaptureMass cm;
    constexpr int per_decade = 16, n_ang = 48, decades = 16;
    const int n_rad = per_decade * decades;
    const double step = std::pow(10.0, -1.0 / per_decade);
    CompensatedSum fib_tot, fib_low, base;
    double d_hi = rho;
    for (int k = 0; k < n_rad; ++k) {
        double d_lo = d_hi * step;
        double d_mid = std::sqrt(d_hi * d_lo);
        double ring_area = pi * (d_hi * d_hi - d_lo * d_lo) / n_ang;
        for (int j = 0; j < n_ang; ++j) {
            double th = two_pi * (j + 0.5) / n_ang;
            cplx z = lambda + d_mid * cplx(std::cos(th), std::sin(th));
            FiberPoint fp = fiber_point(z, model);
            double fd = fiber_density_from(fp.v, fp.dv, model.malpha());
            fib_tot.add(fd * ring_area);
            if (fp.v <= v_threshold) fib_low.add(fd * ring_area);
            base.add(ring_area / pi);
        }
        d_hi = d_lo;
    }
    cm.fiber_total = fib_tot.value();
    cm.fiber_low = fib_low.value();
    cm.base = base.value() + d_hi * d_hi;  // innermost micro-disc, density 1/pi
    cm.err = 0.02 * std::abs(cm.fiber_total);  // coarse scheme, used for synthetic cases only
    return cm;
}

inline CaptureMass capture_mass(size_t idx, double rho, double v_threshold,
                                const ModelContext& ctx) {
    const SurfaceModel& model = ctx.model();
    cplx lambda = model.zeros().points()[idx].pos;
    CaptureMass cm;
    if (ctx.hot(idx, rho, v_threshold)) {
        cm.fiber_total = 1.0 + 2.0 * model.malpha() * rho * rho;
        cm.fiber_low = sigmoid2(v_threshold);  // FS mass below the |xi| = e^tau level
        cm.base = rho * rho;
        cm.err = 1e-12;
        return cm;
    }
    CircleIntegral green = capture_fiber_mass_green(lambda, rho, model);
    CaptureMass local = capture_mass_local_quadrature(lambda, rho, v_threshold, model);
    cm.fiber_total = green.value;  // Green value is the accurate total
    double scale = local.fiber_total > 0.0 ? green.value / local.fiber_total : 1.0;
    cm.fiber_low = local.fiber_low * scale;
    cm.base = local.base;
    cm.err = green.err + std::abs(green.value - local.fiber_total);
    return cm;
}

// --- the disc integrator -------------------------------------------------------

/// Per-region base/fiber integrals of weight(z) * density over D_r.
struct RegionIntegral {
    std::vector<double> base, fiber;  // indexed by region
    double err = 0.0;
    bool converged = true;

    double base_total() const { return pairwise_sum(base); }
    double fiber_total() const { return pairwise_sum(fiber); }
    double total(double eps1) const { return base_total() + eps1 * fiber_total(); }
    double region_total(size_t i, double eps1) const { return base[i] + eps1 * fiber[i]; }
};

struct RegionSpec {
    int n_regions = 1;
    // classify(z, v) -> region index; v is the fiber log norm at z.
    std::function<int(cplx, double)> classify = [](cplx, double) { return 0; };
    // Highest v the classifier distinguishes (log M for profiles, -inf for areas):
    // certified far-field cells must sit above it.
    double v_threshold = -1e30;
};

namespace detail {

struct Capture {
    size_t idx;
    cplx lambda;
    double rho;
};

inline std::vector<Capture> make_captures(double r, const QuadratureGrid& grid,
                                          const ZeroLocus& locus) {
    std::vector<Capture> caps;
    const auto& pts = locus.points();
    for (size_t i = 0; i < pts.size(); ++i) {
        double d = std::abs(pts[i].pos);
        if (d >= r) continue;
        double rho = std::min(grid.capture_radius, 0.95 * (r - d));
        if (rho < 1e-8) continue;
        caps.push_back({i, pts[i].pos, rho});
    }
    return caps;
}

}  // namespace detail

class DiscIntegrator {
  public:
    DiscIntegrator(const ModelContext& ctx, const QuadratureGrid& grid,
                   const ThreadPool& pool = global_pool())
        : ctx_(ctx), grid_(grid), pool_(pool) {
        grid.validate();
    }

    /// Single pass at the given grid resolution.
    RegionIntegral pass(double r, const RegionSpec& spec,
                        const std::function<double(cplx)>& weight,
                        const QuadratureGrid& g) const {
        const SurfaceModel& model = ctx_.model();
        const ZeroLocus& locus = model.zeros();
        auto caps = detail::make_captures(r, g, locus);
        // capture lookup by locus index
        std::vector<double> cap_rho(locus.size(), -1.0);
        for (const auto& c : caps) cap_rho[c.idx] = c.rho;

        const int nr = g.n_radial, na = g.n_angular;
        const size_t n_cells = static_cast<size_t>(nr) * na;
        const double dth = two_pi / na;
        const double cert_level = std::max(35.0, spec.v_threshold + 12.0);
        const double ff_fiber = 2.0 * model.malpha() / pi;  // far-field fiber density

        const size_t n_chunks = std::min(n_cells, kDefaultChunks);
        std::vector<std::vector<double>> part_base(n_chunks), part_fiber(n_chunks);

        pool_.run_chunked(n_cells, n_chunks, [&](size_t chunk, size_t cb, size_t ce) {
            std::vector<CompensatedSum> base(spec.n_regions), fiber(spec.n_regions);
            auto deposit = [&](cplx z, double v, double dens_fiber, double area) {
                int reg = spec.classify(z, v);
                double w = weight(z) * area;
                base[reg].add(w / pi);
                fiber[reg].add(w * dens_fiber);
            };
            auto eval_at = [&](cplx z, double area) {
                if (locus.nearest_within(z, 1e-12) >= 0) z += cplx(1e-9, 1e-9);
                FiberPoint fp = fiber_point(z, model);
                deposit(z, fp.v, fiber_density_from(fp.v, fp.dv, model.malpha()), area);
            };
            for (size_t ci = cb; ci < ce; ++ci) {
                int k = static_cast<int>(ci) / na, j = static_cast<int>(ci) % na;
                double t0 = r * k / nr, t1 = r * (k + 1) / nr;
                double tm = 0.5 * (t0 + t1);
                double thm = (j + 0.5) * dth;
                cplx zm = tm * cplx(std::cos(thm), std::sin(thm));
                double cell_area = 0.5 * (t1 * t1 - t0 * t0) * dth;
                double circum = 0.5 * std::hypot(t1 - t0, tm * dth) * 1.2;
                long near = locus.nearest_within(zm, g.refinement_radius + circum);
                if (near < 0) {
                    eval_at(zm, cell_area);
                    continue;
                }
                // subdivide until subcell dimensions resolve the capture geometry
                double target = std::min(0.25, 0.75 * g.capture_radius);
                int sr = std::min(64, std::max(1, static_cast<int>(std::ceil((t1 - t0) / target))));
                int sa = std::min(64, std::max(1, static_cast<int>(std::ceil(tm * dth / target))));
                for (int a = 0; a < sr; ++a) {
                    double u0 = t0 + (t1 - t0) * a / sr, u1 = t0 + (t1 - t0) * (a + 1) / sr;
                    double um = 0.5 * (u0 + u1);
                    for (int b = 0; b < sa; ++b) {
                        double th = (j + (b + 0.5) / sa) * dth;
                        cplx zs = um * cplx(std::cos(th), std::sin(th));
                        double sub_area = 0.5 * (u1 * u1 - u0 * u0) * dth / sa;
                        long ns = locus.nearest_within(zs, g.refinement_radius + 0.5);
                        if (ns < 0) { eval_at(zs, sub_area); continue; }
                        size_t nsu = static_cast<size_t>(ns);
                        double d = std::abs(locus.points()[nsu].pos - zs);
                        if (cap_rho[nsu] > 0.0 && d <= cap_rho[nsu]) continue;  // inside capture
                        double v_model = ctx_.local_level(nsu) + std::log(std::max(d, 1e-300));
                        if (v_model > cert_level) {
                            deposit(zs, v_model, ff_fiber, sub_area);
                        } else {
                            eval_at(zs, sub_area);
                        }
                    }
                }
            }
            part_base[chunk].assign(base.size(), 0.0);
            part_fiber[chunk].assign(fiber.size(), 0.0);
            for (int rr = 0; rr < spec.n_regions; ++rr) {
                part_base[chunk][static_cast<size_t>(rr)] = base[static_cast<size_t>(rr)].value();
                part_fiber[chunk][static_cast<size_t>(rr)] = fiber[static_cast<size_t>(rr)].value();
            }
        });

        RegionIntegral out;
        out.base.assign(static_cast<size_t>(spec.n_regions), 0.0);
        out.fiber.assign(static_cast<size_t>(spec.n_regions), 0.0);
        for (int rr = 0; rr < spec.n_regions; ++rr) {
            std::vector<double> xs;
            xs.reserve(n_chunks);
            for (size_t c = 0; c < n_chunks; ++c)
                xs.push_back(c < part_base.size() && !part_base[c].empty()
                                 ? part_base[c][static_cast<size_t>(rr)] : 0.0);
            out.base[static_cast<size_t>(rr)] = pairwise_sum(xs);
            xs.clear();
            for (size_t c = 0; c < n_chunks; ++c)
                xs.push_back(c < part_fiber.size() && !part_fiber[c].empty()
                                 ? part_fiber[c][static_cast<size_t>(rr)] : 0.0);
            out.fiber[static_cast<size_t>(rr)] = pairwise_sum(xs);
        }

        // capture-disc masses (serial: few thousand closed forms)
        for (const auto& c : caps) {
            CaptureMass cm = capture_mass(c.idx, c.rho, spec.v_threshold, ctx_);
            const auto& p = locus.points()[c.idx];
            double w = weight(p.pos);
            int low_reg = spec.classify(p.pos, -1e30);   // the C_0-side region
            int high_reg = spec.classify(p.pos, 1e30);   // the near-infinity region
            double low = std::min(cm.fiber_low, cm.fiber_total);
            out.fiber[static_cast<size_t>(low_reg)] += w * low;
            out.fiber[static_cast<size_t>(high_reg)] += w * (cm.fiber_total - low);
            out.base[static_cast<size_t>(high_reg)] += w * cm.base;
            out.err += std::abs(w) * cm.err;
        }
        return out;
    }

    /// Two-resolution run with a Richardson-style error estimate.
    RegionIntegral run(double r, const RegionSpec& spec,
                       const std::function<double(cplx)>& weight) const {
        RegionIntegral fine = pass(r, spec, weight, grid_);
        RegionIntegral coarse = pass(r, spec, weight, grid_.halved());
        double diff = 0.0;
        for (int rr = 0; rr < spec.n_regions; ++rr) {
            size_t u = static_cast<size_t>(rr);
            diff += std::abs(fine.base[u] - coarse.base[u]) + std::abs(fine.fiber[u] - coarse.fiber[u]);
        }
        fine.err += diff / 3.0;
        double scale = std::abs(fine.base_total()) + std::abs(fine.fiber_total());
        fine.converged = fine.err <= 0.05 * std::max(scale, 1e-12);
        return fine;
    }

    const ModelContext& context() const { return ctx_; }
    const QuadratureGrid& grid() const { return grid_; }

  private:
    const ModelContext& ctx_;
    QuadratureGrid grid_;
    const ThreadPool& pool_;
};

/// Shift r off Lambda and off exact annulus boundaries (circle integrands of
/// log|psi| are singular there).
inline double nudge_radius(double r, const ZeroLocus& locus) {
    for (int tries = 0; tries < 64; ++tries) {
        bool clean = true;
        for (const auto& p : locus.points())
            if (std::abs(std::abs(p.pos) - r) < 1e-6 * r) { clean = false; break; }
        if (clean) return r;
        r *= 1.0 + 1e-6;
    }
    return r;
}

}  // namespace ahlfors
