#include <catch2/catch_amalgamated.hpp>

#include "ahlfors/nevanlinna.hpp"

using namespace ahlfors;

namespace {

SurfaceModel trivial_model(double eps1) {
    SurfaceModel m;
    m.eps1 = eps1;
    m.locus = std::make_shared<ZeroLocus>(ZeroLocus::synthetic({}));
    return m;
}

SurfaceModel locus_model(int annuli = 1) {
    LatticeConfig cfg{5};
    auto sched = RadiiSchedule::desk_default(cfg, annuli);
    SurfaceModel m;
    m.locus = std::make_shared<ZeroLocus>(
        ZeroLocus::build_uniform(sched, OffsetCase::sparse(), cfg));
    return m;
}

}  // namespace

TEST_CASE("disc area closed forms") {
    SECTION("trivial section, eps1 -> 0: area = r^2 to 1e-6 relative") {
        auto m = trivial_model(1e-30);
        ModelContext ctx(m);
        DiscIntegrator integ(ctx, {120, 120, 1.0, 0.35});
        for (double r : {3.0, 10.0}) {
            auto rep = disc_area(r, integ);
            REQUIRE(rep.converged);
            REQUIRE(rep.area == Catch::Approx(r * r).epsilon(1e-6));
        }
    }
    SECTION("monotone in r") {
        auto m = locus_model();
        ModelContext ctx(m);
        DiscIntegrator integ(ctx, {160, 160, 1.0, 0.35});
        double prev = 0.0;
        for (double r : {5.0, 10.0, 20.0, 40.0}) {
            double a = disc_area(r, integ).area;
            REQUIRE(a >= prev);
            prev = a;
        }
    }
    SECTION("each enclosed zero contributes ~eps1 of fiber mass") {
        auto m = locus_model();
        ModelContext ctx(m);
        DiscIntegrator integ(ctx, {200, 200, 1.0, 0.35});
        double n = static_cast<double>(m.zeros().size());
        double a = disc_area(45.0, integ).area;
        double expected = 45.0 * 45.0 + m.eps1 * (n + 2.0 * m.malpha() * 45.0 * 45.0);
        REQUIRE(a == Catch::Approx(expected).epsilon(0.02));
    }
}

TEST_CASE("order function") {
    SECTION("r = 1 gives zero") {
        auto m = trivial_model(1e-30);
        ModelContext ctx(m);
        DiscIntegrator integ(ctx, {64, 64, 1.0, 0.35});
        REQUIRE(std::abs(order_function(1.0, integ).area) < 1e-9);
    }
    SECTION("closed form (r^2-1)/2 for the trivial section") {
        auto m = trivial_model(1e-30);
        ModelContext ctx(m);
        DiscIntegrator integ(ctx, {200, 200, 1.0, 0.35});
        for (double r : {4.0, 12.0}) {
            REQUIRE(order_function(r, integ).area ==
                    Catch::Approx((r * r - 1.0) / 2.0).epsilon(2e-4));
        }
    }
    SECTION("Fubini rearrangement matches a direct t-grid integration") {
        auto m = locus_model();
        ModelContext ctx(m);
        DiscIntegrator integ(ctx, {160, 160, 1.0, 0.35});
        double r = 30.0;
        double weighted = order_function(r, integ).area;
        // direct: trapezoid in log t
        int nt = 40;
        double acc = 0.0, prev = disc_area(1.0, integ).area;
        for (int k = 1; k <= nt; ++k) {
            double t = std::exp(std::log(r) * k / nt);
            double cur = disc_area(t, integ).area;
            acc += 0.5 * (prev + cur) * (std::log(r) / nt);
            prev = cur;
        }
        REQUIRE(weighted == Catch::Approx(acc).epsilon(5e-3));
    }
    SECTION("ring trick: T(3r) >= log(3/2) area(2r)") {
        auto m = locus_model();
        ModelContext ctx(m);
        DiscIntegrator integ(ctx, {200, 200, 1.0, 0.35});
        for (double r : {10.0, 15.0, 21.0}) {
            double lhs = order_function(3.0 * r, integ).area;
            double rhs = std::log(1.5) * disc_area(2.0 * r, integ).area;
            REQUIRE(lhs >= rhs * 0.999);
        }
    }
}

TEST_CASE("Jensen identity: the central cross-validation") {
    auto m = locus_model(2);
    ModelContext ctx(m);
    DiscIntegrator integ(ctx, {240, 240, 1.0, 0.35});
    for (double r : {5.0, 18.0, 33.0, 55.0}) {
        double T = order_function(r, integ).area;
        double base = (r * r - 1.0) / 2.0;
        auto jen = jensen_fiber_T(r, m);
        REQUIRE(jen.converged);
        double rhs = base - m.eps1 * jen.value;
        INFO("r = " << r << " T = " << T << " rhs = " << rhs);
        REQUIRE(T == Catch::Approx(rhs).epsilon(0.01));
    }
}

TEST_CASE("jensen_fiber_T basics") {
    auto m = locus_model();
    REQUIRE(jensen_fiber_T(1.0, m).value == Catch::Approx(0.0).margin(1e-12));
    // Far-field circles have log(e^{2v}+1) = 2v up to e^{-2v}, and the circle
    // mean of 2 log|psi| is the Jensen counting sum; differencing two large
    // radii removes the radius-1 terms:
    //   J(r) - J(r0) = -( n log(r/r0) + m alpha (r^2 - r0^2) ).
    double r = 100.0, r0 = 50.0;
    double got = jensen_fiber_T(r, m).value - jensen_fiber_T(r0, m).value;
    double n = static_cast<double>(m.zeros().size());
    double expect = -(n * std::log(r / r0) + m.malpha() * (r * r - r0 * r0));
    REQUIRE(got == Catch::Approx(expect).epsilon(1e-6));
}

TEST_CASE("circle means of log moduli") {
    auto m = locus_model();
    cplx lam = m.zeros().points()[4].pos;

    SECTION("two-circle combination equals -log 2") {
        double eps = 0.2;
        double combo = -circle_mean_log_modulus(lam, 2.0 * eps, CircleKind::psi_factor, m, lam) +
                       circle_mean_log_modulus(lam, eps, CircleKind::psi_factor, m, lam);
        REQUIRE(combo == Catch::Approx(-std::log(2.0)).margin(1e-8));
    }
    SECTION("section mean over a circle at lambda: m alpha (|lambda|^2 + rho^2)") {
        double rho = 0.37;
        double mean = circle_mean_log_modulus(lam, rho, CircleKind::section, m);
        REQUIRE(mean == Catch::Approx(m.malpha() * (abs2(lam) + rho * rho)).epsilon(1e-10));
    }
    SECTION("harmonicity: mean of log|psi| over a small origin circle is 0") {
        double mean = circle_mean_log_modulus({0.0, 0.0}, 2.0, CircleKind::psi, m);
        REQUIRE(mean == Catch::Approx(0.0).margin(1e-8));
    }
}

TEST_CASE("small disc areas around zeros") {
    auto m = locus_model(2);
    ModelContext ctx(m);
    auto [b2, e2] = m.zeros().annulus_range(2);

    SECTION("additivity in the radius") {
        size_t idx = b2 + 3;
        REQUIRE(small_disc_area(idx, 0.125, ctx).area <= small_disc_area(idx, 0.25, ctx).area);
    }
    SECTION("eps -> 0 leaves the uniform eps1-sized core") {
        size_t idx = b2 + 11;
        double a3 = small_disc_area(idx, 0.3, ctx).area;
        double a1 = small_disc_area(idx, 0.1, ctx).area;
        double a03 = small_disc_area(idx, 0.03, ctx).area;
        REQUIRE(a03 < a1);
        REQUIRE(a1 < a3);
        REQUIRE(a03 >= 0.5 * m.eps1);  // positive limit, not 0
        REQUIRE(a03 <= 2.0 * m.eps1);
    }
    SECTION("window: affine-in-eps^2 sandwich with the eq-shaped bounds") {
        double eps = 0.25, ma = m.malpha(), l2 = std::log(2.0);
        for (size_t idx : {b2 + 1, b2 + 7, e2 - 3}) {
            double area = small_disc_area(idx, eps, ctx).area;
            double upper = (1.5 * eps * eps + m.eps1 * (3.0 * ma * eps * eps + l2)) / l2;
            double lower = (0.375 * eps * eps + m.eps1 * (0.75 * ma * eps * eps + l2)) / l2;
            REQUIRE(area <= upper);
            REQUIRE(area >= lower);
        }
    }
}

TEST_CASE("length-area ratio") {
    SECTION("closed form for the trivial section: 2 sqrt(pi)/r") {
        auto m = trivial_model(1e-30);
        ModelContext ctx(m);
        DiscIntegrator integ(ctx, {120, 120, 1.0, 0.35});
        for (double r : {4.0, 9.0}) {
            auto lar = length_area_ratio(r, integ);
            REQUIRE(lar.ratio == Catch::Approx(2.0 * std::sqrt(pi) / r).epsilon(1e-4));
        }
    }
    SECTION("Ahlfors trend: {ratio >= 0.5} has small logarithmic measure") {
        auto m = locus_model();
        ModelContext ctx(m);
        DiscIntegrator integ(ctx, {100, 100, 1.0, 0.35});
        double bad_measure = 0.0;
        double prev_log = std::log(2.0);
        for (int k = 0; k < 40; ++k) {
            double lr = std::log(2.0) + (std::log(60.0) - std::log(2.0)) * k / 39.0;
            auto lar = length_area_ratio(std::exp(lr), integ);
            REQUIRE(lar.ratio > 0.0);
            if (lar.ratio >= 0.5) bad_measure += lr - prev_log;
            prev_log = lr;
        }
        REQUIRE(bad_measure <= 2.0);
    }
}
