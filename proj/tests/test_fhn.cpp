#include <catch2/catch_amalgamated.hpp>

#include "qhnf/fhn.hpp"

using namespace qhnf;

namespace {

// max absolute coefficient of A - B over all components
double field_distance(const VField<double>& A, const VField<double>& B) {
    double dist = 0;
    for (int j = 0; j < 3; ++j) {
        const auto diff = A.c[j] - B.c[j];
        for (const auto& [m, v] : diff.terms()) dist = std::max(dist, std::fabs(v));
    }
    return dist;
}

struct GridRow {
    double b, d;
    double a1;   // -256/29791 style frozen values
    double c1_over_omega;
    double gauge_over_omega;
    double deps_da_over_omega;
    double deps_dc_over_omega;
    double ddelta_da_over_omega;
};

const GridRow grid[] = {
    {0.5, 0.5, -256.0 / 29791.0, -1024.0 / 29791.0, 961.0 / 128.0, -32.0 / 961.0, 8.0 / 31.0,
     64.0 / 961.0},
    {0.8, 0.4, -50000000.0 / 2991008997.0, -156250000.0 / 2991008997.0, 998001.0 / 500000.0,
     -250000.0 / 8982009.0, 625.0 / 2997.0, 500000.0 / 8982009.0},
    {1.1, 0.8, -756250000.0 / 1680914269.0, -859375000.0 / 1680914269.0,
     2827442.0 / 1890625.0, -2750000.0 / 1413721.0, 1250.0 / 1189.0, 5500000.0 / 1413721.0},
    {0.5, 0.6, -1080000.0 / 105823817.0, -3600000.0 / 105823817.0, 223729.0 / 20000.0,
     -13500.0 / 223729.0, 150.0 / 473.0, 27000.0 / 223729.0},
};

} // namespace

TEST_CASE("critical point of the traveling-wave family") {
    const auto p = fhn_critical(0.5, 0.5);
    REQUIRE(p.a_star == -2.0);
    REQUIRE(p.c_star == 0.25);
    REQUIRE(p.omega == Catch::Approx(1.3919410907075054).epsilon(1e-14));
    REQUIRE(p.omega * p.omega == Catch::Approx(31.0 / 16.0).epsilon(1e-14));

    REQUIRE_THROWS_AS(fhn_critical(0.5, 0.0), assumption_error);
    REQUIRE_THROWS_AS(fhn_critical(0.0, 0.5), assumption_error);
    REQUIRE_THROWS_AS(fhn_critical(2.0, 1.0), assumption_error);
    REQUIRE_THROWS_AS(fhn_critical(1.0, 1.0), assumption_error);
}

TEST_CASE("reduction chain brings the family to the circular principal part") {
    const auto red = fhn_reduce(0.5, 0.5);
    const double omega = red.critical.omega;
    const double w3 = omega * omega * omega;
    REQUIRE(red.k1 == Catch::Approx(-0.25 / w3).epsilon(1e-12));
    REQUIRE(red.k2 == Catch::Approx(-16.0 / 31.0).epsilon(1e-12));
    REQUIRE(red.k3 == Catch::Approx(0.5 / w3).epsilon(1e-12));
    REQUIRE(red.shift == Catch::Approx(-red.k3 / 2.0).epsilon(1e-12));
    REQUIRE(red.scale == Catch::Approx(red.k3).epsilon(1e-12));
    REQUIRE(red.residual <= 1e-12);

    // spot magnitudes
    REQUIRE(red.k1 == Catch::Approx(-0.0927).margin(5e-5));
    REQUIRE(red.k2 == Catch::Approx(-0.516).margin(5e-4));
    REQUIRE(red.k3 == Catch::Approx(0.1854).margin(5e-5));
}

TEST_CASE("axis shift and axis rescale commute as coordinate changes") {
    for (const auto& row : grid) {
        const auto cr = fhn_critical(row.b, row.d);
        const auto first =
            fhn_reduce_param<double>(row.b, row.d, cr.a_star, cr.c_star, false);
        const auto second =
            fhn_reduce_param<double>(row.b, row.d, cr.a_star, cr.c_star, true);
        REQUIRE(field_distance(first.reduced, second.reduced) < 1e-12);
    }
}

TEST_CASE("degenerate axis scale is rejected") {
    REQUIRE_THROWS_AS(fhn_reduce(0.5, 1.0), assumption_error);
    REQUIRE_THROWS_WITH(fhn_reduce(0.5, 1.0), "d=1: C=0");
}

TEST_CASE("normal form coefficients match the frozen grid") {
    for (const auto& row : grid) {
        const auto out = fhn_coeffs(row.b, row.d);
        const double omega = out.critical.omega;
        const double w = omega * omega;

        REQUIRE(out.a1 == Catch::Approx(row.a1).epsilon(1e-10));
        REQUIRE(out.c1 == Catch::Approx(row.c1_over_omega * omega).epsilon(1e-10));
        REQUIRE(out.b1 == Catch::Approx(-out.a1).epsilon(1e-10));

        // closed critical forms
        const double om1d2 = (1.0 - row.d) * (1.0 - row.d);
        REQUIRE(out.a1 ==
                Catch::Approx(-row.b * row.b * om1d2 / (w * w * w)).epsilon(1e-10));
        REQUIRE(out.c1 ==
                Catch::Approx(-row.b * om1d2 * omega / (row.d * w * w * w)).epsilon(1e-10));

        // transcribed forms evaluated on the same named input agree with the
        // engine run
        REQUIRE(out.a1_formula == Catch::Approx(out.a1).margin(1e-13));
        REQUIRE(out.b1_formula == Catch::Approx(out.b1).margin(1e-13));
        REQUIRE(out.c1_formula == Catch::Approx(out.c1).margin(1e-13));

        // the printed reference values are the engine values in the other
        // scale normalization
        REQUIRE(out.gauge == Catch::Approx(row.gauge_over_omega * omega).epsilon(1e-12));
        REQUIRE(out.a1_printed == Catch::Approx(out.gauge * out.a1).epsilon(1e-10));
        REQUIRE(out.b1_printed == Catch::Approx(out.gauge * out.b1).epsilon(1e-10));
        REQUIRE(out.c1_printed == Catch::Approx(out.gauge * out.c1).epsilon(1e-10));
    }
    const auto ref = fhn_coeffs(0.5, 0.5);
    REQUIRE(ref.c1_printed == Catch::Approx(-0.5).epsilon(1e-13));
    REQUIRE(ref.a1_printed == Catch::Approx(-0.0898026).margin(1e-7));
}

TEST_CASE("axis quadratic carries the full paraboloid weight") {
    const auto red = fhn_reduce(0.5, 0.5);
    const auto input = fhn_named_input(red.reduced);
    const auto coeffs = fhn_coeffs(0.5, 0.5);
    REQUIRE(coeffs.b1_formula == Catch::Approx(input.get("C002")).margin(1e-14));
}

TEST_CASE("unfolding map matches the frozen grid") {
    for (const auto& row : grid) {
        const auto out = fhn_unfolding(row.b, row.d);
        const double omega = out.critical.omega;
        const double w3 = omega * omega * omega;
        const double bd = row.b * row.d;

        REQUIRE(out.deps_da == Catch::Approx(row.deps_da_over_omega * omega).epsilon(1e-9));
        REQUIRE(out.deps_dc == Catch::Approx(row.deps_dc_over_omega * omega).epsilon(1e-9));
        REQUIRE(out.ddelta_da ==
                Catch::Approx(row.ddelta_da_over_omega * omega).epsilon(1e-9));
        REQUIRE(out.ddelta_dc == Catch::Approx(0.0).margin(1e-12));

        // closed forms of the same map
        REQUIRE(out.deps_da == Catch::Approx(-bd / (2.0 * w3)).epsilon(1e-9));
        REQUIRE(out.deps_dc == Catch::Approx(1.0 / (2.0 * omega)).epsilon(1e-9));
        REQUIRE(out.ddelta_da == Catch::Approx(bd / w3).epsilon(1e-9));
    }
}

TEST_CASE("orbit prediction on the truncated normal form") {
    {
        const auto orb = predict_orbit(-1.0, 1.0, 0.0, -1e-3, 2e-3);
        REQUIRE(orb.exists);
        REQUIRE(orb.radius == Catch::Approx(std::sqrt(2.0) * 1e-3).epsilon(1e-12));
        REQUIRE(orb.z_offset == Catch::Approx(-1e-3).epsilon(1e-12));
        REQUIRE(orb.angular_frequency == Catch::Approx(1.0).epsilon(1e-12));
        REQUIRE(orb.period == Catch::Approx(2.0 * std::numbers::pi).epsilon(1e-12));
        REQUIRE(orb.multiplier_trivial == 1.0);
        REQUIRE(std::abs(orb.multiplier_plus) == Catch::Approx(1.0).epsilon(1e-9));
        REQUIRE(std::abs(orb.multiplier_minus) == Catch::Approx(1.0).epsilon(1e-9));
        // defining identity of the radius
        const double lhs = orb.radius * orb.radius * 1.0 / 2.0;
        REQUIRE(lhs == Catch::Approx(-1e-3 * (-2e-3 + 1e-3)).epsilon(1e-12));
    }
    {
        const auto orb = predict_orbit(-1.0, 1.0, 0.0, -1e-3, 1e-3);
        REQUIRE(!orb.exists);
        REQUIRE(orb.radius == 0.0);
    }
    REQUIRE_THROWS_AS(predict_orbit(0.0, 1.0, 0.0, 1e-3, 1e-3), assumption_error);

    const auto F = truncated_normal_form_field(-1.0, 1.0, 0.25, 2e-3, -1e-3);
    REQUIRE(F.c[0].coeff(Mono{0, 1, 0}) == -1.0);
    REQUIRE(F.c[0].coeff(Mono{1, 0, 0}) == 2e-3);
    REQUIRE(F.c[0].coeff(Mono{0, 1, 1}) == -0.25);
    REQUIRE(F.c[1].coeff(Mono{1, 0, 1}) == 0.25);
    REQUIRE(F.c[1].coeff(Mono{0, 1, 1}) == -1.0);
    REQUIRE(F.c[2].coeff(Mono{0, 0, 1}) == -1e-3);
    REQUIRE(F.c[2].coeff(Mono{2, 0, 0}) == 0.5);
    REQUIRE(F.c[2].coeff(Mono{0, 0, 2}) == 1.0);
}

TEST_CASE("family offsets map into the orbit existence region") {
    const auto co = fhn_coeffs(0.5, 0.5);
    const auto un = fhn_unfolding(0.5, 0.5);
    auto orbit_for = [&](double da, double dc) {
        const double eps = un.deps_da * da + un.deps_dc * dc;
        const double delta = un.ddelta_da * da + un.ddelta_dc * dc;
        return predict_orbit(co.a1, co.b1, co.c1, eps, delta);
    };
    // with dc = 0 both signs of da sit inside the region
    REQUIRE(orbit_for(1e-3, 0.0).exists);
    REQUIRE(orbit_for(-1e-3, 0.0).exists);
    // a dominant dc offset leaves it
    REQUIRE(!orbit_for(1e-3, 1e-2).exists);
    // region boundary in closed form: |b d da| > omega^2 |dc|
    const double omega2 = un.critical.omega * un.critical.omega;
    const double da = 1e-3;
    const double bd = 0.25;
    const double dc_edge = bd * da / omega2;
    REQUIRE(orbit_for(da, 0.5 * dc_edge).exists);
    REQUIRE(!orbit_for(da, 1.5 * dc_edge).exists);
}
