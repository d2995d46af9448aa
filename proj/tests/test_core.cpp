#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpend/core.hpp"

#include <cmath>
#include <random>

using namespace dpend;

namespace {
PendulumParams fig2_params() { return {0.8, 1.0, 0.0, 0.05, 9.8}; }
}

TEST_CASE("parameter validation") {
    CHECK_NOTHROW((PendulumParams{1, 1, 0.5, 0, 9.8}.validate()));
    CHECK_THROWS_AS((PendulumParams{0, 1, 0, 0, 9.8}.validate()), ValidationError);
    CHECK_THROWS_AS((PendulumParams{1, 0, 0, 0, 9.8}.validate()), ValidationError);
    CHECK_THROWS_AS((PendulumParams{1, 1, 0, -1, 9.8}.validate()), ValidationError);
    CHECK_THROWS_AS((PendulumParams{1, 1, 0, 0, 0}.validate()), ValidationError);
    // r = l is degenerate
    CHECK_THROWS_AS((PendulumParams{1, 1, 1, 0, 9.8}.validate()), ValidationError);
}

TEST_CASE("natural frequency") {
    CHECK(natural_frequency({1, 1.0, 0, 0, 9.8}) ==
          doctest::Approx(std::sqrt(9.8)).epsilon(1e-12));
    CHECK(natural_frequency({1, 0.3630, 0, 0, 9.8}) ==
          doctest::Approx(5.19573).epsilon(1e-4));
    // implied by the driven run at omega = 10.09 rad/s, ratio 1.942
    CHECK(natural_frequency({1, 0.3630, 0, 0, 9.8}) ==
          doctest::Approx(10.09 / 1.942).epsilon(1e-3));
}

TEST_CASE("critical angles") {
    const auto ca = critical_angles({1, 1.0, 0.1, 0, 9.8});
    CHECK(ca.theta_min == doctest::Approx(std::asin(0.1)).epsilon(1e-12));
    CHECK(ca.theta_max == doctest::Approx(M_PI - std::asin(0.1)).epsilon(1e-12));

    const auto zero = critical_angles({1, 1.0, 0.0, 0, 9.8});
    CHECK(zero.theta_min == 0.0);
    CHECK(zero.theta_max == doctest::Approx(M_PI));

    CHECK_THROWS_AS(critical_angles({1, 1.0, 1.0, 0, 9.8}), ValidationError);
}

TEST_CASE("equations of motion: equilibria and odd symmetry") {
    const auto p = fig2_params();
    const auto d = DriveSchedule::single(0.05, 6.26);

    for (double theta : {0.0, M_PI}) {
        const auto dv = eom_full({theta, 0.0, 1.7}, p, d);
        CHECK(dv.dtheta == 0.0);
        CHECK(dv.dtheta_dot == doctest::Approx(0.0).epsilon(1e-12));
    }

    // odd symmetry of the RHS for any damping and drive
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> ang(-3.0, 3.0), vel(-5.0, 5.0),
        time(0.0, 50.0);
    for (int i = 0; i < 200; ++i) {
        const State s{ang(rng), vel(rng), time(rng)};
        const auto a = eom_full(s, p, d);
        const auto b = eom_full({-s.theta, -s.theta_dot, s.t}, p, d);
        CHECK(std::abs(a.dtheta + b.dtheta) < 1e-9);
        CHECK(std::abs(a.dtheta_dot + b.dtheta_dot) < 1e-9);
    }
}

TEST_CASE("small-angle model agrees to cubic order") {
    const auto p = fig2_params();
    const auto d = DriveSchedule::single(0.05, 6.26);

    // tiny angle: relative agreement below 1e-6
    {
        const State s{0.001, 0.0, 0.3};
        const auto f = eom_full(s, p, d);
        const auto l = eom_small_angle(s, p, d);
        CHECK(std::abs(f.dtheta_dot - l.dtheta_dot) <
              1e-6 * std::abs(f.dtheta_dot));
    }

    // undriven, undamped point value: -(g/l) sin(theta) vs -(g/l) theta
    {
        const PendulumParams q{0.8, 1.0, 0.0, 0.0, 9.8};
        const auto none = DriveSchedule::single(0.0, 0.0);
        const State s{0.5, 0.0, 0.0};
        CHECK(eom_small_angle(s, q, none).dtheta_dot ==
              doctest::Approx(-4.9).epsilon(1e-12));
        CHECK(eom_full(s, q, none).dtheta_dot ==
              doctest::Approx(-9.8 * std::sin(0.5)).epsilon(1e-12));
    }

    // |full - small| <= (g/l + A0 w^2/l) |theta|^3 / 6
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> ang(-2.5, 2.5), vel(-4.0, 4.0),
        time(0.0, 20.0);
    const double bound_coeff = 9.8 / 1.0 + 0.05 * 6.26 * 6.26 / 1.0;
    for (int i = 0; i < 500; ++i) {
        const State s{ang(rng), vel(rng), time(rng)};
        const double diff = std::abs(eom_full(s, p, d).dtheta_dot -
                                     eom_small_angle(s, p, d).dtheta_dot);
        const double th = std::abs(s.theta);
        CHECK(diff <= bound_coeff * th * th * th / 6.0 + 1e-15);
    }
}

TEST_CASE("analytic underdamped solution") {
    const PendulumParams p{0.10804, 0.3630, 0, 0.00274, 9.8};

    SUBCASE("t = 0 returns theta0 exactly") {
        CHECK(analytic_underdamped(0.0, 0.25, p) ==
              doctest::Approx(0.25).epsilon(1e-12));
    }

    SUBCASE("zero damping reduces to pure cosine") {
        const PendulumParams q{0.8, 1.0, 0, 0.0, 9.8};
        const double w0 = std::sqrt(9.8);
        for (double t : {0.0, 0.37, 1.4, 5.0})
            CHECK(analytic_underdamped(t, 0.2, q) ==
                  doctest::Approx(0.2 * std::cos(w0 * t)).epsilon(1e-12));
    }

    SUBCASE("decay factor and half-life") {
        const double k = decay_factor(p);
        CHECK(k == doctest::Approx(0.034926).epsilon(1e-4));
        CHECK(std::log(2.0) / k == doctest::Approx(19.85).epsilon(1e-3));
    }

    SUBCASE("overdamped parameters rejected") {
        const PendulumParams q{0.01, 0.1, 0, 10.0, 9.8};
        CHECK_THROWS_AS(analytic_underdamped(1.0, 0.1, q), ValidationError);
    }

    SUBCASE("residual of the damped linear ODE via 5-point stencils") {
        // theta'' + (C/ml) theta' + (g/l) theta should vanish
        const double theta0 = 0.3, h = 1e-3;
        auto f = [&](double t) { return analytic_underdamped(t, theta0, p); };
        for (double t : {0.5, 2.0, 7.3, 15.0, 40.0}) {
            const double fm2 = f(t - 2 * h), fm1 = f(t - h), f0 = f(t),
                         fp1 = f(t + h), fp2 = f(t + 2 * h);
            const double d1 = (fm2 - 8 * fm1 + 8 * fp1 - fp2) / (12 * h);
            const double d2 =
                (-fm2 + 16 * fm1 - 30 * f0 + 16 * fp1 - fp2) / (12 * h * h);
            const double residual =
                d2 + p.C / (p.m * p.l) * d1 + p.g / p.l * f0;
            CHECK(std::abs(residual) < 1e-8);
        }
    }
}

TEST_CASE("Mathieu parameter mapping") {
    const PendulumParams p{0.8, 1.0, 0, 0.0, 9.8};

    CHECK(to_mathieu(p, {0.0, 6.26, 0}).gamma == 0.0);

    const auto mp = to_mathieu(p, {0.05, 6.26, 0});
    CHECK(mp.gamma == doctest::Approx(0.05 * 6.26 * 6.26 / (2 * 9.8))
                          .epsilon(1e-12));
    CHECK(mp.omega0 == natural_frequency(p));

    // round trip: 2 gamma w0^2 cos(wt) reproduces A0 w^2 / l cos(wt)
    for (double t : {0.0, 0.21, 1.3}) {
        const double lhs = mp.omega0 * mp.omega0 -
                           2 * mp.gamma * mp.omega0 * mp.omega0 *
                               std::cos(mp.omega * t);
        const double rhs =
            9.8 / 1.0 - 0.05 * 6.26 * 6.26 / 1.0 * std::cos(6.26 * t);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-14));
    }
}

TEST_CASE("resonance frequencies 2 w0 / n") {
    const auto fr = mathieu_resonance_frequencies(3.1305, 2);
    REQUIRE(fr.size() == 2);
    CHECK(fr[0] == doctest::Approx(6.2610));
    CHECK(fr[1] == doctest::Approx(3.1305));
    CHECK_THROWS_AS(mathieu_resonance_frequencies(1.0, 0), ValidationError);
}

TEST_CASE("drive kinematics") {
    SUBCASE("single stage at t = 0") {
        const auto d = DriveSchedule::single(0.05, 6.26);
        const auto k = drive_kinematics(0.0, d);
        CHECK(k.y == doctest::Approx(0.05).epsilon(1e-14));
        CHECK(k.ydot == doctest::Approx(0.0).epsilon(1e-14));
        CHECK(k.yddot == doctest::Approx(-0.05 * 6.26 * 6.26).epsilon(1e-14));
    }

    SUBCASE("zero amplitude is identically zero") {
        const auto d = DriveSchedule::single(0.0, 3.0);
        for (double t : {0.0, 1.0, 100.0}) {
            const auto k = drive_kinematics(t, d);
            CHECK(k.y == 0.0);
            CHECK(k.ydot == 0.0);
            CHECK(k.yddot == 0.0);
        }
    }

    SUBCASE("two-stage schedule is position-continuous at the switch") {
        const double w0 = std::sqrt(9.8);
        const auto d = DriveSchedule::make(
            {{0.04, 3.136 * w0, 4.166}, {0.04, 2.389 * w0, 0.0}});
        const double eps = 1e-9;
        const auto before = drive_kinematics(4.166 - eps, d);
        const auto after = drive_kinematics(4.166 + eps, d);
        CHECK(std::abs(before.y - after.y) < 1e-6);
        // exact continuity at the switch point itself
        const double y_left =
            d.stages[0].amplitude *
            std::cos(d.stages[0].omega * 4.166 + d.phases[0]);
        const double y_right =
            d.stages[1].amplitude *
            std::cos(d.stages[1].omega * 4.166 + d.phases[1]);
        CHECK(y_left == doctest::Approx(y_right).epsilon(1e-12));
    }

    SUBCASE("stage validation") {
        CHECK_THROWS_AS(DriveSchedule::make({}), ValidationError);
        CHECK_THROWS_AS(DriveSchedule::make({{-0.1, 1.0, 1.0}, {0, 0, 0}}),
                        ValidationError);
        CHECK_THROWS_AS(
            DriveSchedule::make({{0.1, 1.0, 2.0}, {0.1, 2.0, 1.0}, {0, 0, 0}}),
            ValidationError);
    }
}
