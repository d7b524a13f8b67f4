#include <doctest.h>

#include <lagrange/dynamics.hpp>
#include <lagrange/errors.hpp>
#include <lagrange/regularization.hpp>

#include <array>
#include <cmath>

using namespace lagrange;

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}

TEST_CASE("leapfrog self-test: unit harmonic oscillator period") {
    auto W = [](double x) { return 0.5 * x * x; };
    auto F = [](double x) { return -x; };
    double dt = kTwoPi / 2048.0;
    long n = static_cast<long>(10.5 * kTwoPi / dt);
    auto traj = integrate_custom(W, F, {0.0, 0.7}, dt, n);
    double period = measure_period(traj);
    CHECK(std::abs(period - kTwoPi) / kTwoPi < 1e-6);
    CHECK(traj.max_drift_rel < 1e-5);
}

TEST_CASE("leapfrog is time-reversible to roundoff") {
    auto sys = make_mu_system(-3.0, MassParams{1.0, 0.5, 1.0});
    auto W = [&](double a) { return sys.W(a); };
    auto F = [&](double a) { return -sys.dW(a); };
    std::array<double, 2> init{0.2, 0.4};
    long n = 5000;
    double dt = 1e-3;
    auto fwd = integrate_custom(W, F, init, dt, n);
    auto back = integrate_custom(W, F, {fwd.final_state[0], -fwd.final_state[1]}, dt, n);
    CHECK(std::abs(back.final_state[0] - init[0]) < 1e-10);
    CHECK(std::abs(-back.final_state[1] - init[1]) < 1e-10);
}

TEST_CASE("measured period converges at second order in the step size") {
    auto sys = make_mu_system(-3.0, MassParams{2.0, 0.0, 0.0});
    const double exact = 5.221622226923270; // frozen quadrature value
    auto run = [&](double dt) {
        long n = static_cast<long>(20.5 * exact / dt);
        auto traj = integrate_1dof(sys, 0.3, dt, n);
        return std::abs(measure_period(traj) - exact);
    };
    double harmonic = kTwoPi / std::sqrt(sys.curvature(Component::e));
    double e1 = run(harmonic / 256.0);
    double e2 = run(harmonic / 512.0);
    CHECK(e1 / e2 > 3.5);
    CHECK(e1 / e2 < 4.5);
}

TEST_CASE("step refinement reaches the drift target and the frozen period") {
    auto sys = make_mu_system(-3.0, MassParams{2.0, 0.0, 0.0});
    auto traj = integrate_to_drift(sys, 0.3, Component::e, 30, 1e-8);
    CHECK(traj.max_drift_rel <= 1e-8);
    double period = measure_period(traj);
    CHECK(std::abs(period - 5.221622226923270) / 5.221622226923270 < 1e-6);
}

TEST_CASE("direct integration agrees with the angular period oracle") {
    MassParams p{1.0, 0.25, 0.0};
    auto nu = make_nu_system(-2.5, p);
    double t_ode = ode_period(nu, 0.1, Component::e);
    // Compare against a longer, finer integration; this keeps the file free
    // of the moment-map layer, which has its own cross-checks.
    double t_fine = ode_period(nu, 0.1, Component::e, 24, 8192);
    CHECK(std::abs(t_ode - t_fine) / t_fine < 1e-5);
}

TEST_CASE("trajectory bookkeeping: crossings, decimation, validation") {
    auto sys = make_mu_system(-3.0, MassParams{2.0, 0.0, 0.0});
    auto traj = integrate_1dof(sys, 0.3, 1e-3, 40000, Component::e, 100);
    CHECK(traj.decimation == 100);
    CHECK(traj.states.size() >= 400);
    CHECK(traj.crossings.size() >= 6); // ~7.6 cycles of length ~5.22
    for (size_t i = 1; i < traj.crossings.size(); ++i)
        CHECK(traj.crossings[i] > traj.crossings[i - 1]);

    CHECK_THROWS_AS((void)integrate_1dof(sys, 0.3, 0.0, 10), LevelInadmissible);
    CHECK_THROWS_AS((void)integrate_1dof(sys, 0.3, 1e-3, 0), LevelInadmissible);
    // Too short to cross the section twice.
    auto stub = integrate_1dof(sys, 0.3, 1e-3, 3);
    CHECK_THROWS_AS((void)measure_period(stub), NoCrossing);
    // Slices outside the window are rejected before any stepping.
    CHECK_THROWS_AS((void)integrate_1dof(sys, 5.0, 1e-3, 10), WindowViolation);
}

TEST_CASE("classical integral on circular orbits about the attracting center") {
    MassParams p{1.3, 0.0, 0.0};
    double r = 0.8;
    double v = std::sqrt(p.m1 / r);
    for (double phi : {0.0, 0.9, 2.2, 4.0}) {
        // Position relative to the attracting center e at (-1/2, 0).
        PlanePoint q{r * std::cos(phi) - 0.5, r * std::sin(phi)};
        std::array<double, 2> mom{-v * std::sin(phi), v * std::cos(phi)};
        double E = euler_integral(q, mom, p);
        CHECK(std::abs(E - p.m1 * r) < 1e-12);
    }
}

TEST_CASE("classical integral is constant along a Kepler ellipse") {
    MassParams p{2.0, 0.0, 0.0};
    double c = -3.0;
    auto el = elements_from_energy(c, p.m1, 0.5, kPi / 2.0);
    CHECK(el.a == doctest::Approx(p.m1 / (2.0 * std::abs(c))).epsilon(1e-15));
    double ell = el.a * (1.0 - el.e * el.e); // semi-latus rectum
    double expect = euler_integral_from_elements(el, p.m1);
    CHECK(expect == doctest::Approx(p.m1 * (ell - el.e)).epsilon(1e-14));

    // omega = pi/2 puts the perihelion on the positive axis through e.
    for (double f : {0.0, 1.0, 2.5, kPi}) {
        double r = ell / (1.0 + el.e * std::cos(f));
        PlanePoint q{r * std::cos(f) - 0.5, r * std::sin(f)};
        double s = std::sqrt(p.m1 / ell);
        std::array<double, 2> mom{-s * std::sin(f), s * (el.e + std::cos(f))};
        // Sanity: the state sits on the right energy level.
        double H = 0.5 * (mom[0] * mom[0] + mom[1] * mom[1]) - p.m1 / r;
        CHECK(std::abs(H - c) < 1e-12);
        CHECK(std::abs(euler_integral(q, mom, p) - expect) < 1e-10);
    }
}

TEST_CASE("classical integral equals twice the angular energy on the zero level") {
    MassParams p{1.0, 0.5, 0.0};
    double c = -2.5;
    const double states[][3] = {
        {0.4, 1.1, 0.3}, {0.9, 2.8, -0.7}, {1.4, 4.0, 0.1}, {0.25, 5.2, 0.9},
    };
    for (const auto& st : states) {
        EllipticState s{st[0], st[1], st[2], 0.0};
        KValues k0 = eval_K(c, p, s);
        double rhs = -k0.K1 - make_nu_system(c, p).W(s.nu);
        if (rhs < 0.0) continue; // slice not reachable with real momentum
        s.pnu = std::sqrt(2.0 * rhs);
        KValues k = eval_K(c, p, s);
        CHECK(std::abs(k.K) < 1e-12);
        auto [q, mom] = cotangent_lift(s);
        double E = euler_integral(q, mom, p);
        CHECK(std::abs(E - 2.0 * k.K2) < 1e-10 * (1.0 + std::abs(2.0 * k.K2)));
    }
}

TEST_CASE("classical integral guards its regime") {
    MassParams spring{1.0, 0.5, 1.0};
    CHECK_THROWS_AS((void)euler_integral({0.3, 0.4}, {0.0, 0.0}, spring),
                    RegimeUnsupported);
    MassParams p{1.0, 0.5, 0.0};
    CHECK_THROWS_AS((void)euler_integral({-0.5, 0.0}, {0.0, 0.0}, p), CenterCollision);
    CHECK_THROWS_AS((void)elements_from_energy(-3.0, 2.0, 1.2, 0.0), RegimeUnsupported);
    CHECK_THROWS_AS((void)elements_from_energy(0.5, 2.0, 0.3, 0.0), RegimeUnsupported);
}
