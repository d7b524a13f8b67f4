#include <doctest.h>

#include <lagrange/errors.hpp>
#include <lagrange/momentmap.hpp>
#include <lagrange/regularization.hpp>

#include <cmath>

using namespace lagrange;

namespace {
constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
}

TEST_CASE("radial period: quadrature and algebraic form hit the frozen value") {
    auto sys = make_mu_system(-3.0, MassParams{2.0, 0.0, 0.0});
    const double frozen = 5.221622226923270;
    CHECK(std::abs(tau(sys, 0.3) - frozen) / frozen < 1e-9);
    CHECK(std::abs(tau_euler_z(2.0, -3.0, 0.3) - frozen) / frozen < 1e-10);
    // With a vanishing second mass the angular system has the same period
    // function of the slice.
    auto nus = make_nu_system(-3.0, MassParams{2.0, 0.0, 0.0});
    CHECK(std::abs(tau(nus, 0.3, Component::e) - frozen) / frozen < 1e-8);
}

TEST_CASE("algebraic period form: frozen single-center values") {
    CHECK(std::abs(tau_euler_z(2.0, -3.0, 0.0) - 4.782775281702) < 1e-9);
    CHECK(std::abs(tau_euler_z(2.0, -3.0, -0.8) - 4.092025114822) < 1e-9);
    CHECK(std::abs(tau_euler_z(2.0, -3.0, 0.2) - 5.056113163614) < 1e-9);
    CHECK(std::abs(tau_euler_z(2.0, -3.0, 0.9) - 7.480253761516) < 1e-9);
}

TEST_CASE("angular period with a repelling second center: frozen values") {
    MassParams p{1.0, -0.25, 0.0}; // M2 = 1.25
    auto nus = make_nu_system(-3.0, p);
    const double cases[][2] = {
        {-0.5, 4.414146167421},
        {-0.125, 4.806986434084},
        {0.075, 5.093549181461},
        {0.3375, 5.625777592269},
    };
    for (const auto& cs : cases) {
        CHECK(std::abs(tau(nus, cs[0], Component::e) - cs[1]) / cs[1] < 1e-9);
        CHECK(std::abs(tau_euler_z(1.25, -3.0, cs[0]) - cs[1]) / cs[1] < 1e-9);
    }
}

TEST_CASE("the two angular wells oscillate with the same period") {
    MassParams p{1.0, 0.5, 0.0};
    auto nus = make_nu_system(-3.0, p);
    for (double kappa : {0.3, 0.4, 0.6}) {
        double te = tau(nus, kappa, Component::e);
        double tm = tau(nus, kappa, Component::m);
        CHECK(std::abs(te - tm) / te < 1e-8);
    }
}

TEST_CASE("period ratio degenerates to one when the mass gap closes") {
    for (double kappa : {-0.3, 0.0, 0.45})
        CHECK(W_ratio(2.0, 2.0, -3.0, kappa) == 1.0);
}

TEST_CASE("period near the window top matches the harmonic closed form") {
    auto sys = make_mu_system(-3.0, MassParams{2.0, 0.0, 0.0});
    double harmonic = kTwoPi / std::sqrt(sys.curvature(Component::e));
    CHECK(std::abs(harmonic - 8.885765876316732) < 1e-12);
    // Inside the switch distance: exact harmonic formula.
    CHECK(tau(sys, 1.0 - 1e-9) == doctest::Approx(harmonic).epsilon(1e-14));
    // Just outside: full quadrature, continuous against the closed form.
    CHECK(std::abs(tau(sys, 1.0 - 1e-4) - harmonic) / harmonic < 1e-3);
}

TEST_CASE("profile primitives start at zero on their anchored ends") {
    MassParams p{1.0, 0.5, 0.0};
    auto mus = make_mu_system(-3.0, p);
    auto nus = make_nu_system(-3.0, p);
    CHECK(T_primitive(mus, Component::e, 0.75) == 0.0);  // window top
    CHECK(T_primitive(nus, Component::e, -0.25) == 0.0); // window bottom
    CHECK(T_primitive(mus, Component::e, 0.2) > 0.0);
    CHECK(T_primitive(nus, Component::e, 0.2) > 0.0);
}

TEST_CASE("profile rows agree with independently integrated primitives") {
    MassParams p{1.0, 0.5, 0.0};
    auto prof = profile(-3.0, p, Component::e, 17);
    REQUIRE(prof.samples.size() == 17);
    auto mus = make_mu_system(-3.0, p);
    auto nus = make_nu_system(-3.0, p);
    for (size_t j : {4u, 8u, 12u}) {
        const auto& s = prof.samples[j];
        double t1 = T_primitive(mus, Component::e, s.kappa);
        double t2 = T_primitive(nus, Component::e, s.kappa);
        CHECK(std::abs(s.T1 - t1) < 2e-6 * (1.0 + std::abs(t1)));
        CHECK(std::abs(s.T2 - t2) < 2e-6 * (1.0 + std::abs(t2)));
        CHECK(std::abs(s.fprime - (-s.tau2 / s.tau1)) < 1e-14);
    }
    // The boundary curve runs from (0, T2max) to (T1max, 0).
    CHECK(prof.samples.front().T1 == 0.0);
    CHECK(prof.samples.back().T2 == 0.0);
    CHECK(prof.samples.front().T2 > 0.0);
    CHECK(prof.samples.back().T1 > 0.0);
    for (size_t j = 1; j < prof.samples.size(); ++j)
        CHECK(prof.samples[j].T1 > prof.samples[j - 1].T1);
}

TEST_CASE("vanishing second mass: the profile is an exact straight line") {
    auto prof = profile(-3.0, MassParams{1.0, 0.0, 0.0}, Component::e, 17);
    REQUIRE(prof.samples.size() == 17);
    double total = prof.samples.front().T1 + prof.samples.front().T2;
    for (const auto& s : prof.samples) {
        // Both separated systems share one period function of the slice, so
        // the slope is exactly -1 and the curvature identically zero.
        CHECK(s.fprime == -1.0);
        CHECK(s.fsecond == 0.0);
        CHECK(std::abs((s.T1 + s.T2) - total) < 1e-7 * total);
    }
}

TEST_CASE("profiles are bitwise deterministic across worker counts") {
    MassParams p{1.0, 0.5, 0.0};
    auto a = profile(-3.0, p, Component::e, 9, {}, 1);
    auto b = profile(-3.0, p, Component::e, 9, {}, 3);
    REQUIRE(a.samples.size() == b.samples.size());
    for (size_t i = 0; i < a.samples.size(); ++i) {
        CHECK(a.samples[i].kappa == b.samples[i].kappa);
        CHECK(a.samples[i].tau1 == b.samples[i].tau1);
        CHECK(a.samples[i].tau2 == b.samples[i].tau2);
        CHECK(a.samples[i].T1 == b.samples[i].T1);
        CHECK(a.samples[i].T2 == b.samples[i].T2);
        CHECK(a.samples[i].fprime == b.samples[i].fprime);
        CHECK(a.samples[i].fsecond == b.samples[i].fsecond);
    }
}

TEST_CASE("window capping above the splitting energy is reported, not fatal") {
    // At c = -3 the angular barrier (c^2 + M2^2)/(4|c|) = 0.755208... sits
    // below the nominal window top M1/2 = 0.875, so the profile must shrink
    // its window and say so.
    auto prof = profile(-3.0, MassParams{1.0, 0.75, 0.0}, Component::e, 17);
    CHECK(!prof.warnings.empty());
    CHECK(prof.kappa_hi < 0.875 - 1e-9);
    CHECK(std::abs(prof.kappa_hi - (9.0 + 0.0625) / 12.0) < 1e-4);
    for (const auto& s : prof.samples) {
        CHECK(s.kappa <= prof.kappa_hi + 1e-12);
        CHECK(s.kappa >= prof.kappa_lo - 1e-12);
    }
}

TEST_CASE("period and profile error paths") {
    CHECK_THROWS_AS((void)tau_euler_z(2.0, 0.5, 0.1), EnergyNonnegative);
    CHECK_THROWS_AS((void)tau_euler_z(2.0, -3.0, 5.0), RadicandNonpositive);
    MassParams p{1.0, 0.5, 0.0};
    CHECK_THROWS_AS((void)profile(3.0, p, Component::e, 17), WindowViolation);
    CHECK_THROWS_AS((void)profile(-3.0, p, Component::e, 3), ProfileTooSparse);
    auto mus = make_mu_system(-3.0, p);
    CHECK_THROWS_AS((void)T_primitive(mus, Component::e, 2.0), WindowViolation);
}

TEST_CASE("slope log-derivative matches a direct finite difference") {
    double M = 2.0, c = -3.0, kappa = 0.3;
    double A = M * M, B = -4.0 * c * kappa, C = 4.0 * c * c;
    double h = 1e-5; // in kappa
    double tp = tau_euler_z(M, c, kappa + h);
    double tm = tau_euler_z(M, c, kappa - h);
    double t0 = tau_euler_z(M, c, kappa);
    double dtau_dB = (tp - tm) / (2.0 * h) / (-4.0 * c);
    CHECK(std::abs(eta(A, B, C, c) - dtau_dB / t0) < 1e-5 * std::abs(dtau_dB / t0));
}

TEST_CASE("curvature positivity functional: frozen value and admissibility") {
    CHECK(S_check(4.0, 1.0, 4.0, -1.0) == doctest::Approx(0.0285291844).epsilon(1e-6));
    // A single-center point in the (A, B, C) chart.
    CHECK(S_check(4.0, 3.6, 36.0, -3.0) > 0.0);
    // C must be consistent with the energy, and Q must stay positive.
    CHECK_THROWS_AS((void)S_check(4.0, 1.0, 5.0, -1.0), RegimeUnsupported);
    CHECK_THROWS_AS((void)S_check(4.0, 1.0, 4.0, 1.0), EnergyNonnegative);
    CHECK_THROWS_AS((void)S_check(0.01, 60.0, 36.0, -3.0), RadicandNonpositive);
}
