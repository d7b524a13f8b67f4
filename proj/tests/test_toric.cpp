#include <doctest.h>

#include <lagrange/errors.hpp>
#include <lagrange/momentmap.hpp>
#include <lagrange/toric.hpp>

#include <cmath>
#include <functional>

using namespace lagrange;

namespace {

/* Synthetic boundary curve T2 = f(T1) sampled on [lo, hi] with exact slope
 * and curvature data, shaped like a real profile (T1 increasing, kappa
 * decreasing). */
ToricProfile synthetic(double lo, double hi, int n,
                       const std::function<double(double)>& f,
                       const std::function<double(double)>& fp,
                       const std::function<double(double)>& fpp) {
    ToricProfile prof;
    prof.component = Component::e;
    prof.c = -3.0;
    prof.kappa_lo = 0.0;
    prof.kappa_hi = 1.0;
    for (int j = 0; j < n; ++j) {
        double t1 = lo + (hi - lo) * double(j) / double(n - 1);
        PeriodSample s;
        s.kappa = 1.0 - double(j) / double(n - 1);
        s.T1 = t1;
        s.T2 = f(t1);
        s.tau1 = 1.0;
        s.tau2 = -fp(t1);
        s.fprime = fp(t1);
        s.fsecond = fpp(t1);
        prof.samples.push_back(s);
    }
    return prof;
}

} // namespace

TEST_CASE("straight boundary: linear verdict and exact trapezoid volume") {
    auto prof = synthetic(0.0, 2.0, 21, [](double t) { return 3.0 - 1.5 * t; },
                          [](double) { return -1.5; }, [](double) { return 0.0; });
    CHECK(volume(prof) == doctest::Approx(3.0).epsilon(1e-13));
    auto rep = classify(prof);
    CHECK(rep.monotone);
    CHECK(rep.dynamically_convex);
    CHECK(rep.convexity == Convexity::linear);
    CHECK(to_string(rep.convexity) == std::string("linear"));
    CHECK(rep.witnesses.empty());
}

TEST_CASE("curving-up boundary classifies as a concave domain") {
    auto prof = synthetic(0.0, 1.0, 21,
                          [](double t) { return (t - 2.0) * (t - 2.0) - 1.0; },
                          [](double t) { return 2.0 * (t - 2.0); },
                          [](double) { return 2.0; });
    auto rep = classify(prof);
    CHECK(rep.monotone);
    CHECK(rep.convexity == Convexity::concave_toric);
    CHECK(rep.dynamically_convex);
    CHECK(std::abs(rep.volume - 4.0 / 3.0) < 1e-3);
}

TEST_CASE("curving-down boundary classifies as a convex domain") {
    auto prof = synthetic(0.1, 0.9, 21, [](double t) { return 1.0 - t * t; },
                          [](double t) { return -2.0 * t; },
                          [](double) { return -2.0; });
    auto rep = classify(prof);
    CHECK(rep.monotone);
    CHECK(rep.convexity == Convexity::convex_toric);
}

TEST_CASE("classification is invariant under axis rescaling") {
    auto base = synthetic(0.0, 1.0, 21,
                          [](double t) { return (t - 2.0) * (t - 2.0) - 1.0; },
                          [](double t) { return 2.0 * (t - 2.0); },
                          [](double) { return 2.0; });
    double a = 7.0, b = 0.02;
    ToricProfile scaled = base;
    for (auto& s : scaled.samples) {
        s.T1 *= a;
        s.T2 *= b;
        s.fprime *= b / a;
        s.fsecond *= b / (a * a);
        s.tau2 = -s.fprime;
    }
    auto r0 = classify(base);
    auto r1 = classify(scaled);
    CHECK(r0.convexity == r1.convexity);
    CHECK(r0.monotone == r1.monotone);
    CHECK(std::abs(r1.volume - a * b * r0.volume) < 1e-12 * a * b * r0.volume);
}

TEST_CASE("curvature sign change yields a mixed verdict with witnesses") {
    const double pi = 3.14159265358979323846;
    auto prof = synthetic(0.1, 0.9, 21,
                          [&](double t) { return std::cos(pi * t) + 1.0; },
                          [&](double t) { return -pi * std::sin(pi * t); },
                          [&](double t) { return -pi * pi * std::cos(pi * t); });
    auto rep = classify(prof);
    CHECK(rep.monotone);
    CHECK(rep.convexity == Convexity::mixed);
    CHECK(!rep.witnesses.empty());
    CHECK(!rep.notes.empty());
}

TEST_CASE("a slope violation breaks monotonicity and the convexity label") {
    auto prof = synthetic(0.0, 2.0, 21, [](double t) { return 3.0 - 1.5 * t; },
                          [](double) { return -1.5; }, [](double) { return 0.0; });
    prof.samples[10].fprime = 0.3;
    auto rep = classify(prof);
    CHECK_FALSE(rep.monotone);
    CHECK_FALSE(rep.dynamically_convex);
    bool witnessed = false;
    for (const auto& w : rep.witnesses)
        witnessed = witnessed || w.kappa == prof.samples[10].kappa;
    CHECK(witnessed);
}

TEST_CASE("classification guards its input shape") {
    auto prof = synthetic(0.0, 2.0, 21, [](double t) { return 3.0 - 1.5 * t; },
                          [](double) { return -1.5; }, [](double) { return 0.0; });
    std::swap(prof.samples[5].T1, prof.samples[6].T1);
    CHECK_THROWS_AS((void)classify(prof), NonMonotoneAbscissa);

    auto sparse = synthetic(0.0, 2.0, 10, [](double t) { return 3.0 - 1.5 * t; },
                            [](double) { return -1.5; }, [](double) { return 0.0; });
    CHECK_THROWS_AS((void)classify(sparse), ProfileTooSparse);

    ToricProfile tiny = sparse;
    tiny.samples.resize(1);
    CHECK_THROWS_AS((void)volume(tiny), ProfileTooSparse);
}

TEST_CASE("real spring-free profiles take the expected convexity branch") {
    // Attracting second center: slice curvature is positive.
    {
        auto prof = profile(-3.0, MassParams{1.0, 0.25, 0.0}, Component::e, 21);
        auto rep = classify(prof);
        CHECK(rep.monotone);
        CHECK(rep.dynamically_convex);
        CHECK(rep.convexity == Convexity::concave_toric);
        CHECK(rep.volume > 0.0);
    }
    // Repelling second center: slice curvature flips sign.
    {
        auto prof = profile(-3.0, MassParams{1.0, -0.25, 0.0}, Component::e, 21);
        auto rep = classify(prof);
        CHECK(rep.monotone);
        CHECK(rep.convexity == Convexity::convex_toric);
    }
}
