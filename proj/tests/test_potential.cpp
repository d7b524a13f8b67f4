#include <doctest.h>

#include <lagrange/errors.hpp>
#include <lagrange/potential.hpp>

#include <algorithm>
#include <cmath>
#include <cstring>

using namespace lagrange;

namespace {

const CriticalPoint* find_near(const std::vector<CriticalPoint>& pts, double q1,
                               double q2, double tol = 1e-6) {
    for (const auto& p : pts) {
        if (std::abs(p.location.q1 - q1) < tol && std::abs(p.location.q2 - q2) < tol)
            return &p;
    }
    return nullptr;
}

int count_kind(const std::vector<CriticalPoint>& pts, CriticalKind k) {
    int n = 0;
    for (const auto& p : pts) n += (p.kind == k) ? 1 : 0;
    return n;
}

} // namespace

TEST_CASE("potential value and gradient at a generic point") {
    MassParams p{1.0, 1.0, 0.0};
    // U = 1/r1 + 1/r2 at q = (0.25, 0): r1 = 0.75, r2 = 0.25.
    double v = eval_potential({0.25, 0.0}, p);
    CHECK(v == doctest::Approx(-(1.0 / 0.75 + 1.0 / 0.25)).epsilon(1e-14));

    // Gradient of V matches a central difference.
    MassParams pe{1.0, 0.5, 1.3};
    PlanePoint q{0.21, -0.37};
    auto g = eval_grad(q, pe);
    double h = 1e-6;
    double gx = (eval_potential({q.q1 + h, q.q2}, pe) -
                 eval_potential({q.q1 - h, q.q2}, pe)) / (2 * h);
    double gy = (eval_potential({q.q1, q.q2 + h}, pe) -
                 eval_potential({q.q1, q.q2 - h}, pe)) / (2 * h);
    CHECK(std::abs(g[0] - gx) < 1e-7);
    CHECK(std::abs(g[1] - gy) < 1e-7);

    // Hessian matches second differences (larger step: second differences
    // amplify roundoff by 1/h^2).
    double h2 = 1e-4;
    auto hes = eval_hessian(q, pe);
    double vpp = eval_potential({q.q1 + h2, q.q2}, pe);
    double vmm = eval_potential({q.q1 - h2, q.q2}, pe);
    double v00 = eval_potential(q, pe);
    CHECK(std::abs(hes[0] - (vpp - 2 * v00 + vmm) / (h2 * h2)) < 1e-4);
}

TEST_CASE("evaluation at a center reports a collision") {
    MassParams p{1.0, 1.0, 0.0};
    CHECK_THROWS_AS((void)eval_potential({-0.5, 0.0}, p), CenterCollision);
    CHECK_THROWS_AS((void)eval_grad({0.5, 0.0}, p), CenterCollision);
}

TEST_CASE("mass validation rejects unusable parameter sets") {
    CHECK_THROWS_AS((void)find_critical_points(MassParams{-1.0, 0.5, 1.0}),
                    RegimeUnsupported);
    CHECK_THROWS_AS((void)find_critical_points(MassParams{1.0, 0.5, -2.0}),
                    RegimeUnsupported);
}

TEST_CASE("equal masses with spring: full census of the five critical points") {
    MassParams p{1.0, 1.0, 1.0};
    auto pts = find_critical_points(p);
    REQUIRE(pts.size() == 5);
    CHECK(count_kind(pts, CriticalKind::saddle) == 3);
    CHECK(count_kind(pts, CriticalKind::maximum) == 2);

    const auto* inner = find_near(pts, 0.0, 0.0);
    REQUIRE(inner != nullptr);
    CHECK(std::abs(inner->value - (-4.0)) < 1e-12);
    CHECK(inner->kind == CriticalKind::saddle);
    CHECK(inner->label == "l1");

    const auto* right = find_near(pts, 1.428585551729080, 0.0);
    REQUIRE(right != nullptr);
    CHECK(std::abs(right->location.q1 - 1.428585551729080) < 1e-12);
    CHECK(std::abs(right->value - (-2.615849758330246)) < 1e-12);
    CHECK(right->kind == CriticalKind::saddle);

    const auto* up = find_near(pts, 0.0, 1.156460570866210);
    REQUIRE(up != nullptr);
    CHECK(std::abs(up->location.q2 - 1.156460570866210) < 1e-12);
    CHECK(std::abs(up->value - (-2.256101577952299)) < 1e-12);
    CHECK(up->kind == CriticalKind::maximum);
}

TEST_CASE("unequal masses with spring: frozen locations, values, ordering") {
    MassParams p{1.0, 0.5, 1.0};
    auto sum = critical_summary(p);

    const auto* l3 = find_near(sum.points, -1.393133762551593, 0.0);
    REQUIRE(l3 != nullptr);
    CHECK(std::abs(l3->value - (-2.354176302265044)) < 1e-12);
    CHECK(l3->label == "l3");

    const auto* l1 = find_near(sum.points, 0.082346142211696, 0.0);
    REQUIRE(l1 != nullptr);
    CHECK(std::abs(l1->value - (-2.917745818649037)) < 1e-12);
    CHECK(l1->label == "l1");

    const auto* l2 = find_near(sum.points, 1.240876938979580, 0.0);
    REQUIRE(l2 != nullptr);
    CHECK(std::abs(l2->value - (-2.019186842370611)) < 1e-12);
    CHECK(l2->label == "l2");

    const auto* off = find_near(sum.points, 0.293700525984100, 0.978488899794353);
    REQUIRE(off != nullptr);
    CHECK(std::abs(off->value - (-1.815550788976150)) < 1e-12);
    CHECK(off->kind == CriticalKind::maximum);

    CHECK(sum.ordering == "l1<l3<l2");
    CHECK(sum.ordering_hypothesis);
    CHECK(std::abs(sum.c0 - (-2.917745818649037)) < 1e-12);
    CHECK(sum.c_crit == doctest::Approx(-1.0 / 8.0 - 1.5).epsilon(1e-15));
    CHECK(sum.holds); // c0 < c_crit here
}

TEST_CASE("vanishing right mass: exact left point and threshold comparison") {
    MassParams p{80.0, 0.0, 8.0};
    auto sum = critical_summary(p);
    CHECK(std::abs(sum.c0 - (-65.0)) < 1e-9);
    CHECK(sum.c_crit == -81.0);
    CHECK_FALSE(sum.holds);

    // The left collinear point is exactly (-5/2, 0) with value -65.
    const auto* l3 = find_near(sum.points, -2.5, 0.0);
    REQUIRE(l3 != nullptr);
    CHECK(std::abs(l3->location.q1 - (-2.5)) < 1e-11);
    CHECK(std::abs(l3->value - (-65.0)) < 1e-9);

    // The right collinear point solves x (x + 1/2)^2 = 10.
    const auto* l2 = find_near(sum.points, 1.834655273140, 0.0, 1e-5);
    REQUIRE(l2 != nullptr);
    double x = l2->location.q1;
    CHECK(std::abs(x * (x + 0.5) * (x + 0.5) - 10.0) < 1e-8);
    CHECK(std::abs(l2->value - (-47.730140747697)) < 1e-8);
}

TEST_CASE("equal masses below the spring threshold: origin is the splitting level") {
    for (double m : {0.5, 2.0}) {
        for (double eps : {0.4 * m, 2.0 * m}) {
            MassParams p{m, m, eps};
            auto sum = critical_summary(p);
            const auto* inner = find_near(sum.points, 0.0, 0.0, 1e-8);
            REQUIRE(inner != nullptr);
            CHECK(std::abs(inner->location.q1) < 1e-10);
            CHECK(std::abs(inner->location.q2) < 1e-10);
            CHECK(std::abs(inner->value - (-4.0 * m)) < 1e-10);
            CHECK(std::abs(sum.c0 - (-4.0 * m)) < 1e-10);
            CHECK(sum.equal_mass_hypothesis);
            CHECK(inner->kind == CriticalKind::saddle);
            CHECK(sum.holds);
        }
    }
}

TEST_CASE("spring-free problem: closed forms for the inner point, both mass signs") {
    // Attracting second center.
    {
        auto [pt, val] = euler_critical_closed_form(MassParams{1.0, 0.25, 0.0});
        CHECK(std::abs(pt.q1 - 1.0 / 6.0) < 1e-14);
        CHECK(std::abs(pt.q2) < 1e-14);
        CHECK(std::abs(val - (-2.25)) < 1e-14);
    }
    {
        auto [pt, val] = euler_critical_closed_form(MassParams{2.0, 0.5, 0.0});
        CHECK(std::abs(pt.q1 - 1.0 / 6.0) < 1e-14); // same mass ratio, same abscissa
        double expect = -(std::sqrt(2.0) + std::sqrt(0.5)) * (std::sqrt(2.0) + std::sqrt(0.5));
        CHECK(std::abs(val - expect) < 1e-13);
    }
    // Repelling second center: the point sits beyond it.
    {
        auto [pt, val] = euler_critical_closed_form(MassParams{1.0, -0.25, 0.0});
        CHECK(std::abs(pt.q1 - 1.5) < 1e-13);
        CHECK(std::abs(val - (-0.25)) < 1e-13);
    }
    {
        auto [pt, val] = euler_critical_closed_form(MassParams{1.0, -0.5, 0.0});
        double s = std::sqrt(2.0);
        CHECK(std::abs(pt.q1 - (0.5 + 1.0 / (s - 1.0))) < 1e-12);
        double expect = -(1.0 - std::sqrt(0.5)) * (1.0 - std::sqrt(0.5));
        CHECK(std::abs(val - expect) < 1e-13);
    }
}

TEST_CASE("spring-free closed forms agree with the numerical census") {
    for (double m2 : {0.25, 0.75, -0.25, -0.4}) {
        MassParams p{1.0, m2, 0.0};
        auto [pt, val] = euler_critical_closed_form(p);
        auto pts = find_critical_points(p);
        REQUIRE(pts.size() == 1); // without the spring only the inner point exists
        CHECK(std::abs(pts[0].location.q1 - pt.q1) < 1e-10);
        CHECK(std::abs(pts[0].location.q2) < 1e-10);
        CHECK(std::abs(pts[0].value - val) < 1e-10);
        CHECK(pts[0].kind == CriticalKind::saddle);
    }
}

TEST_CASE("collinear value orderings in the two hypothesis regimes") {
    // Strong masses relative to the spring.
    {
        auto sum = critical_summary(MassParams{1.0, 0.6, 1.0});
        CHECK(sum.ordering_hypothesis);
        CHECK(sum.ordering == "l1<l3<l2");
    }
    // Weak masses relative to the spring.
    {
        auto sum = critical_summary(MassParams{0.3, 0.2, 4.0});
        CHECK(sum.reversed_hypothesis);
        CHECK(sum.ordering == "l3<l2<l1");
    }
}

TEST_CASE("Hill-region component counts and flags") {
    // Spring, both masses positive, below the splitting level: three bowls,
    // plus the unbounded sea beyond the elastic zero-velocity ring (with a
    // spring, V -> -infinity far away, so the far field is always allowed).
    {
        auto rep = hill_regions(MassParams{1.0, 0.5, 1.0}, -3.2, 96);
        CHECK(rep.component_count == 3);
        CHECK(rep.has_e_component);
        CHECK(rep.has_m_component);
        CHECK(rep.has_unbounded);
        CHECK(rep.labels.size() ==
              static_cast<size_t>(rep.resolution) * static_cast<size_t>(rep.resolution));
    }
    {
        auto rep = hill_regions(MassParams{1.0, 1.0, 1.0}, -4.4, 96);
        CHECK(rep.component_count == 3);
    }
    // No spring, both masses positive, below the splitting level: two discs.
    {
        auto rep = hill_regions(MassParams{1.0, 0.5, 0.0}, -3.0, 96);
        CHECK(rep.component_count == 2);
        CHECK(rep.has_e_component);
        CHECK(rep.has_m_component);
        CHECK_FALSE(rep.has_unbounded);
    }
    // No spring, repelling second center: one disc around the attractor.
    {
        auto rep = hill_regions(MassParams{1.0, -0.25, 0.0}, -0.6, 96);
        CHECK(rep.component_count == 1);
        CHECK(rep.has_e_component);
        CHECK_FALSE(rep.has_m_component);
        CHECK_FALSE(rep.has_unbounded);
    }
}

TEST_CASE("Hill-region counts are stable under grid refinement") {
    auto lo = hill_regions(MassParams{1.0, 0.5, 1.0}, -3.2, 96);
    auto hi = hill_regions(MassParams{1.0, 0.5, 1.0}, -3.2, 192);
    CHECK(lo.component_count == hi.component_count);
}

TEST_CASE("parameter scan is deterministic across worker counts") {
    ParamRange m1s{0.5, 2.5, 3};
    ParamRange m2s{0.2, 1.0, 2};
    ParamRange epss{0.5, 2.0, 2};
    auto a = scan_conjecture(m1s, m2s, epss, 1);
    auto b = scan_conjecture(m1s, m2s, epss, 4);
    REQUIRE(a.size() == b.size());
    REQUIRE(a.size() == static_cast<size_t>(3 * 2 * 2));
    for (size_t i = 0; i < a.size(); ++i) {
        CHECK(std::memcmp(&a[i].c0, &b[i].c0, sizeof(double)) == 0);
        CHECK(std::memcmp(&a[i].c_crit, &b[i].c_crit, sizeof(double)) == 0);
        CHECK(a[i].holds == b[i].holds);
        CHECK(a[i].error == b[i].error);
    }
}

TEST_CASE("scan rows carry the threshold comparison") {
    ParamRange one{80.0, 80.0, 1};
    ParamRange zero{0.0, 0.0, 1};
    ParamRange eight{8.0, 8.0, 1};
    auto rows = scan_conjecture(one, zero, eight, 1);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].error.empty());
    CHECK(std::abs(rows[0].c0 - (-65.0)) < 1e-9);
    CHECK(rows[0].c_crit == -81.0);
    CHECK_FALSE(rows[0].holds);
}
