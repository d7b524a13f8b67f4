#include "lagrange/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstring>
#include <iomanip>
#include <ostream>
#include <random>
#include <sstream>

#include "lagrange/dynamics.hpp"
#include "lagrange/momentmap.hpp"
#include "lagrange/potential.hpp"
#include "lagrange/regularization.hpp"
#include "lagrange/toric.hpp"

namespace lagrange {

namespace {

constexpr double kPi = 3.14159265358979323846;

double uni(std::mt19937_64& rng, double a, double b) {
    // fixed 53-bit mapping so streams are identical across platforms
    double u = double(rng() >> 11) * 0x1.0p-53;
    return a + (b - a) * u;
}

std::string fmt(double x) {
    std::ostringstream os;
    os << std::setprecision(6) << x;
    return os.str();
}

struct Checker {
    bool ok = true;
    int fails = 0;
    std::ostringstream notes;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            if (++fails <= 4) notes << "VIOLATION: " << what << "; ";
        }
    }
    void note(const std::string& s) { notes << s << "; "; }
};

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

/* Profiles shared between criteria 8, 9 and 10. */
struct ProfiledSet {
    std::string label;
    MassParams params;
    double c = 0.0;
    Component comp = Component::e;
    ToricProfile prof;
};

struct SuiteState {
    std::vector<ProfiledSet> euler_profiles;    // criterion 9 (eps = 0)
    std::vector<ProfiledSet> lagrange_profiles; // criterion 10 (eps > 0)
    bool have_kepler = false;
    ToricProfile kepler; // m2 = 0 profile used by criterion 8
};

constexpr int kProfileSamples = 33;

/* ------------------------------------------------------------------ */

CriterionResult c01_counterexample() {
    CriterionResult r{1, "counterexample-thresholds", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    CriticalSummary s = critical_summary({80.0, 0.0, 8.0});
    ck.require(std::abs(s.c0 - (-65.0)) <= 1e-9,
               "c0 = " + fmt(s.c0) + " not within 1e-9 of -65");
    ck.require(s.c_crit == -81.0, "c_crit = " + fmt(s.c_crit) + " != -81 exactly");
    ck.require(!s.holds, "holds flag should be false");
    r.seconds = since(t0);
    ck.require(r.seconds < 1.0, "runtime " + fmt(r.seconds) + "s exceeds 1s");
    ck.note("c0 err " + fmt(std::abs(s.c0 + 65.0)) + ", c_crit " + fmt(s.c_crit) +
            ", holds=false");
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c02_equal_mass_family() {
    CriterionResult r{2, "equal-mass-family", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    double worst_loc = 0.0, worst_val = 0.0;
    for (double m : {0.5, 1.0, 2.0, 5.0}) {
        for (double eps : {0.8 * m, 1.6 * m, 2.0 * m}) {
            CriticalSummary s = critical_summary({m, m, eps});
            bool found = false;
            for (const auto& p : s.points) {
                double dist = std::hypot(p.location.q1, p.location.q2);
                if (dist < 1e-6) {
                    found = true;
                    worst_loc = std::max(worst_loc, dist);
                    worst_val = std::max(worst_val, std::abs(p.value + 4.0 * m));
                    ck.require(dist < 1e-10, "inner point off origin by " + fmt(dist));
                    ck.require(std::abs(p.value + 4.0 * m) <= 1e-10,
                               "inner value " + fmt(p.value) + " != -4m");
                }
            }
            ck.require(found, "no critical point near the origin for m=" + fmt(m) +
                                  " eps=" + fmt(eps));
            ck.require(s.holds, "c0 < c_crit expected for m=" + fmt(m) +
                                    " eps=" + fmt(eps));
        }
    }
    r.seconds = since(t0);
    ck.require(r.seconds < 1.0, "runtime " + fmt(r.seconds) + "s exceeds 1s");
    ck.note("worst |q| " + fmt(worst_loc) + ", worst value err " + fmt(worst_val));
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c03_closed_forms() {
    CriterionResult r{3, "two-center-closed-forms", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    double worst_x = 0.0, worst_v = 0.0;
    int checked = 0;
    const double fracs[10] = {-0.45, -0.35, -0.25, -0.15, -0.05,
                              0.2,   0.4,   0.6,   0.8,   1.0};
    for (int i = 0; i < 10; ++i) {
        double m1 = 0.5 + 0.5 * i;
        for (double frac : fracs) {
            MassParams p{m1, frac * m1, 0.0};
            auto [loc, val] = euler_critical_closed_form(p);
            auto pts = find_critical_points(p);
            const CriticalPoint* best = nullptr;
            for (const auto& cp : pts) {
                if (cp.location.q2 != 0.0) continue;
                if (!best || std::abs(cp.location.q1 - loc.q1) <
                                 std::abs(best->location.q1 - loc.q1)) {
                    best = &cp;
                }
            }
            ck.require(best != nullptr, "no collinear point found at m1=" +
                                            fmt(m1) + " m2=" + fmt(p.m2));
            if (!best) continue;
            double ex = std::abs(best->location.q1 - loc.q1);
            double ev = std::abs(best->value - val);
            worst_x = std::max(worst_x, ex);
            worst_v = std::max(worst_v, ev);
            ck.require(ex <= 1e-10, "abscissa mismatch " + fmt(ex) + " at m1=" +
                                        fmt(m1) + " m2=" + fmt(p.m2));
            ck.require(ev <= 1e-10, "value mismatch " + fmt(ev) + " at m1=" +
                                        fmt(m1) + " m2=" + fmt(p.m2));
            ++checked;
        }
    }
    ck.note("100 mass pairs; worst abscissa err " + fmt(worst_x) +
            ", worst value err " + fmt(worst_v));
    ck.note("negative-m2 value branch validated as -(sqrt(m1)-sqrt(|m2|))^2");
    r.seconds = since(t0);
    r.pass = ck.ok && checked == 100;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c04_collinear_ordering() {
    CriterionResult r{4, "collinear-value-ordering", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    std::mt19937_64 rng(0x5EED0004ULL);
    int bad_a = 0, bad_b = 0;
    for (int i = 0; i < 50; ++i) {
        double eps = uni(rng, 0.05, 2.0);
        double m2 = uni(rng, 3.0 * eps / 8.0, 3.0 * eps / 8.0 + 2.0);
        double m1 = uni(rng, std::max(m2, eps / 2.0), std::max(m2, eps / 2.0) + 3.0);
        CriticalSummary s = critical_summary({m1, m2, eps});
        if (s.ordering != "l1<l3<l2") {
            ++bad_a;
            ck.require(false, "ordering " + s.ordering + " at m1=" + fmt(m1) +
                                  " m2=" + fmt(m2) + " eps=" + fmt(eps));
        }
    }
    for (int i = 0; i < 50; ++i) {
        double eps = uni(rng, 1.0, 4.0);
        double m1 = uni(rng, 0.02, 0.97 * 3.0 * eps / 8.0);
        // m1 >= m2 is a standing assumption of both ordering regimes.
        double m2 = uni(rng, 0.02, std::min(5.0 * eps / 24.0, m1));
        CriticalSummary s = critical_summary({m1, m2, eps});
        if (s.ordering != "l3<l2<l1") {
            ++bad_b;
            ck.require(false, "reversed ordering " + s.ordering + " at m1=" +
                                  fmt(m1) + " m2=" + fmt(m2) + " eps=" + fmt(eps));
        }
    }
    ck.note("standard regime violations " + std::to_string(bad_a) +
            "/50, reversed regime violations " + std::to_string(bad_b) + "/50");
    r.seconds = since(t0);
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c05_census() {
    CriterionResult r{5, "critical-point-census", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    std::mt19937_64 rng(0x5EED0005ULL);
    int tested = 0, degenerate_skips = 0, attempts = 0;
    while (tested < 50 && attempts < 5000) {
        ++attempts;
        double m1 = uni(rng, 0.05, 3.0);
        double m2 = uni(rng, 0.05, 3.0);
        double eps = uni(rng, 0.3, 3.0);
        double r1 = std::cbrt(2.0 * m1 / eps);
        double r2 = std::cbrt(2.0 * m2 / eps);
        // off-axis pair exists when the two radii and the center gap can
        // form a proper triangle; sample inside that region with margin
        if (!(std::abs(r1 - r2) < 0.98 && r1 + r2 > 1.02)) continue;
        auto pts = find_critical_points({m1, m2, eps});
        int saddles = 0, maxima = 0, degens = 0;
        for (const auto& p : pts) {
            if (p.kind == CriticalKind::degenerate) ++degens;
            else if (p.kind == CriticalKind::saddle) ++saddles;
            else if (p.kind == CriticalKind::maximum) ++maxima;
        }
        if (degens > 0) {
            ++degenerate_skips;
            continue; // reported and excluded per the census contract
        }
        ++tested;
        bool good = pts.size() == 5 && saddles == 3 && maxima == 2;
        ck.require(good, "census " + std::to_string(pts.size()) + " points (" +
                             std::to_string(saddles) + " saddles, " +
                             std::to_string(maxima) + " maxima) at m1=" +
                             fmt(m1) + " m2=" + fmt(m2) + " eps=" + fmt(eps));
    }
    ck.require(tested == 50, "only " + std::to_string(tested) +
                                 " admissible triples reached");
    ck.note("50 triples, " + std::to_string(degenerate_skips) +
            " degenerate draws excluded");
    r.seconds = since(t0);
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c06_triple_oracle() {
    CriterionResult r{6, "triple-oracle-periods", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    const double pairs[5][2] = {
        {1.0, -1.5}, {2.0, -3.0}, {2.0, -2.5}, {0.8, -2.0}, {3.0, -4.0}};
    double worst_z = 0.0, worst_ode = 0.0;
    for (const auto& pr : pairs) {
        double M = pr[0], c = pr[1];
        MassParams p{M, 0.0, 0.0}; // M1 = M2 = M
        SeparatedSystem mu = make_mu_system(c, p);
        SeparatedSystem nu = make_nu_system(c, p);
        for (int i = 1; i <= 9; ++i) {
            double kappa = -M / 2.0 + i * (M / 10.0);
            double tz = tau_euler_z(M, c, kappa);
            for (const SeparatedSystem* sys : {&mu, &nu}) {
                double te = tau(*sys, kappa);
                double tode = ode_period(*sys, kappa);
                double ez = std::abs(te - tz) / tz;
                double eo = std::abs(te - tode) / te;
                worst_z = std::max(worst_z, ez);
                worst_ode = std::max(worst_ode, eo);
                ck.require(ez < 1e-8, "elliptic-vs-z gap " + fmt(ez) + " at M=" +
                                          fmt(M) + " c=" + fmt(c) +
                                          " kappa=" + fmt(kappa));
                ck.require(eo < 1e-4, "quadrature-vs-ode gap " + fmt(eo) +
                                          " at M=" + fmt(M) + " c=" + fmt(c) +
                                          " kappa=" + fmt(kappa));
            }
        }
    }
    r.seconds = since(t0);
    ck.require(r.seconds < 30.0, "runtime " + fmt(r.seconds) + "s exceeds 30s");
    ck.note("90 levels; worst z-form gap " + fmt(worst_z) + ", worst ODE gap " +
            fmt(worst_ode));
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c07_harmonic_endpoint() {
    CriterionResult r{7, "harmonic-endpoint-limit", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    struct Case {
        MassParams p;
        double c;
    } cases[] = {{{2.0, 0.0, 0.0}, -3.0}, {{1.0, 0.5, 1.0}, -3.2}};
    double worst = 0.0;
    for (const auto& cs : cases) {
        SeparatedSystem mu = make_mu_system(cs.c, cs.p);
        KappaWindow win = kappa_window(Component::e, cs.p);
        double kappa = win.hi - 1e-6;
        double t = tau(mu, kappa);
        double th = 2.0 * kPi / std::sqrt(mu.curvature(Component::e));
        double rel = std::abs(t - th) / th;
        worst = std::max(worst, rel);
        ck.require(rel < 1e-3, "harmonic gap " + fmt(rel) + " at m1=" +
                                   fmt(cs.p.m1) + " eps=" + fmt(cs.p.eps));
    }
    ck.note("worst relative gap to 2*pi/sqrt(curvature): " + fmt(worst));
    r.seconds = since(t0);
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

void build_euler_profiles(SuiteState& st) {
    for (double m2 : {0.25, 0.5, 0.75, -0.1, -0.25, -0.4}) {
        ProfiledSet ps;
        ps.params = MassParams{1.0, m2, 0.0};
        ps.c = -3.0;
        ps.comp = Component::e;
        ps.label = "m2=" + fmt(m2);
        ps.prof = profile(ps.c, ps.params, ps.comp, kProfileSamples);
        st.euler_profiles.push_back(std::move(ps));
    }
}

void build_lagrange_profiles(SuiteState& st) {
    const MassParams sets[] = {{1.0, 1.0, 1.0},
                               {1.0, 0.5, 1.0},
                               {2.0, 1.0, 8.0 / 3.0},
                               {0.9, 0.3, 0.8}};
    for (const auto& p : sets) {
        CriticalSummary s = critical_summary(p);
        double c = s.c0 - 0.3 * std::max(1.0, std::abs(s.c0));
        ProfiledSet ps;
        ps.params = p;
        ps.c = c;
        ps.comp = Component::e;
        ps.label = "m1=" + fmt(p.m1) + " m2=" + fmt(p.m2) + " eps=" + fmt(p.eps) +
                   " c=" + fmt(c) + " e";
        ps.prof = profile(c, p, Component::e, kProfileSamples);
        st.lagrange_profiles.push_back(std::move(ps));
    }
    // one m-component profile for coverage
    {
        const MassParams p = sets[0];
        CriticalSummary s = critical_summary(p);
        double c = s.c0 - 0.3 * std::max(1.0, std::abs(s.c0));
        ProfiledSet ps;
        ps.params = p;
        ps.c = c;
        ps.comp = Component::m;
        ps.label = "m1=1 m2=1 eps=1 c=" + fmt(c) + " m";
        ps.prof = profile(c, p, Component::m, kProfileSamples);
        st.lagrange_profiles.push_back(std::move(ps));
    }
}

CriterionResult c09_convexity_signs(SuiteState& st) {
    CriterionResult r{9, "curvature-signs-two-center", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    if (st.euler_profiles.empty()) build_euler_profiles(st);
    for (const auto& ps : st.euler_profiles) {
        const auto& s = ps.prof.samples;
        double mn = 1e300, mx = -1e300;
        for (size_t j = 1; j + 1 < s.size(); ++j) {
            mn = std::min(mn, s[j].fsecond);
            mx = std::max(mx, s[j].fsecond);
        }
        ClassificationReport rep = classify(ps.prof);
        if (ps.params.m2 > 0.0) {
            ck.require(mn > 0.0, ps.label + ": interior min f'' = " + fmt(mn) +
                                     " not positive");
            ck.require(rep.convexity == Convexity::concave_toric,
                       ps.label + ": classified " + to_string(rep.convexity));
        } else {
            ck.require(mx < 0.0, ps.label + ": interior max f'' = " + fmt(mx) +
                                     " not negative");
            ck.require(rep.convexity == Convexity::convex_toric,
                       ps.label + ": classified " + to_string(rep.convexity));
        }
        ck.require(rep.monotone, ps.label + ": not strictly monotone");
    }
    r.seconds = since(t0);
    ck.require(r.seconds < 60.0, "runtime " + fmt(r.seconds) + "s exceeds 60s");
    ck.note("6 two-center profiles at c=-3, curvature signs per mass sign");
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c10_lagrange_profiles(SuiteState& st) {
    CriterionResult r{10, "elastic-profiles-monotone", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    if (st.lagrange_profiles.empty()) build_lagrange_profiles(st);
    for (const auto& ps : st.lagrange_profiles) {
        ClassificationReport rep = classify(ps.prof);
        ck.require(rep.monotone, ps.label + ": not strictly monotone");
        double mn = 1e300, mx = -1e300;
        for (size_t j = 1; j + 1 < ps.prof.samples.size(); ++j) {
            mn = std::min(mn, ps.prof.samples[j].fsecond);
            mx = std::max(mx, ps.prof.samples[j].fsecond);
        }
        ck.note(ps.label + " -> " + std::string(to_string(rep.convexity)) +
                ", f'' in [" + fmt(mn) + ", " + fmt(mx) + "] (reported)");
    }
    r.seconds = since(t0);
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c08_strict_monotonicity(SuiteState& st) {
    CriterionResult r{8, "strict-slope-negativity", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    if (st.euler_profiles.empty()) build_euler_profiles(st);
    if (st.lagrange_profiles.empty()) build_lagrange_profiles(st);
    double worst = -1e300;
    auto scan = [&](const ProfiledSet& ps) {
        const auto& s = ps.prof.samples;
        for (size_t j = 1; j + 1 < s.size(); ++j) {
            worst = std::max(worst, s[j].fprime);
            ck.require(s[j].fprime < -1e-9, ps.label + ": interior f' = " +
                                                fmt(s[j].fprime) + " at kappa " +
                                                fmt(s[j].kappa));
        }
    };
    for (const auto& ps : st.euler_profiles) scan(ps);
    for (const auto& ps : st.lagrange_profiles) scan(ps);

    if (!st.have_kepler) {
        st.kepler = profile(-3.0, MassParams{1.0, 0.0, 0.0}, Component::e,
                            kProfileSamples);
        st.have_kepler = true;
    }
    double worst_kepler = 0.0;
    for (const auto& smp : st.kepler.samples) {
        worst_kepler = std::max(worst_kepler, std::abs(smp.fprime + 1.0));
        ck.require(std::abs(smp.fprime + 1.0) <= 1e-8,
                   "m2=0 slope " + fmt(smp.fprime) + " at kappa " +
                       fmt(smp.kappa));
    }
    ck.note("max interior f' over 11 profiles: " + fmt(worst));
    ck.note("m2=0 worst |f'+1| = " + fmt(worst_kepler));
    r.seconds = since(t0);
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c11_s_positivity() {
    CriterionResult r{11, "curvature-functional-positivity", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    std::mt19937_64 rng(0x5EED0011ULL);
    int done = 0, attempts = 0;
    double smin = 1e300;
    while (done < 20 && attempts < 2000) {
        ++attempts;
        double M = uni(rng, 0.5, 3.0);
        double c = uni(rng, -5.0, -0.6);
        double kappa = uni(rng, -M, M);
        double A = M * M, B = -4.0 * c * kappa, C = 4.0 * c * c;
        // admissibility = the quadratic stays positive on [0, 2]
        double zmin = std::min(C, 4.0 * A - 4.0 * B + C);
        if (A > 0.0) {
            double zs = B / A;
            if (zs > 0.0 && zs < 2.0) zmin = std::min(zmin, (A * zs - 2.0 * B) * zs + C);
        }
        if (!(zmin > 1e-9)) continue;
        double S = S_check(A, B, C, c);
        smin = std::min(smin, S);
        ck.require(S > 0.0, "S = " + fmt(S) + " at A=" + fmt(A) + " B=" + fmt(B) +
                                " C=" + fmt(C));
        ++done;
    }
    ck.require(done == 20, "only " + std::to_string(done) + " admissible draws");
    ck.note("20 random admissible quadratics, min S = " + fmt(smin));
    r.seconds = since(t0);
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c12_conservation() {
    CriterionResult r{12, "conservation-and-first-integral", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;

    struct DriftCase {
        MassParams p;
        double c, kappa;
    } cases[] = {{{2.0, 0.0, 0.0}, -3.0, 0.3}, {{1.0, 0.5, 1.0}, -3.2, 0.2}};
    double worst_drift = 0.0;
    for (const auto& cs : cases) {
        for (SystemKind kind : {SystemKind::mu_system, SystemKind::nu_system}) {
            SeparatedSystem sys = kind == SystemKind::mu_system
                                      ? make_mu_system(cs.c, cs.p)
                                      : make_nu_system(cs.c, cs.p);
            Trajectory tr =
                integrate_to_drift(sys, cs.kappa, Component::e, 100, 1e-8);
            worst_drift = std::max(worst_drift, tr.max_drift_rel);
            ck.require(tr.max_drift_rel < 1e-8,
                       std::string(kind == SystemKind::mu_system ? "mu" : "nu") +
                           " drift " + fmt(tr.max_drift_rel) + " at eps=" +
                           fmt(cs.p.eps));
        }
    }
    ck.note("worst K-level drift over 100 periods: " + fmt(worst_drift));

    // first-integral constancy along a lifted trajectory (eps = 0)
    {
        MassParams p{1.0, 0.5, 0.0};
        double c = -2.5, kappa = 0.2;
        SeparatedSystem mu = make_mu_system(c, p), nu = make_nu_system(c, p);
        double t_mu = 2.0 * kPi / std::sqrt(mu.curvature(Component::e));
        double t_nu = 2.0 * kPi / std::sqrt(nu.curvature(Component::e));
        double dt = std::min(t_mu, t_nu) / 65536.0;
        long n = static_cast<long>(100.0 * std::max(t_mu, t_nu) / dt);
        int decim = 1024;
        Trajectory a = integrate_1dof(mu, kappa, dt, n, Component::e, decim);
        Trajectory b = integrate_1dof(nu, kappa, dt, n, Component::e, decim);
        size_t m = std::min(a.states.size(), b.states.size());
        double e0 = 2.0 * kappa;
        double worst_e = 0.0;
        long used = 0;
        for (size_t i = 0; i < m; ++i) {
            EllipticState s{a.states[i][0], b.states[i][0], a.states[i][1],
                            b.states[i][1]};
            double delta = std::cosh(s.mu) * std::cosh(s.mu) -
                           std::cos(s.nu) * std::cos(s.nu);
            if (delta < 1e-2) continue; // collision fiber: lift ill-conditioned
            auto [q, mom] = cotangent_lift(s);
            double E = euler_integral(q, mom, p);
            worst_e = std::max(worst_e, std::abs(E - e0));
            ++used;
        }
        double denom = std::max(std::abs(e0), 1.0);
        ck.require(used > 1000, "too few lifted samples: " + std::to_string(used));
        ck.require(worst_e / denom < 1e-8,
                   "first-integral drift " + fmt(worst_e / denom) +
                       " along the lifted trajectory");
        ck.note("lifted drift " + fmt(worst_e / denom) + " over " +
                std::to_string(used) + " states");
    }

    // equality with the separated integral at random zero-level states
    {
        MassParams p{1.0, 0.5, 0.0};
        double c = -2.5;
        SeparatedSystem nu = make_nu_system(c, p);
        std::mt19937_64 rng(0x5EED0012ULL);
        int done = 0, attempts = 0;
        double worst = 0.0;
        while (done < 100 && attempts < 10000) {
            ++attempts;
            EllipticState s;
            s.mu = uni(rng, 0.15, 1.8);
            s.nu = uni(rng, 0.0, 2.0 * kPi);
            s.pmu = uni(rng, -1.5, 1.5);
            double delta = std::cosh(s.mu) * std::cosh(s.mu) -
                           std::cos(s.nu) * std::cos(s.nu);
            if (delta < 1e-3) continue;
            double w1 = make_mu_system(c, p).W(s.mu);
            double w2 = nu.W(s.nu);
            double rhs = -(0.5 * s.pmu * s.pmu + w1) - w2; // puts K at zero
            if (rhs < 0.0) continue;
            s.pnu = (rng() & 1ULL) ? std::sqrt(2.0 * rhs) : -std::sqrt(2.0 * rhs);
            KValues k = eval_K(c, p, s);
            auto [q, mom] = cotangent_lift(s);
            double E = euler_integral(q, mom, p);
            double err = std::abs(E - 2.0 * k.K2) / (1.0 + std::abs(2.0 * k.K2));
            worst = std::max(worst, err);
            ck.require(err <= 1e-10, "lift identity error " + fmt(err));
            ++done;
        }
        ck.require(done == 100, "only " + std::to_string(done) + " states");
        ck.note("integral equals twice the nu-energy: worst rel err " +
                fmt(worst) + " over 100 states");
    }

    r.seconds = since(t0);
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c13_pullback_identity() {
    CriterionResult r{13, "time-rescaling-pullback", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    struct Case {
        MassParams p;
        double c;
    } cases[] = {{{1.0, 0.5, 0.0}, -2.5}, {{1.0, 0.8, 1.2}, -4.0}};
    std::mt19937_64 rng(0x5EED0013ULL);
    double worst = 0.0;
    for (const auto& cs : cases) {
        int done = 0, attempts = 0;
        while (done < 500 && attempts < 50000) {
            ++attempts;
            EllipticState s;
            s.mu = uni(rng, 0.05, 2.2);
            s.nu = uni(rng, 0.0, 2.0 * kPi);
            s.pmu = uni(rng, -2.0, 2.0);
            s.pnu = uni(rng, -2.0, 2.0);
            double delta = std::cosh(s.mu) * std::cosh(s.mu) -
                           std::cos(s.nu) * std::cos(s.nu);
            if (delta < 0.05) continue;
            KValues k = eval_K(cs.c, cs.p, s);
            auto [q, mom] = cotangent_lift(s);
            double H = 0.5 * (mom[0] * mom[0] + mom[1] * mom[1]) +
                       eval_potential(q, cs.p);
            double resid = std::abs(k.K - (delta / 4.0) * (H - cs.c));
            double bound = 1e-12 * (1.0 + std::abs(k.K));
            worst = std::max(worst, resid / (1.0 + std::abs(k.K)));
            ck.require(resid < bound, "pullback residual " + fmt(resid) +
                                          " at mu=" + fmt(s.mu) + " nu=" +
                                          fmt(s.nu));
            ++done;
        }
        ck.require(done == 500, "only " + std::to_string(done) + " states");
    }
    ck.note("1000 states over two parameter sets, worst scaled residual " +
            fmt(worst));
    r.seconds = since(t0);
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c14_hill_counts() {
    CriterionResult r{14, "hill-component-counts", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    struct Case {
        MassParams p;
        double c;
        int expect;
        const char* label;
    } cases[] = {{{1.0, 0.5, 1.0}, -3.2, 3, "elastic a"},
                 {{1.0, 1.0, 1.0}, -4.4, 3, "elastic b"},
                 {{1.0, -0.25, 0.0}, -0.6, 1, "two-center negative"}};
    for (const auto& cs : cases) {
        HillReport h = hill_regions(cs.p, cs.c, 192);
        ck.require(h.component_count == cs.expect,
                   std::string(cs.label) + ": " +
                       std::to_string(h.component_count) + " components, expected " +
                       std::to_string(cs.expect));
        ck.require(h.has_e_component,
                   std::string(cs.label) + ": no component around e");
        HillReport h2 = hill_regions(cs.p, cs.c, h.resolution * 2);
        ck.require(h2.component_count == h.component_count,
                   std::string(cs.label) + ": count changed under refinement (" +
                       std::to_string(h.component_count) + " -> " +
                       std::to_string(h2.component_count) + ")");
        if (cs.expect == 1) {
            ck.require(!h.has_unbounded,
                       std::string(cs.label) + ": unexpected unbounded component");
        }
        ck.note(std::string(cs.label) + ": " + std::to_string(h.component_count) +
                " @ " + std::to_string(h.resolution) + "^2");
    }
    r.seconds = since(t0);
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

CriterionResult c15_determinism(double elapsed_so_far) {
    CriterionResult r{15, "suite-runtime-and-determinism", false, 0.0, ""};
    auto t0 = Clock::now();
    Checker ck;
    // parallel evaluation must be bit-identical to serial and to itself
    ToricProfile a = profile(-3.0, MassParams{1.0, 0.5, 0.0}, Component::e, 17,
                             ToleranceSet{}, 3);
    ToricProfile b = profile(-3.0, MassParams{1.0, 0.5, 0.0}, Component::e, 17,
                             ToleranceSet{}, 1);
    bool same = a.samples.size() == b.samples.size();
    if (same) {
        same = std::memcmp(a.samples.data(), b.samples.data(),
                           a.samples.size() * sizeof(PeriodSample)) == 0;
    }
    ck.require(same, "parallel profile differs from serial profile bitwise");

    double z1 = tau_euler_z(2.0, -3.0, 0.3);
    double z2 = tau_euler_z(2.0, -3.0, 0.3);
    double s1 = S_check(4.0, 1.0, 4.0, -1.0);
    double s2 = S_check(4.0, 1.0, 4.0, -1.0);
    ck.require(std::memcmp(&z1, &z2, sizeof z1) == 0 &&
                   std::memcmp(&s1, &s2, sizeof s1) == 0,
               "repeated evaluations differ bitwise");

    auto rows1 = scan_conjecture({0.5, 2.0, 3}, {0.2, 1.0, 3}, {0.5, 1.5, 2}, 4);
    auto rows2 = scan_conjecture({0.5, 2.0, 3}, {0.2, 1.0, 3}, {0.5, 1.5, 2}, 1);
    bool rows_same = rows1.size() == rows2.size();
    for (size_t i = 0; rows_same && i < rows1.size(); ++i) {
        rows_same = std::memcmp(&rows1[i].c0, &rows2[i].c0, sizeof(double)) == 0 &&
                    std::memcmp(&rows1[i].c_crit, &rows2[i].c_crit,
                                sizeof(double)) == 0 &&
                    rows1[i].holds == rows2[i].holds;
    }
    ck.require(rows_same, "parallel scan rows differ from serial rows");

    double total = elapsed_so_far + since(t0);
    ck.require(total < 180.0, "total runtime " + fmt(total) + "s exceeds 180s");
    ck.note("total suite time " + fmt(total) + "s; parallel/serial bitwise equal");
    r.seconds = since(t0);
    r.pass = ck.ok;
    r.detail = ck.notes.str();
    return r;
}

} // namespace

VerifyReport run_acceptance(std::ostream& out) {
    auto t0 = Clock::now();
    VerifyReport rep;
    SuiteState st;
    std::vector<CriterionResult> rs;

    auto run = [&rs](int index, const char* title, auto&& fn) {
        auto start = Clock::now();
        try {
            rs.push_back(fn());
        } catch (const std::exception& e) {
            CriterionResult r{index, title, false, since(start),
                              std::string("exception: ") + e.what()};
            rs.push_back(r);
        }
    };

    run(1, "counterexample-thresholds", [] { return c01_counterexample(); });
    run(2, "equal-mass-family", [] { return c02_equal_mass_family(); });
    run(3, "two-center-closed-forms", [] { return c03_closed_forms(); });
    run(4, "collinear-value-ordering", [] { return c04_collinear_ordering(); });
    run(5, "critical-point-census", [] { return c05_census(); });
    run(6, "triple-oracle-periods", [] { return c06_triple_oracle(); });
    run(7, "harmonic-endpoint-limit", [] { return c07_harmonic_endpoint(); });
    run(9, "curvature-signs-two-center", [&st] { return c09_convexity_signs(st); });
    run(10, "elastic-profiles-monotone",
        [&st] { return c10_lagrange_profiles(st); });
    run(8, "strict-slope-negativity", [&st] { return c08_strict_monotonicity(st); });
    run(11, "curvature-functional-positivity", [] { return c11_s_positivity(); });
    run(12, "conservation-and-first-integral", [] { return c12_conservation(); });
    run(13, "time-rescaling-pullback", [] { return c13_pullback_identity(); });
    run(14, "hill-component-counts", [] { return c14_hill_counts(); });
    rs.push_back(c15_determinism(since(t0)));

    std::sort(rs.begin(), rs.end(),
              [](const CriterionResult& a, const CriterionResult& b) {
                  return a.index < b.index;
              });

    rep.results = rs;
    rep.all_pass = true;
    for (const auto& r : rs) {
        rep.all_pass = rep.all_pass && r.pass;
        out << (r.pass ? "[PASS] " : "[FAIL] ") << std::setw(2)
            << std::setfill('0') << r.index << std::setfill(' ') << " "
            << r.title << " (" << std::fixed << std::setprecision(2) << r.seconds
            << "s) " << r.detail << "\n";
        out.unsetf(std::ios::fixed);
        out << std::setprecision(6);
    }
    rep.seconds = since(t0);
    out << (rep.all_pass ? "ALL CRITERIA PASS" : "SUITE FAILED") << " ("
        << std::fixed << std::setprecision(2) << rep.seconds << "s total)\n";
    out.unsetf(std::ios::fixed);
    return rep;
}

} // namespace lagrange
