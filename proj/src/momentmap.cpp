#include "lagrange/momentmap.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <sstream>
#include <thread>

#include "lagrange/quadrature.hpp"

namespace lagrange {

namespace {

constexpr double kPi = 3.14159265358979323846;

/* Minimum of Q(z) = A z^2 - 2 B z + C over [0, 2]. */
double quad_min_on_02(double A, double B, double C) {
    double m = std::min(C, 4.0 * A - 4.0 * B + C); // endpoints z=0, z=2
    if (A != 0.0) {
        double z_star = B / A;
        if (z_star > 0.0 && z_star < 2.0) {
            m = std::min(m, (A * z_star - 2.0 * B) * z_star + C);
        }
    }
    return m;
}

/* Core of the z-form period: 4*sqrt(-2c) * int_0^2 dz/sqrt(z(2-z)Q(z))
 * after z = 2 sin^2(theta), which removes both endpoint singularities. */
double tau_quadratic(double A, double B, double C, double c, double rel_tol) {
    if (!(c < 0.0)) {
        std::ostringstream os;
        os << "the z-form period requires a negative energy value, got c = " << c;
        throw EnergyNonnegative(os.str());
    }
    double qmin = quad_min_on_02(A, B, C);
    if (!(qmin > 0.0)) {
        std::ostringstream os;
        os << "quadratic factor " << A << " z^2 - " << 2.0 * B << " z + " << C
           << " is not positive on [0,2] (min " << qmin
           << "); the level is outside the admissible window";
        throw RadicandNonpositive(os.str());
    }
    auto integrand = [&](double th) {
        double s = std::sin(th);
        double z = 2.0 * s * s;
        double Q = (A * z - 2.0 * B) * z + C;
        return 2.0 / std::sqrt(Q);
    };
    return 4.0 * std::sqrt(-2.0 * c) *
           integrate_adaptive(integrand, 0.0, 0.5 * kPi, rel_tol);
}

/* Synthetic division of {a4..a0} by (u - root); returns the cubic factor
 * coefficients {b0..b3}, highest degree first. */
std::array<double, 4> deflate(const std::array<double, 5>& a, double root) {
    std::array<double, 4> b{};
    b[0] = a[0];
    for (int i = 1; i < 4; ++i) b[i] = a[i] + b[i - 1] * root;
    return b;
}

double cubic_at(const std::array<double, 4>& b, double u) {
    return ((b[0] * u + b[1]) * u + b[2]) * u + b[3];
}

/* Period at slice kappa through whichever formula applies: the algebraic
 * z-form when eps = 0 (cheap, singularity-free), else the elliptic
 * turning-point quadrature. */
double period_at(const SeparatedSystem& sys, double kappa, Component comp,
                 const ToleranceSet& tols) {
    if (sys.params.eps == 0.0) {
        double M = sys.which == SystemKind::mu_system ? sys.params.M1()
                                                      : sys.params.M2();
        return tau_euler_z(M, sys.c, kappa, tols);
    }
    return tau(sys, kappa, comp, tols);
}

} // namespace

double tau(const SeparatedSystem& sys, double kappa, Component comp,
           const ToleranceSet& tols, double harmonic_switch) {
    TurningPoint tp = turning_points(sys, kappa, comp);
    bool is_mu = sys.which == SystemKind::mu_system;
    double bottom = is_mu ? 1.0 : (comp == Component::e ? -1.0 : 1.0);
    double width = std::abs(tp.coord - bottom);
    if (width < harmonic_switch) {
        return 2.0 * kPi / std::sqrt(sys.curvature(comp));
    }

    auto b = deflate(sys.level_poly(kappa), tp.coord);
    double x0 = tp.coord;
    double quarter;
    if (is_mu) {
        // P(x) = (x0 - x) * Gdef(x), Gdef > 0 on [1, x0]
        auto integrand = [&](double th) {
            double s = std::sin(th);
            double x = 1.0 + (x0 - 1.0) * s * s;
            double gdef = -cubic_at(b, x);
            double rad = 2.0 * (x + 1.0) * gdef;
            if (!(rad > 0.0)) {
                std::ostringstream os;
                os << "nonpositive radicand " << rad << " inside the mu well at x="
                   << x << " (kappa=" << kappa << ")";
                throw RadicandNonpositive(os.str());
            }
            return 2.0 / std::sqrt(rad);
        };
        quarter = integrate_adaptive(integrand, 0.0, 0.5 * kPi, tols.quad_rel_tol);
    } else if (comp == Component::e) {
        // P(y) = (y - y0) * Hdef(y), Hdef < 0 on [-1, y0)
        auto integrand = [&](double th) {
            double s = std::sin(th);
            double y = -1.0 + (x0 + 1.0) * s * s;
            double rad = 2.0 * (1.0 - y) * (-cubic_at(b, y));
            if (!(rad > 0.0)) {
                std::ostringstream os;
                os << "nonpositive radicand " << rad
                   << " inside the nu well at y=" << y << " (kappa=" << kappa << ")";
                throw RadicandNonpositive(os.str());
            }
            return 2.0 / std::sqrt(rad);
        };
        quarter = integrate_adaptive(integrand, 0.0, 0.5 * kPi, tols.quad_rel_tol);
    } else {
        // m well: oscillation between y0 and 1, Hdef > 0 there
        auto integrand = [&](double th) {
            double s = std::sin(th);
            double y = 1.0 - (1.0 - x0) * s * s;
            double rad = 2.0 * (1.0 + y) * cubic_at(b, y);
            if (!(rad > 0.0)) {
                std::ostringstream os;
                os << "nonpositive radicand " << rad
                   << " inside the nu well at y=" << y << " (kappa=" << kappa << ")";
                throw RadicandNonpositive(os.str());
            }
            return 2.0 / std::sqrt(rad);
        };
        quarter = integrate_adaptive(integrand, 0.0, 0.5 * kPi, tols.quad_rel_tol);
    }
    return 4.0 * quarter;
}

double tau_euler_z(double M, double c, double kappa, const ToleranceSet& tols) {
    return tau_quadratic(M * M, -4.0 * c * kappa, 4.0 * c * c, c,
                         tols.quad_rel_tol);
}

double T_primitive(const SeparatedSystem& sys, Component comp, double kappa,
                   const ToleranceSet& tols) {
    KappaWindow win = kappa_window(comp, sys.params);
    if (kappa < win.lo - 1e-12 || kappa > win.hi + 1e-12) {
        std::ostringstream os;
        os << "kappa = " << kappa << " outside the closed window [" << win.lo
           << ", " << win.hi << "]";
        throw WindowViolation(os.str());
    }
    kappa = std::clamp(kappa, win.lo, win.hi);
    auto f = [&](double s) { return period_at(sys, s, comp, tols); };
    double outer_tol = std::max(30.0 * tols.quad_rel_tol, 1e-12);
    if (sys.which == SystemKind::mu_system) {
        if (kappa == win.hi) return 0.0;
        return integrate_adaptive(f, kappa, win.hi, outer_tol);
    }
    if (kappa == win.lo) return 0.0;
    return integrate_adaptive(f, win.lo, kappa, outer_tol);
}

namespace {

/* W(kappa) = tau2(kappa)/tau1(kappa) for the f'' difference scheme. */
double ratio_at(const SeparatedSystem& mu_sys, const SeparatedSystem& nu_sys,
                Component comp, double kappa, const ToleranceSet& tols) {
    return period_at(nu_sys, kappa, comp, tols) /
           period_at(mu_sys, kappa, comp, tols);
}

} // namespace

ToricProfile profile(double c, const MassParams& params, Component comp, int n,
                     const ToleranceSet& tols, int workers) {
    params.validate();
    if (n < 4) {
        std::ostringstream os;
        os << "a profile needs at least 4 samples, got n = " << n;
        throw ProfileTooSparse(os.str());
    }
    if (!torus_condition(c, params)) {
        std::ostringstream os;
        os << "profiles require eps/8 + c + M1 < 0; got c = " << c
           << " with threshold " << (-params.eps / 8.0 - params.M1());
        throw WindowViolation(os.str());
    }

    ToricProfile prof;
    prof.component = comp;
    prof.c = c;
    prof.params = params;

    KappaWindow win = kappa_window(comp, params);
    SeparatedSystem mu_sys = make_mu_system(c, params);
    SeparatedSystem nu_sys = make_nu_system(c, params);

    double lo = win.lo, hi = win.hi;
    double nominal_width = hi - lo;
    double margin = 1e-6 * nominal_width;

    // The nu level is +kappa; levels at or above the barrier circulate
    // instead of librating, so the sampled window stays strictly below it.
    double nu_barrier = nu_sys.confinement_barrier();
    if (hi >= nu_barrier - margin) {
        hi = nu_barrier - margin;
        std::ostringstream os;
        os << "window top capped at the nu confinement barrier " << nu_barrier
           << " minus margin " << margin
           << " (energy value above the lowest critical value)";
        prof.warnings.push_back(os.str());
    }
    // The mu level is -kappa; with the elastic term the well has an outer
    // rim and levels above it escape.
    double mu_barrier = mu_sys.confinement_barrier();
    if (std::isfinite(mu_barrier) && lo <= -mu_barrier + margin) {
        lo = -mu_barrier + margin;
        std::ostringstream os;
        os << "window bottom capped at minus the mu rim height " << mu_barrier
           << " plus margin " << margin;
        prof.warnings.push_back(os.str());
    }
    if (!(lo < hi)) {
        std::ostringstream os;
        os << "capped kappa window [" << lo << ", " << hi << "] is empty";
        throw WindowViolation(os.str());
    }
    prof.kappa_lo = lo;
    prof.kappa_hi = hi;

    // Chebyshev-clustered nodes, kappa decreasing (so T1 increases).
    std::vector<double> kap(n);
    double mid = 0.5 * (lo + hi), halfw = 0.5 * (hi - lo);
    for (int j = 0; j < n; ++j) {
        kap[j] = mid + halfw * std::cos(kPi * j / (n - 1));
    }
    kap[0] = hi;
    kap[n - 1] = lo;

    prof.samples.assign(n, PeriodSample{});
    std::vector<std::exception_ptr> errors(n);

    double fd_h = 1e-5 * (hi - lo);
    ToleranceSet fd_tols = tols;
    // stencil evaluations carry a tighter quadrature budget so the
    // difference quotient is not dominated by quadrature noise
    fd_tols.quad_rel_tol = std::min(tols.quad_rel_tol, 1e-12);

    auto eval_node = [&](int j) {
        PeriodSample& s = prof.samples[j];
        s.kappa = kap[j];
        s.tau1 = period_at(mu_sys, kap[j], comp, tols);
        s.tau2 = period_at(nu_sys, kap[j], comp, tols);
        s.fprime = -s.tau2 / s.tau1;
        // f'' = (dW/dkappa) / tau1 with W = tau2/tau1, by central
        // differences Richardson-extrapolated once; the stencil center is
        // pulled inside the window at the extreme nodes
        double center = std::clamp(kap[j], lo + 2.0 * fd_h, hi - 2.0 * fd_h);
        double tau1_c = center == kap[j]
                            ? s.tau1
                            : period_at(mu_sys, center, comp, fd_tols);
        auto Wr = [&](double k) { return ratio_at(mu_sys, nu_sys, comp, k, fd_tols); };
        double d_h =
            (Wr(center + fd_h) - Wr(center - fd_h)) / (2.0 * fd_h);
        double d_h2 = (Wr(center + 0.5 * fd_h) - Wr(center - 0.5 * fd_h)) / fd_h;
        s.fsecond = (4.0 * d_h2 - d_h) / 3.0 / tau1_c;
    };

    int nw = std::max(1, std::min(workers, n));
    if (nw == 1) {
        for (int j = 0; j < n; ++j) eval_node(j);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(nw);
        for (int w = 0; w < nw; ++w) {
            pool.emplace_back([&, w]() {
                for (int j = w; j < n; j += nw) {
                    try {
                        eval_node(j);
                    } catch (...) {
                        errors[j] = std::current_exception();
                    }
                }
            });
        }
        for (auto& t : pool) t.join();
        for (int j = 0; j < n; ++j) {
            if (errors[j]) std::rethrow_exception(errors[j]);
        }
    }

    // Primitives by prefix sums over the node segments (fixed-order
    // Gauss-Legendre per segment; the integrand is smooth on the closed
    // window thanks to the harmonic endpoint limits), anchored at the
    // nominal window ends where the primitives vanish by definition.
    std::vector<double> gl_x, gl_w;
    gauss_legendre(32, gl_x, gl_w);
    auto segment = [&](const SeparatedSystem& sys, double a, double bnd) {
        double acc = 0.0;
        double m = 0.5 * (a + bnd), h = 0.5 * (bnd - a);
        for (size_t i = 0; i < gl_x.size(); ++i) {
            acc += gl_w[i] * period_at(sys, m + h * gl_x[i], comp, tols);
        }
        return acc * h;
    };
    auto adaptive_piece = [&](const SeparatedSystem& sys, double a, double bnd) {
        if (a >= bnd) return 0.0;
        return integrate_adaptive(
            [&](double k) { return period_at(sys, k, comp, tols); }, a, bnd,
            std::max(30.0 * tols.quad_rel_tol, 1e-12));
    };
    prof.samples[0].T1 = adaptive_piece(mu_sys, kap[0], win.hi);
    for (int j = 1; j < n; ++j) {
        prof.samples[j].T1 =
            prof.samples[j - 1].T1 + segment(mu_sys, kap[j], kap[j - 1]);
    }
    prof.samples[n - 1].T2 = adaptive_piece(nu_sys, win.lo, kap[n - 1]);
    for (int j = n - 2; j >= 0; --j) {
        prof.samples[j].T2 =
            prof.samples[j + 1].T2 + segment(nu_sys, kap[j + 1], kap[j]);
    }

    for (int j = 0; j + 1 < n; ++j) {
        if (!(prof.samples[j + 1].T1 > prof.samples[j].T1)) {
            std::ostringstream os;
            os << "T1 fails to increase strictly between samples " << j << " and "
               << j + 1 << " (" << prof.samples[j].T1 << " -> "
               << prof.samples[j + 1].T1 << ")";
            throw NonMonotoneAbscissa(os.str());
        }
        if (!(prof.samples[j + 1].T2 < prof.samples[j].T2)) {
            std::ostringstream os;
            os << "ordinate T2 fails to decrease strictly between samples " << j
               << " and " << j + 1;
            prof.warnings.push_back(os.str());
        }
    }
    return prof;
}

double W_ratio(double M1, double M2, double c, double kappa,
               const ToleranceSet& tols) {
    return tau_euler_z(M2, c, kappa, tols) / tau_euler_z(M1, c, kappa, tols);
}

namespace {

double tau_abc(double A, double B, double C, double c, double rel_tol) {
    return tau_quadratic(A, B, C, c, rel_tol);
}

void check_abc(double A, double B, double C, double c) {
    if (!(c < 0.0)) {
        std::ostringstream os;
        os << "quadratic period data requires c < 0, got c = " << c;
        throw EnergyNonnegative(os.str());
    }
    if (std::abs(C - 4.0 * c * c) > 1e-6 * std::max(1.0, std::abs(C))) {
        std::ostringstream os;
        os << "inconsistent data: C = " << C << " but 4c^2 = " << 4.0 * c * c;
        throw RegimeUnsupported(os.str());
    }
    if (!(quad_min_on_02(A, B, C) > 0.0)) {
        std::ostringstream os;
        os << "quadratic " << A << " z^2 - " << 2.0 * B << " z + " << C
           << " is not positive on [0,2]";
        throw RadicandNonpositive(os.str());
    }
}

} // namespace

double eta(double A, double B, double C, double c, const ToleranceSet& tols) {
    check_abc(A, B, C, c);
    double rel = std::min(tols.quad_rel_tol, 1e-12);
    double h = 1e-6 * std::max(1.0, std::sqrt(std::max(A * C, 1.0)));
    for (int k = 0; k < 60; ++k) {
        if (quad_min_on_02(A, B + h, C) > 0.0 &&
            quad_min_on_02(A, B - h, C) > 0.0) {
            break;
        }
        h *= 0.5;
    }
    double t0 = tau_abc(A, B, C, c, rel);
    double d_h = (tau_abc(A, B + h, C, c, rel) - tau_abc(A, B - h, C, c, rel)) /
                 (2.0 * h);
    double d_h2 = (tau_abc(A, B + 0.5 * h, C, c, rel) -
                   tau_abc(A, B - 0.5 * h, C, c, rel)) /
                  h;
    return (4.0 * d_h2 - d_h) / 3.0 / t0;
}

double S_check(double A, double B, double C, double c,
               const ToleranceSet& tols) {
    check_abc(A, B, C, c);
    (void)tols;
    // S = (3 I35 I01 - I13 I23)/2 written as a symmetric double integral;
    // the Chebyshev weight (z(2-z))^{-1/2} is absorbed by z = 1 - cos(theta)
    // on each axis, leaving a tensor-product integral over [0, pi]^2:
    //   S = 1/4 * double-int of
    //       3 (x^3 Qx^{-5/2} Qy^{-1/2} + y^3 Qy^{-5/2} Qx^{-1/2})
    //         - xy (x + y) Qx^{-3/2} Qy^{-3/2}
    auto Q = [&](double z) { return (A * z - 2.0 * B) * z + C; };
    double prev = 0.0;
    bool have_prev = false;
    for (int nn = 48; nn <= 768; nn *= 2) {
        std::vector<double> gx, gw;
        gauss_legendre(nn, gx, gw);
        std::vector<double> z(nn), f12(nn), f32(nn), f52(nn);
        for (int i = 0; i < nn; ++i) {
            double th = 0.5 * kPi * (gx[i] + 1.0); // map [-1,1] -> [0,pi]
            z[i] = 1.0 - std::cos(th);
            double q = Q(z[i]);
            f12[i] = 1.0 / std::sqrt(q);
            f32[i] = f12[i] / q;
            f52[i] = f32[i] / q;
        }
        double acc = 0.0;
        for (int i = 0; i < nn; ++i) {
            double xi = z[i];
            double xi3 = xi * xi * xi;
            for (int j = 0; j < nn; ++j) {
                double yj = z[j];
                double term =
                    3.0 * (xi3 * f52[i] * f12[j] + yj * yj * yj * f52[j] * f12[i]) -
                    xi * yj * (xi + yj) * f32[i] * f32[j];
                acc += gw[i] * gw[j] * term;
            }
        }
        // account for the [-1,1] -> [0,pi] map on both axes and the 1/4
        double s = acc * (0.5 * kPi) * (0.5 * kPi) / 4.0;
        if (have_prev &&
            std::abs(s - prev) <= 1e-8 * std::max(1.0, std::abs(s))) {
            return s;
        }
        prev = s;
        have_prev = true;
    }
    throw QuadratureStall(
        "tensor quadrature for the curvature-sign functional did not settle "
        "to 1e-8");
}

} // namespace lagrange
