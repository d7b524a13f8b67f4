#include "lagrange/regularization.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "lagrange/rootfind.hpp"

namespace lagrange {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegenerateWidth = 1e-8; // turning point collapse threshold
} // namespace

double normalize_nu(double nu) {
    double r = std::remainder(nu, 2.0 * kPi); // centered: [-pi, pi]
    return r < 0.0 ? r + 2.0 * kPi : r;
}

double SeparatedSystem::W_alg(double u) const {
    double e = params.eps;
    if (which == SystemKind::mu_system) {
        double u2 = u * u;
        return -(e / 32.0) * u2 * u2 + (e / 32.0) * u2 - (c / 4.0) * (u2 - 1.0) -
               0.5 * params.M1() * u;
    }
    double u2 = u * u;
    return (e / 32.0) * u2 * u2 - (e / 32.0) * u2 + (c / 4.0) * (u2 - 1.0) +
           0.5 * params.M2() * u;
}

double SeparatedSystem::W(double angle) const {
    return W_alg(which == SystemKind::mu_system ? std::cosh(angle)
                                                : std::cos(angle));
}

double SeparatedSystem::cubic(double u) const {
    double e = params.eps;
    if (which == SystemKind::mu_system) {
        return -(e / 8.0) * u * u * u + (e / 16.0 - c / 2.0) * u - 0.5 * params.M1();
    }
    return (e / 8.0) * u * u * u + (c / 2.0 - e / 16.0) * u + 0.5 * params.M2();
}

double SeparatedSystem::dW(double angle) const {
    if (which == SystemKind::mu_system) {
        return cubic(std::cosh(angle)) * std::sinh(angle);
    }
    return -cubic(std::cos(angle)) * std::sin(angle);
}

double SeparatedSystem::well_angle(Component comp) const {
    if (which == SystemKind::mu_system) return 0.0;
    return comp == Component::e ? kPi : 0.0;
}

double SeparatedSystem::well_bottom(Component comp) const {
    if (which == SystemKind::mu_system) return -0.5 * params.M1();
    return comp == Component::e ? -0.5 * params.M2() : 0.5 * params.M2();
}

double SeparatedSystem::curvature(Component comp) const {
    double e = params.eps;
    if (which == SystemKind::mu_system) {
        return -0.5 * (e / 8.0 + c + params.M1());
    }
    return comp == Component::e ? -0.5 * (e / 8.0 + c - params.M2())
                                : -0.5 * (e / 8.0 + c + params.M2());
}

std::array<double, 5> SeparatedSystem::level_poly(double kappa) const {
    double e = params.eps;
    if (which == SystemKind::mu_system) {
        // -kappa - W1(x)
        return {e / 32.0, 0.0, c / 4.0 - e / 32.0, 0.5 * params.M1(),
                -c / 4.0 - kappa};
    }
    // kappa - W2(y)
    return {-e / 32.0, 0.0, e / 32.0 - c / 4.0, -0.5 * params.M2(),
            kappa + c / 4.0};
}

double SeparatedSystem::confinement_barrier() const {
    if (which == SystemKind::mu_system) {
        if (params.eps == 0.0) return std::numeric_limits<double>::infinity();
        return rim().second; // the outer rim caps the 1-DOF energy level -kappa
    }
    // max of W2(y) on [-1, 1]: coarse scan plus local ternary refinement
    const int n = 2048;
    double best = -std::numeric_limits<double>::infinity();
    double arg = -1.0;
    for (int i = 0; i <= n; ++i) {
        double y = -1.0 + 2.0 * double(i) / n;
        double w = W_alg(y);
        if (w > best) {
            best = w;
            arg = y;
        }
    }
    double lo = std::max(-1.0, arg - 2.0 / n), hi = std::min(1.0, arg + 2.0 / n);
    for (int it = 0; it < 200; ++it) {
        double m1p = lo + (hi - lo) / 3.0, m2p = hi - (hi - lo) / 3.0;
        if (W_alg(m1p) < W_alg(m2p)) lo = m1p; else hi = m2p;
    }
    return std::max(best, W_alg(0.5 * (lo + hi)));
}

std::pair<double, double> SeparatedSystem::rim() const {
    double inf = std::numeric_limits<double>::infinity();
    if (which != SystemKind::mu_system || params.eps == 0.0) return {inf, inf};
    // the cubic factor is positive at x=1 under the torus condition and has
    // a single root beyond it (negative leading coefficient)
    double hi = 2.0;
    while (cubic(hi) > 0.0 && hi < 1e8) hi *= 2.0;
    if (cubic(hi) > 0.0) return {inf, inf};
    double x_rim = solve_bracketed([this](double x) { return cubic(x); }, 1.0, hi);
    return {x_rim, W_alg(x_rim)};
}

SeparatedSystem make_mu_system(double c, const MassParams& p) {
    p.validate();
    return SeparatedSystem{SystemKind::mu_system, c, p};
}

SeparatedSystem make_nu_system(double c, const MassParams& p) {
    p.validate();
    return SeparatedSystem{SystemKind::nu_system, c, p};
}

PlanePoint elliptic_to_cartesian(double mu, double nu) {
    return {0.5 * std::cosh(mu) * std::cos(nu), 0.5 * std::sinh(mu) * std::sin(nu)};
}

std::pair<PlanePoint, std::array<double, 2>> cotangent_lift(
    const EllipticState& s, const ToleranceSet& tols) {
    double nu = normalize_nu(s.nu);
    double ch = std::cosh(s.mu), sh = std::sinh(s.mu);
    double cn = std::cos(nu), sn = std::sin(nu);
    double delta = ch * ch - cn * cn;
    if (delta < tols.collision_tol) {
        std::ostringstream os;
        os << "covering factor cosh^2(mu) - cos^2(nu) = " << delta
           << " below tolerance at (mu, nu) = (" << s.mu << ", " << nu << ")";
        throw CollisionFiber(os.str());
    }
    PlanePoint q{0.5 * ch * cn, 0.5 * sh * sn};
    double p1 = (2.0 / delta) * (sh * cn * s.pmu - ch * sn * s.pnu);
    double p2 = (2.0 / delta) * (ch * sn * s.pmu + sh * cn * s.pnu);
    return {q, {p1, p2}};
}

double eval_W(const SeparatedSystem& sys, double angle) { return sys.W(angle); }

KValues eval_K(double c, const MassParams& p, const EllipticState& s) {
    SeparatedSystem smu = make_mu_system(c, p);
    SeparatedSystem snu = make_nu_system(c, p);
    double nu = normalize_nu(s.nu);
    KValues k;
    k.K1 = 0.5 * s.pmu * s.pmu + smu.W(s.mu);
    k.K2 = 0.5 * s.pnu * s.pnu + snu.W(nu);
    k.K = k.K1 + k.K2;
    return k;
}

XYChart to_xy_chart(const EllipticState& s, const ToleranceSet& tols) {
    double nu = normalize_nu(s.nu);
    double sh = std::sinh(s.mu), sn = std::sin(nu);
    if (std::abs(sh) < tols.collision_tol || std::abs(sn) < tols.collision_tol) {
        std::ostringstream os;
        os << "x-y chart is singular on the axes: sinh(mu) = " << sh
           << ", sin(nu) = " << sn;
        throw ChartSingular(os.str());
    }
    return {std::cosh(s.mu), std::cos(nu), s.pmu / sh, -s.pnu / sn};
}

double K1_xy(double c, const MassParams& p, double x, double px) {
    // pmu = px sinh(mu), so the kinetic term is (x^2 - 1) px^2 / 2.
    return 0.5 * (x * x - 1.0) * px * px + make_mu_system(c, p).W_alg(x);
}

double K2_xy(double c, const MassParams& p, double y, double py) {
    // pnu = -py sin(nu), so the kinetic term is (1 - y^2) py^2 / 2.
    return 0.5 * (1.0 - y * y) * py * py + make_nu_system(c, p).W_alg(y);
}

bool torus_condition(double c, const MassParams& p) {
    return p.eps / 8.0 + c + p.M1() < 0.0;
}

KappaWindow kappa_window(Component comp, const MassParams& p) {
    p.validate();
    double M1 = p.M1(), M2 = p.M2();
    if (M2 < 0.0) {
        std::ostringstream os;
        os << "slicing windows require m1 >= m2, got m1=" << p.m1 << " m2=" << p.m2;
        throw RegimeUnsupported(os.str());
    }
    if (comp == Component::e) return {comp, -0.5 * M2, 0.5 * M1};
    if (p.m2 < 0.0) {
        std::ostringstream os;
        os << "the m-component window [M2/2, M1/2] is empty for m2 = " << p.m2
           << " (the second center repels; no bounded well around m)";
        throw WindowViolation(os.str());
    }
    return {comp, 0.5 * M2, 0.5 * M1};
}

TurningPoint turning_points(const SeparatedSystem& sys, double kappa,
                            Component comp) {
    if (!torus_condition(sys.c, sys.params)) {
        std::ostringstream os;
        os << "turning points need the torus condition eps/8 + c + M1 < 0; got c="
           << sys.c << " with threshold " << (-sys.params.eps / 8.0 - sys.params.M1());
        throw WindowViolation(os.str());
    }
    KappaWindow win = kappa_window(
        sys.which == SystemKind::mu_system ? Component::e : comp, sys.params);
    // the mu window never extends past M1/2 regardless of the component;
    // its lower end is the relevant nu window's lower end
    if (kappa < win.lo - 1e-12 || kappa > win.hi + 1e-12) {
        std::ostringstream os;
        os << "kappa = " << kappa << " outside the admissible window ["
           << win.lo << ", " << win.hi << "]";
        throw WindowViolation(os.str());
    }

    auto poly = sys.level_poly(kappa);
    auto P = [&](double u) {
        return (((poly[0] * u + poly[1]) * u + poly[2]) * u + poly[3]) * u + poly[4];
    };

    TurningPoint tp;
    if (sys.which == SystemKind::mu_system) {
        double at_bottom = P(1.0); // = M1/2 - kappa
        if (at_bottom <= 0.0) {
            tp.coord = 1.0;
            tp.angle = 0.0;
            tp.residual = std::abs(at_bottom);
            return tp;
        }
        auto [x_rim, w_rim] = sys.rim();
        double hi;
        if (std::isfinite(x_rim)) {
            if (P(x_rim) > 0.0) {
                std::ostringstream os;
                os << "level -kappa = " << -kappa << " exceeds the confining rim "
                   << w_rim << " of the mu well; the motion is unbounded";
                throw NoTurningPoint(os.str());
            }
            hi = x_rim;
        } else {
            hi = 2.0;
            while (P(hi) > 0.0 && hi < 1e9) hi *= 2.0;
            if (P(hi) > 0.0) {
                throw NoTurningPoint("no turning point found in the mu well");
            }
        }
        tp.coord = solve_bracketed(P, 1.0, hi, 1e-15);
    } else {
        // nu system: search outward from the well bottom for the first
        // zero of the level gap; absence means the level clears the
        // confinement barrier (rotation, not libration)
        double from = comp == Component::e ? -1.0 : 1.0;
        double at_bottom = P(from); // = kappa -+ M2/2
        if (at_bottom <= 0.0) {
            tp.coord = from;
            tp.angle = comp == Component::e ? kPi : 0.0;
            tp.residual = std::abs(at_bottom);
            return tp;
        }
        const int n = 4096;
        double root = std::numeric_limits<double>::quiet_NaN();
        double prev = from, fprev = at_bottom;
        for (int i = 1; i <= n; ++i) {
            double y = comp == Component::e ? -1.0 + 2.0 * double(i) / n
                                            : 1.0 - 2.0 * double(i) / n;
            double fy = P(y);
            if ((fprev > 0.0) != (fy > 0.0)) {
                root = solve_bracketed(P, std::min(prev, y), std::max(prev, y), 1e-15);
                break;
            }
            prev = y;
            fprev = fy;
        }
        if (!std::isfinite(root)) {
            std::ostringstream os;
            os << "kappa = " << kappa << " clears the nu confinement barrier "
               << sys.confinement_barrier() << "; the nu motion circulates";
            throw NoTurningPoint(os.str());
        }
        tp.coord = root;
    }

    if (sys.which == SystemKind::mu_system) {
        tp.angle = std::acosh(std::max(1.0, tp.coord));
        if (tp.coord - 1.0 < kDegenerateWidth) tp.angle = std::sqrt(
            std::max(0.0, 2.0 * (tp.coord - 1.0))); // acosh loses digits near 1
    } else {
        tp.angle = std::acos(std::clamp(tp.coord, -1.0, 1.0));
    }
    tp.residual = std::abs(P(tp.coord));
    return tp;
}

} // namespace lagrange
