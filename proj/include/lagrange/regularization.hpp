#pragma once

#include <array>
#include <utility>

#include "lagrange/params.hpp"

namespace lagrange {

/* ---------------------------------------------------------------------
 * Elliptic-coordinate covering and the separated regularized systems.
 *
 * Coordinates: q1 = (1/2) cosh(mu) cos(nu), q2 = (1/2) sinh(mu) sin(nu).
 * The map is a two-to-one covering of the plane; the centers lift to
 * m = (mu,nu) = (0,0) and e = (0,pi), where the covering factor
 * Delta = cosh^2(mu) - cos^2(nu) vanishes (collision fibers).
 *
 * On the shifted level {H = c} the time-rescaled Hamiltonian
 *     K = (Delta/4) (H - c)
 * separates as K = K1(mu,pmu) + K2(nu,pnu) with
 *     K1 = pmu^2/2 + W1(mu),  W1 = -(e/32)x^4 + (e/32)x^2 - (c/4)(x^2-1) - (M1/2)x
 *     K2 = pnu^2/2 + W2(nu),  W2 = +(e/32)y^4 - (e/32)y^2 + (c/4)(y^2-1) + (M2/2)y
 * in x = cosh(mu), y = cos(nu) (writing e for eps).  Joint levels are
 * taken as K1 = -kappa, K2 = +kappa throughout the library, so a single
 * kappa names the slice and no caller ever negates it by hand.
 * --------------------------------------------------------------------- */

enum class SystemKind { mu_system, nu_system };
enum class Component { e, m };

struct EllipticState {
    double mu = 0.0;
    double nu = 0.0; // stored reduced to [0, 2*pi)
    double pmu = 0.0;
    double pnu = 0.0;
};

/* Reduce nu by centered remainder, then shift into [0, 2*pi). */
double normalize_nu(double nu);

struct SeparatedSystem {
    SystemKind which = SystemKind::mu_system;
    double c = 0.0;
    MassParams params;

    /* W1(mu) or W2(nu). */
    double W(double angle) const;
    /* dW/d(angle): f(cosh mu) sinh(mu) or -g(cos nu) sin(nu). */
    double dW(double angle) const;
    /* The cubic derivative factor in the algebraic variable:
     * f(x) = -(e/8)x^3 + (e/16 - c/2)x - M1/2   (mu system)
     * g(y) = +(e/8)y^3 + (c/2 - e/16)y + M2/2   (nu system) */
    double cubic(double u) const;
    /* W as a polynomial in the algebraic variable x or y. */
    double W_alg(double u) const;

    /* Well bottoms.  The mu well sits at mu = 0 for either component;
     * the nu well sits at nu = pi (e) or nu = 0 (m). */
    double well_angle(Component comp) const;
    double well_bottom(Component comp) const; // W at the bottom: -M1/2, ±M2/2
    /* Second angle-derivative of W at the well bottom:
     * mu:          f(1)  = -(1/2)(eps/8 + c + M1)
     * nu at 0:    -g(1)  = -(1/2)(eps/8 + c + M2)
     * nu at pi:    g(-1) = -(1/2)(eps/8 + c - M2)  */
    double curvature(Component comp) const;

    /* Level-gap polynomial in the algebraic variable, positive inside the
     * well: mu system P(x) = -kappa - W1(x); nu system P(y) = kappa - W2(y).
     * Coefficients returned highest degree first: {a4, a3, a2, a1, a0}. */
    std::array<double, 5> level_poly(double kappa) const;

    /* Ceiling on the 1-DOF energy level below which the motion librates
     * in its well.  nu system: max of W2 over a full revolution (the level
     * is +kappa).  mu system with eps > 0: the outer rim height of W1 (the
     * level is -kappa); +infinity when eps = 0, where W1 confines at every
     * level. */
    double confinement_barrier() const;
    /* For the mu system with eps > 0: location and height of the outer
     * rim of W1 (beyond it the quartic term takes over and the motion
     * escapes).  Returns {x_rim, W1(x_rim)}; {inf, inf} when eps = 0. */
    std::pair<double, double> rim() const;
};

SeparatedSystem make_mu_system(double c, const MassParams& p);
SeparatedSystem make_nu_system(double c, const MassParams& p);

struct KappaWindow {
    Component component = Component::e;
    double lo = 0.0;
    double hi = 0.0;
};

struct KValues {
    double K = 0.0, K1 = 0.0, K2 = 0.0;
};

struct TurningPoint {
    double coord = 0.0;    // x0 = cosh(mu0) or y0 = cos(nu0)
    double angle = 0.0;    // mu0 >= 0 or nu0 in [0, pi]
    double residual = 0.0; // |level polynomial| at coord
};

struct XYChart {
    double x = 0.0, y = 0.0, px = 0.0, py = 0.0;
};

PlanePoint elliptic_to_cartesian(double mu, double nu);

/* Lift (state in T*(mu,nu)-space) to (q, p) in the plane.  Throws
 * CollisionFiber when the covering factor is below collision_tol. */
std::pair<PlanePoint, std::array<double, 2>> cotangent_lift(
    const EllipticState& s, const ToleranceSet& tols = {});

double eval_W(const SeparatedSystem& sys, double angle);

KValues eval_K(double c, const MassParams& p, const EllipticState& s);

XYChart to_xy_chart(const EllipticState& s, const ToleranceSet& tols = {});

/* K1 and K2 written in the x-y chart (used as a consistency oracle). */
double K1_xy(double c, const MassParams& p, double x, double px);
double K2_xy(double c, const MassParams& p, double y, double py);

bool torus_condition(double c, const MassParams& p);

/* e component: kappa in [-M2/2, M1/2]; m component: [M2/2, M1/2].
 * Requires m1 >= m2 (else RegimeUnsupported); the m window additionally
 * requires m2 >= 0, otherwise it is empty and WindowViolation is thrown. */
KappaWindow kappa_window(Component comp, const MassParams& p);

/* Turning point of the oscillation at joint level kappa (K1 = -kappa for
 * the mu system, K2 = +kappa for the nu one).  comp selects the nu well;
 * it is ignored for the mu system.  Window endpoints return the
 * degenerate turning point (the oscillation collapses to the bottom). */
TurningPoint turning_points(const SeparatedSystem& sys, double kappa,
                            Component comp = Component::e);

} // namespace lagrange
