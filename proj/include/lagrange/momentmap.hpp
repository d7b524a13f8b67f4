#pragma once

#include <string>
#include <vector>

#include "lagrange/params.hpp"
#include "lagrange/regularization.hpp"

namespace lagrange {

/* ---------------------------------------------------------------------
 * Period integrals of the separated systems and the sampled image of the
 * torus moment map.
 *
 * Conventions (fixed across the whole library):
 *   - kappa is always the slicing parameter of the joint level
 *     K1 = -kappa, K2 = +kappa; no function takes a raw 1-DOF level.
 *   - tau1(kappa): period of the mu oscillation on its level -kappa.
 *     tau2(kappa): period of the nu oscillation on its level +kappa.
 *   - T1(kappa) = integral of tau1 from kappa up to the window top M1/2,
 *     T2(kappa) = integral of tau2 from the window bottom up to kappa,
 *     so the boundary curve (T1, T2)(kappa) starts at (0, T2max) and
 *     ends at (T1max, 0) as kappa sweeps the window downward.
 *   - The boundary function f satisfies T2 = f(T1); its derivatives are
 *     f' = -tau2(kappa)/tau1(kappa) and f'' = (dW/dkappa)/tau1(kappa)
 *     with W(kappa) = tau2(kappa)/tau1(kappa).
 * --------------------------------------------------------------------- */

struct PeriodSample {
    double kappa = 0.0;
    double tau1 = 0.0;
    double tau2 = 0.0;
    double T1 = 0.0;
    double T2 = 0.0;
    double fprime = 0.0;
    double fsecond = 0.0;
};

struct ToricProfile {
    Component component = Component::e;
    double c = 0.0;
    MassParams params;
    /* Window actually sampled: the nominal kappa window, shrunk away from
     * a level that would clear a confinement barrier (see warnings). */
    double kappa_lo = 0.0;
    double kappa_hi = 0.0;
    std::vector<PeriodSample> samples; // ordered by strictly increasing T1
    std::vector<std::string> warnings; // window capping, ordering anomalies
};

/* Period of one separated oscillation at joint slice kappa.  Uses the
 * turning-point quadrature with both endpoint singularities substituted
 * away; switches to the harmonic closed form 2*pi/sqrt(curvature) when
 * the turning point sits within `harmonic_switch` of the well bottom. */
double tau(const SeparatedSystem& sys, double kappa,
           Component comp = Component::e, const ToleranceSet& tols = {},
           double harmonic_switch = 1e-8);

/* The same period in the algebraic z-form available when eps = 0:
 *     4*sqrt(-2c) * integral_0^2 dz / sqrt(z(2-z)(M^2 z^2 + 8 c kappa z + 4 c^2)),
 * with M = M1 for the mu system and M = M2 for the nu one.  Throws
 * EnergyNonnegative for c >= 0 and RadicandNonpositive when the quadratic
 * factor is not positive on all of [0, 2]. */
double tau_euler_z(double M, double c, double kappa,
                   const ToleranceSet& tols = {});

/* Profile coordinate of the moment-map boundary at slice kappa:
 * mu system: T1 = integral_kappa^{M1/2} tau1; nu system: T2 = integral
 * from the component window bottom up to kappa of tau2.  kappa must lie
 * in the closed window. */
double T_primitive(const SeparatedSystem& sys, Component comp, double kappa,
                   const ToleranceSet& tols = {});

/* Sample the moment-map boundary with n Chebyshev-clustered nodes on the
 * kappa window (endpoints included).  Every sample carries both periods,
 * both primitives, f' and f''.  The window is shrunk with a warning when
 * a level would clear a confinement barrier (which happens for energies
 * above the lowest critical value); n < 4 throws ProfileTooSparse.
 * workers > 1 evaluates samples in parallel. */
ToricProfile profile(double c, const MassParams& params, Component comp,
                     int n, const ToleranceSet& tols = {}, int workers = 1);

/* Ratio of the two periods W(kappa) = tau2(kappa)/tau1(kappa) through the
 * z-form (eps = 0 only). */
double W_ratio(double M1, double M2, double c, double kappa,
               const ToleranceSet& tols = {});

/* ---------------------------------------------------------------------
 * The curvature-sign machinery on the raw quadratic data.  Here
 *     tau(A,B,C) = 4*sqrt(-2c) * integral_0^2 dz / sqrt(z(2-z) Q(z)),
 *     Q(z) = A z^2 - 2 B z + C,
 * which matches tau_euler_z under A = M^2, B = -4 c kappa, C = 4 c^2.
 * --------------------------------------------------------------------- */

/* Logarithmic derivative eta = (d tau / dB) / tau at fixed (A, C),
 * by Richardson-extrapolated central differences in B. */
double eta(double A, double B, double C, double c,
           const ToleranceSet& tols = {});

/* The positivity functional controlling the sign of d eta / dA:
 *     S = (3 I35 I01 - I13 I23) / 2,
 *     Ikm = integral_0^2 z^k (z(2-z))^{-1/2} Q(z)^{-m/2} dz,
 * evaluated as a symmetrized double integral by tensor-product
 * Gauss-Legendre quadrature after the substitution z = 1 - cos(theta)
 * on each axis, refined until successive levels agree to 1e-8.
 * d eta / dA = -S / I01^2, so S > 0 certifies that eta decreases in A. */
double S_check(double A, double B, double C, double c,
               const ToleranceSet& tols = {});

} // namespace lagrange
