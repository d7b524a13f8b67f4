#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "lagrange/errors.hpp"
#include "lagrange/params.hpp"
#include "lagrange/regularization.hpp"

namespace lagrange {

/* ---------------------------------------------------------------------
 * Direct numerical integration of the separated 1-DOF systems.  This is
 * the independent oracle against the period quadrature: it knows nothing
 * about turning points or quartic level polynomials, only the force law.
 * --------------------------------------------------------------------- */

/* Fixed-step record of a 1-DOF integration of  p^2/2 + W(angle). */
struct Trajectory {
    double dt = 0.0;
    long n_steps = 0;
    int decimation = 1;     // states sampled every `decimation` full steps
    double level = 0.0;     // energy of the initial state
    /* Max over the whole run of |energy(t) - level| divided by
     * max(|level|, initial kinetic energy) -- never just the endpoint. */
    double max_drift_rel = 0.0;
    std::vector<std::array<double, 2>> states; // (angle, momentum) samples
    std::vector<double> crossings; // times of upward momentum zero crossings
    std::array<double, 2> final_state{0.0, 0.0};
};

/* Kick-drift-kick integration of a caller-supplied 1-DOF system (used for
 * self-tests on potentials with known closed-form periods as well as by
 * integrate_1dof below).  Second order, symplectic, time-reversible.
 * decimation <= 0 picks one that keeps at most ~2^16 stored states. */
template <class Pot, class Force>
Trajectory integrate_custom(Pot&& W, Force&& F, std::array<double, 2> init,
                            double dt, long n_steps, int decimation = 0) {
    if (!(dt > 0.0) || n_steps <= 0) {
        throw LevelInadmissible("time step and step count must be positive");
    }
    if (decimation <= 0) {
        decimation = static_cast<int>(std::max<long>(1L, n_steps / 65536L));
    }
    Trajectory traj;
    traj.dt = dt;
    traj.n_steps = n_steps;
    traj.decimation = decimation;

    double th = init[0], p = init[1];
    traj.level = 0.5 * p * p + W(th);
    double denom = std::max(std::abs(traj.level), 0.5 * p * p);
    if (denom == 0.0) denom = 1.0;

    traj.states.reserve(static_cast<size_t>(n_steps / decimation) + 2);
    traj.states.push_back({th, p});
    double p_prev = p;
    for (long i = 0; i < n_steps; ++i) {
        p += 0.5 * dt * F(th);
        th += dt * p;
        p += 0.5 * dt * F(th);
        if (p_prev < 0.0 && p >= 0.0) {
            traj.crossings.push_back(static_cast<double>(i) * dt +
                                     dt * (-p_prev) / (p - p_prev));
        }
        p_prev = p;
        double drift = std::abs(0.5 * p * p + W(th) - traj.level) / denom;
        if (drift > traj.max_drift_rel) traj.max_drift_rel = drift;
        if ((i + 1) % decimation == 0) traj.states.push_back({th, p});
    }
    traj.final_state = {th, p};
    return traj;
}

/* Integrate a separated system on the joint slice kappa (1-DOF level
 * -kappa for the mu system, +kappa for the nu one), starting at the well
 * bottom of `comp` with nonnegative momentum.  Throws LevelInadmissible /
 * WindowViolation / NoTurningPoint when the level does not confine. */
Trajectory integrate_1dof(const SeparatedSystem& sys, double kappa, double dt,
                          long n_steps, Component comp = Component::e,
                          int decimation = 0);

/* Period from the recorded section crossings (upward momentum zero
 * crossings, linearly interpolated), averaged over all full cycles. */
double measure_period(const Trajectory& traj);

/* Convenience oracle: pick dt from the harmonic estimate
 * 2*pi/sqrt(curvature at the well bottom) / steps_per_harmonic_period,
 * probe for the true cycle length, then average over n_periods cycles. */
double ode_period(const SeparatedSystem& sys, double kappa,
                  Component comp = Component::e, int n_periods = 12,
                  int steps_per_harmonic_period = 2048);

/* Run n_periods cycles and halve dt (starting from the harmonic estimate
 * over 2048) until the relative level drift is at most `target`, at most
 * max_halvings times.  Returns the final run's trajectory. */
Trajectory integrate_to_drift(const SeparatedSystem& sys, double kappa,
                              Component comp, int n_periods, double target,
                              int max_halvings = 8);

/* ---------------------------------------------------------------------
 * The classical integral of the two-fixed-centers problem (eps = 0).
 * --------------------------------------------------------------------- */

/* Evaluate the conserved combination
 *     E = L^2 - p2 L + m1 qt1/r1 - m2 (qt1 - 1)/r2 ,
 * where qt = (q1 + 1/2, q2) shifts the attracting center e to the origin,
 * L = qt1 p2 - qt2 p1, r1 = |qt| and r2 = |qt - (1,0)|.  Input q, p are in
 * the library's standard frame (centers at (-1/2,0) and (+1/2,0)); the
 * shift is applied internally.  Requires eps = 0. */
double euler_integral(const PlanePoint& q, const std::array<double, 2>& p,
                      const MassParams& params, const ToleranceSet& tols = {});

/* Conic elements of a Kepler arc about the center e: semi-major axis a,
 * eccentricity e in [0,1], and the perihelion angle omega measured so
 * that omega = nu + pi/2 against the elliptic angle of the perihelion. */
struct KeplerOrbitElements {
    double a = 1.0;
    double e = 0.0;
    double omega = 0.0;
};

/* Elements on the energy level c < 0 have a = M/(2|c|). */
KeplerOrbitElements elements_from_energy(double c, double M, double e,
                                         double omega);

/* Closed form of the integral on a Kepler arc: M (a (1 - e^2) - e sin(omega)). */
double euler_integral_from_elements(const KeplerOrbitElements& el, double M);

} // namespace lagrange
