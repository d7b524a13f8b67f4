#include "lagrange/dynamics.hpp"

#include <cmath>
#include <sstream>

namespace lagrange {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

Trajectory integrate_1dof(const SeparatedSystem& sys, double kappa, double dt,
                          long n_steps, Component comp, int decimation) {
    turning_points(sys, kappa, comp); // validates the level; throws otherwise
    double level = sys.which == SystemKind::mu_system ? -kappa : kappa;
    double kinetic = level - sys.well_bottom(comp);
    if (kinetic < 0.0) {
        std::ostringstream os;
        os << "level " << level << " lies below the well bottom "
           << sys.well_bottom(comp);
        throw LevelInadmissible(os.str());
    }
    std::array<double, 2> init{sys.well_angle(comp), std::sqrt(2.0 * kinetic)};
    return integrate_custom([&sys](double a) { return sys.W(a); },
                            [&sys](double a) { return -sys.dW(a); }, init, dt,
                            n_steps, decimation);
}

double measure_period(const Trajectory& traj) {
    if (traj.crossings.size() < 2) {
        std::ostringstream os;
        os << "need at least two section crossings to measure a period, got "
           << traj.crossings.size() << " over " << traj.n_steps << " steps";
        throw NoCrossing(os.str());
    }
    return (traj.crossings.back() - traj.crossings.front()) /
           static_cast<double>(traj.crossings.size() - 1);
}

namespace {

double harmonic_dt(const SeparatedSystem& sys, Component comp, int divisions) {
    double curve = sys.curvature(comp);
    if (!(curve > 0.0)) {
        std::ostringstream os;
        os << "well curvature " << curve
           << " is not positive; the bottom is not a stable equilibrium";
        throw LevelInadmissible(os.str());
    }
    return 2.0 * kPi / std::sqrt(curve) / divisions;
}

/* Integrate long enough to see >= wanted crossings, doubling the horizon. */
Trajectory probe_cycles(const SeparatedSystem& sys, double kappa,
                        Component comp, double dt, size_t wanted) {
    long n = static_cast<long>(8.0 * 2.0 * kPi /
                               (std::sqrt(sys.curvature(comp)) * dt)) +
             16;
    for (int attempt = 0; attempt < 16; ++attempt) {
        Trajectory t = integrate_1dof(sys, kappa, dt, n, comp);
        if (t.crossings.size() >= wanted) return t;
        n *= 2;
    }
    std::ostringstream os;
    os << "no full oscillation detected at kappa = " << kappa
       << " (the level may be degenerate at the window edge)";
    throw NoCrossing(os.str());
}

} // namespace

double ode_period(const SeparatedSystem& sys, double kappa, Component comp,
                  int n_periods, int steps_per_harmonic_period) {
    double dt = harmonic_dt(sys, comp, steps_per_harmonic_period);
    Trajectory probe = probe_cycles(sys, kappa, comp, dt, 3);
    double rough = measure_period(probe);
    long n = static_cast<long>(std::ceil(n_periods * rough / dt)) + 8;
    return measure_period(integrate_1dof(sys, kappa, dt, n, comp));
}

Trajectory integrate_to_drift(const SeparatedSystem& sys, double kappa,
                              Component comp, int n_periods, double target,
                              int max_halvings) {
    double dt = harmonic_dt(sys, comp, 2048);
    double rough = measure_period(probe_cycles(sys, kappa, comp, dt, 3));
    Trajectory best;
    for (int k = 0;; ++k) {
        long n = static_cast<long>(std::ceil(n_periods * rough / dt)) + 8;
        best = integrate_1dof(sys, kappa, dt, n, comp);
        if (best.max_drift_rel <= target || k >= max_halvings) return best;
        dt *= 0.5;
    }
}

double euler_integral(const PlanePoint& q, const std::array<double, 2>& p,
                      const MassParams& params, const ToleranceSet& tols) {
    params.validate();
    if (params.eps != 0.0) {
        std::ostringstream os;
        os << "the two-center integral only exists without the elastic term; "
              "got eps = "
           << params.eps;
        throw RegimeUnsupported(os.str());
    }
    double qt1 = q.q1 + 0.5, qt2 = q.q2;
    double r1 = std::hypot(qt1, qt2);
    double r2 = std::hypot(qt1 - 1.0, qt2);
    if (r1 < tols.collision_tol || r2 < tols.collision_tol) {
        std::ostringstream os;
        os << "state at (" << q.q1 << ", " << q.q2
           << ") collides with a center (distances " << r1 << ", " << r2 << ")";
        throw CenterCollision(os.str());
    }
    double L = qt1 * p[1] - qt2 * p[0];
    return L * L - p[1] * L + params.m1 * qt1 / r1 -
           params.m2 * (qt1 - 1.0) / r2;
}

KeplerOrbitElements elements_from_energy(double c, double M, double e,
                                         double omega) {
    if (!(c < 0.0) || !(M > 0.0)) {
        std::ostringstream os;
        os << "bound Kepler elements need c < 0 and M > 0, got c = " << c
           << ", M = " << M;
        throw RegimeUnsupported(os.str());
    }
    if (e < 0.0 || e > 1.0) {
        std::ostringstream os;
        os << "eccentricity must lie in [0, 1], got " << e;
        throw RegimeUnsupported(os.str());
    }
    return {M / (2.0 * std::abs(c)), e, omega};
}

double euler_integral_from_elements(const KeplerOrbitElements& el, double M) {
    return M * (el.a * (1.0 - el.e * el.e) - el.e * std::sin(el.omega));
}

} // namespace lagrange
