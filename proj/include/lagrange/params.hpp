#pragma once

#include <cmath>
#include <sstream>
#include <string>

#include "lagrange/errors.hpp"

namespace lagrange {

/* Problem data for the two-center-plus-elastic-force potential
 *
 *     U(q) = m1/|q - e| + m2/|q - m| + (eps/2)|q|^2 ,
 *
 * with the centers pinned at e = (-1/2, 0) and m = (+1/2, 0).
 * m2 may be negative (one repelling center) and eps may be zero,
 * which is the classical two-fixed-centers specialization.
 * The mass sums M1 = m1 + m2 and M2 = m1 - m2 are always derived,
 * never stored, so they cannot drift out of sync. */
struct MassParams {
    double m1 = 1.0;
    double m2 = 1.0;
    double eps = 0.0;

    double M1() const { return m1 + m2; }
    double M2() const { return m1 - m2; }

    void validate() const {
        if (!std::isfinite(m1) || !std::isfinite(m2) || !std::isfinite(eps)) {
            std::ostringstream os;
            os << "mass parameters must be finite, got m1=" << m1 << " m2=" << m2
               << " eps=" << eps;
            throw RegimeUnsupported(os.str());
        }
        if (m1 <= 0.0) {
            std::ostringstream os;
            os << "m1 must be positive in every supported regime, got m1=" << m1;
            throw RegimeUnsupported(os.str());
        }
        if (eps < 0.0) {
            std::ostringstream os;
            os << "elastic coefficient must be nonnegative, got eps=" << eps;
            throw RegimeUnsupported(os.str());
        }
    }
};

/* Configuration-plane point; the centers sit at (±1/2, 0). */
struct PlanePoint {
    double q1 = 0.0;
    double q2 = 0.0;
};

/* Named numerical tolerances.  Every nontrivial operation takes a
 * ToleranceSet (defaulted), and the CLI exposes --tol NAME=VALUE
 * overrides through set_by_name. */
struct ToleranceSet {
    double grad_tol = 1e-10;      // |grad V| bound certifying a critical point
    double deg_tol = 1e-9;        // |det Hess| below this is degenerate
    double collision_tol = 1e-12; // center distance / covering factor floor
    double quad_rel_tol = 1e-10;  // relative target for period quadrature
    double mono_tol = 1e-9;       // strict-monotonicity margin on f'
    double curv_tol = 1e-7;       // curvature-sign margin on f''
    double lin_tol = 1e-9;        // |f''| below this counts as linear
    double drift_tol = 1e-8;      // relative first-integral drift budget

    void set_by_name(const std::string& name, double value) {
        if (name == "grad_tol") grad_tol = value;
        else if (name == "deg_tol") deg_tol = value;
        else if (name == "collision_tol") collision_tol = value;
        else if (name == "quad_rel_tol") quad_rel_tol = value;
        else if (name == "mono_tol") mono_tol = value;
        else if (name == "curv_tol") curv_tol = value;
        else if (name == "lin_tol") lin_tol = value;
        else if (name == "drift_tol") drift_tol = value;
        else throw Error("UnknownTolerance", "no tolerance named '" + name + "'");
    }
};

} // namespace lagrange
