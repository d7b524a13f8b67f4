#pragma once

#include <array>
#include <string>
#include <vector>

#include "lagrange/params.hpp"

namespace lagrange {

/* ---------------------------------------------------------------------
 * Potential evaluation, critical-point census, Hill-region labeling,
 * and the c0-vs-c_crit parameter scan.
 *
 * Sign conventions: U is the (positive-near-center) force function,
 * V = -U is the effective potential entering H = |p|^2/2 + V, and all
 * critical VALUES reported here are values of V.  The two thresholds:
 *   c0     = min of the collinear critical values (Hill splitting level),
 *   c_crit = -eps/8 - M1   (separated-well shape threshold).
 * --------------------------------------------------------------------- */

enum class CriticalKind { saddle, maximum, minimum, degenerate };

struct CriticalPoint {
    PlanePoint location;
    double value = 0.0; // V at the point
    CriticalKind kind = CriticalKind::degenerate;
    double hessian_det = 0.0;
    double hessian_trace = 0.0;
    std::string label; // "l1" inner, "l2" right, "l3" left, "l4"/"l5" off-axis
};

struct CriticalSummary {
    std::vector<CriticalPoint> points;
    double c0 = 0.0;
    double c_crit = 0.0;
    bool holds = false;      // c0 < c_crit
    std::string ordering;    // collinear labels sorted by value, e.g. "l1<l3<l2"
    // hypothesis flags for the ordering/threshold statements
    bool ordering_hypothesis = false;  // m1 >= eps/2, m2 >= 3eps/8, m1 >= m2 > 0
    bool reversed_hypothesis = false;  // m1 < 3eps/8, m2 <= 5eps/24, m1 >= m2 > 0
    bool equal_mass_hypothesis = false; // m1 = m2 = m, eps <= 2m
    bool ratio_hypothesis = false;     // m2 <= m1 <= 9 m2, m1 >= eps/2, m2 >= 3eps/8
};

struct HillReport {
    double c = 0.0;
    int resolution = 0;            // cells per axis of the final grid
    double box_radius = 0.0;
    int component_count = 0;
    bool has_e_component = false;  // a component containing a neighborhood of e
    bool has_m_component = false;  // same for m
    bool has_unbounded = false;    // a component touching the bounding box
    std::vector<int> labels;       // row-major component id per cell, 0 = forbidden
};

struct ScanRow {
    double m1 = 0.0, m2 = 0.0, eps = 0.0;
    double c0 = 0.0, c_crit = 0.0;
    bool holds = false;
    std::string error; // nonempty if this row failed; scan never aborts
};

/* Inclusive linear range; count == 1 collapses to the single value lo. */
struct ParamRange {
    double lo = 0.0;
    double hi = 0.0;
    int count = 1;
    double at(int i) const {
        return count <= 1 ? lo : lo + (hi - lo) * double(i) / double(count - 1);
    }
};

/* V(q) = -U(q), the term entering H = |p|^2/2 + V.  eval_grad and
 * eval_hessian differentiate this same V. */
double eval_potential(const PlanePoint& q, const MassParams& p,
                      const ToleranceSet& tols = {});
std::array<double, 2> eval_grad(const PlanePoint& q, const MassParams& p,
                                const ToleranceSet& tols = {});
/* Row-major symmetric 2x2: {Vq1q1, Vq1q2, Vq1q2, Vq2q2}. */
std::array<double, 4> eval_hessian(const PlanePoint& q, const MassParams& p,
                                   const ToleranceSet& tols = {});

std::vector<CriticalPoint> find_critical_points(const MassParams& p,
                                                const ToleranceSet& tols = {});
CriticalSummary critical_summary(const MassParams& p,
                                 const ToleranceSet& tols = {});

/* Closed-form collinear critical point of the eps = 0 problem.
 * m2 > 0: abscissa 1/2 - 1/(sqrt(m1/m2) + 1), value -(sqrt(m1)+sqrt(m2))^2.
 * m2 < 0 (with |m2| < m1): abscissa 1/2 + 1/(sqrt(-m1/m2) - 1) and value
 * -(sqrt(m1)-sqrt(|m2|))^2; both validated against the numeric root. */
std::pair<PlanePoint, double> euler_critical_closed_form(const MassParams& p);

HillReport hill_regions(const MassParams& p, double c, int resolution,
                        const ToleranceSet& tols = {});

std::vector<ScanRow> scan_conjecture(const ParamRange& m1s, const ParamRange& m2s,
                                     const ParamRange& epss, int workers = 1,
                                     const ToleranceSet& tols = {});

} // namespace lagrange
