#pragma once

#include <string>
#include <vector>

#include "lagrange/momentmap.hpp"
#include "lagrange/params.hpp"

namespace lagrange {

/* ---------------------------------------------------------------------
 * Classification of the sampled moment-map image as a toric domain.
 *
 * Convexity names follow the toric convention: the domain is a
 * convex_toric domain when the region under the graph (T1, f(T1)) is
 * convex, i.e. when f is concave (every f'' < 0), and a concave_toric
 * domain when f is convex (every f'' > 0).
 * --------------------------------------------------------------------- */

enum class Convexity { convex_toric, concave_toric, linear, mixed };

const char* to_string(Convexity c);

struct ClassificationReport {
    bool monotone = false;
    Convexity convexity = Convexity::mixed;
    /* Strict monotonicity of the boundary slope propagates to dynamical
     * convexity; this label is copied from `monotone`, never computed
     * from Reeb dynamics. */
    bool dynamically_convex = false;
    double volume = 0.0;
    ToleranceSet tolerances; // the thresholds the verdict used
    /* Samples violating strict slope negativity or breaking the curvature
     * sign, in original (unnormalized) units. */
    std::vector<PeriodSample> witnesses;
    std::vector<std::string> notes;
};

/* Classify a sampled profile.  Requires >= 16 samples with strictly
 * increasing T1 (ProfileTooSparse / NonMonotoneAbscissa otherwise).
 * Tolerance comparisons are made on samples rescaled to the unit box
 * (T1 by T1max, T2 by T2max), so the verdict is invariant under uniform
 * rescaling of either axis; curvature votes use interior samples only,
 * because the difference stencil is one-sided at the window ends. */
ClassificationReport classify(const ToricProfile& prof,
                              const ToleranceSet& tols = {});

/* Area under the sampled boundary graph by the trapezoid rule on the
 * (T1, T2) samples.  Needs at least 2 samples. */
double volume(const ToricProfile& prof);

} // namespace lagrange
