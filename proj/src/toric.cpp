#include "lagrange/toric.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace lagrange {

const char* to_string(Convexity c) {
    switch (c) {
        case Convexity::convex_toric: return "convex_toric";
        case Convexity::concave_toric: return "concave_toric";
        case Convexity::linear: return "linear";
        case Convexity::mixed: return "mixed";
    }
    return "mixed";
}

double volume(const ToricProfile& prof) {
    if (prof.samples.size() < 2) {
        std::ostringstream os;
        os << "volume needs at least 2 samples, got " << prof.samples.size();
        throw ProfileTooSparse(os.str());
    }
    double acc = 0.0;
    for (size_t j = 0; j + 1 < prof.samples.size(); ++j) {
        const PeriodSample& a = prof.samples[j];
        const PeriodSample& b = prof.samples[j + 1];
        acc += (b.T1 - a.T1) * 0.5 * (a.T2 + b.T2);
    }
    return acc;
}

ClassificationReport classify(const ToricProfile& prof,
                              const ToleranceSet& tols) {
    const auto& s = prof.samples;
    if (s.size() < 16) {
        std::ostringstream os;
        os << "classification needs at least 16 samples, got " << s.size();
        throw ProfileTooSparse(os.str());
    }
    for (size_t j = 0; j + 1 < s.size(); ++j) {
        if (!(s[j + 1].T1 > s[j].T1)) {
            std::ostringstream os;
            os << "T1 is not strictly increasing at samples " << j << " -> "
               << j + 1 << " (" << s[j].T1 << " -> " << s[j + 1].T1 << ")";
            throw NonMonotoneAbscissa(os.str());
        }
    }

    ClassificationReport rep;
    rep.tolerances = tols;
    rep.volume = volume(prof);

    // rescale both axes to the unit box so the thresholds are
    // dimensionless: f' scales by T1max/T2max, f'' by T1max^2/T2max
    double t1max = 0.0, t2max = 0.0;
    for (const auto& p : s) {
        t1max = std::max(t1max, std::abs(p.T1));
        t2max = std::max(t2max, std::abs(p.T2));
    }
    if (t1max == 0.0 || t2max == 0.0) {
        throw ProfileTooSparse("profile is degenerate: an axis extent is zero");
    }
    double slope_scale = t1max / t2max;
    double curv_scale = t1max * t1max / t2max;

    rep.monotone = true;
    for (const auto& p : s) {
        if (!(p.fprime * slope_scale < -tols.mono_tol)) {
            rep.monotone = false;
            rep.witnesses.push_back(p);
            std::ostringstream os;
            os << "slope " << p.fprime << " at kappa " << p.kappa
               << " fails strict negativity";
            rep.notes.push_back(os.str());
        }
    }
    rep.dynamically_convex = rep.monotone;

    double cmin = 0.0, cmax = 0.0, cabs = 0.0;
    size_t imin = 0, imax = 0;
    for (size_t j = 1; j + 1 < s.size(); ++j) {
        double fpp = s[j].fsecond * curv_scale;
        cabs = std::max(cabs, std::abs(fpp));
        if (j == 1 || fpp < cmin) { cmin = fpp; imin = j; }
        if (j == 1 || fpp > cmax) { cmax = fpp; imax = j; }
    }
    if (cabs < tols.lin_tol) {
        rep.convexity = Convexity::linear;
    } else if (cmin > tols.curv_tol) {
        rep.convexity = Convexity::concave_toric;
    } else if (cmax < -tols.curv_tol) {
        rep.convexity = Convexity::convex_toric;
    } else {
        rep.convexity = Convexity::mixed;
        if (cmax > tols.curv_tol) rep.witnesses.push_back(s[imax]);
        if (cmin < -tols.curv_tol) rep.witnesses.push_back(s[imin]);
        std::ostringstream os;
        os << "curvature range [" << cmin << ", " << cmax
           << "] (unit-box units) has no uniform sign beyond curv_tol";
        rep.notes.push_back(os.str());
    }
    return rep;
}

} // namespace lagrange
