#pragma once

#include <cmath>
#include <functional>
#include <sstream>

#include "lagrange/errors.hpp"

namespace lagrange {

/* Scalar root finding on a sign-change bracket.
 *
 * Policy: plain bisection until the bracket is small, then secant steps
 * that are accepted only while they stay inside the current bracket
 * (falling back to bisection otherwise).  That keeps the worst case the
 * bisection worst case while converging superlinearly on the smooth
 * integrands used here.  Throws RootBracketFailure when f(a) and f(b)
 * do not straddle zero. */
template <class F>
double solve_bracketed(F&& f, double a, double b, double xtol = 1e-14) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        std::ostringstream os;
        os << "no sign change on [" << a << ", " << b << "]: f(a)=" << fa
           << " f(b)=" << fb;
        throw RootBracketFailure(os.str());
    }
    double x = a, fx = fa;
    for (int it = 0; it < 200; ++it) {
        // secant proposal from the bracket endpoints
        double xs = b - fb * (b - a) / (fb - fa);
        double xm = 0.5 * (a + b);
        bool use_secant = std::isfinite(xs) && xs > a && xs < b;
        x = use_secant ? xs : xm;
        // guard against stagnation at an endpoint
        double scale = std::abs(a) + std::abs(b) + 1.0;
        if (x - a < 1e-3 * (b - a) || b - x < 1e-3 * (b - a)) {
            if (b - a > 64.0 * xtol * scale) x = xm;
        }
        fx = f(x);
        if (fx == 0.0) return x;
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
        if (b - a <= xtol * scale) break;
    }
    return 0.5 * (a + b);
}

/* Locate every sign change of f on [lo, hi] sampled at mesh points
 * xs[0..n-1] (caller supplies the mesh so singular endpoints can be
 * approached logarithmically), then polish each bracket.  Results are
 * appended to out in increasing order. */
template <class F, class Mesh, class Out>
void roots_on_mesh(F&& f, const Mesh& xs, Out& out, double xtol = 1e-14) {
    if (xs.size() < 2) return;
    double xprev = xs[0];
    double fprev = f(xprev);
    for (std::size_t i = 1; i < xs.size(); ++i) {
        double x = xs[i];
        double fx = f(x);
        if (fprev == 0.0) {
            out.push_back(xprev);
        } else if (fx != 0.0 && std::isfinite(fprev) && std::isfinite(fx) &&
                   (fprev > 0.0) != (fx > 0.0)) {
            out.push_back(solve_bracketed(f, xprev, x, xtol));
        }
        xprev = x;
        fprev = fx;
    }
    if (fprev == 0.0) out.push_back(xprev);
}

} // namespace lagrange
