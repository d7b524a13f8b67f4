#pragma once

#include <cmath>
#include <sstream>
#include <vector>

#include "lagrange/errors.hpp"

namespace lagrange {

/* Adaptive Simpson quadrature with the usual Richardson acceptance test.
 *
 * The period integrands in this library are reparameterized before they
 * get here (squared-sine substitutions at the turning points), so they
 * are smooth and this plain scheme reaches 1e-10 relative error quickly.
 * Throws QuadratureStall when the recursion depth limit is hit before
 * the tolerance is met. */
namespace detail {

template <class F>
double simpson_rec(F& f, double a, double b, double fa, double fm, double fb,
                   double whole, double tol, double floor, int depth,
                   int max_depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    double delta = left + right - whole;
    // `tol` halves with each split so the panel budgets sum to the global
    // one; `floor` is a fixed absolute cutoff at machine precision relative
    // to the whole integral, without which a steep (but integrable) peak
    // recurses forever on panels whose contribution is already noise-level.
    if (std::abs(delta) <= 15.0 * std::max(tol, floor) ||
        (b - a) < 1e-15 * (std::abs(a) + std::abs(b) + 1.0)) {
        return left + right + delta / 15.0;
    }
    if (depth >= max_depth) {
        std::ostringstream os;
        os << "adaptive refinement exhausted at depth " << depth << " on ["
           << a << ", " << b << "], local error estimate " << std::abs(delta) / 15.0;
        throw QuadratureStall(os.str());
    }
    return simpson_rec(f, a, m, fa, flm, fm, left, 0.5 * tol, floor, depth + 1,
                       max_depth) +
           simpson_rec(f, m, b, fm, frm, fb, right, 0.5 * tol, floor, depth + 1,
                       max_depth);
}

} // namespace detail

template <class F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-10,
                          int max_depth = 48) {
    if (a == b) return 0.0;
    double fa = f(a), fm = f(0.5 * (a + b)), fb = f(b);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    // seed the absolute tolerance from a coarse magnitude estimate;
    // refined panels inherit halved budgets, so the total error honors it
    double scale = std::abs(whole) + 1e-300;
    double tol = rel_tol * scale;
    double floor = 4e-16 * scale;
    double result =
        detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, floor, 0, max_depth);
    // one re-run if the magnitude estimate was badly off
    if (std::abs(result) > 16.0 * scale || std::abs(result) < scale / 16.0) {
        scale = std::abs(result) + 1e-300;
        tol = rel_tol * scale;
        floor = 4e-16 * scale;
        result = detail::simpson_rec(f, a, b, fa, fm, fb, whole, tol, floor, 0,
                                     max_depth);
    }
    return result;
}

/* Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on the
 * Legendre polynomial (standard construction; accurate to machine
 * precision for the orders used here).  Used by the tensor-product
 * double integral in the curvature-sign check. */
inline void gauss_legendre(int n, std::vector<double>& nodes,
                           std::vector<double>& weights) {
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    const double pi = 3.14159265358979323846;
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (x * p0 - p1) / (x * x - 1.0);
            double dx = p0 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
        weights[n - 1 - i] = weights[i];
    }
}

} // namespace lagrange
