#include "lagrange/potential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "lagrange/rootfind.hpp"

namespace lagrange {

namespace {

constexpr double kCenter = 0.5;

struct Distances {
    double r1, r2;
};

Distances center_distances(const PlanePoint& q, const ToleranceSet& tols) {
    double r1 = std::hypot(q.q1 + kCenter, q.q2);
    double r2 = std::hypot(q.q1 - kCenter, q.q2);
    if (r1 < tols.collision_tol || r2 < tols.collision_tol) {
        std::ostringstream os;
        os << "point (" << q.q1 << ", " << q.q2 << ") is within " << tols.collision_tol
           << " of a center (r1=" << r1 << ", r2=" << r2 << ")";
        throw CenterCollision(os.str());
    }
    return {r1, r2};
}

/* dV/dq1 restricted to the axis q2 = 0, written with explicit signs so it
 * stays valid on all three axis intervals:
 *   m1 sgn(x+1/2)/(x+1/2)^2 + m2 sgn(x-1/2)/(x-1/2)^2 - eps x. */
double axis_grad(double x, const MassParams& p) {
    double d1 = x + kCenter, d2 = x - kCenter;
    double t1 = p.m1 * (d1 > 0 ? 1.0 : -1.0) / (d1 * d1);
    double t2 = p.m2 * (d2 > 0 ? 1.0 : -1.0) / (d2 * d2);
    return t1 + t2 - p.eps * x;
}

CriticalKind classify_from_hessian(double det, double trace, const ToleranceSet& tols) {
    if (std::abs(det) < tols.deg_tol) return CriticalKind::degenerate;
    if (det < 0.0) return CriticalKind::saddle;
    return trace < 0.0 ? CriticalKind::maximum : CriticalKind::minimum;
}

CriticalPoint make_point(const PlanePoint& loc, const std::string& label,
                         const MassParams& p, const ToleranceSet& tols) {
    CriticalPoint cp;
    cp.location = loc;
    cp.label = label;
    cp.value = eval_potential(loc, p, tols);
    auto h = eval_hessian(loc, p, tols);
    cp.hessian_det = h[0] * h[3] - h[1] * h[2];
    cp.hessian_trace = h[0] + h[3];
    cp.kind = classify_from_hessian(cp.hessian_det, cp.hessian_trace, tols);
    return cp;
}

/* Logarithmically graded mesh accumulating toward the singular end(s),
 * over which the axis gradient is scanned for sign changes.  On each of
 * the three intervals V restricted to the axis is strictly concave
 * (its second derivative is -2m1/|x+1/2|^3 - 2m2/|x-1/2|^3 - eps < 0 in
 * the all-positive regime), so at most one interior root exists per
 * interval and a sign-change scan cannot miss it. */
std::vector<double> graded_mesh(double from, double to, bool log_from, bool log_to,
                                int n) {
    std::vector<double> xs;
    xs.reserve(n);
    double len = to - from;
    for (int i = 0; i <= n; ++i) {
        double t = double(i) / n;
        double u = t;
        if (log_from && log_to) {
            // cluster at both ends
            u = 0.5 - 0.5 * std::cos(3.14159265358979323846 * t);
        } else if (log_from) {
            u = std::pow(t, 3.0);
        } else if (log_to) {
            u = 1.0 - std::pow(1.0 - t, 3.0);
        }
        xs.push_back(from + len * u);
    }
    return xs;
}

void collinear_points(const MassParams& p, const ToleranceSet& tols,
                      std::vector<CriticalPoint>& out) {
    struct Interval {
        const char* label;
        double lo, hi;
        bool log_lo, log_hi;
    };
    // outer reach: critical points of the axis restriction satisfy
    // |x| <= 1/2 + (|m1|+|m2|)/eps^(1/3) style bounds; a generous box
    // with sign checks at the far ends is simpler and safe
    double far = 8.0;
    double mass_scale = std::abs(p.m1) + std::abs(p.m2);
    if (p.eps > 0.0) far = std::max(far, 2.0 + std::cbrt(4.0 * mass_scale / p.eps));
    // eps = 0, m2 < 0: the outer root sits at 1/2 + 1/(s-1), which blows
    // up as |m2| -> m1; cover it explicitly
    if (p.eps == 0.0 && p.m2 < 0.0 && p.m1 > -p.m2) {
        double s = std::sqrt(-p.m1 / p.m2);
        if (s > 1.0) far = std::max(far, 1.0 + 2.0 / (s - 1.0));
    }
    const Interval ivs[] = {
        {"l3", -far, -kCenter - 1e-9, false, true},
        {"l1", -kCenter + 1e-9, kCenter - 1e-9, true, true},
        {"l2", kCenter + 1e-9, far, true, false},
    };
    for (const auto& iv : ivs) {
        auto mesh = graded_mesh(iv.lo, iv.hi, iv.log_lo, iv.log_hi, 4000);
        std::vector<double> roots;
        roots_on_mesh([&](double x) { return axis_grad(x, p); }, mesh, roots, 1e-15);
        for (double r : roots) {
            out.push_back(make_point({r, 0.0}, iv.label, p, tols));
        }
    }
}

/* Off-axis critical points solve r1^3 = 2 m1/eps, r2^3 = 2 m2/eps: the
 * intersection of two circles about the centers.  With the unit center
 * separation this intersects iff |r1 - r2| < 1 < r1 + r2; the abscissa
 * is (r1^2 - r2^2)/2 and the ordinate follows from the first circle.
 * One full-gradient Newton step polishes the floating-point result. */
void offaxis_points(const MassParams& p, const ToleranceSet& tols,
                    std::vector<CriticalPoint>& out) {
    if (p.eps <= 0.0 || p.m2 <= 0.0) return; // no solutions of the radius system
    double r1 = std::cbrt(2.0 * p.m1 / p.eps);
    double r2 = std::cbrt(2.0 * p.m2 / p.eps);
    if (!(std::abs(r1 - r2) < 1.0 && 1.0 < r1 + r2)) return; // circles miss
    double q1 = 0.5 * (r1 * r1 - r2 * r2);
    double disc = r1 * r1 - (q1 + kCenter) * (q1 + kCenter);
    if (disc <= 0.0) return;
    double q2 = std::sqrt(disc);
    const char* labels[2] = {"l4", "l5"};
    double signs[2] = {1.0, -1.0};
    for (int i = 0; i < 2; ++i) {
        PlanePoint loc{q1, signs[i] * q2};
        // Newton polish on grad V
        for (int it = 0; it < 2; ++it) {
            auto g = eval_grad(loc, p, tols);
            auto h = eval_hessian(loc, p, tols);
            double det = h[0] * h[3] - h[1] * h[2];
            if (std::abs(det) < 1e-14) break;
            loc.q1 -= (h[3] * g[0] - h[1] * g[1]) / det;
            loc.q2 -= (-h[2] * g[0] + h[0] * g[1]) / det;
        }
        out.push_back(make_point(loc, labels[i], p, tols));
    }
}

double scan_c0(const MassParams& p, const ToleranceSet& tols) {
    std::vector<CriticalPoint> pts;
    collinear_points(p, tols, pts);
    if (pts.empty()) {
        throw RootBracketFailure("no collinear critical point found while scanning");
    }
    double c0 = pts.front().value;
    for (const auto& cp : pts) c0 = std::min(c0, cp.value);
    return c0;
}

} // namespace

double eval_potential(const PlanePoint& q, const MassParams& p,
                      const ToleranceSet& tols) {
    auto [r1, r2] = center_distances(q, tols);
    return -(p.m1 / r1 + p.m2 / r2 +
             0.5 * p.eps * (q.q1 * q.q1 + q.q2 * q.q2));
}

std::array<double, 2> eval_grad(const PlanePoint& q, const MassParams& p,
                                const ToleranceSet& tols) {
    auto [r1, r2] = center_distances(q, tols);
    double c1 = p.m1 / (r1 * r1 * r1);
    double c2 = p.m2 / (r2 * r2 * r2);
    return {c1 * (q.q1 + kCenter) + c2 * (q.q1 - kCenter) - p.eps * q.q1,
            c1 * q.q2 + c2 * q.q2 - p.eps * q.q2};
}

std::array<double, 4> eval_hessian(const PlanePoint& q, const MassParams& p,
                                   const ToleranceSet& tols) {
    auto [r1, r2] = center_distances(q, tols);
    double a1 = q.q1 + kCenter, a2 = q.q1 - kCenter;
    double c1 = p.m1 / (r1 * r1 * r1);
    double c2 = p.m2 / (r2 * r2 * r2);
    double d1 = 3.0 * p.m1 / std::pow(r1, 5);
    double d2 = 3.0 * p.m2 / std::pow(r2, 5);
    double h11 = c1 - d1 * a1 * a1 + c2 - d2 * a2 * a2 - p.eps;
    double h22 = c1 - d1 * q.q2 * q.q2 + c2 - d2 * q.q2 * q.q2 - p.eps;
    double h12 = -d1 * a1 * q.q2 - d2 * a2 * q.q2;
    return {h11, h12, h12, h22};
}

std::vector<CriticalPoint> find_critical_points(const MassParams& p,
                                                const ToleranceSet& tols) {
    p.validate();
    bool lagrange_all_positive = p.m1 > 0.0 && p.m2 > 0.0 && p.eps > 0.0;
    bool kepler_like = p.m2 == 0.0;
    bool euler = p.eps == 0.0 && std::abs(p.m2) <= p.m1;
    if (!(lagrange_all_positive || kepler_like || euler)) {
        std::ostringstream os;
        os << "unsupported parameter regime m1=" << p.m1 << " m2=" << p.m2
           << " eps=" << p.eps
           << " (need all-positive, m2=0, or eps=0 with |m2|<=m1)";
        throw RegimeUnsupported(os.str());
    }
    std::vector<CriticalPoint> out;
    collinear_points(p, tols, out);
    offaxis_points(p, tols, out);
    for (const auto& cp : out) {
        auto g = eval_grad(cp.location, p, tols);
        double gn = std::hypot(g[0], g[1]);
        if (gn >= tols.grad_tol) {
            std::ostringstream os;
            os << "candidate " << cp.label << " at (" << cp.location.q1 << ", "
               << cp.location.q2 << ") has |grad| = " << gn << " >= " << tols.grad_tol;
            throw RootBracketFailure(os.str());
        }
    }
    return out;
}

CriticalSummary critical_summary(const MassParams& p, const ToleranceSet& tols) {
    CriticalSummary s;
    s.points = find_critical_points(p, tols);
    s.c_crit = -p.eps / 8.0 - p.M1();

    std::vector<const CriticalPoint*> collinear;
    for (const auto& cp : s.points) {
        if (cp.label == "l1" || cp.label == "l2" || cp.label == "l3") {
            collinear.push_back(&cp);
        }
    }
    if (collinear.empty()) {
        throw RootBracketFailure("no collinear critical point found");
    }
    std::sort(collinear.begin(), collinear.end(),
              [](const CriticalPoint* a, const CriticalPoint* b) {
                  return a->value < b->value;
              });
    s.c0 = collinear.front()->value;
    s.holds = s.c0 < s.c_crit;
    std::ostringstream os;
    for (std::size_t i = 0; i < collinear.size(); ++i) {
        if (i) os << "<";
        os << collinear[i]->label;
    }
    s.ordering = os.str();

    s.ordering_hypothesis = p.m1 >= p.eps / 2.0 && p.m2 >= 3.0 * p.eps / 8.0 &&
                            p.m1 >= p.m2 && p.m2 > 0.0;
    // m1 >= m2 > 0 is a standing assumption of both ordering statements.
    s.reversed_hypothesis = p.m1 < 3.0 * p.eps / 8.0 && p.m2 <= 5.0 * p.eps / 24.0 &&
                            p.m1 >= p.m2 && p.m2 > 0.0;
    s.equal_mass_hypothesis = p.m1 == p.m2 && p.eps <= 2.0 * p.m1;
    s.ratio_hypothesis = p.m2 > 0.0 && p.m2 <= p.m1 && p.m1 <= 9.0 * p.m2 &&
                         p.m1 >= p.eps / 2.0 && p.m2 >= 3.0 * p.eps / 8.0;
    return s;
}

std::pair<PlanePoint, double> euler_critical_closed_form(const MassParams& p) {
    p.validate();
    if (p.eps != 0.0) {
        throw RegimeUnsupported("closed-form critical point requires eps = 0");
    }
    if (p.m2 > 0.0) {
        double t = std::sqrt(p.m1 / p.m2);
        double iota = 0.5 - 1.0 / (t + 1.0);
        double r = std::sqrt(p.m1) + std::sqrt(p.m2);
        return {PlanePoint{iota, 0.0}, -r * r};
    }
    if (p.m2 < 0.0 && p.m1 > -p.m2) {
        double s = std::sqrt(-p.m1 / p.m2);
        double iota = 0.5 + 1.0 / (s - 1.0);
        double r = std::sqrt(p.m1) - std::sqrt(-p.m2);
        return {PlanePoint{iota, 0.0}, -r * r};
    }
    std::ostringstream os;
    os << "no closed-form critical point for m1=" << p.m1 << " m2=" << p.m2
       << " (need m2 > 0, or m2 < 0 with |m2| < m1)";
    throw RegimeUnsupported(os.str());
}

namespace {

struct FloodResult {
    int components = 0;
    bool e_comp = false, m_comp = false, unbounded = false;
    std::vector<int> labels;
};

FloodResult flood_fill(const MassParams& p, double c, int n, double R) {
    FloodResult res;
    res.labels.assign(std::size_t(n) * n, 0);
    std::vector<char> allowed(std::size_t(n) * n, 0);
    auto cell = [&](int i, int j) -> std::size_t { return std::size_t(i) * n + j; };
    double h = 2.0 * R / (n - 1);
    for (int i = 0; i < n; ++i) {
        double x = -R + i * h;
        for (int j = 0; j < n; ++j) {
            double y = -R + j * h;
            double r1 = std::hypot(x + kCenter, y);
            double r2 = std::hypot(x - kCenter, y);
            if (r1 < 1e-12 || r2 < 1e-12) {
                // a center lands on a grid node: V -> -inf (attracting) or
                // +inf (repelling), decided by the mass sign
                double mnear = (r1 < r2) ? p.m1 : p.m2;
                allowed[cell(i, j)] = mnear > 0.0 ? 1 : 0;
                continue;
            }
            double v = -(p.m1 / r1 + p.m2 / r2 + 0.5 * p.eps * (x * x + y * y));
            allowed[cell(i, j)] = v <= c ? 1 : 0;
        }
    }
    // iterative flood fill, 4-connectivity
    std::vector<std::size_t> stack;
    int next_label = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (!allowed[cell(i, j)] || res.labels[cell(i, j)] != 0) continue;
            ++next_label;
            stack.push_back(cell(i, j));
            res.labels[cell(i, j)] = next_label;
            bool touches_edge = false;
            while (!stack.empty()) {
                std::size_t k = stack.back();
                stack.pop_back();
                int ci = int(k / n), cj = int(k % n);
                if (ci == 0 || cj == 0 || ci == n - 1 || cj == n - 1) touches_edge = true;
                const int di[4] = {1, -1, 0, 0};
                const int dj[4] = {0, 0, 1, -1};
                for (int d = 0; d < 4; ++d) {
                    int ni = ci + di[d], nj = cj + dj[d];
                    if (ni < 0 || nj < 0 || ni >= n || nj >= n) continue;
                    std::size_t nk = cell(ni, nj);
                    if (allowed[nk] && res.labels[nk] == 0) {
                        res.labels[nk] = next_label;
                        stack.push_back(nk);
                    }
                }
            }
            if (touches_edge) res.unbounded = true;
        }
    }
    res.components = next_label;
    // which component holds each center's neighborhood (probe just off-center)
    auto probe = [&](double x, double y) -> int {
        int i = int(std::lround((x + R) / h));
        int j = int(std::lround((y + R) / h));
        if (i < 0 || j < 0 || i >= n || j >= n) return 0;
        return res.labels[cell(i, j)];
    };
    res.e_comp = p.m1 > 0.0 && probe(-kCenter, 0.0) != 0;
    res.m_comp = p.m2 > 0.0 && probe(kCenter, 0.0) != 0;
    return res;
}

} // namespace

HillReport hill_regions(const MassParams& p, double c, int resolution,
                        const ToleranceSet& tols) {
    p.validate();
    (void)tols;
    if (resolution < 16) {
        throw GridTooCoarse("resolution must be at least 16 cells per axis");
    }
    /* Bounding box: for eps > 0 the allowed set always reaches past the
     * elastic zero-velocity ring at |q| ~ sqrt(2|c|/eps), so the box
     * extends beyond it and the outer sea is detected via edge contact.
     * For eps = 0 and c < 0 the whole allowed set lies inside
     * |q| <= 1/2 + (m1 + max(m2,0))/|c|, so the box encloses everything
     * and nothing touches the edge. */
    double R;
    if (p.eps > 0.0) {
        R = std::sqrt(2.0 * std::abs(c) / p.eps) + 2.0;
    } else {
        if (c >= 0.0) {
            throw RegimeUnsupported(
                "eps = 0 with c >= 0 has an unbounded allowed set with no "
                "finite bounding box; choose c < 0");
        }
        R = kCenter + (p.m1 + std::max(p.m2, 0.0)) / std::abs(c) + 1.0;
    }

    // refine by doubling until the component count stabilizes twice
    int n = resolution;
    FloodResult cur = flood_fill(p, c, n, R);
    int stable = 0;
    const int max_doublings = 6;
    for (int d = 0; d < max_doublings && stable < 2; ++d) {
        FloodResult next = flood_fill(p, c, 2 * n, R);
        if (next.components == cur.components && next.unbounded == cur.unbounded) {
            ++stable;
        } else {
            stable = 0;
        }
        n *= 2;
        cur = std::move(next);
    }
    if (stable < 2) {
        std::ostringstream os;
        os << "component count failed to stabilize by " << n
           << " cells per axis; a component is thinner than the grid";
        throw GridTooCoarse(os.str());
    }

    HillReport rep;
    rep.c = c;
    rep.resolution = n;
    rep.box_radius = R;
    rep.component_count = cur.components;
    rep.has_e_component = cur.e_comp;
    rep.has_m_component = cur.m_comp;
    rep.has_unbounded = cur.unbounded;
    rep.labels = std::move(cur.labels);
    return rep;
}

std::vector<ScanRow> scan_conjecture(const ParamRange& m1s, const ParamRange& m2s,
                                     const ParamRange& epss, int workers,
                                     const ToleranceSet& tols) {
    std::vector<ScanRow> rows(std::size_t(m1s.count) * m2s.count * epss.count);
    auto fill_row = [&](std::size_t idx) {
        int ie = int(idx % epss.count);
        int im2 = int((idx / epss.count) % m2s.count);
        int im1 = int(idx / (std::size_t(epss.count) * m2s.count));
        ScanRow& row = rows[idx];
        row.m1 = m1s.at(im1);
        row.m2 = m2s.at(im2);
        row.eps = epss.at(ie);
        MassParams p{row.m1, row.m2, row.eps};
        try {
            row.c_crit = -p.eps / 8.0 - p.M1();
            row.c0 = scan_c0(p, tols);
            row.holds = row.c0 < row.c_crit;
        } catch (const Error& e) {
            row.error = e.name();
        }
    };
    if (workers <= 1) {
        for (std::size_t i = 0; i < rows.size(); ++i) fill_row(i);
    } else {
        // index-sharded static partition: deterministic row content
        // regardless of thread interleaving
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&, w]() {
                for (std::size_t i = w; i < rows.size(); i += workers) fill_row(i);
            });
        }
        for (auto& t : pool) t.join();
    }
    return rows;
}

} // namespace lagrange
