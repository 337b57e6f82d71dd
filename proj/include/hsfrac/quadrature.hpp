#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hsfrac/geometry.hpp"

namespace hsfrac {

struct quadrature_error : std::runtime_error {
    double value = 0;
    double err_est = 0;
    quadrature_error(const std::string& msg, double v = 0, double e = 0)
        : std::runtime_error(msg), value(v), err_est(e) {}
};
struct slow_decay_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct non_integrable_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct degenerate_ladder_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-8;
    int max_subdivisions = 4096;
    double grading_ratio = 0.25;   // geometric mesh ratio toward singular points
    double tail_radius = 64.0;     // improper tails are transformed beyond this
    int extrapolation_levels = 6;

    void validate() const {
        if (!(abs_tol > 0) || !(rel_tol > 0))
            throw std::invalid_argument("QuadConfig: tolerances must be positive");
        if (!(grading_ratio > 0) || !(grading_ratio < 1))
            throw std::invalid_argument("QuadConfig: grading_ratio in (0,1) required");
        if (!(tail_radius > 1)) throw std::invalid_argument("QuadConfig: tail_radius > 1 required");
        if (max_subdivisions < 1 || extrapolation_levels < 1)
            throw std::invalid_argument("QuadConfig: budgets must be positive");
    }

    QuadConfig tightened(double factor = 0.1) const {
        QuadConfig c = *this;
        c.abs_tol = std::max(abs_tol * factor, 5e-16);
        c.rel_tol = std::max(rel_tol * factor, 1e-14);
        return c;
    }
};

/// Algebraic smoothness break: f(t) ~ |t - position|^exponent near position.
/// exponent <= -1 inside an interval means the integral does not exist there.
struct Breakpoint {
    double position = 0;
    double exponent = 0;
};

struct Integrand1D {
    std::function<double(double)> eval;
    std::vector<Breakpoint> breakpoints;
    /// |f(t)| <= C |t|^{-decay_exponent} for large |t| (growth if negative).
    double decay_exponent = std::numeric_limits<double>::infinity();
    /// Absolute noise level of f(t) evaluations (e.g. finite-difference
    /// cancellation); panels whose error estimate sits at this floor are not
    /// refined further.
    std::function<double(double)> noise_at;
};

struct QuadResult {
    double value = 0;
    double err_est = 0;
};

namespace detail {

// 7-15 Gauss-Kronrod pair (QUADPACK dqk15 coefficients).
inline constexpr double gk_nodes[8] = {
    0.9914553711208126392068547, 0.9491079123427585245261897, 0.8648644233597690727897128,
    0.7415311855993944398638648, 0.5860872354676911302941448, 0.4058451513773971669066064,
    0.2077849550078984676006894, 0.0};
inline constexpr double gk_wk[8] = {
    0.0229353220105292249637320, 0.0630920926299785532907007, 0.1047900103222501838398763,
    0.1406532597155259187451896, 0.1690047266392679028265834, 0.1903505780647854099132564,
    0.2044329400752988924141620, 0.2094821410847278280129992};
inline constexpr double gk_wg[4] = {
    0.1294849661688696932706114, 0.2797053914892766679014678, 0.3818300505051189449503698,
    0.4179591836734693877551020};

struct Panel {
    double a, b;
    double value, err;
    double resabs;
};

template <class F>
inline Panel gk15(const F& f, double a, double b) {
    const double h = 0.5 * (b - a);
    const double c = 0.5 * (a + b);
    // Samples landing exactly on a declared integrable singularity can come
    // back non-finite; they carry zero measure and are dropped.
    auto safe = [&f](double t) {
        const double y = f(t);
        return std::isfinite(y) ? y : 0.0;
    };
    double fv[15];
    const double fc = safe(c);
    double resk = gk_wk[7] * fc;
    double resg = gk_wg[3] * fc;
    double resabs = std::abs(resk);
    fv[14] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * gk_nodes[i];
        const double f1 = safe(c - dx);
        const double f2 = safe(c + dx);
        fv[i] = f1;
        fv[7 + i] = f2;
        resk += gk_wk[i] * (f1 + f2);
        if (i % 2 == 1) resg += gk_wg[i / 2] * (f1 + f2);
        resabs += gk_wk[i] * (std::abs(f1) + std::abs(f2));
    }
    const double mean = 0.5 * resk;
    double resasc = gk_wk[7] * std::abs(fc - mean);
    for (int i = 0; i < 7; ++i)
        resasc += gk_wk[i] * (std::abs(fv[i] - mean) + std::abs(fv[7 + i] - mean));
    const double ha = std::abs(h);
    resk *= h;
    resg *= h;
    resabs *= ha;
    resasc *= ha;
    double err = std::abs(resk - resg);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double round_floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs;
    err = std::max(err, round_floor);
    return Panel{a, b, resk, err, resabs};
}

struct KahanSum {
    double s = 0, c = 0;
    void add(double x) {
        const double y = x - c;
        const double t = s + y;
        c = (t - s) - y;
        s = t;
    }
};

// Geometric grading levels toward an endpoint with algebraic exponent alpha:
// deep enough that the unresolved sliver carries less than ~1% of the target
// tolerance.
inline int grading_levels(double alpha, double ratio, double target_tol) {
    const double a = std::clamp(alpha, -0.95, 3.0);
    const double digits = -std::log10(std::clamp(target_tol * 1e-2, 1e-18, 1e-2));
    const int levels = static_cast<int>(std::ceil(digits / ((1.0 + a) * -std::log10(ratio))));
    return std::clamp(levels, 4, 600);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration on a finite interval (a, b).
/// Panels are split exactly at declared breakpoints; a geometric mesh with
/// ratio cfg.grading_ratio is laid toward breakpoints with exponent < 3.
inline QuadResult integrate_1d(const Integrand1D& f, double a, double b, const QuadConfig& cfg) {
    cfg.validate();
    if (!(a < b)) throw std::invalid_argument("integrate_1d: a < b required");
    if (!(b - a > 0) || b - a < 1e-300) return {0.0, 0.0};

    constexpr double kSmoothExponent = 3.0;  // breaks at least this smooth need no grading
    const double edge_tol = 1e-13 * std::max({std::abs(a), std::abs(b), 1.0});

    // Collect break positions inside [a, b]; remember endpoint singularities.
    std::vector<Breakpoint> interior;
    double alpha_a = std::numeric_limits<double>::infinity();
    double alpha_b = std::numeric_limits<double>::infinity();
    for (const auto& bp : f.breakpoints) {
        if (std::abs(bp.position - a) <= edge_tol) {
            alpha_a = std::min(alpha_a, bp.exponent);
        } else if (std::abs(bp.position - b) <= edge_tol) {
            alpha_b = std::min(alpha_b, bp.exponent);
        } else if (bp.position > a && bp.position < b) {
            if (bp.exponent <= -1.0)
                throw non_integrable_error(
                    "integrate_1d: interior breakpoint with exponent <= -1");
            interior.push_back(bp);
        }
    }
    std::sort(interior.begin(), interior.end(),
              [](const Breakpoint& u, const Breakpoint& v) { return u.position < v.position; });

    // Edges of the initial mesh: interval ends, breakpoints, graded clusters.
    std::vector<double> edges;
    edges.push_back(a);
    for (const auto& bp : interior) edges.push_back(bp.position);
    edges.push_back(b);
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    struct SingularEnd {
        double pos;
        double alpha;
    };
    std::vector<SingularEnd> singular;
    if (alpha_a < kSmoothExponent) singular.push_back({a, alpha_a});
    if (alpha_b < kSmoothExponent) singular.push_back({b, alpha_b});
    for (const auto& bp : interior)
        if (bp.exponent < kSmoothExponent) singular.push_back({bp.position, bp.exponent});

    const double r = cfg.grading_ratio;
    for (const auto& se : singular) {
        // Grade into the breakpoint from both sides that lie inside [a, b].
        auto neighbor_gap = [&](int dir) -> double {
            double gap = std::numeric_limits<double>::infinity();
            for (double e : edges) {
                const double d = dir > 0 ? e - se.pos : se.pos - e;
                if (d > edge_tol) gap = std::min(gap, d);
            }
            return gap;
        };
        for (int dir : {-1, +1}) {
            const double gap = neighbor_gap(dir);
            if (!std::isfinite(gap)) continue;
            const double len = 0.5 * gap;
            const int levels =
                detail::grading_levels(se.alpha, r, std::min(cfg.abs_tol, cfg.rel_tol));
            double step = len;
            for (int j = 0; j < levels; ++j) {
                edges.push_back(se.pos + dir * step);
                step *= r;
                if (step < 1e-24 * len) break;
            }
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](double u, double v) {
                                return v - u <= 1e-17 * std::max({std::abs(u), std::abs(v), 1e-280});
                            }),
                edges.end());
    if (edges.front() > a) edges.insert(edges.begin(), a);
    if (edges.back() < b) edges.push_back(b);

    std::vector<detail::Panel> panels;
    panels.reserve(edges.size() + 64);
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
        panels.push_back(detail::gk15(f.eval, edges[i], edges[i + 1]));

    auto totals = [&]() -> std::pair<double, double> {
        detail::KahanSum v, e;
        for (const auto& p : panels) {
            v.add(p.value);
            e.add(p.err);
        }
        return {v.s, e.s};
    };

    // Largest-error-first refinement against the global budget.
    using HeapItem = std::pair<double, std::size_t>;
    std::priority_queue<HeapItem> heap;
    for (std::size_t i = 0; i < panels.size(); ++i) heap.push({panels[i].err, i});

    constexpr double eps = std::numeric_limits<double>::epsilon();
    auto unfixable = [&](const detail::Panel& p) {
        // Roundoff floor, or width at the resolution limit of its position,
        // or an error estimate already at the declared evaluation-noise
        // floor (refinement chases noise from there on).
        if (p.err <= 55.0 * eps * p.resabs) return true;
        if (p.b - p.a <= std::max(32.0 * eps * std::max(std::abs(p.a), std::abs(p.b)), 1e-305))
            return true;
        if (f.noise_at && p.err <= 4.0 * f.noise_at(0.5 * (p.a + p.b)) * (p.b - p.a)) return true;
        return false;
    };

    int splits = 0;
    double stuck_err = 0;  // irreducible error of panels no refinement can improve
    auto [total_v, total_e] = totals();
    while (true) {
        const double target = std::isfinite(total_v)
                                  ? std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total_v))
                                  : cfg.abs_tol;
        if (total_e <= target) break;
        // The improvable remainder is negligible next to what is irreducible.
        if (total_e - stuck_err <= std::max(0.25 * target, 0.02 * stuck_err)) break;
        if (heap.empty()) break;
        auto [err, idx] = heap.top();
        heap.pop();
        if (err != panels[idx].err) continue;  // stale entry
        const detail::Panel p = panels[idx];
        if (unfixable(p)) {
            stuck_err += p.err;
            continue;
        }
        if (++splits > cfg.max_subdivisions)
            throw quadrature_error("integrate_1d: subdivision budget exhausted", total_v, total_e);
        const double mid = 0.5 * (p.a + p.b);
        detail::Panel left = detail::gk15(f.eval, p.a, mid);
        detail::Panel right = detail::gk15(f.eval, mid, p.b);
        total_v += left.value + right.value - p.value;
        total_e += left.err + right.err - p.err;
        panels[idx] = left;
        heap.push({left.err, idx});
        panels.push_back(right);
        heap.push({right.err, panels.size() - 1});
        if (splits % 64 == 0) std::tie(total_v, total_e) = totals();  // refresh drift
    }

    // Deterministic final summation in interval order.
    std::sort(panels.begin(), panels.end(),
              [](const detail::Panel& u, const detail::Panel& v) { return u.a < v.a; });
    detail::KahanSum v, e;
    for (const auto& p : panels) {
        v.add(p.value);
        e.add(p.err);
    }
    return {v.s, e.s};
}

/// Integral over (a, infinity): finite part up to R = max(tail_radius, ...)
/// plus the transformed tail t = R/u on (0, 1).
inline QuadResult integrate_improper(const Integrand1D& f, double a, const QuadConfig& cfg) {
    if (!(f.decay_exponent > 1.0))
        throw slow_decay_error("integrate_improper: decay_exponent must exceed 1");
    double R = std::max(cfg.tail_radius, 2.0 * std::abs(a) + 1.0);
    for (const auto& bp : f.breakpoints) R = std::max(R, 2.0 * std::abs(bp.position) + 1.0);

    QuadResult head = integrate_1d(f, a, R, cfg);

    Integrand1D tail;
    const double p = f.decay_exponent;
    tail.eval = [&f, R](double u) {
        const double t = R / u;
        return f.eval(t) * R / (u * u);
    };
    tail.breakpoints = {{0.0, p - 2.0}};
    if (f.noise_at) {
        tail.noise_at = [&f, R](double u) { return f.noise_at(R / u) * R / (u * u); };
    }
    QuadResult tq = integrate_1d(tail, 0.0, 1.0, cfg);
    return {head.value + tq.value, head.err_est + tq.err_est};
}

/// Integral over the whole real line; breakpoints are honored on both rays.
inline QuadResult integrate_real_line(const Integrand1D& f, const QuadConfig& cfg) {
    Integrand1D folded;
    folded.eval = [&f](double t) { return f.eval(t) + f.eval(-t); };
    folded.decay_exponent = f.decay_exponent;
    if (f.noise_at) {
        folded.noise_at = [&f](double t) { return f.noise_at(t) + f.noise_at(-t); };
    }
    for (const auto& bp : f.breakpoints) {
        folded.breakpoints.push_back({std::abs(bp.position), bp.exponent});
    }
    folded.breakpoints.push_back({0.0, 0.0});
    return integrate_improper(folded, 0.0, cfg);
}

// ---------------------------------------------------------------------------
// Multi-dimensional integration (N <= 3) by iterated 1D rules and polar
// reduction.  Smoothness breaks are supported on hyperplanes x1 = const,
// which is the only break geometry the kernel formulas produce.
// ---------------------------------------------------------------------------

struct NdIntegrand {
    std::function<double(PointView)> eval;
    int dim = 2;
    std::vector<Breakpoint> x1_breakpoints;
    /// |f(x)| <= C (1+|x|)^{-decay_exponent} on unbounded regions.
    double decay_exponent = std::numeric_limits<double>::infinity();
    /// f ~ r^{center_exponent} toward a Ball region's center / the origin.
    double center_exponent = 0.0;
};

struct Region {
    enum class Kind { Box, Ball, AllSpace, Slab };
    Kind kind = Kind::Box;
    Point3 lo, hi;       // Box bounds; Slab uses component 0 only
    Ball ball;           // Ball region

    static Region box(Point3 lo_, Point3 hi_) {
        Region r;
        r.kind = Kind::Box;
        r.lo = lo_;
        r.hi = hi_;
        return r;
    }
    static Region ball_around(Point3 c, double radius) {
        Region r;
        r.kind = Kind::Ball;
        r.ball = Ball{c, radius};
        return r;
    }
    static Region all_space() {
        Region r;
        r.kind = Kind::AllSpace;
        return r;
    }
    static Region slab(double x1_lo, double x1_hi) {
        Region r;
        r.kind = Kind::Slab;
        r.lo = Point3{x1_lo};
        r.hi = Point3{x1_hi};
        return r;
    }
};

namespace detail {

inline QuadResult integrate_box_rec(const NdIntegrand& f, const Point3& lo, const Point3& hi,
                                    int axis, Point3& x, const QuadConfig& cfg) {
    const int d = f.dim;
    if (axis == d - 1) {
        Integrand1D g;
        g.eval = [&](double t) {
            x[axis] = t;
            return f.eval(x.view());
        };
        if (axis == 0) g.breakpoints = f.x1_breakpoints;
        return integrate_1d(g, lo[axis], hi[axis], cfg);
    }
    Integrand1D g;
    double err_inner = 0;
    const QuadConfig inner = cfg.tightened(0.1);
    g.eval = [&](double t) {
        x[axis] = t;
        QuadResult r = integrate_box_rec(f, lo, hi, axis + 1, x, inner);
        err_inner = std::max(err_inner, r.err_est);
        return r.value;
    };
    if (axis == 0) g.breakpoints = f.x1_breakpoints;
    QuadResult outer = integrate_1d(g, lo[axis], hi[axis], cfg);
    outer.err_est += err_inner * (hi[axis] - lo[axis]);
    return outer;
}

// Angular average over the unit sphere S^{d-1} at radius rr around center c,
// scaled by the sphere measure; theta/phi breakpoints come from x1-planes.
inline QuadResult sphere_integral(const NdIntegrand& f, const Point3& c, double rr,
                                  const QuadConfig& cfg) {
    if (f.dim == 2) {
        Integrand1D g;
        g.eval = [&](double th) {
            Point3 y = c;
            y.n = 2;
            y[0] = c[0] + rr * std::cos(th);
            y[1] = c[1] + rr * std::sin(th);
            return f.eval(y.view());
        };
        for (const auto& bp : f.x1_breakpoints) {
            const double t = (bp.position - c[0]) / rr;
            if (t > -1.0 && t < 1.0) {
                const double th = std::acos(t);
                g.breakpoints.push_back({th, bp.exponent});
                g.breakpoints.push_back({2.0 * std::numbers::pi - th, bp.exponent});
            }
        }
        return integrate_1d(g, 0.0, 2.0 * std::numbers::pi, cfg);
    }
    // d == 3: polar axis along e1 so x1-breaks appear in phi only.
    Integrand1D outer;
    const QuadConfig inner_cfg = cfg.tightened(0.1);
    double inner_err = 0;
    outer.eval = [&](double phi) {
        const double x1 = c[0] + rr * std::cos(phi);
        const double rs = rr * std::sin(phi);
        Integrand1D g;
        g.eval = [&](double th) {
            Point3 y;
            y.n = 3;
            y[0] = x1;
            y[1] = c[1] + rs * std::cos(th);
            y[2] = c[2] + rs * std::sin(th);
            return f.eval(y.view());
        };
        QuadResult r = integrate_1d(g, 0.0, 2.0 * std::numbers::pi, inner_cfg);
        inner_err = std::max(inner_err, r.err_est);
        return std::sin(phi) * r.value;
    };
    for (const auto& bp : f.x1_breakpoints) {
        const double t = (bp.position - c[0]) / rr;
        if (t > -1.0 && t < 1.0) outer.breakpoints.push_back({std::acos(t), bp.exponent});
    }
    QuadResult r = integrate_1d(outer, 0.0, std::numbers::pi, cfg);
    r.err_est += inner_err * std::numbers::pi;
    return r;
}

inline constexpr double kRadialTangencyExponent = 1.0;  // C^1-type break in r

inline void radial_breaks(const NdIntegrand& f, const Point3& c, std::vector<Breakpoint>& out) {
    for (const auto& bp : f.x1_breakpoints) {
        const double t = std::abs(bp.position - c[0]);
        if (t > 0) out.push_back({t, kRadialTangencyExponent});
    }
}

}  // namespace detail

/// Iterated adaptive integration over box, ball, slab, or all of R^d, d <= 3.
/// Ball and AllSpace regions use polar reduction around the center/origin.
inline QuadResult integrate_nd(const NdIntegrand& f, const Region& region, const QuadConfig& cfg) {
    if (f.dim < 1 || f.dim > 3)
        throw std::invalid_argument("integrate_nd: only dimensions 1..3 are supported");

    if (f.dim == 1) {
        Integrand1D g;
        g.eval = [&](double t) {
            return f.eval(PointView{&t, 1});
        };
        g.breakpoints = f.x1_breakpoints;
        g.decay_exponent = f.decay_exponent;
        switch (region.kind) {
            case Region::Kind::Box:
            case Region::Kind::Slab:
                return integrate_1d(g, region.lo[0], region.hi[0], cfg);
            case Region::Kind::Ball:
                return integrate_1d(g, region.ball.center[0] - region.ball.radius,
                                    region.ball.center[0] + region.ball.radius, cfg);
            case Region::Kind::AllSpace:
                return integrate_real_line(g, cfg);
        }
        return {0.0, 0.0};
    }

    switch (region.kind) {
        case Region::Kind::Box: {
            Point3 x;
            x.n = f.dim;
            return detail::integrate_box_rec(f, region.lo, region.hi, 0, x, cfg);
        }
        case Region::Kind::Ball: {
            const Point3& c = region.ball.center;
            Integrand1D radial;
            const QuadConfig inner = cfg.tightened(0.1);
            double inner_err = 0;
            radial.eval = [&](double rr) {
                QuadResult s = detail::sphere_integral(f, c, rr, inner);
                inner_err = std::max(inner_err, s.err_est);
                return std::pow(rr, f.dim - 1) * s.value;
            };
            radial.breakpoints.push_back({0.0, f.center_exponent + (f.dim - 1)});
            detail::radial_breaks(f, c, radial.breakpoints);
            QuadResult r = integrate_1d(radial, 0.0, region.ball.radius, cfg);
            r.err_est += inner_err * region.ball.radius;
            return r;
        }
        case Region::Kind::AllSpace: {
            if (!(f.decay_exponent > static_cast<double>(f.dim)))
                throw slow_decay_error("integrate_nd: decay_exponent must exceed the dimension");
            Point3 c;
            c.n = f.dim;
            Integrand1D radial;
            const QuadConfig inner = cfg.tightened(0.1);
            double inner_err = 0;
            radial.eval = [&](double rr) {
                QuadResult s = detail::sphere_integral(f, c, rr, inner);
                inner_err = std::max(inner_err, s.err_est);
                return std::pow(rr, f.dim - 1) * s.value;
            };
            radial.breakpoints.push_back({0.0, f.center_exponent + (f.dim - 1)});
            detail::radial_breaks(f, c, radial.breakpoints);
            radial.decay_exponent = f.decay_exponent - (f.dim - 1);
            QuadResult r = integrate_improper(radial, 0.0, cfg);
            r.err_est += inner_err;
            return r;
        }
        case Region::Kind::Slab: {
            Integrand1D outer;
            const QuadConfig inner_cfg = cfg.tightened(0.1);
            double inner_err = 0;
            outer.eval = [&](double x1) {
                NdIntegrand slice;
                slice.dim = f.dim - 1;
                slice.decay_exponent = f.decay_exponent;
                slice.eval = [&, x1](PointView xp) {
                    Point3 y;
                    y.n = f.dim;
                    y[0] = x1;
                    for (int i = 1; i < f.dim; ++i) y[i] = xp[static_cast<std::size_t>(i - 1)];
                    return f.eval(y.view());
                };
                QuadResult r = integrate_nd(slice, Region::all_space(), inner_cfg);
                inner_err = std::max(inner_err, r.err_est);
                return r.value;
            };
            outer.breakpoints = f.x1_breakpoints;
            QuadResult r = integrate_1d(outer, region.lo[0], region.hi[0], cfg);
            r.err_est += inner_err * (region.hi[0] - region.lo[0]);
            return r;
        }
    }
    return {0.0, 0.0};
}

/// Richardson-type limit of v(h) as h -> 0+ assuming
/// v(h) = L + C h^order_hint + o(h^order_hint).
inline double limit_extrapolate(std::span<const std::pair<double, double>> samples,
                                double order_hint) {
    const std::size_t n = samples.size();
    if (n < 3) throw degenerate_ladder_error("limit_extrapolate: need at least 3 samples");
    for (std::size_t i = 0; i + 1 < n; ++i) {
        if (!(samples[i + 1].first < samples[i].first) || !(samples[i].first > 0))
            throw degenerate_ladder_error("limit_extrapolate: h must be positive and decreasing");
        if (samples[i + 1].first / samples[i].first > 0.95)
            throw degenerate_ladder_error("limit_extrapolate: h ratios not bounded away from 1");
    }

    auto neville_at_zero = [&](double power, double& err) {
        std::vector<double> x(n), t(n);
        for (std::size_t i = 0; i < n; ++i) {
            x[i] = std::pow(samples[i].first, power);
            t[i] = samples[i].second;
        }
        double prev_diag = t[0];
        for (std::size_t j = 1; j < n; ++j) {
            for (std::size_t i = 0; i + j < n; ++i)
                t[i] = t[i + 1] + (t[i + 1] - t[i]) * x[i + j] / (x[i] - x[i + j]);
            if (j == n - 1) err = std::abs(t[0] - prev_diag);
            prev_diag = t[0];
        }
        return t[0];
    };

    double err_h = 0, err_p = 0;
    const double in_h = neville_at_zero(1.0, err_h);
    if (std::abs(order_hint - 1.0) < 1e-12) return in_h;
    const double in_p = neville_at_zero(order_hint, err_p);
    return err_p <= err_h ? in_p : in_h;
}

inline double limit_extrapolate(const std::vector<std::pair<double, double>>& samples,
                                double order_hint) {
    return limit_extrapolate(std::span<const std::pair<double, double>>(samples), order_hint);
}

}  // namespace hsfrac
