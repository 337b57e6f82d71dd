#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "hsfrac/fields.hpp"
#include "hsfrac/fractional_laplacian.hpp"
#include "hsfrac/geometry.hpp"
#include "hsfrac/params.hpp"
#include "hsfrac/quadrature.hpp"

namespace hsfrac {

/// Point inversion kappa x = c (x+v)/|x+v|^2 - v.  With c=2, v=e1 it maps the
/// unit ball onto the half-space {x1 > 0}; with c=1, v=0 it is the classical
/// Kelvin inversion at the unit sphere.
struct Inversion {
    double c = 2.0;
    Point3 v;

    Inversion() { v = Point3{1.0}; }
    Inversion(double c_, Point3 v_) : c(c_), v(v_) {
        if (!(c > 0)) throw std::invalid_argument("Inversion: c > 0 required");
    }

    static Inversion ball_to_halfspace(int N) {
        Point3 e1;
        e1.n = N;
        e1[0] = 1.0;
        return Inversion(2.0, e1);
    }
    static Inversion unit_sphere(int N) {
        Point3 z;
        z.n = N;
        return Inversion(1.0, z);
    }
};

inline Point3 invert_point(const Inversion& inv, PointView x) {
    Point3 xv = axpy(1.0, x, inv.v.view());
    const double q = norm_sq(xv.view());
    if (q == 0.0) throw std::domain_error("invert_point: x = -v is the inversion center");
    Point3 out;
    out.n = xv.n;
    for (int i = 0; i < out.n; ++i) out[i] = inv.c * xv[i] / q - inv.v[i];
    return out;
}

/// The three algebraic identities tying kappa (c=2, v=e1) to half-space
/// geometry, returned as (lhs, rhs) pairs for assertion:
///   |kx - ky| = 2|x-y|/(|x+e1||y+e1|),  1-|kx|^2 = 4 x1/|x+e1|^2,
///   |ky + e1| = 2/|y+e1|.
struct InversionIdentities {
    double dist_lhs, dist_rhs;
    double sphere_lhs, sphere_rhs;
    double center_lhs, center_rhs;
};

inline InversionIdentities inversion_identities(const Inversion& inv, PointView x, PointView y) {
    Point3 e1;
    e1.n = inv.v.n;
    e1[0] = 1.0;
    if (inv.c != 2.0 || dist(inv.v.view(), e1.view()) != 0.0)
        throw std::invalid_argument("inversion_identities: stated for c=2, v=e1");
    const Point3 kx = invert_point(inv, x);
    const Point3 ky = invert_point(inv, y);
    const Point3 xv = axpy(1.0, x, e1.view());
    const Point3 yv = axpy(1.0, y, e1.view());
    InversionIdentities r;
    r.dist_lhs = dist(kx.view(), ky.view());
    r.dist_rhs = 2.0 * dist(x, y) / (norm(xv.view()) * norm(yv.view()));
    r.sphere_lhs = 1.0 - norm_sq(kx.view());
    r.sphere_rhs = 4.0 * x[0] / norm_sq(xv.view());
    r.center_lhs = norm(axpy(1.0, ky.view(), e1.view()).view());
    r.center_rhs = 2.0 / norm(yv.view());
    return r;
}

/// Kelvin transform K_s u (x) = |x+v|^{2s-N} u(kappa x).
///
/// Metadata: a compactly supported base bounded away from -v maps to a
/// compactly supported transform (support balls mapped through kappa);
/// otherwise the transform is kept with the generic |x|^{2s-N} far-field
/// envelope.  L^1_s membership is preserved either way.
inline ScalarField kelvin_apply(const ScalarField& u, const Inversion& inv, double s) {
    ScalarField w;
    w.dim = u.dim;
    const int N = u.dim;
    w.eval = [ev = u.eval, inv, s, N](PointView x) {
        Point3 xv = axpy(1.0, x, inv.v.view());
        const double q = norm_sq(xv.view());
        if (q == 0.0) return 0.0;
        Point3 kx;
        kx.n = xv.n;
        for (int i = 0; i < kx.n; ++i) kx[i] = inv.c * xv[i] / q - inv.v[i];
        return std::pow(q, s - 0.5 * N) * ev(kx.view());
    };
    w.smoothness = u.smoothness;

    bool compact_away = u.support == SupportKind::Compact && !u.support_balls.empty();
    for (const auto& b : u.support_balls) {
        Point3 mv;
        mv.n = b.center.n;
        for (int i = 0; i < mv.n; ++i) mv[i] = -inv.v[i];
        if (dist(b.center.view(), mv.view()) <= b.radius * 1.0000001) compact_away = false;
    }
    if (compact_away) {
        w.support = SupportKind::Compact;
        for (const auto& b : u.support_balls) {
            Point3 d = axpy(1.0, b.center.view(), inv.v.view());
            const double dn = norm(d.view());
            Point3 lo, hi;
            lo.n = hi.n = b.center.n;
            for (int i = 0; i < lo.n; ++i) {
                const double u_i = d[i] / dn;
                lo[i] = b.center[i] - b.radius * u_i;
                hi[i] = b.center[i] + b.radius * u_i;
            }
            const Point3 ka = invert_point(inv, lo.view());
            const Point3 kb = invert_point(inv, hi.view());
            Ball img;
            img.center.n = ka.n;
            for (int i = 0; i < ka.n; ++i) img.center[i] = 0.5 * (ka[i] + kb[i]);
            img.radius = 0.5 * dist(ka.view(), kb.view());
            w.support_balls.push_back(img);
        }
        w.decay_exponent = std::numeric_limits<double>::infinity();
        if (u.smoothness == std::numeric_limits<double>::infinity() ||
            u.break_distance) {
            auto balls = w.support_balls;
            w.break_distance = [balls](PointView x) {
                double d = std::numeric_limits<double>::infinity();
                for (const auto& b : balls)
                    d = std::min(d, std::abs(dist(x, b.center.view()) - b.radius));
                return d;
            };
        }
    } else {
        w.support = SupportKind::Global;
        w.decay_exponent = static_cast<double>(N) - 2.0 * s;
    }
    return w;
}

/// Both sides of the Kelvin covariance relation
///   (-Delta)^s (K_s u)(x) = c^{2s} K_s((-Delta)^s u)(x) / |x+v|^{4s},
/// each evaluated numerically.
struct CovariancePair {
    double lhs, rhs;
};

inline CovariancePair kelvin_covariance_check(const ScalarField& u, const Inversion& inv,
                                              const Params& params, PointView x,
                                              const QuadConfig& cfg) {
    const double s = params.s();
    ScalarField ku = kelvin_apply(u, inv, s);
    const double lhs = frac_laplacian_at(ku, x, params, cfg).value;
    const Point3 kx = invert_point(inv, x);
    const double law = frac_laplacian_at(u, kx.view(), params, cfg).value;
    const double q = norm_sq(axpy(1.0, x, inv.v.view()).view());
    const double rhs =
        std::pow(inv.c, 2.0 * s) * std::pow(q, s - 0.5 * params.N) * law / std::pow(q, 2.0 * s);
    return {lhs, rhs};
}

namespace detail {

inline double divided_difference(const std::vector<double>& xs, std::vector<double> fs) {
    const std::size_t n = xs.size();
    for (std::size_t j = 1; j < n; ++j)
        for (std::size_t i = n - 1; i >= j; --i)
            fs[i] = (fs[i] - fs[i - 1]) / (xs[i] - xs[i - j]);
    return fs[n - 1];
}

}  // namespace detail

/// Higher-order boundary trace D^{k+sigma-1} u (z) =
/// (1/k!) lim_{t->0+} d^k/dt^k [ t^{1-sigma} u(t, z') ].
///
/// One-sided geometric ladder t = h 2^{-i}; the k-th divided difference over
/// a sliding window converges to the k-th Taylor coefficient of
/// t^{1-sigma} u, which carries the 1/k! already.
inline double trace_D(const ScalarField& u, PointView z, int k, double sigma,
                      const QuadConfig& cfg, double h0 = 0.5) {
    if (k < 0) throw std::invalid_argument("trace_D: k >= 0 required");
    if (!(sigma > 0.0) || sigma > 1.0) throw std::invalid_argument("trace_D: sigma in (0,1]");
    const int L = cfg.extrapolation_levels + k + 3;
    std::vector<double> ts(static_cast<std::size_t>(L));
    std::vector<double> fs(static_cast<std::size_t>(L));
    Point3 p = Point3::from(z);
    for (int i = 0; i < L; ++i) {
        const double t = h0 * std::pow(0.5, i);
        p[0] = t;
        ts[static_cast<std::size_t>(i)] = t;
        fs[static_cast<std::size_t>(i)] = std::pow(t, 1.0 - sigma) * u.eval(p.view());
    }
    std::vector<std::pair<double, double>> ladder;
    for (int i = 0; i + k < L; ++i) {
        std::vector<double> xs(ts.begin() + i, ts.begin() + i + k + 1);
        std::vector<double> ys(fs.begin() + i, fs.begin() + i + k + 1);
        ladder.push_back({ts[static_cast<std::size_t>(i)], detail::divided_difference(xs, ys)});
    }
    return limit_extrapolate(ladder, 1.0);
}

/// The reduced trace of Lemma-type form: when the lower-order traces vanish,
/// D^{k+sigma-1} u (z) = lim_{t->0+} t^{1-k-sigma} u(t, z').
inline double trace_D_pure_limit(const ScalarField& u, PointView z, int k, double sigma,
                                 const QuadConfig& cfg, double h0 = 0.25) {
    const int L = cfg.extrapolation_levels + 3;
    std::vector<std::pair<double, double>> ladder;
    Point3 p = Point3::from(z);
    for (int i = 0; i < L; ++i) {
        const double t = h0 * std::pow(0.5, i);
        p[0] = t;
        ladder.push_back({t, std::pow(t, 1.0 - k - sigma) * u.eval(p.view())});
    }
    return limit_extrapolate(ladder, 1.0);
}

}  // namespace hsfrac
