#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hsfrac/geometry.hpp"

namespace hsfrac {

enum class SupportKind { Compact, Halfspace, Global };

/// Smoothness break on the hyperplane {x_1 = b} (a point for N = 1):
/// u ~ |x_1 - b|^exponent near it.
struct KinkPlane {
    double x1 = 0;
    double exponent = 0;
};

/// Evaluable function on R^N with the support/decay/smoothness metadata the
/// quadrature-backed operators consume.
struct ScalarField {
    std::function<double(PointView)> eval;
    int dim = 1;
    SupportKind support = SupportKind::Global;
    std::vector<Ball> support_balls;  // meaningful for Compact support
    /// |u(x)| <= C (1+|x|)^{-decay_exponent}; negative values declare growth.
    /// Certifies L^1_s membership: requires decay_exponent > -2s.
    double decay_exponent = 0;
    std::vector<KinkPlane> kinks;
    /// Local regularity order away from the kink set.
    double smoothness = std::numeric_limits<double>::infinity();
    /// Distance from x to the nearest smoothness break; defaults to the
    /// hyperplane kinks, overridden by fields with curved break loci.
    std::function<double(PointView)> break_distance;

    double operator()(PointView x) const { return eval(x); }

    double kink_distance(PointView x) const {
        if (break_distance) return break_distance(x);
        double d = std::numeric_limits<double>::infinity();
        for (const auto& k : kinks) d = std::min(d, std::abs(x[0] - k.x1));
        return d;
    }

    bool in_L1s(double s) const { return decay_exponent > -2.0 * s; }
};

/// (x_1)_+^alpha as a field on R^N (constant in the remaining coordinates).
inline ScalarField power_field(double alpha, int N = 1) {
    ScalarField u;
    u.dim = N;
    u.support = SupportKind::Halfspace;
    u.eval = [alpha](PointView x) { return pos_pow(x[0], alpha); };
    u.kinks = {{0.0, alpha}};
    u.decay_exponent = -alpha;
    return u;
}

/// 1/(1 + x^2) on R.
inline ScalarField runge_field() {
    ScalarField u;
    u.dim = 1;
    u.eval = [](PointView x) { return 1.0 / (1.0 + x[0] * x[0]); };
    u.decay_exponent = 2.0;
    return u;
}

/// Smooth exponential bump w * exp(-1/(1 - t^2)), t = |x - c|/r, on t < 1.
inline ScalarField bump_field(Point3 center, double radius, double weight = 1.0) {
    if (!(radius > 0)) throw std::invalid_argument("bump_field: radius > 0 required");
    ScalarField u;
    u.dim = center.n;
    u.support = SupportKind::Compact;
    u.support_balls = {Ball{center, radius}};
    u.decay_exponent = std::numeric_limits<double>::infinity();
    u.eval = [center, radius, weight](PointView x) {
        const double t2 = dist_sq(x, center.view()) / (radius * radius);
        if (t2 >= 1.0) return 0.0;
        return weight * std::exp(-1.0 / (1.0 - t2));
    };
    // analytic except at the support sphere (C^inf but not analytic there)
    u.break_distance = [center, radius](PointView x) {
        return std::abs(dist(x, center.view()) - radius);
    };
    return u;
}

/// u(lambda x + shift) with metadata carried through.
inline ScalarField affine_pullback(const ScalarField& u, double lambda, Point3 shift) {
    ScalarField v = u;
    v.eval = [ev = u.eval, lambda, shift](PointView x) {
        Point3 y;
        y.n = static_cast<int>(x.size());
        for (int i = 0; i < y.n; ++i) y[i] = lambda * x[static_cast<std::size_t>(i)] + shift[i];
        return ev(y.view());
    };
    v.kinks.clear();
    for (const auto& k : u.kinks) v.kinks.push_back({(k.x1 - shift[0]) / lambda, k.exponent});
    if (u.break_distance) {
        const auto base = u.break_distance;
        v.break_distance = [base, lambda, shift](PointView x) {
            Point3 y;
            y.n = static_cast<int>(x.size());
            for (int i = 0; i < y.n; ++i)
                y[i] = lambda * x[static_cast<std::size_t>(i)] + shift[i];
            return base(y.view()) / std::abs(lambda);
        };
    } else {
        v.break_distance = nullptr;
    }
    v.support_balls.clear();
    for (const auto& b : u.support_balls) {
        Ball nb;
        nb.center.n = b.center.n;
        for (int i = 0; i < b.center.n; ++i) nb.center[i] = (b.center[i] - shift[i]) / lambda;
        nb.radius = b.radius / std::abs(lambda);
        v.support_balls.push_back(nb);
    }
    return v;
}

/// Pointwise linear combination a*u + b*v (metadata: union of kinks, weakest
/// decay).
inline ScalarField linear_combination(double a, const ScalarField& u, double b,
                                      const ScalarField& v) {
    if (u.dim != v.dim) throw std::invalid_argument("linear_combination: dimension mismatch");
    ScalarField w;
    w.dim = u.dim;
    w.eval = [a, ue = u.eval, b, ve = v.eval](PointView x) { return a * ue(x) + b * ve(x); };
    w.support = (u.support == SupportKind::Compact && v.support == SupportKind::Compact)
                    ? SupportKind::Compact
                    : SupportKind::Global;
    w.support_balls = u.support_balls;
    w.support_balls.insert(w.support_balls.end(), v.support_balls.begin(),
                           v.support_balls.end());
    w.decay_exponent = std::min(u.decay_exponent, v.decay_exponent);
    w.kinks = u.kinks;
    w.kinks.insert(w.kinks.end(), v.kinks.begin(), v.kinks.end());
    w.smoothness = std::min(u.smoothness, v.smoothness);
    if (u.break_distance || v.break_distance) {
        auto du = u.break_distance, dv = v.break_distance;
        auto ku = u.kinks, kv = v.kinks;
        w.break_distance = [du, dv, ku, kv](PointView x) {
            auto plane_dist = [&x](const std::vector<KinkPlane>& ks) {
                double d = std::numeric_limits<double>::infinity();
                for (const auto& k : ks) d = std::min(d, std::abs(x[0] - k.x1));
                return d;
            };
            const double a = du ? du(x) : plane_dist(ku);
            const double b = dv ? dv(x) : plane_dist(kv);
            return std::min(a, b);
        };
    }
    return w;
}

}  // namespace hsfrac
