#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace hsfrac {

/// View over the coordinates of a point in R^N. Kernel formulas accept any N;
/// the quadrature-backed paths are restricted to N <= 3.
using PointView = std::span<const double>;

/// Inline point storage for the dimensions the numerical paths support.
struct Point3 {
    std::array<double, 3> v{};
    int n = 1;

    Point3() = default;
    Point3(std::initializer_list<double> xs) {
        n = 0;
        for (double x : xs) v[static_cast<std::size_t>(n++)] = x;
    }
    static Point3 from(PointView x) {
        Point3 p;
        p.n = static_cast<int>(x.size());
        for (int i = 0; i < p.n; ++i) p.v[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
        return p;
    }
    double& operator[](int i) { return v[static_cast<std::size_t>(i)]; }
    double operator[](int i) const { return v[static_cast<std::size_t>(i)]; }
    operator PointView() const { return {v.data(), static_cast<std::size_t>(n)}; }
    PointView view() const { return {v.data(), static_cast<std::size_t>(n)}; }
};

inline double dot(PointView a, PointView b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline double norm_sq(PointView a) { return dot(a, a); }
inline double norm(PointView a) { return std::sqrt(norm_sq(a)); }

inline double dist_sq(PointView a, PointView b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return s;
}
inline double dist(PointView a, PointView b) { return std::sqrt(dist_sq(a, b)); }

/// Reflection across the boundary hyperplane {x_1 = 0}.
inline Point3 reflect_x1(PointView y) {
    Point3 r = Point3::from(y);
    r[0] = -r[0];
    return r;
}

inline Point3 axpy(double a, PointView x, PointView y) {
    Point3 r;
    r.n = static_cast<int>(x.size());
    for (int i = 0; i < r.n; ++i)
        r[i] = a * x[static_cast<std::size_t>(i)] + y[static_cast<std::size_t>(i)];
    return r;
}

/// Positive part power (x_1)_+^a: zero for x1 <= 0 (also for negative a).
inline double pos_pow(double x1, double a) {
    if (x1 <= 0.0) return 0.0;
    return std::pow(x1, a);
}

struct Ball {
    Point3 center;
    double radius = 0;
};

}  // namespace hsfrac
