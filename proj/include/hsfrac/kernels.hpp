#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "hsfrac/geometry.hpp"
#include "hsfrac/params.hpp"
#include "hsfrac/quadrature.hpp"

namespace hsfrac {

struct coincident_point_error : std::domain_error {
    using std::domain_error::domain_error;
};

enum class KernelTag { GreenHalfspace, GreenBall, PoissonNonlocal, Boundary, Martin, ReflectedP };

struct KernelId {
    KernelTag tag = KernelTag::GreenHalfspace;
    int k = 0;  // Boundary(k); requires 0 <= k <= m

    static KernelId boundary(int k_) { return {KernelTag::Boundary, k_}; }
};

/// Incomplete profile integral int_0^psi v^{s-1} (1+v)^{-N/2} dv.
inline double kernel_profile(double psi, double s, int N, const QuadConfig& cfg) {
    if (!(psi >= 0)) throw std::invalid_argument("kernel_profile: psi >= 0 required");
    if (!(s > 0)) throw std::invalid_argument("kernel_profile: s > 0 required");
    if (psi == 0.0) return 0.0;
    Integrand1D f;
    f.eval = [s, N](double v) { return std::pow(v, s - 1.0) * std::pow(1.0 + v, -0.5 * N); };
    f.breakpoints = {{0.0, s - 1.0}};
    if (psi > 4.0) f.breakpoints.push_back({1.0, 10.0});  // plain split for wide ranges
    return integrate_1d(f, 0.0, psi, cfg).value;
}

/// Green function of the half-space:
/// k_Ns |x-y|^{2s-N} int_0^{psi} v^{s-1}(1+v)^{-N/2} dv,
/// psi = 4 x1+ y1+ / |x-y|^2.  Zero as soon as x or y leaves the half-space.
inline double green_halfspace(PointView x, PointView y, const ConstantSet& C,
                              const QuadConfig& cfg) {
    if (x[0] <= 0.0 || y[0] <= 0.0) return 0.0;
    const double d2 = dist_sq(x, y);
    if (d2 == 0.0) throw coincident_point_error("green_halfspace: x = y");
    const double s = C.params.s();
    const double psi = 4.0 * x[0] * y[0] / d2;
    return C.k_Ns * std::pow(d2, s - 0.5 * C.params.N) * kernel_profile(psi, s, C.params.N, cfg);
}

/// Green function of the unit ball (upper limit (1-|x|^2)_+(1-|y|^2)_+/|x-y|^2).
inline double green_ball(PointView x, PointView y, const ConstantSet& C, const QuadConfig& cfg) {
    const double wx = 1.0 - norm_sq(x);
    const double wy = 1.0 - norm_sq(y);
    if (wx <= 0.0 || wy <= 0.0) return 0.0;
    const double d2 = dist_sq(x, y);
    if (d2 == 0.0) throw coincident_point_error("green_ball: x = y");
    const double s = C.params.s();
    const double psi = wx * wy / d2;
    return C.k_Ns * std::pow(d2, s - 0.5 * C.params.N) * kernel_profile(psi, s, C.params.N, cfg);
}

/// Nonlocal Poisson kernel (noninteger s, y strictly outside the closed
/// half-space): (-1)^m gamma_{N,sigma} (x1)_+^s / ((-y1)^s |x-y|^N).
inline double poisson_nonlocal(PointView x, PointView y, const ConstantSet& C) {
    if (!(y[0] < 0.0))
        throw std::invalid_argument("poisson_nonlocal: y must satisfy y1 < 0");
    const double g = C.gamma_Nsigma();  // throws integer_s_error for sigma = 1
    if (x[0] <= 0.0) return 0.0;
    const double s = C.params.s();
    const double sign = (C.params.m % 2 == 0) ? 1.0 : -1.0;
    return sign * g * std::pow(x[0], s) /
           (std::pow(-y[0], s) * std::pow(dist_sq(x, y), 0.5 * C.params.N));
}

/// Boundary Poisson kernel E_{k,s}(x, y), y on {y1 = 0}:
/// sum_i alpha_{m-k,i} (x1)_+^{s+m-k-2i} / |y-x|^{N+2(m-k-i)}.
inline double boundary_kernel(int k, PointView x, PointView y, const ConstantSet& C) {
    const int m = C.params.m;
    if (k < 0 || k > m) throw std::out_of_range("boundary_kernel: k in 0..m required");
    if (y[0] != 0.0)
        throw std::invalid_argument("boundary_kernel: y must lie on the boundary {y1 = 0}");
    if (x[0] <= 0.0) return 0.0;
    const double d2 = dist_sq(x, y);
    if (d2 == 0.0) throw coincident_point_error("boundary_kernel: x = y");
    const double s = C.params.s();
    const int N = C.params.N;
    double sum = 0;
    for (int i = 0; 2 * i <= m - k; ++i) {
        sum += C.alpha(m - k, i) * std::pow(x[0], s + m - k - 2 * i) /
               std::pow(d2, 0.5 * (N + 2.0 * (m - k - i)));
    }
    return sum;
}

/// Martin kernel (4^s k_Ns / s) (x1)_+^s / |x-z|^N
///   = E_{m,s}(x,z) / (Gamma(s+1) Gamma(s)).
inline double martin_kernel(PointView x, PointView z, const ConstantSet& C) {
    if (x[0] <= 0.0) return 0.0;
    const double d2 = dist_sq(x, z);
    if (d2 == 0.0) throw coincident_point_error("martin_kernel: x = z");
    const double s = C.params.s();
    return std::pow(4.0, s) * C.k_Ns / s * std::pow(x[0], s) /
           std::pow(d2, 0.5 * C.params.N);
}

/// Reflected kernel P_{s-1}(x,y) = (x1)_+^{s-2} (y1)_+^{s-1} (x1+y1) / |x-ybar|^N
/// (s > 1; ybar is y reflected across the boundary).
inline double reflected_P(PointView x, PointView y, const ConstantSet& C) {
    const double s = C.params.s();
    if (!(s > 1.0)) throw std::invalid_argument("reflected_P: defined for s > 1");
    if (x[0] <= 0.0 || y[0] <= 0.0) return 0.0;
    const Point3 yb = reflect_x1(y);
    const double d2 = dist_sq(x, yb.view());
    return std::pow(x[0], s - 2.0) * std::pow(y[0], s - 1.0) * (x[0] + y[0]) /
           std::pow(d2, 0.5 * C.params.N);
}

/// Closed-form boundary trace of the nonlocal Poisson kernel,
/// D^{s-1}[Gamma_s(., y)](z) for z on the boundary: the power of z1 factors
/// out of the trace definition, leaving
/// (-1)^m gamma_{N,sigma} / ((-y1)^s |z-y|^N).
inline double poisson_trace(PointView z, PointView y, const ConstantSet& C) {
    if (!(y[0] < 0.0)) throw std::invalid_argument("poisson_trace: y1 < 0 required");
    const double g = C.gamma_Nsigma();
    const double s = C.params.s();
    const double sign = (C.params.m % 2 == 0) ? 1.0 : -1.0;
    Point3 zb = Point3::from(z);
    zb[0] = 0.0;
    return sign * g / (std::pow(-y[0], s) * std::pow(dist_sq(zb.view(), y), 0.5 * C.params.N));
}

enum class GreenRegime { Subcritical, Critical, Supercritical };  // N>2s, N=2s, N<2s

struct GreenEnvelope {
    GreenRegime regime;
    double envelope;
};

/// Regime-appropriate two-sided comparison quantity for G_s.
inline GreenEnvelope green_envelope(PointView x, PointView y, const ConstantSet& C) {
    const double s = C.params.s();
    const int N = C.params.N;
    if (x[0] <= 0.0 || y[0] <= 0.0) return {GreenRegime::Subcritical, 0.0};
    const double d = dist(x, y);
    const Point3 yb = reflect_x1(y);
    const double dbar = dist(x, yb.view());
    const double top = std::pow(x[0] * y[0], s);
    if (N > 2.0 * s + 1e-12) {
        return {GreenRegime::Subcritical,
                top / (std::pow(d, N - 2.0 * s) * std::pow(dbar, 2.0 * s))};
    }
    if (std::abs(N - 2.0 * s) <= 1e-12) {
        const double l = std::log(1.0 + dbar * dbar / std::pow(d, s));
        return {GreenRegime::Critical, top / std::pow(dbar, 2.0 * s) * l};
    }
    return {GreenRegime::Supercritical, top / std::pow(d, N)};
}

}  // namespace hsfrac
