#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <stdexcept>
#include <vector>

#include "hsfrac/fields.hpp"
#include "hsfrac/params.hpp"
#include "hsfrac/quadrature.hpp"
#include "hsfrac/special.hpp"

namespace hsfrac {

struct not_in_L1s_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct proximity_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Symmetric finite-difference table: offsets k = -(m+1)..(m+1) with exact
/// integer coefficients (-1)^k C(2m+2, m+1-k).
struct FDKernel {
    int m = 0;
    std::vector<long long> coeffs;  // index k + m + 1

    long long coeff(int k) const { return coeffs[static_cast<std::size_t>(k + m + 1)]; }
    int max_offset() const { return m + 1; }
};

inline FDKernel fd_kernel(int m) {
    if (m < 0) throw std::invalid_argument("fd_kernel: m >= 0 required");
    FDKernel K;
    K.m = m;
    K.coeffs.resize(static_cast<std::size_t>(2 * m + 3));
    for (int k = -(m + 1); k <= m + 1; ++k) {
        const long long c = binomial(2 * m + 2, m + 1 - k);
        K.coeffs[static_cast<std::size_t>(k + m + 1)] = (((k % 2) + 2) % 2 == 0) ? c : -c;
    }
    return K;
}

/// delta_m u(x, y) = sum_k coeff(k) u(x + k y)
inline double delta_m(const ScalarField& u, PointView x, PointView y, int m) {
    const FDKernel K = fd_kernel(m);
    double s = 0;
    for (int k = -(m + 1); k <= m + 1; ++k) {
        const Point3 p = axpy(static_cast<double>(k), y, x);
        s += static_cast<double>(K.coeff(k)) * u.eval(p.view());
    }
    return s;
}

namespace detail {

// Integral of delta_m u over the sphere of radius r around x (two-point sum
// in 1D), with the kink planes of u mapped into angular breakpoints.
struct SphereDelta {
    const ScalarField* u;
    Point3 x;
    FDKernel K;
    QuadConfig cfg;

    double delta_dir(double r, PointView dir) const {
        double s = 0;
        for (int k = -(K.m + 1); k <= K.m + 1; ++k) {
            const long long c = K.coeff(k);
            Point3 p;
            p.n = x.n;
            for (int i = 0; i < x.n; ++i)
                p[i] = x[i] + static_cast<double>(k) * r * dir[static_cast<std::size_t>(i)];
            s += static_cast<double>(c) * u->eval(p.view());
        }
        return s;
    }

    // Largest |coeff * u| term at radius r along e1: the scale against which
    // the finite-difference cancellation noise is measured.
    double stencil_scale(double r) const {
        double s = 1e-30;
        for (int k = -(K.m + 1); k <= K.m + 1; ++k) {
            Point3 p = x;
            p[0] = x[0] + static_cast<double>(k) * r;
            s = std::max(s, std::abs(static_cast<double>(K.coeff(k)) * u->eval(p.view())));
        }
        return s;
    }

    QuadResult operator()(double r) const {
        const int N = x.n;
        if (N == 1) {
            const double e = 1.0;
            const double me = -1.0;
            return {delta_dir(r, PointView{&e, 1}) + delta_dir(r, PointView{&me, 1}), 0.0};
        }
        QuadConfig cfg = this->cfg;
        // the angular integrand is O(r^{2m+2}); scale the absolute target so
        // small radii are resolved relatively
        cfg.abs_tol = std::max(1e-18, cfg.abs_tol * std::pow(std::min(r, 1.0), 2.0 * K.m + 2.0));
        const double ang_noise = std::numeric_limits<double>::epsilon() * 8.0 * (2 * K.m + 3) *
                                 stencil_scale(r);
        // angular breakpoints where x1 + k r cos(theta) crosses a kink plane
        std::vector<double> cos_breaks;
        for (const auto& kk : u->kinks) {
            for (int k = 1; k <= K.m + 1; ++k) {
                for (int sgn : {-1, 1}) {
                    const double t = (kk.x1 - x[0]) / (sgn * k * r);
                    if (t > -1.0 && t < 1.0) cos_breaks.push_back(t);
                }
            }
        }
        if (N == 2) {
            Integrand1D g;
            g.eval = [this, r](double th) {
                const double d[2] = {std::cos(th), std::sin(th)};
                return delta_dir(r, PointView{d, 2});
            };
            g.noise_at = [ang_noise](double) { return ang_noise; };
            for (double t : cos_breaks) {
                const double th = std::acos(t);
                g.breakpoints.push_back({th, 0.0});
                g.breakpoints.push_back({2.0 * std::numbers::pi - th, 0.0});
            }
            return integrate_1d(g, 0.0, 2.0 * std::numbers::pi, cfg);
        }
        // N == 3: polar axis e1; phi holds the breaks, the azimuth is smooth.
        Integrand1D outer;
        QuadConfig inner_cfg = cfg.tightened(0.2);
        outer.eval = [this, r, &inner_cfg, ang_noise](double phi) {
            const double c1 = std::cos(phi), s1 = std::sin(phi);
            Integrand1D g;
            g.eval = [this, r, c1, s1](double th) {
                const double d[3] = {c1, s1 * std::cos(th), s1 * std::sin(th)};
                return delta_dir(r, PointView{d, 3});
            };
            g.noise_at = [ang_noise](double) { return ang_noise; };
            return s1 * integrate_1d(g, 0.0, 2.0 * std::numbers::pi, inner_cfg).value;
        };
        outer.noise_at = [ang_noise](double) { return 8.0 * ang_noise; };
        for (double t : cos_breaks) outer.breakpoints.push_back({std::acos(t), 0.0});
        return integrate_1d(outer, 0.0, std::numbers::pi, cfg);
    }
};

// Weighted least squares of residuals against {y^2, y^4, y^6} (no constant
// term; the constant is pinned separately by extrapolation).  Weights follow
// the inverse finite-difference noise, which scales like y^{2m+2}.
inline std::array<double, 3> fit_even_residual(const std::vector<std::pair<double, double>>& pts,
                                               double r_scale, int m) {
    constexpr int K = 3;
    long double ata[K][K] = {};
    long double atb[K] = {};
    for (const auto& [r, g] : pts) {
        const long double t = (r / r_scale) * (r / r_scale);
        const long double w = std::pow(static_cast<long double>(r / r_scale), 2.0L * (m + 1));
        long double phi[K];
        phi[0] = t;
        for (int j = 1; j < K; ++j) phi[j] = phi[j - 1] * t;
        for (int i = 0; i < K; ++i) {
            for (int j = 0; j < K; ++j) ata[i][j] += w * phi[i] * phi[j];
            atb[i] += w * phi[i] * static_cast<long double>(g);
        }
    }
    int piv[K] = {0, 1, 2};
    for (int c = 0; c < K; ++c) {
        int best = c;
        for (int rr = c + 1; rr < K; ++rr)
            if (std::abs((double)ata[piv[rr]][c]) > std::abs((double)ata[piv[best]][c])) best = rr;
        std::swap(piv[c], piv[best]);
        for (int rr = c + 1; rr < K; ++rr) {
            if (ata[piv[c]][c] == 0.0L) continue;
            const long double fac = ata[piv[rr]][c] / ata[piv[c]][c];
            for (int cc = c; cc < K; ++cc) ata[piv[rr]][cc] -= fac * ata[piv[c]][cc];
            atb[piv[rr]] -= fac * atb[piv[c]];
        }
    }
    std::array<double, 3> out{};
    long double sol[K];
    for (int c = K - 1; c >= 0; --c) {
        long double s = atb[piv[c]];
        for (int cc = c + 1; cc < K; ++cc) s -= ata[piv[c]][cc] * sol[cc];
        sol[c] = (ata[piv[c]][c] != 0.0L) ? s / ata[piv[c]][c] : 0.0L;
    }
    for (int j = 0; j < K; ++j)
        out[static_cast<std::size_t>(j)] =
            static_cast<double>(sol[j]) / std::pow(r_scale, 2.0 * (j + 1));
    return out;
}

// Mixed derivative d^{2 beta} u(x) of total order 2|beta| by tensor-product
// central differences at step h.
inline double central_mixed_deriv(const ScalarField& u, PointView x, const std::vector<int>& beta,
                                  double h) {
    const int N = static_cast<int>(x.size());
    std::vector<int> off(static_cast<std::size_t>(N), 0);
    std::function<double(int)> rec = [&](int axis) -> double {
        if (axis == N) {
            Point3 p;
            p.n = N;
            for (int i = 0; i < N; ++i)
                p[i] = x[static_cast<std::size_t>(i)] + off[static_cast<std::size_t>(i)] * h;
            return u.eval(p.view());
        }
        const int b = beta[static_cast<std::size_t>(axis)];
        if (b == 0) return rec(axis + 1);
        double s = 0;
        for (int j = -b; j <= b; ++j) {
            const long long c = binomial(2 * b, b - j);
            const double sign = ((((b - j) % 2) + 2) % 2 == 0) ? 1.0 : -1.0;
            off[static_cast<std::size_t>(axis)] = j;
            s += sign * static_cast<double>(c) * rec(axis + 1);
        }
        off[static_cast<std::size_t>(axis)] = 0;
        return s;
    };
    int total = 0;
    for (int b : beta) total += b;
    return rec(0) / std::pow(h, 2.0 * total);
}

// (-Delta)^{m+1} u(x) by multinomial expansion and Richardson extrapolation.
inline QuadResult local_polyharmonic(const ScalarField& u, PointView x, int m,
                                     const QuadConfig& cfg) {
    const int N = static_cast<int>(x.size());
    const int p = m + 1;
    std::vector<std::vector<int>> betas;
    std::vector<int> beta(static_cast<std::size_t>(N), 0);
    std::function<void(int, int)> gen = [&](int axis, int left) {
        if (axis == N - 1) {
            beta[static_cast<std::size_t>(axis)] = left;
            betas.push_back(beta);
            return;
        }
        for (int b = 0; b <= left; ++b) {
            beta[static_cast<std::size_t>(axis)] = b;
            gen(axis + 1, left - b);
        }
    };
    gen(0, p);

    double fact_p = 1;
    for (int i = 2; i <= p; ++i) fact_p *= i;

    const double kd = u.kink_distance(x);
    double h0 = 0.08;
    if (std::isfinite(kd)) h0 = std::min(h0, 0.5 * kd / p);
    if (!(h0 > 0)) throw proximity_error("local_polyharmonic: x sits on a smoothness break");

    auto eval_at = [&](double h) {
        double s = 0;
        for (const auto& bb : betas) {
            double multinom = fact_p;
            for (int b : bb)
                for (int i = 2; i <= b; ++i) multinom /= i;
            s += multinom * central_mixed_deriv(u, x, bb, h);
        }
        return ((p % 2 == 0) ? 1.0 : -1.0) * s;
    };

    std::vector<std::pair<double, double>> ladder;
    const int L = std::max(4, std::min(cfg.extrapolation_levels, 6));
    for (int i = 0; i < L; ++i) ladder.push_back({h0 * std::pow(0.5, i), 0.0});
    for (auto& [h, v] : ladder) v = eval_at(h);
    const double lim = limit_extrapolate(ladder, 2.0);
    // error surrogate: distance from the last refinement
    return {lim, std::abs(lim - ladder.back().second) * 0.1 +
                     1e-12 * std::abs(lim)};
}

}  // namespace detail

/// Pointwise (-Delta)^s u(x) by the finite-difference singular integral for
/// noninteger s, and by extrapolated central differences for sigma = 1.
///
/// The radial integrand near 0 is recovered from an even-power fit of
/// delta_m u / r^{2m+2} sampled where the finite differences are still above
/// the cancellation noise floor; beyond the cut the integral runs through the
/// adaptive engine with panels split at every image (b - x1)/k of a declared
/// kink plane b.
inline QuadResult frac_laplacian_at(const ScalarField& u, PointView x, const Params& params,
                                    const QuadConfig& cfg) {
    params.validate();
    const int N = params.N;
    if (u.dim != N || static_cast<int>(x.size()) != N)
        throw std::invalid_argument("frac_laplacian_at: dimension mismatch");
    if (N > 3)
        throw std::invalid_argument("frac_laplacian_at: quadrature path supports N <= 3");

    if (params.integer_s()) return detail::local_polyharmonic(u, x, params.m, cfg);

    const double s = params.s();
    const int m = params.m;
    const double sigma = params.sigma;
    if (!u.in_L1s(s))
        throw not_in_L1s_error("frac_laplacian_at: field metadata fails the L1_s test");

    const double kd = u.kink_distance(x);
    if (!(kd > 0)) throw proximity_error("frac_laplacian_at: x sits on a smoothness break");

    detail::SphereDelta sphere{&u, Point3::from(x), fd_kernel(m), cfg.tightened(0.1)};

    // Smooth zone: all x + k y stay clear of breaks for |y| < r_smooth.
    const double r_smooth = 0.99 * std::min(kd, 1e12) / (m + 1);
    const double cap = std::min(0.8 * r_smooth, 0.5);
    if (!(cap > 1e-6))
        throw proximity_error("frac_laplacian_at: x too close to the kink set for this order");

    // Cancellation-noise floor: below y_cut the finite differences drown in
    // rounding.  There g(r) = [sphere-integrated delta_m] / r^{2m+2} is an
    // even analytic function, recovered by Richardson extrapolation of
    // samples taken where the signal-to-noise ratio is still high.
    const double probe_r = 0.3 * cap;
    const double noise_est =
        std::numeric_limits<double>::epsilon() * 8.0 * (2 * m + 3) * sphere.stencil_scale(probe_r);
    const double g_probe =
        std::abs(sphere(probe_r).value) / std::pow(probe_r, 2.0 * m + 2.0) + 1e-300;
    const double snr_target = 2e4;
    double y_cut = std::pow(snr_target * noise_est / std::max(g_probe, snr_target * noise_est),
                            1.0 / (2.0 * m + 2.0));
    y_cut = std::clamp(y_cut, 1e-7, 0.5 * cap);

    // geometric ladder cap -> y_cut (at least 4 rungs, ratio <= ~0.8)
    const int rungs = std::clamp(
        static_cast<int>(std::ceil(std::log2(cap / y_cut))) + 1, 4, 14);
    const double ratio = std::pow(y_cut / cap, 1.0 / (rungs - 1));
    std::vector<std::pair<double, double>> gs;
    gs.reserve(static_cast<std::size_t>(rungs));
    double rr = cap;
    for (int i = 0; i < rungs; ++i) {
        gs.push_back({rr, sphere(rr).value / std::pow(rr, 2.0 * m + 2.0)});
        rr *= ratio;
    }
    const double a0 = limit_extrapolate(gs, 2.0);
    std::vector<std::pair<double, double>> resid;
    resid.reserve(gs.size());
    for (const auto& [r, g] : gs) resid.push_back({r, g - a0});
    const auto cres = detail::fit_even_residual(resid, cap, m);

    double near = a0 * std::pow(y_cut, 2.0 - 2.0 * sigma) / (2.0 - 2.0 * sigma);
    for (int j = 0; j < 3; ++j) {
        const double expo = 2.0 * (j + 1) + 2.0 - 2.0 * sigma;
        near += cres[static_cast<std::size_t>(j)] * std::pow(y_cut, expo) / expo;
    }
    const double near_err = (3.0 * noise_est / std::pow(y_cut, 2.0 * m + 2.0) +
                             std::abs(a0) / snr_target) *
                            std::pow(y_cut, 2.0 - 2.0 * sigma) / (2.0 - 2.0 * sigma);

    // Mid and tail through the adaptive engine.
    Integrand1D rad;
    double sphere_err = 0;
    rad.eval = [&sphere, &sphere_err, s](double r) {
        QuadResult q = sphere(r);
        sphere_err = std::max(sphere_err, q.err_est);
        return q.value / std::pow(r, 1.0 + 2.0 * s);
    };
    rad.noise_at = [&sphere, s, m](double r) {
        return std::numeric_limits<double>::epsilon() * 8.0 * (2 * m + 3) *
               sphere.stencil_scale(r) / std::pow(r, 1.0 + 2.0 * s);
    };
    for (const auto& kk : u.kinks) {
        for (int k = 1; k <= m + 1; ++k) {
            const double pos = std::abs(kk.x1 - x[0]) / k;
            if (pos > y_cut)
                rad.breakpoints.push_back({pos, N == 1 ? kk.exponent : 1.0});
        }
    }
    if (u.support == SupportKind::Compact) {
        for (const auto& b : u.support_balls) {
            const double d = dist(x, b.center.view());
            for (int k = 1; k <= m + 1; ++k) {
                for (double edge : {d - b.radius, d + b.radius}) {
                    if (edge / k > y_cut)
                        rad.breakpoints.push_back({edge / k, std::max(u.smoothness, 1.0)});
                }
            }
        }
    }
    rad.decay_exponent = 1.0 + 2.0 * s + std::min(u.decay_exponent, 0.0);
    QuadResult mid = integrate_improper(rad, y_cut, cfg);

    const ConstantSet C = constants(params);
    const double scale = 0.5 * C.c_Ns();
    return {scale * (near + mid.value),
            std::abs(scale) * (near_err + mid.err_est + sphere_err)};
}

/// Dimension-reduction evaluation (cylindrical lift): evaluates v on R^k with
/// the dimension-k constant; equals the N-dimensional value on the lift.
inline QuadResult frac_laplacian_lifted(const ScalarField& v, PointView x, const Params& params,
                                        const QuadConfig& cfg) {
    if (params.N <= v.dim)
        throw std::invalid_argument("frac_laplacian_lifted: params.N must exceed the base dim");
    const Params base(v.dim, params.m, params.sigma);
    return frac_laplacian_at(v, x.subspan(0, static_cast<std::size_t>(v.dim)), base, cfg);
}

}  // namespace hsfrac
