#pragma once

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsfrac/params.hpp"
#include "hsfrac/quadrature.hpp"
#include "hsfrac/special.hpp"

namespace hsfrac {

/// Both sides of a checked identity; tests and CLI reports read the drift
/// magnitude rather than a bare boolean.
struct IdentityReport {
    std::string name;
    double lhs = 0;
    double rhs = 0;
    double abs_delta = 0;
    bool exact = false;  // integer-arithmetic identity

    static IdentityReport of(std::string name, double lhs, double rhs, bool exact = false) {
        IdentityReport r;
        r.name = std::move(name);
        r.lhs = lhs;
        r.rhs = rhs;
        r.abs_delta = std::abs(lhs - rhs);
        r.exact = exact;
        return r;
    }
};

/// sum_{i=0}^{floor(l/2)} (-1)^i C(x,i) C(2x-2i, l-2i) = C(x,l) 2^l
inline IdentityReport check_gould(int l, int x) {
    if (l < 0 || x < 0) throw std::invalid_argument("check_gould: l, x >= 0 required");
    long long lhs = 0;
    for (int i = 0; 2 * i <= l && i <= x; ++i) {
        const long long term = binomial(x, i) * binomial(2 * x - 2 * i, l - 2 * i);
        lhs += (i % 2 == 0) ? term : -term;
    }
    const long long rhs = binomial(x, l) * ipow_checked(2, l);
    return IdentityReport::of("gould(l=" + std::to_string(l) + ",x=" + std::to_string(x) + ")",
                              static_cast<double>(lhs), static_cast<double>(rhs), true);
}

/// sum_{k=-m-1}^{m+1} (-1)^k C(2m+2, m+1-k) k^{2m} = 0
inline IdentityReport check_vanishing_moment(int m) {
    if (m < 1) throw std::invalid_argument("check_vanishing_moment: m >= 1 required");
    long long sum = 0;
    for (int k = -(m + 1); k <= m + 1; ++k) {
        const long long c = binomial(2 * m + 2, m + 1 - k);
        const long long p = ipow_checked(k, 2 * m);
        const long long term = c * p;
        sum += (((k % 2) + 2) % 2 == 0) ? term : -term;
    }
    return IdentityReport::of("vanishing_moment(m=" + std::to_string(m) + ")",
                              static_cast<double>(sum), 0.0, true);
}

/// sum_i alpha_{m-k,i} Gamma(m-i+(1-j-k)/2) / Gamma(m-i-k+N/2) = delta_{jk} pi^{(1-N)/2}
inline IdentityReport check_alpha_sum(int m, int k, int j, int N) {
    if (k < 0 || k > m || j < k || j > m)
        throw std::out_of_range("check_alpha_sum: need 0 <= k <= j <= m");
    if ((j - k) % 2 != 0)
        throw std::invalid_argument("check_alpha_sum: j-k must be even (keeps Gamma off poles)");
    const int l = m - k;
    double lhs = 0;
    for (int i = 0; 2 * i <= l; ++i) {
        const double a1 = m - i + 0.5 * (1.0 - j - k);
        const double a2 = m - i - k + 0.5 * N;
        if (is_nonpositive_integer(a1) || is_nonpositive_integer(a2))
            throw pole_error("check_alpha_sum: Gamma argument at a nonpositive integer");
        lhs += alpha_coeff(l, i, N) * gamma_fn(a1) / gamma_fn(a2);
    }
    const double rhs = (j == k) ? std::pow(std::numbers::pi, 0.5 * (1.0 - N)) : 0.0;
    return IdentityReport::of("alpha_sum(m=" + std::to_string(m) + ",k=" + std::to_string(k) +
                                  ",j=" + std::to_string(j) + ",N=" + std::to_string(N) + ")",
                              lhs, rhs);
}

/// Moment integral over R^{N-1}: int y^{2 gamma} (1+|y|^2)^{-N/2-(m-k-i)} dy
/// against its Gamma-function closed form; |gamma| = (j-k)/2.
inline IdentityReport check_moment_integral(int N, int m, int k, int i, int j,
                                            const std::vector<int>& gamma_idx,
                                            const QuadConfig& cfg) {
    if (N < 2 || N > 3) throw std::invalid_argument("check_moment_integral: N in {2,3}");
    if ((j - k) % 2 != 0 || j < k)
        throw std::invalid_argument("check_moment_integral: j-k must be even and nonnegative");
    if (static_cast<int>(gamma_idx.size()) != N - 1)
        throw std::invalid_argument("check_moment_integral: gamma has N-1 entries");
    int abs_gamma = 0;
    for (int g : gamma_idx) abs_gamma += g;
    if (2 * abs_gamma != j - k)
        throw std::invalid_argument("check_moment_integral: |gamma| = (j-k)/2 required");

    const double expo = 0.5 * N + (m - k - i);
    NdIntegrand f;
    f.dim = N - 1;
    f.eval = [&gamma_idx, expo](PointView y) {
        double mono = 1.0, q = 1.0;
        for (std::size_t d = 0; d < y.size(); ++d) {
            mono *= std::pow(y[d], 2 * gamma_idx[d]);
            q += y[d] * y[d];
        }
        return mono / std::pow(q, expo);
    };
    f.decay_exponent = 2.0 * expo - 2.0 * abs_gamma;
    const double numeric = integrate_nd(f, Region::all_space(), cfg).value;

    double fact2g = 1.0, factg = 1.0;
    for (int g : gamma_idx) {
        for (int t = 2; t <= 2 * g; ++t) fact2g *= t;
        for (int t = 2; t <= g; ++t) factg *= t;
    }
    const double closed = std::pow(std::numbers::pi, 0.5 * (N - 1)) * fact2g /
                          (std::pow(2.0, j - k) * factg) *
                          gamma_fn(m - i + 0.5 * (1.0 - j - k)) /
                          gamma_fn(m - i - k + 0.5 * N);
    return IdentityReport::of("moment_integral(N=" + std::to_string(N) + ",m=" + std::to_string(m) +
                                  ",k=" + std::to_string(k) + ",i=" + std::to_string(i) +
                                  ",j=" + std::to_string(j) + ")",
                              numeric, closed);
}

/// int_0^inf t^x (1+t^2)^{-y} dt = Gamma((x+1)/2) Gamma(y-(x+1)/2) / (2 Gamma(y))
inline IdentityReport check_beta_integral(double x, double y, const QuadConfig& cfg) {
    if (!(0.0 < 0.5 * (x + 1.0)) || !(0.5 * (x + 1.0) < y))
        throw std::domain_error("check_beta_integral: need 0 < (x+1)/2 < y");
    Integrand1D f;
    f.eval = [x, y](double t) { return std::pow(t, x) / std::pow(1.0 + t * t, y); };
    if (x < 0) f.breakpoints = {{0.0, x}};
    f.decay_exponent = 2.0 * y - x;
    const double numeric = integrate_improper(f, 0.0, cfg).value;
    const double closed =
        gamma_fn(0.5 * (x + 1.0)) * gamma_fn(y - 0.5 * (x + 1.0)) / (2.0 * gamma_fn(y));
    return IdentityReport::of("beta_integral(x=" + std::to_string(x) + ",y=" + std::to_string(y) +
                                  ")",
                              numeric, closed);
}

/// Boundary power integral: int_{R^{N-1}} x1^{j+sigma-1} (x1^2+|w|^2)^{-(N+2(j-m-1))/2} dw
/// = pi^{(N-1)/2} Gamma(j-m-1/2)/Gamma(N/2+j-m-1) x1^{2m-j+sigma}
inline IdentityReport check_power_trace_integral(int N, int m, int j, double sigma, double x1,
                                                 const QuadConfig& cfg) {
    if (j < m + 1) throw std::invalid_argument("check_power_trace_integral: j >= m+1 required");
    if (!(x1 > 0)) throw std::invalid_argument("check_power_trace_integral: x1 > 0 required");
    const double closed = std::pow(std::numbers::pi, 0.5 * (N - 1)) * gamma_fn(j - m - 0.5) /
                          gamma_fn(0.5 * N + j - m - 1.0) * std::pow(x1, 2 * m - j + sigma);
    double numeric;
    if (N == 1) {
        numeric = std::pow(x1, j + sigma - 1.0) / std::pow(x1, 1.0 + 2.0 * (j - m - 1));
    } else if (N == 2 || N == 3) {
        const double expo = 0.5 * (N + 2.0 * (j - m - 1));
        const double top = std::pow(x1, j + sigma - 1.0);
        NdIntegrand f;
        f.dim = N - 1;
        f.eval = [x1, expo, top](PointView w) {
            double q = x1 * x1;
            for (double wi : w) q += wi * wi;
            return top / std::pow(q, expo);
        };
        f.decay_exponent = 2.0 * expo;
        numeric = integrate_nd(f, Region::all_space(), cfg).value;
    } else {
        throw std::invalid_argument("check_power_trace_integral: N in {1,2,3}");
    }
    return IdentityReport::of("power_trace(N=" + std::to_string(N) + ",m=" + std::to_string(m) +
                                  ",j=" + std::to_string(j) + ",sigma=" + std::to_string(sigma) +
                                  ")",
                              numeric, closed);
}

}  // namespace hsfrac
