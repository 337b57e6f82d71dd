#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hsfrac {

struct pole_error : std::domain_error {
    using std::domain_error::domain_error;
};
struct overflow_error : std::range_error {
    using std::range_error::range_error;
};

namespace detail {

// Lanczos approximation, g = 7, 9 terms (Godfrey coefficients).  Good to
// ~1e-15 relative on the right half line.
inline double lanczos_sum(double x) {
    static constexpr double coef[9] = {
        0.99999999999980993,      676.5203681218851,      -1259.1392167224028,
        771.32342877765313,       -176.61502916214059,    12.507343278686905,
        -0.13857109526572012,     9.9843695780195716e-6,  1.5056327351493116e-7};
    double s = coef[0];
    for (int i = 1; i < 9; ++i) s += coef[i] / (x + static_cast<double>(i) - 1.0);
    return s;
}

inline double gamma_positive(double x) {
    // x >= 0.5 assumed
    const double g = 7.0;
    const double base = x + g - 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(base, x - 0.5) * std::exp(-base) *
           lanczos_sum(x);
}

}  // namespace detail

inline bool is_nonpositive_integer(double x, double tol = 1e-12) {
    if (x > 0.5) return false;
    return std::abs(x - std::round(x)) <= tol;
}

/// Gamma function for real non-pole arguments; reflection formula for x < 1/2.
inline double gamma_fn(double x) {
    if (is_nonpositive_integer(x))
        throw pole_error("gamma_fn: pole at nonpositive integer x = " + std::to_string(x));
    if (x >= 0.5) return detail::gamma_positive(x);
    // Gamma(x) Gamma(1-x) = pi / sin(pi x)
    return std::numbers::pi / (std::sin(std::numbers::pi * x) * detail::gamma_positive(1.0 - x));
}

/// log |Gamma(x)| for x > 0.
inline double log_gamma(double x) {
    if (x <= 0.0) throw pole_error("log_gamma: argument must be positive");
    const double g = 7.0;
    const double base = x + g - 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (x - 0.5) * std::log(base) - base +
           std::log(detail::lanczos_sum(x));
}

/// Binomial coefficient in exact integer arithmetic.  C(n,k) = 0 for k < 0 or
/// k > n; throws for n > 64 where int64 products would wrap.
inline long long binomial(int n, int k) {
    if (n < 0) throw std::invalid_argument("binomial: n must be nonnegative");
    if (k < 0 || k > n) return 0;
    if (n > 64) throw overflow_error("binomial: n > 64 exceeds the exact-integer range");
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (int i = 1; i <= k; ++i) {
        // prefix product r = C(n-k+i, i) stays exact at every step
        r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    }
    return static_cast<long long>(r);
}

/// Exact integer power with overflow detection.
inline long long ipow_checked(long long b, int e) {
    long long r = 1;
    for (int i = 0; i < e; ++i) {
        if (b != 0 && std::abs(r) > std::numeric_limits<long long>::max() / std::abs(b))
            throw overflow_error("ipow_checked: overflow");
        r *= b;
    }
    return r;
}

}  // namespace hsfrac
