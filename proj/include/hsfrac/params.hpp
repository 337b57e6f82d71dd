#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "hsfrac/special.hpp"

namespace hsfrac {

struct integer_s_error : std::domain_error {
    using std::domain_error::domain_error;
};

/// Problem parameters: operator order s = m + sigma acting in R^N.
/// sigma = 1 marks the local (polyharmonic) case; s is always derived.
struct Params {
    int N = 1;
    int m = 0;
    double sigma = 0.5;

    Params() = default;
    Params(int N_, int m_, double sigma_) : N(N_), m(m_), sigma(sigma_) { validate(); }

    void validate() const {
        if (N < 1) throw std::invalid_argument("Params: N >= 1 required");
        if (m < 0) throw std::invalid_argument("Params: m >= 0 required");
        if (!(sigma > 0.0) || sigma > 1.0)
            throw std::invalid_argument("Params: sigma in (0,1] required");
    }

    double s() const { return static_cast<double>(m) + sigma; }
    bool integer_s() const { return sigma == 1.0; }
};

/// Convenience: split a real order s > 0 into (m, sigma] with sigma in (0,1].
inline Params params_from_order(int N, double s) {
    if (!(s > 0.0)) throw std::invalid_argument("params_from_order: s > 0 required");
    int m = static_cast<int>(std::ceil(s)) - 1;
    double sigma = s - m;
    return Params(N, m, sigma);
}

/// alpha_{l,i} = (-1)^i 2^{l-2i} Gamma(N/2+l-i) / (pi^{N/2} (l-2i)! i!)
inline double alpha_coeff(int l, int i, int N) {
    if (l < 0 || i < 0 || 2 * i > l)
        throw std::out_of_range("alpha_coeff: need 0 <= 2i <= l");
    const double sign = (i % 2 == 0) ? 1.0 : -1.0;
    const double num = std::pow(2.0, l - 2 * i) * gamma_fn(0.5 * N + l - i);
    double fact = 1.0;
    for (int j = 2; j <= l - 2 * i; ++j) fact *= j;
    double facti = 1.0;
    for (int j = 2; j <= i; ++j) facti *= j;
    return sign * num / (std::pow(std::numbers::pi, 0.5 * N) * fact * facti);
}

/// All normalization constants attached to one Params value.  Computed once
/// and treated as immutable; kernel evaluators read these inside their
/// innermost loops.
struct ConstantSet {
    Params params;
    double omega_N = 0;     // (N-1)-measure of the unit sphere in R^N
    double k_Ns = 0;        // Green normalization
    double P_m = 0;         // sum_{k=1}^{m+1} (-1)^k C(2m+2, m+1-k) k^{2s}
    bool has_fractional = false;
    double c_Ns_value = 0;         // defined only for noninteger s
    double gamma_Nsigma_value = 0; // defined only for noninteger s
    std::vector<std::vector<double>> alpha_table;  // alpha_table[l][i], l <= m

    double c_Ns() const {
        if (!has_fractional)
            throw integer_s_error("c_Ns is undefined for integer s (sigma = 1)");
        return c_Ns_value;
    }
    double gamma_Nsigma() const {
        if (!has_fractional)
            throw integer_s_error("gamma_Nsigma is undefined for integer s (sigma = 1)");
        return gamma_Nsigma_value;
    }
    double alpha(int l, int i) const {
        if (l >= 0 && l < static_cast<int>(alpha_table.size()) && i >= 0 &&
            2 * i <= l)
            return alpha_table[static_cast<std::size_t>(l)][static_cast<std::size_t>(i)];
        return alpha_coeff(l, i, params.N);
    }
};

inline ConstantSet constants(const Params& p) {
    p.validate();
    ConstantSet c;
    c.params = p;
    const double s = p.s();
    const double piN2 = std::pow(std::numbers::pi, 0.5 * p.N);
    c.omega_N = 2.0 * piN2 / gamma_fn(0.5 * p.N);
    c.k_Ns = gamma_fn(0.5 * p.N) / (piN2 * std::pow(4.0, s) * gamma_fn(s) * gamma_fn(s));

    c.P_m = 0.0;
    for (int k = 1; k <= p.m + 1; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        c.P_m += sign * static_cast<double>(binomial(2 * p.m + 2, p.m + 1 - k)) *
                 std::pow(static_cast<double>(k), 2.0 * s);
    }

    c.has_fractional = !p.integer_s();
    if (c.has_fractional) {
        c.c_Ns_value = std::pow(4.0, s) * gamma_fn(0.5 * p.N + s) / (piN2 * gamma_fn(-s)) / c.P_m;
        c.gamma_Nsigma_value =
            gamma_fn(0.5 * p.N) / (piN2 * gamma_fn(p.sigma) * gamma_fn(1.0 - p.sigma));
    }

    c.alpha_table.resize(static_cast<std::size_t>(p.m) + 1);
    for (int l = 0; l <= p.m; ++l) {
        auto& row = c.alpha_table[static_cast<std::size_t>(l)];
        row.resize(static_cast<std::size_t>(l / 2) + 1);
        for (int i = 0; 2 * i <= l; ++i) row[static_cast<std::size_t>(i)] = alpha_coeff(l, i, p.N);
    }
    return c;
}

}  // namespace hsfrac
