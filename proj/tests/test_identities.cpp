#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hsfrac/identities.hpp"

using namespace hsfrac;

namespace {
const QuadConfig kCfg{};
}

TEST_CASE("Gould identity, hand cases") {
    auto r = check_gould(2, 2);
    CHECK(r.lhs == 4.0);
    CHECK(r.rhs == 4.0);
    CHECK(r.exact);

    CHECK(check_gould(0, 5).lhs == 1.0);
    CHECK(check_gould(0, 5).rhs == 1.0);

    auto z = check_gould(3, 1);  // C(1,3) = 0 convention on both sides
    CHECK(z.lhs == 0.0);
    CHECK(z.rhs == 0.0);
}

TEST_CASE("Gould identity, exhaustive l,x <= 12") {
    for (int l = 0; l <= 12; ++l)
        for (int x = 0; x <= 12; ++x) {
            auto r = check_gould(l, x);
            INFO(r.name);
            CHECK(r.abs_delta == 0.0);
        }
}

TEST_CASE("vanishing moment, hand cases and m <= 8") {
    CHECK(check_vanishing_moment(1).lhs == 0.0);  // 4-4+0-4+4
    CHECK(check_vanishing_moment(2).abs_delta == 0.0);
    CHECK(check_vanishing_moment(6).abs_delta == 0.0);
    for (int m = 1; m <= 8; ++m) CHECK(check_vanishing_moment(m).abs_delta == 0.0);
    CHECK_THROWS_AS(check_vanishing_moment(0), std::invalid_argument);
}

TEST_CASE("alpha-sum collapse, hand cases") {
    // j = k gives pi^{(1-N)/2}
    auto r = check_alpha_sum(2, 1, 1, 3);
    CHECK(r.lhs == Catch::Approx(std::pow(std::numbers::pi, -1.0)).epsilon(1e-12));
    CHECK(r.abs_delta <= 1e-11);

    auto z = check_alpha_sum(3, 1, 3, 2);
    CHECK(z.rhs == 0.0);
    CHECK(z.abs_delta <= 1e-11);

    auto one = check_alpha_sum(1, 1, 1, 1);
    CHECK(one.lhs == Catch::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("alpha-sum collapse, all m <= 4, N in {1,2,3}") {
    for (int N : {1, 2, 3})
        for (int m = 0; m <= 4; ++m)
            for (int k = 0; k <= m; ++k)
                for (int j = k; j <= m; j += 2) {
                    auto r = check_alpha_sum(m, k, j, N);
                    INFO(r.name);
                    CHECK(r.abs_delta <= 1e-11);
                }
}

TEST_CASE("alpha-sum odd j-k rejected") {
    CHECK_THROWS_AS(check_alpha_sum(2, 0, 1, 2), std::invalid_argument);
}

TEST_CASE("moment integrals against closed form") {
    // N=2, m=2, k=0, i=0, j=2, gamma=1
    auto a = check_moment_integral(2, 2, 0, 0, 2, {1}, kCfg);
    CHECK(a.lhs == Catch::Approx(a.rhs).epsilon(1e-6));

    // N=3 coordinate exchange symmetry
    auto b1 = check_moment_integral(3, 2, 0, 0, 2, {1, 0}, kCfg);
    auto b2 = check_moment_integral(3, 2, 0, 0, 2, {0, 1}, kCfg);
    CHECK(b1.lhs == Catch::Approx(b2.lhs).epsilon(1e-8));
    CHECK(b1.lhs == Catch::Approx(b1.rhs).epsilon(1e-6));

    // odd monomial integrates to zero
    NdIntegrand f;
    f.dim = 2;
    f.eval = [](PointView y) {
        const double q = 1.0 + y[0] * y[0] + y[1] * y[1];
        return y[0] / std::pow(q, 2.5);
    };
    f.decay_exponent = 4.0;
    CHECK(integrate_nd(f, Region::all_space(), kCfg).value ==
          Catch::Approx(0.0).margin(1e-9));
}

TEST_CASE("beta integral identity") {
    auto a = check_beta_integral(0.0, 1.0, kCfg);
    CHECK(a.lhs == Catch::Approx(std::numbers::pi / 2.0).epsilon(1e-9));
    CHECK(a.abs_delta <= 1e-8 * std::abs(a.rhs));

    auto b = check_beta_integral(2.0, 3.0, kCfg);
    CHECK(b.rhs == Catch::Approx(std::numbers::pi / 16.0).epsilon(1e-12));
    CHECK(b.abs_delta <= 1e-8 * std::abs(b.rhs));

    auto c = check_beta_integral(1.0, 2.0, kCfg);
    CHECK(c.rhs == Catch::Approx(0.5).epsilon(1e-12));
    CHECK(c.abs_delta <= 1e-8 * std::abs(c.rhs));

    CHECK_THROWS_AS(check_beta_integral(3.0, 1.0, kCfg), std::domain_error);
}

TEST_CASE("power trace integral") {
    // N=2, m=1, j=2, sigma=0.5, x1=1: both sides pi
    auto a = check_power_trace_integral(2, 1, 2, 0.5, 1.0, kCfg);
    CHECK(a.rhs == Catch::Approx(std::numbers::pi).epsilon(1e-12));
    CHECK(a.abs_delta <= 1e-6 * std::abs(a.rhs));

    // N=1 degenerate convention is exact
    auto b = check_power_trace_integral(1, 1, 2, 0.3, 1.7, kCfg);
    CHECK(b.lhs == Catch::Approx(std::pow(1.7, 2 * 1 - 2 + 0.3)).epsilon(1e-13));
    CHECK(b.abs_delta <= 1e-12 * std::abs(b.rhs));

    // homogeneity in x1
    auto c1 = check_power_trace_integral(2, 1, 2, 0.5, 0.8, kCfg);
    auto c2 = check_power_trace_integral(2, 1, 2, 0.5, 1.6, kCfg);
    CHECK(c2.lhs / c1.lhs == Catch::Approx(std::pow(2.0, 2 * 1 - 2 + 0.5)).epsilon(1e-8));

    CHECK_THROWS_AS(check_power_trace_integral(2, 1, 1, 0.5, 1.0, kCfg), std::invalid_argument);
}

TEST_CASE("composed trace collapse at N=2, m=2") {
    // sum_i alpha_{m-k,i} * (moment integral) = delta_{jk} * pi^{(1-N)/2}
    //   * pi^{(N-1)/2} (2g)!/(2^{j-k} g!)  [the gamma-factor route]
    const int N = 2, m = 2;
    for (int k = 0; k <= m; ++k)
        for (int j = k; j <= m; j += 2) {
            const int g = (j - k) / 2;
            double sum = 0;
            for (int i = 0; 2 * i <= m - k; ++i) {
                const double expo = 0.5 * N + (m - k - i);
                NdIntegrand f;
                f.dim = 1;
                f.eval = [g, expo](PointView y) {
                    return std::pow(y[0], 2 * g) / std::pow(1.0 + y[0] * y[0], expo);
                };
                f.decay_exponent = 2.0 * expo - 2.0 * g;
                sum += alpha_coeff(m - k, i, N) *
                       integrate_nd(f, Region::all_space(), kCfg).value;
            }
            double fact2g = 1.0, factg = 1.0;
            for (int t = 2; t <= 2 * g; ++t) fact2g *= t;
            for (int t = 2; t <= g; ++t) factg *= t;
            const double expect =
                (j == k) ? fact2g / (std::pow(2.0, j - k) * factg) : 0.0;
            INFO("k=" << k << " j=" << j);
            CHECK(sum == Catch::Approx(expect).margin(1e-8));
        }
}
