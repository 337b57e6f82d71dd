#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "hsfrac/params.hpp"

using namespace hsfrac;

TEST_CASE("params invariants") {
    Params p(2, 1, 0.5);
    CHECK(p.s() == Catch::Approx(1.5));
    CHECK_FALSE(p.integer_s());
    CHECK(Params(1, 0, 1.0).integer_s());
    CHECK_THROWS_AS(Params(0, 0, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Params(1, -1, 0.5), std::invalid_argument);
    CHECK_THROWS_AS(Params(1, 0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Params(1, 0, 1.5), std::invalid_argument);

    Params q = params_from_order(3, 2.5);
    CHECK(q.m == 2);
    CHECK(q.sigma == Catch::Approx(0.5));
    Params r = params_from_order(1, 2.0);
    CHECK(r.m == 1);
    CHECK(r.sigma == Catch::Approx(1.0));
}

TEST_CASE("constants at N=1, s=1/2") {
    ConstantSet c = constants(Params(1, 0, 0.5));
    CHECK(c.c_Ns() == Catch::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(c.k_Ns == Catch::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-12));
    CHECK(c.gamma_Nsigma() == Catch::Approx(1.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(c.P_m == Catch::Approx(-1.0).epsilon(1e-14));
}

TEST_CASE("sphere measures") {
    CHECK(constants(Params(1, 0, 0.5)).omega_N == Catch::Approx(2.0).epsilon(1e-13));
    CHECK(constants(Params(2, 0, 0.5)).omega_N ==
          Catch::Approx(2.0 * std::numbers::pi).epsilon(1e-13));
    CHECK(constants(Params(3, 0, 0.5)).omega_N ==
          Catch::Approx(4.0 * std::numbers::pi).epsilon(1e-13));
}

TEST_CASE("alpha coefficients") {
    CHECK(alpha_coeff(0, 0, 2) == Catch::Approx(1.0 / std::numbers::pi).epsilon(1e-13));
    // The two E_{0,3} coefficients at N=2 (s=3, m=2)
    CHECK(alpha_coeff(2, 0, 2) == Catch::Approx(4.0 / std::numbers::pi).epsilon(1e-13));
    CHECK(alpha_coeff(2, 1, 2) == Catch::Approx(-1.0 / std::numbers::pi).epsilon(1e-13));
    // alpha_{1,0} = 2N/omega_N
    for (int N : {1, 2, 3}) {
        ConstantSet c = constants(Params(N, 0, 0.5));
        CHECK(alpha_coeff(1, 0, N) == Catch::Approx(2.0 * N / c.omega_N).epsilon(1e-12));
        CHECK(c.alpha(0, 0) == Catch::Approx(2.0 / c.omega_N).epsilon(1e-12));
    }
    CHECK_THROWS_AS(alpha_coeff(1, 1, 2), std::out_of_range);
    CHECK_THROWS_AS(alpha_coeff(2, -1, 2), std::out_of_range);
}

TEST_CASE("c_Ns positivity: sign of P_m cancels sign of Gamma(-s)") {
    for (int m = 0; m <= 8; ++m) {
        for (double sigma : {0.1, 0.3, 0.5, 0.7, 0.9}) {
            for (int N : {1, 2, 3}) {
                ConstantSet c = constants(Params(N, m, sigma));
                const double s = m + sigma;
                INFO("N=" << N << " m=" << m << " sigma=" << sigma);
                CHECK(std::signbit(c.P_m) == std::signbit(gamma_fn(-s)));
                CHECK(c.c_Ns() > 0.0);
                CHECK(c.k_Ns > 0.0);
                CHECK(c.gamma_Nsigma() > 0.0);
            }
        }
    }
}

TEST_CASE("integer s blocks the fractional-only constants") {
    ConstantSet c = constants(Params(2, 1, 1.0));
    CHECK_THROWS_AS(c.c_Ns(), integer_s_error);
    CHECK_THROWS_AS(c.gamma_Nsigma(), integer_s_error);
    CHECK(c.k_Ns > 0.0);  // defined for all s
}

TEST_CASE("Martin normalization chain: 4^s k_Ns / s = alpha_00 / (Gamma(s+1) Gamma(s))") {
    for (int N : {1, 2, 3}) {
        for (double s : {0.5, 1.5, 2.5, 3.5}) {
            Params p = params_from_order(N, s);
            ConstantSet c = constants(p);
            const double lhs = std::pow(4.0, s) * c.k_Ns / s;
            const double rhs = c.alpha(0, 0) / (gamma_fn(s + 1.0) * gamma_fn(s));
            CHECK(lhs == Catch::Approx(rhs).epsilon(1e-12));
        }
    }
}
