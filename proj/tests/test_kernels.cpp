#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "hsfrac/kernels.hpp"
#include "hsfrac/transforms.hpp"

using namespace hsfrac;

namespace {
const QuadConfig kCfg{};
QuadConfig tight_cfg() {
    QuadConfig c;
    c.abs_tol = 1e-14;
    c.rel_tol = 1e-12;
    return c;
}
const QuadConfig kTight = tight_cfg();
}  // namespace

TEST_CASE("kernel profile values") {
    CHECK(kernel_profile(std::numbers::e - 1.0, 1.0, 2, kTight) ==
          Catch::Approx(1.0).epsilon(1e-12));
    CHECK(kernel_profile(0.0, 0.5, 1, kTight) == 0.0);
    CHECK(kernel_profile(1.0, 0.5, 1, kTight) ==
          Catch::Approx(2.0 * std::asinh(1.0)).epsilon(1e-12));
}

TEST_CASE("half-space green reduces to min(x,y) for N=1, s=1") {
    ConstantSet C = constants(Params(1, 0, 1.0));
    for (double x : {0.25, 0.5, 1.0, 1.75, 2.5}) {
        for (double y : {0.4, 0.9, 1.3, 2.2}) {
            const double g = green_halfspace(PointView{&x, 1}, PointView{&y, 1}, C, kTight);
            INFO("x=" << x << " y=" << y);
            CHECK(g == Catch::Approx(std::min(x, y)).margin(1e-10));
        }
    }
}

TEST_CASE("green support, symmetry, positivity") {
    ConstantSet C = constants(Params(2, 0, 0.5));
    Point3 xm{-1.0, 0.3}, y{1.0, 0.0};
    CHECK(green_halfspace(xm.view(), y.view(), C, kCfg) == 0.0);
    CHECK(green_halfspace(y.view(), xm.view(), C, kCfg) == 0.0);
    CHECK_THROWS_AS(green_halfspace(y.view(), y.view(), C, kCfg), coincident_point_error);

    std::mt19937 rng(2024u);
    std::uniform_real_distribution<double> up(0.05, 3.0);
    std::uniform_real_distribution<double> ut(-2.0, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        Point3 a{up(rng), ut(rng)}, b{up(rng), ut(rng)};
        if (dist(a.view(), b.view()) < 1e-3) continue;
        const double gab = green_halfspace(a.view(), b.view(), C, kCfg);
        const double gba = green_halfspace(b.view(), a.view(), C, kCfg);
        CHECK(gab == Catch::Approx(gba).epsilon(1e-12));
        CHECK(gab > 0.0);
    }
}

TEST_CASE("ball green: support and the 1D interval oracle") {
    ConstantSet C = constants(Params(1, 0, 1.0));
    Point3 outside{1.2};
    Point3 inside{0.3};
    CHECK(green_ball(outside.view(), inside.view(), C, kCfg) == 0.0);

    // classical interval Green function (1 - xy - |x-y|)/2 on (-1,1)
    for (double x : {-0.7, -0.2, 0.0, 0.5}) {
        for (double y : {-0.4, 0.25, 0.8}) {
            const double expect = 0.5 * (1.0 - x * y - std::abs(x - y));
            CHECK(green_ball(PointView{&x, 1}, PointView{&y, 1}, C, kTight) ==
                  Catch::Approx(expect).margin(1e-10));
        }
    }
    const double x0 = 0.0, y0 = 0.5;
    CHECK(green_ball(PointView{&x0, 1}, PointView{&y0, 1}, C, kTight) ==
          Catch::Approx(0.25).margin(1e-10));
}

TEST_CASE("kelvin mapping of green functions") {
    // G_halfspace(x,y) = (2/(|kx+e1||ky+e1|))^{2s-N} G_ball(kx, ky)
    struct Case {
        int N;
        double s;
    };
    for (Case c : {Case{1, 0.5}, Case{2, 1.5}, Case{3, 2.5}}) {
        Params p = params_from_order(c.N, c.s);
        ConstantSet C = constants(p);
        Inversion inv = Inversion::ball_to_halfspace(c.N);
        Point3 e1;
        e1.n = c.N;
        e1[0] = 1.0;
        std::mt19937 rng(137u + c.N);
        std::uniform_real_distribution<double> up(0.1, 2.5);
        std::uniform_real_distribution<double> ut(-1.5, 1.5);
        int done = 0;
        while (done < 20) {
            Point3 x, y;
            x.n = y.n = c.N;
            x[0] = up(rng);
            y[0] = up(rng);
            for (int i = 1; i < c.N; ++i) {
                x[i] = ut(rng);
                y[i] = ut(rng);
            }
            if (dist(x.view(), y.view()) < 5e-2) continue;
            const Point3 kx = invert_point(inv, x.view());
            const Point3 ky = invert_point(inv, y.view());
            const double fx = norm(axpy(1.0, kx.view(), e1.view()).view());
            const double fy = norm(axpy(1.0, ky.view(), e1.view()).view());
            const double lhs = green_halfspace(x.view(), y.view(), C, kTight);
            const double rhs = std::pow(2.0 / (fx * fy), 2.0 * c.s - c.N) *
                               green_ball(kx.view(), ky.view(), C, kTight);
            INFO("N=" << c.N << " s=" << c.s);
            CHECK(lhs == Catch::Approx(rhs).epsilon(1e-8));
            ++done;
        }
    }
}

TEST_CASE("nonlocal poisson kernel") {
    ConstantSet C = constants(Params(1, 0, 0.5));
    const double x = 1.0, y = -1.0;
    CHECK(poisson_nonlocal(PointView{&x, 1}, PointView{&y, 1}, C) ==
          Catch::Approx(1.0 / (2.0 * std::numbers::pi)).epsilon(1e-12));

    const double xneg = -0.5;
    CHECK(poisson_nonlocal(PointView{&xneg, 1}, PointView{&y, 1}, C) == 0.0);

    // kernel alternates sign with the parity of m
    ConstantSet C1 = constants(Params(1, 1, 0.5));
    CHECK(poisson_nonlocal(PointView{&x, 1}, PointView{&y, 1}, C1) < 0.0);

    ConstantSet Cint = constants(Params(1, 0, 1.0));
    CHECK_THROWS_AS(poisson_nonlocal(PointView{&x, 1}, PointView{&y, 1}, Cint),
                    integer_s_error);
    const double ybad = 0.5;
    CHECK_THROWS_AS(poisson_nonlocal(PointView{&x, 1}, PointView{&ybad, 1}, C),
                    std::invalid_argument);
}

TEST_CASE("boundary kernels: top orders and the printed N=2, s=3 coefficients") {
    for (int N : {1, 2, 3}) {
        ConstantSet C = constants(Params(N, 2, 0.5));
        const double s = C.params.s();
        Point3 x, y;
        x.n = y.n = N;
        x[0] = 0.8;
        y[0] = 0.0;
        if (N > 1) {
            x[1] = 0.4;
            y[1] = -0.9;
        }
        const double d = dist(x.view(), y.view());
        // E_{m,s} = (2/omega_N) x1^s / |x-y|^N
        CHECK(boundary_kernel(2, x.view(), y.view(), C) ==
              Catch::Approx(2.0 / C.omega_N * std::pow(x[0], s) / std::pow(d, N))
                  .epsilon(1e-12));
        // E_{m-1,s} = (2N/omega_N) x1^{s+1} / |x-y|^{N+2}
        CHECK(boundary_kernel(1, x.view(), y.view(), C) ==
              Catch::Approx(2.0 * N / C.omega_N * std::pow(x[0], s + 1.0) /
                            std::pow(d, N + 2.0))
                  .epsilon(1e-12));
        CHECK_THROWS_AS(boundary_kernel(3, x.view(), y.view(), C), std::out_of_range);
    }

    // N=2, s=3: E_{0,3} = (4/pi) x1^5/|x-y|^6 - (1/pi) x1^3/|x-y|^4,
    // distinct from the iterated-laplacian kernel K_{0,3} with (8/pi, -4/pi).
    ConstantSet C3 = constants(Params(2, 2, 1.0));
    Point3 x{0.7, 0.2}, y{0.0, -0.6};
    const double d = dist(x.view(), y.view());
    const double e03 = boundary_kernel(0, x.view(), y.view(), C3);
    const double expect = 4.0 / std::numbers::pi * std::pow(x[0], 5.0) / std::pow(d, 6.0) -
                          1.0 / std::numbers::pi * std::pow(x[0], 3.0) / std::pow(d, 4.0);
    CHECK(e03 == Catch::Approx(expect).epsilon(1e-13));
    const double k03 = 8.0 / std::numbers::pi * std::pow(x[0], 5.0) / std::pow(d, 6.0) -
                       4.0 / std::numbers::pi * std::pow(x[0], 3.0) / std::pow(d, 4.0);
    CHECK(std::abs(e03 - k03) > 1e-3 * std::abs(e03));
}

TEST_CASE("martin kernel equals the normalized top boundary kernel") {
    std::mt19937 rng(55u);
    std::uniform_real_distribution<double> up(0.1, 2.0);
    std::uniform_real_distribution<double> ut(-2.0, 2.0);
    for (double s : {0.5, 1.5, 2.5}) {
        Params p = params_from_order(2, s);
        ConstantSet C = constants(p);
        const double norm_const = gamma_fn(s + 1.0) * gamma_fn(s);
        for (int trial = 0; trial < 50; ++trial) {
            Point3 x{up(rng), ut(rng)}, z{0.0, ut(rng)};
            const double lhs = martin_kernel(x.view(), z.view(), C);
            const double rhs = boundary_kernel(p.m, x.view(), z.view(), C) / norm_const;
            CHECK(lhs == Catch::Approx(rhs).epsilon(1e-12));
        }
    }
    Point3 xm{-0.2, 0.0}, z{0.0, 1.0};
    CHECK(martin_kernel(xm.view(), z.view(), constants(Params(2, 0, 0.5))) == 0.0);
}

TEST_CASE("martin kernel is the boundary limit of the green function") {
    struct Case {
        int N;
        double s;
    };
    for (Case c : {Case{1, 1.5}, Case{2, 0.5}}) {
        Params p = params_from_order(c.N, c.s);
        ConstantSet C = constants(p);
        Point3 x, z;
        x.n = z.n = c.N;
        x[0] = 1.2;
        z[0] = 0.0;
        if (c.N > 1) {
            x[1] = -0.3;
            z[1] = 0.8;
        }
        std::vector<std::pair<double, double>> ladder;
        for (int i = 3; i <= 8; ++i) {
            const double w1 = std::pow(2.0, -i);
            Point3 w = z;
            w[0] = w1;
            ladder.push_back(
                {w1, green_halfspace(x.view(), w.view(), C, kTight) / std::pow(w1, c.s)});
        }
        const double lim = limit_extrapolate(ladder, 1.0);
        const double expect = martin_kernel(x.view(), z.view(), C);
        INFO("N=" << c.N << " s=" << c.s);
        CHECK(lim == Catch::Approx(expect).epsilon(1e-4));
    }
}

TEST_CASE("reflected kernel") {
    ConstantSet C = constants(Params(1, 1, 0.5));
    const double x1 = 1.0, y1 = 1.0, xm = -1.0;
    CHECK(reflected_P(PointView{&xm, 1}, PointView{&y1, 1}, C) == 0.0);
    CHECK(reflected_P(PointView{&x1, 1}, PointView{&xm, 1}, C) == 0.0);
    CHECK(reflected_P(PointView{&x1, 1}, PointView{&y1, 1}, C) ==
          Catch::Approx(1.0).epsilon(1e-13));
    ConstantSet Csmall = constants(Params(1, 0, 0.5));
    CHECK_THROWS_AS(reflected_P(PointView{&x1, 1}, PointView{&y1, 1}, Csmall),
                    std::invalid_argument);
}

TEST_CASE("reflected kernel bilinear representation at N=2, s=2.5") {
    // P_{s-1}(x,y) = (omega_N/2) int E_{m-1,s-1}(x,z) E_{m,s}(y,z) dz
    Params p(2, 2, 0.5);
    ConstantSet C = constants(p);
    ConstantSet Cm1 = constants(Params(2, 1, 0.5));
    Point3 x{0.9, -0.2}, y{0.6, 0.5};
    NdIntegrand f;
    f.dim = 1;
    f.eval = [&](PointView t) {
        Point3 z{0.0, t[0]};
        return boundary_kernel(1, x.view(), z.view(), Cm1) *
               boundary_kernel(2, y.view(), z.view(), C);
    };
    f.decay_exponent = 6.0;
    const double integral = integrate_nd(f, Region::all_space(), kCfg).value;
    const double lhs = reflected_P(x.view(), y.view(), C);
    CHECK(lhs == Catch::Approx(C.omega_N / 2.0 * integral).epsilon(1e-4));
}

TEST_CASE("poisson recurrence via the top boundary kernel at N=2, s=1.5") {
    // Gamma_s(x,y) = Gamma_{s-1}(x,y) - int E_{m,s}(x,z) D^{s-1}Gamma_{s-1}(z,y) dz
    Params p(2, 1, 0.5);
    ConstantSet C = constants(p);
    ConstantSet Cm1 = constants(Params(2, 0, 0.5));
    Point3 x{0.8, 0.1}, y{-0.7, 0.4};
    NdIntegrand f;
    f.dim = 1;
    f.eval = [&](PointView t) {
        Point3 z{0.0, t[0]};
        return boundary_kernel(1, x.view(), z.view(), C) * poisson_trace(z.view(), y.view(), Cm1);
    };
    f.decay_exponent = 4.0;
    const double integral = integrate_nd(f, Region::all_space(), kCfg).value;
    const double lhs = poisson_nonlocal(x.view(), y.view(), C);
    const double rhs = poisson_nonlocal(x.view(), y.view(), Cm1) - integral;
    CHECK(lhs == Catch::Approx(rhs).epsilon(1e-3));
}

TEST_CASE("green envelope regimes") {
    {
        ConstantSet C = constants(Params(3, 0, 0.5)); // N > 2s
        Point3 x{1.0, 0.0, 0.0}, y{2.0, 0.0, 0.0};
        auto e = green_envelope(x.view(), y.view(), C);
        CHECK(e.regime == GreenRegime::Subcritical);
        CHECK(e.envelope == Catch::Approx(std::sqrt(2.0) / 3.0).epsilon(1e-13));
    }
    {
        ConstantSet C = constants(Params(1, 0, 1.0)); // N < 2s
        const double x = 1.0, y = 2.0;
        auto e = green_envelope(PointView{&x, 1}, PointView{&y, 1}, C);
        CHECK(e.regime == GreenRegime::Supercritical);
        CHECK(e.envelope == Catch::Approx(2.0).epsilon(1e-13));
        const double g = green_halfspace(PointView{&x, 1}, PointView{&y, 1}, C, kCfg);
        CHECK(g / e.envelope == Catch::Approx(0.5).epsilon(1e-8));
    }
}

TEST_CASE("green/envelope ratio is bounded and stable under grid refinement") {
    for (auto [N, s] : {std::pair{1, 0.5}, std::pair{2, 1.5}, std::pair{1, 1.0}}) {
        Params p = params_from_order(N, s);
        ConstantSet C = constants(p);
        auto band = [&](int n_per_axis) {
            double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
            for (int i = 0; i < n_per_axis; ++i) {
                for (int j = 0; j < n_per_axis; ++j) {
                    const double a =
                        std::pow(2.0, -3.0 + 6.0 * i / (n_per_axis - 1.0));
                    const double b =
                        std::pow(2.0, -3.0 + 6.0 * j / (n_per_axis - 1.0));
                    Point3 x, y;
                    x.n = y.n = N;
                    x[0] = a;
                    y[0] = b;
                    if (N > 1) y[1] = 0.7;
                    if (N == 1 && std::abs(a - b) < 1e-6) continue;
                    const double g = green_halfspace(x.view(), y.view(), C, kCfg);
                    const double e = green_envelope(x.view(), y.view(), C).envelope;
                    const double r = g / e;
                    lo = std::min(lo, r);
                    hi = std::max(hi, r);
                }
            }
            return std::pair{lo, hi};
        };
        auto [lo1, hi1] = band(10);
        auto [lo2, hi2] = band(19);
        INFO("N=" << N << " s=" << s);
        CHECK(lo1 > 0.0);
        CHECK(std::isfinite(hi1));
        CHECK(hi2 <= hi1 * 1.1);
        CHECK(lo2 >= lo1 * 0.9);
    }
}
