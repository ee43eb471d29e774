#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include "wedgecas/bessel.hpp"
#include "oracle_reference.hpp"

using namespace wedgecas;

namespace {

struct BesselRef {
    int order;
    double x;
    double i_scaled, k_scaled, di_scaled, dk_scaled;
};

#include "bessel_reference.inc"

double rel(double got, double want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("order 0/1 values at x = 1 match the independent series oracle") {
    // frozen from the long-double series (cross-checked against mpmath)
    CHECK(rel(bessel_i0(1.0), 1.2660658777520083356) < 1e-14);
    CHECK(rel(bessel_k0(1.0), 0.42102443824070833334) < 1e-14);
    CHECK(rel(bessel_i1(1.0), 0.56515910399248502721) < 1e-14);
    CHECK(rel(bessel_k1(1.0), 0.60190723019723457474) < 1e-14);

    // live series oracle on a small grid
    for (int n = 0; n <= 5; ++n) {
        for (double x : {0.01, 0.1, 0.5, 1.0, 2.0}) {
            const auto e = bessel_ik(n, x);
            CHECK(rel(e.i, static_cast<double>(testref::series_i(n, x))) < 1e-13);
            CHECK(rel(e.k, static_cast<double>(testref::series_k(n, x))) < 1e-13);
        }
    }
}

TEST_CASE("reference grid: scaled I, K and derivatives to 1e-12") {
    for (const auto& ref : kBesselRef) {
        if (ref.x > 705.0) {
            // beyond the unscaled range; exercise the scaled accessors
            CHECK(rel(bessel_i_scaled(ref.order, ref.x), ref.i_scaled) < 1e-12);
            CHECK(rel(bessel_k_scaled(ref.order, ref.x), ref.k_scaled) < 1e-12);
            continue;
        }
        const auto e = bessel_ik(ref.order, ref.x);
        const double s = std::exp(ref.x);
        if (e.i == 0.0) continue;  // underflowed product range
        CHECK(rel(e.i, ref.i_scaled * s) < 1e-12);
        CHECK(rel(e.k, ref.k_scaled / s) < 1e-12);
        CHECK(rel(e.di, ref.di_scaled * s) < 1e-12);
        CHECK(rel(e.dk, ref.dk_scaled / s) < 1e-12);
    }
}

TEST_CASE("K_0 behavior: monotone decrease, small-x log law, asymptotic bound") {
    // K_0(x) ~ -ln(x/2) - gamma as x -> 0+
    const double gamma = 0.5772156649015328606;
    for (double x : {1e-6, 1e-4, 1e-3}) {
        CHECK(rel(bessel_k0(x), -std::log(x / 2) - gamma) < 1e-3);
    }
    double prev = bessel_k0(1e-6);
    for (double x : {0.01, 0.1, 1.0, 5.0, 20.0, 100.0}) {
        const double v = bessel_k0(x);
        CHECK(v < prev);
        CHECK(v > 0.0);
        prev = v;
    }
    // bounded above by sqrt(pi/2x) e^-x (1 + 1/(8x)) within 1%
    for (double x : {50.0, 100.0, 300.0}) {
        const double bound =
            std::sqrt(std::numbers::pi / (2 * x)) * std::exp(-x) * (1 + 1 / (8 * x));
        const double v = bessel_k0(x);
        CHECK(v <= bound);
        CHECK(v > 0.99 * bound);
    }
    CHECK(bessel_k0(1.0) == bessel_ik(0, 1.0).k);
}

TEST_CASE("Wronskian and recurrence residuals over random samples") {
    std::mt19937 rng(42);
    std::uniform_int_distribution<int> order_dist(0, 60);
    std::uniform_real_distribution<double> logx(std::log(1e-3), std::log(100.0));
    for (int trial = 0; trial < 2000; ++trial) {
        const int nu = order_dist(rng);
        const double x = std::exp(logx(rng));
        const auto e = bessel_ik(nu, x);
        if (e.i == 0.0) continue;
        // I K' - I' K = -1/x
        CHECK(std::abs(e.i * e.dk - e.di * e.k + 1.0 / x) * x < 1e-10);
        // derivative identities against neighbors
        const auto lo = nu > 0 ? bessel_ik(nu - 1, x) : BesselEval{};
        const auto hi = bessel_ik(nu + 1, x);
        if (nu == 0) {
            CHECK(rel(e.di, hi.i) < 1e-12);
            CHECK(rel(e.dk, -hi.k) < 1e-12);
        } else if (hi.i > 0.0) {
            CHECK(rel(e.di, 0.5 * (lo.i + hi.i)) < 1e-11);
            CHECK(rel(e.dk, -0.5 * (lo.k + hi.k)) < 1e-11);
        }
    }
}

TEST_CASE("product table matches single evaluations where representable") {
    for (int nu_max : {0, 1, 5, 40}) {
        for (auto [a, b] : {std::pair{0.5, 1.0}, {3.0, 3.0}, {10.0, 25.0}, {0.01, 0.02}}) {
            const auto tab = ik_products(nu_max, a, b);
            for (int nu = 0; nu <= nu_max; ++nu) {
                const auto ia = bessel_ik(nu, a);
                const auto kb = bessel_ik(nu, b);
                if (ia.i == 0.0) {
                    CHECK(tab.ik[nu] == 0.0);
                    continue;
                }
                CHECK(rel(tab.ik[nu], ia.i * kb.k) < 1e-12);
                CHECK(rel(tab.dik[nu], ia.di * kb.dk) < 1e-12);
            }
        }
    }
    // far beyond the unscaled range: products still finite and positive
    const auto tab = ik_products(10, 600.0, 1200.0);
    CHECK(tab.ik[0] > 0.0);
    CHECK(std::isfinite(tab.ik[10]));
    // truly negligible products underflow to exact zero
    const auto tiny = ik_products(600, 0.1, 1.0);
    CHECK(tiny.ik[600] == 0.0);
}

TEST_CASE("domain and overflow guards") {
    CHECK_THROWS_AS(bessel_k0(0.0), DomainError);
    CHECK_THROWS_AS(bessel_k0(-1.0), DomainError);
    CHECK_THROWS_AS(bessel_ik(-1, 1.0), DomainError);
    CHECK_THROWS_AS(bessel_ik(0, 710.0), OverflowError);
    CHECK(bessel_i_scaled(0, 710.0) > 0.0);  // scaled variant covers large x
    CHECK(bessel_k_scaled(3, 710.0) > 0.0);
    CHECK_THROWS_AS(bessel_k_scaled(400, 1e-3), OverflowError);
}
