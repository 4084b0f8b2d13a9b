#include "doctest.h"
#include "zetalab/ortho.hpp"

#include <cmath>

using namespace zetalab;

namespace {

struct Lab {
    GramTable gram;
    HLIntegral hl{gram};
    LadderContext ctx;
    Lab() {
        // Orthogonality by change of variables needs phi1' = Z~^2 pointwise,
        // which only the cumulative backend provides.
        ctx.backend = LadderBackend::Cumulative;
        ctx.gram = &gram;
        ctx.hl = &hl;
    }
};

} // namespace

TEST_CASE("Legendre seed polynomials") {
    CHECK(legendre(0, 0.3) == 1.0);
    CHECK(legendre(1, 0.5) == 0.5);
    // P_5 against the explicit formula (63x^5 - 70x^3 + 15x)/8.
    for (double x : {-0.9, -0.2, 0.0, 0.4, 1.0}) {
        double want = (63.0 * std::pow(x, 5) - 70.0 * std::pow(x, 3) + 15.0 * x) / 8.0;
        CHECK(legendre(5, x) == doctest::Approx(want).epsilon(1e-13));
    }
    CHECK_THROWS_AS(legendre(2, 1.5), DomainError);
}

TEST_CASE("ztilde identity: |Z~|^2 log t = |zeta(1/2+it)|^2") {
    Lab lab;
    for (double t : {150.0, 900.0, 12345.0}) {
        double zt = ztilde_abs(t, lab.ctx);
        CHECK(zt * zt * std::log(t) ==
              doctest::Approx(zeta_mod_sq(t, lab.gram.config())).epsilon(1e-10));
        CHECK(zt >= 0.0);
    }
    CHECK_THROWS_AS(ztilde_abs(50.0, lab.ctx), DomainError);
}

TEST_CASE("reverse grid ordering and nesting") {
    Lab lab;
    ReverseGrid grid(1000.0, 2, lab.ctx);
    CHECK(grid.depth() == 2);
    CHECK(grid.lo(0) == 1000.0);
    CHECK(grid.hi(0) == 1002.0);
    for (unsigned r = 1; r <= 2; ++r) {
        CHECK(grid.lo(r) > grid.lo(r - 1));
        CHECK(grid.lo(r) < grid.hi(r));
    }
    // Reverse steps are inverted by phi1.
    CHECK(phi1(grid.lo(1), lab.ctx) == doctest::Approx(1000.0).epsilon(1e-8));
    CHECK(phi1(grid.hi(2), lab.ctx) == doctest::Approx(grid.hi(1)).epsilon(1e-8));
}

TEST_CASE("u map is an automorphism of [-1, 1]") {
    Lab lab;
    ReverseGrid grid(1000.0, 2, lab.ctx);
    for (unsigned p : {1u, 2u}) {
        CHECK(u_map(p, -1.0, grid, lab.ctx) == doctest::Approx(-1.0).epsilon(1e-6));
        CHECK(u_map(p, 1.0, grid, lab.ctx) == doctest::Approx(1.0).epsilon(1e-6));
        double prev = -1.0;
        for (int i = 1; i < 100; ++i) {
            double t = -1.0 + 2.0 * i / 100.0;
            double u = u_map(p, t, grid, lab.ctx);
            CHECK(u > prev);
            CHECK(u <= 1.0 + 1e-9);
            prev = u;
        }
    }
    CHECK_THROWS_AS(u_map(0, 0.0, grid, lab.ctx), DomainError);
    CHECK_THROWS_AS(u_map(3, 0.0, grid, lab.ctx), DomainError);
    CHECK_THROWS_AS(u_map(1, 1.5, grid, lab.ctx), DomainError);
}

TEST_CASE("v map lands in the right window") {
    Lab lab;
    ReverseGrid grid(1000.0, 2, lab.ctx);
    // r = 0 is the affine map itself.
    CHECK(v_map(1, 0, -1.0, grid, lab.ctx) == doctest::Approx(grid.lo(1)).epsilon(1e-12));
    CHECK(v_map(1, 0, 1.0, grid, lab.ctx) == doctest::Approx(grid.hi(1)).epsilon(1e-12));
    // v_p^r maps into [T^{p-r}, (T+2)^{p-r}].
    for (double t : {-1.0, -0.3, 0.6, 1.0}) {
        double v = v_map(2, 1, t, grid, lab.ctx);
        CHECK(v >= grid.lo(1) - 1e-6);
        CHECK(v <= grid.hi(1) + 1e-6);
    }
    CHECK_THROWS_AS(v_map(1, 1, 0.0, grid, lab.ctx), DomainError);
    CHECK_THROWS_AS(v_map(1, 0, -2.0, grid, lab.ctx), DomainError);
}

TEST_CASE("depth-zero system is the Legendre system") {
    Lab lab;
    GenerationSpec spec;
    spec.depths = {};
    spec.T = 1000.0;
    spec.n_max = 4;
    GeneratedSystem sys(spec, lab.ctx);
    for (double t : {-0.7, 0.0, 0.9})
        CHECK(sys.raw(3, t) == doctest::Approx(legendre(3, t)).epsilon(1e-14));
    auto res = sys.gram_matrix(64, NormalizationMode::IntervalLength);
    CHECK_FALSE(res.quadrature_warning);
    for (unsigned n = 0; n <= 4; ++n)
        CHECK(res.m[n][n] == doctest::Approx(2.0 / (2.0 * n + 1.0)).epsilon(1e-12));
}

TEST_CASE("depth-one system: norms match the change-of-variables value") {
    Lab lab;
    GenerationSpec spec;
    spec.depths = {1};
    spec.T = 1000.0;
    spec.n_max = 4;
    GeneratedSystem sys(spec, lab.ctx);
    double L = sys.grid().hi(1) - sys.grid().lo(1);
    for (unsigned n = 0; n <= 4; ++n) {
        double want = std::sqrt((2.0 / L) * 2.0 / (2.0 * n + 1.0));
        CHECK(sys.norm(n) == doctest::Approx(want).epsilon(1e-6));
    }
}

TEST_CASE("depth-one system: orthogonality of the normalized family") {
    Lab lab;
    GenerationSpec spec;
    spec.depths = {1};
    spec.T = 1000.0;
    spec.n_max = 4;
    GeneratedSystem sys(spec, lab.ctx);
    auto res = sys.gram_matrix(64, NormalizationMode::Empirical);
    CHECK_FALSE(res.quadrature_warning);
    for (unsigned i = 0; i <= 4; ++i) {
        CHECK(res.m[i][i] == doctest::Approx(1.0).epsilon(1e-6));
        for (unsigned j = 0; j <= 4; ++j) {
            if (i != j) CHECK(std::abs(res.m[i][j]) <= 1e-3);
            CHECK(std::abs(res.m[i][j] - res.m[j][i]) <= 1e-12);
        }
    }
    // The two normalizations differ by a t-independent factor.
    double r0 = sys.normalized(2, 0.3, NormalizationMode::IntervalLength) /
                sys.normalized(2, 0.3, NormalizationMode::Empirical);
    double r1 = sys.normalized(2, -0.8, NormalizationMode::IntervalLength) /
                sys.normalized(2, -0.8, NormalizationMode::Empirical);
    CHECK(r0 == doctest::Approx(r1).epsilon(1e-9));
}

TEST_CASE("free-function wrappers") {
    Lab lab;
    GenerationSpec spec;
    spec.depths = {};
    spec.T = 1000.0;
    spec.n_max = 2;
    CHECK(generated_fn(2, spec, 0.5, lab.ctx) == doctest::Approx(legendre(2, 0.5)));
    CHECK(normalized_fn(0, spec, 0.5, lab.ctx) ==
          doctest::Approx(legendre(0, 0.5) / std::sqrt(2.0)).epsilon(1e-9));
}

TEST_CASE("Menshov-Rademacher condition") {
    CHECK(mr_condition({0.0, 0.0, 0.0}, 0.0));      // finitely supported
    CHECK(mr_condition({1.0, 0.5, 0.25}, 1.1));     // summable decay
    CHECK_FALSE(mr_condition({1.0, 0.7, 0.6}, 0.4)); // too slow
}

TEST_CASE("Menshov-Rademacher partial sums are Cauchy for a_n = (n+1)^{-1.1}") {
    Lab lab;
    GenerationSpec spec;
    spec.depths = {1};
    spec.T = 1000.0;
    spec.n_max = 6;
    GeneratedSystem sys(spec, lab.ctx);
    std::vector<double> coeffs(65);
    for (std::size_t n = 0; n < coeffs.size(); ++n)
        coeffs[n] = std::pow(double(n + 1), -1.1);

    CHECK_THROWS_AS(sys.mr_partial_sum(coeffs, 0.0, 65), DomainError);
    CHECK(sys.mr_partial_sum({0.0, 0.0}, 0.3, 1) == 0.0);

    // Pointwise |S_2M - S_M| oscillates through zero, so the Cauchy trend is
    // measured in sup norm over the sampled points.
    double d8 = 0.0, d16 = 0.0, d32 = 0.0;
    for (int i = 0; i < 10; ++i) {
        double t = -0.95 + 1.9 * i / 9.0;
        double s8 = sys.mr_partial_sum(coeffs, t, 8);
        double s16 = sys.mr_partial_sum(coeffs, t, 16);
        double s32 = sys.mr_partial_sum(coeffs, t, 32);
        double s64 = sys.mr_partial_sum(coeffs, t, 64);
        d8 = std::max(d8, std::abs(s16 - s8));
        d16 = std::max(d16, std::abs(s32 - s16));
        d32 = std::max(d32, std::abs(s64 - s32));
    }
    CHECK(d16 < d8);
    CHECK(d32 < d16);
}
