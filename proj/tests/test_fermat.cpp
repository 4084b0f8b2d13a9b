#include "doctest.h"
#include "zetalab/fermat.hpp"

#include <cmath>

using namespace zetalab;

TEST_CASE("exact rational values") {
    CHECK(FermatRational(1, 1, 1, 3).value() == mpq_class(2));
    CHECK(FermatRational(3, 4, 5, 3).value() == mpq_class(91, 125));
    CHECK(FermatRational(9, 10, 12, 4).value() == mpq_class(16561, 20736));
    // Canonicalization to lowest terms.
    CHECK(FermatRational(2, 2, 2, 3).value() == mpq_class(2));
    CHECK(FermatRational(2, 2, 2, 3).value().get_den() == 1);
}

TEST_CASE("unit-value detection stays at integer level") {
    // 3^2 + 4^2 = 5^2, but n = 2 is out of range.
    CHECK_THROWS_AS(FermatRational(3, 4, 5, 2), DomainError);
    CHECK_THROWS_AS(FermatRational(0, 1, 1, 3), DomainError);
    CHECK_THROWS_AS(FermatRational(mpz_class(-1), mpz_class(1), mpz_class(1), 3), DomainError);
    CHECK_FALSE(FermatRational(3, 4, 5, 3).is_unit_value());
    // A near miss that doubles would confuse: huge entries, off by one.
    FermatRational big(100000001, 1, 100000001, 3);
    CHECK_FALSE(big.is_unit_value());
}

TEST_CASE("string form") {
    CHECK(FermatRational(3, 4, 5, 3).str() == "(3^3+4^3)/5^3");
}

TEST_CASE("exhaustive scan finds no unit values") {
    auto hits = fermat_scan(8, 5);
    CHECK(hits.empty());
    // Determinism: a second run yields the same (empty) result.
    CHECK(fermat_scan(8, 5).empty());
}

TEST_CASE("condition targets and their linearity") {
    GramTable g;
    HLIntegral hl(g);
    LadderContext ctx;
    ctx.gram = &g;
    ctx.hl = &hl;
    CHECK(condition_target(ConditionKind::Zeta, 2.0, ctx) == 2.0);
    CHECK(condition_target(ConditionKind::T1, 2.0, ctx) == doctest::Approx(2.0 / kPi));
    CHECK(condition_target(ConditionKind::T2, 2.0, ctx) ==
          doctest::Approx((1.0 + kEulerGamma) * 2.0 / kPi));
    // Linear in x, and t2/t1 target ratio is 1 + c for every x.
    for (double x : {0.5, 1.0, 3.25}) {
        CHECK(condition_target(ConditionKind::Zeta, x, ctx) ==
              doctest::Approx(x * condition_target(ConditionKind::Zeta, 1.0, ctx)));
        CHECK(condition_target(ConditionKind::T2, x, ctx) /
                  condition_target(ConditionKind::T1, x, ctx) ==
              doctest::Approx(1.0 + kEulerGamma).epsilon(1e-14));
    }
}

TEST_CASE("increment ratios approach their targets") {
    GramTable g;
    HLIntegral hl(g);
    TitchmarshSums sums(g);
    LadderContext ctx;
    ctx.gram = &g;
    ctx.hl = &hl;

    double r1 = hl_increment_ratio(1.0, 1000.0, ctx);
    double r2 = hl_increment_ratio(1.0, 10000.0, ctx);
    CHECK(std::abs(r2 - 1.0) < std::abs(r1 - 1.0));
    CHECK(std::abs(r2 - 1.0) < 0.25);

    double s1 = t1_increment_ratio(1.0, 10000.0, ctx, sums);
    CHECK(std::abs(s1 - 1.0 / kPi) < 0.25 / kPi);

    double u1 = t2_increment_ratio(1.0, 10000.0, ctx, sums);
    CHECK(std::abs(u1 - (1.0 + kEulerGamma) / kPi) < 0.25 * (1.0 + kEulerGamma) / kPi);

    // Determinism of the whole pipeline.
    CHECK(hl_increment_ratio(1.0, 1000.0, ctx) == r1);

    CHECK_THROWS_AS(hl_increment_ratio(1.0, 10.0, ctx), DomainError);
    CHECK_THROWS_AS(hl_increment_ratio(-1.0, 1000.0, ctx), DomainError);
}

TEST_CASE("condition report structure and verdicts") {
    GramTable g;
    HLIntegral hl(g);
    TitchmarshSums sums(g);
    LadderContext ctx;
    ctx.gram = &g;
    ctx.hl = &hl;

    FermatRational fr(3, 4, 5, 3);
    auto rep = condition_report(ConditionKind::Zeta, fr, {1000.0, 3000.0}, ctx, sums);
    CHECK(rep.holds); // not a counterexample, so the limit avoids the forbidden value
    CHECK(rep.rational == "(3^3+4^3)/5^3");
    CHECK(rep.target == doctest::Approx(91.0 / 125.0));
    REQUIRE(rep.rows.size() == 2);
    CHECK(rep.rows[0].tau == 1000.0);
    CHECK(rep.rows[1].tau == 3000.0);
    for (const auto& row : rep.rows)
        CHECK(row.gap == doctest::Approx(std::abs(row.ratio - row.target)));

    CHECK_THROWS_AS(condition_report(ConditionKind::T1, fr, {3000.0, 1000.0}, ctx, sums),
                    DomainError);
}
