#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "zetalab/constants.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/ladder.hpp"
#include "zetalab/titchmarsh.hpp"

namespace zetalab {

// Exact Fermat rational (x^n + y^n)/z^n, x,y,z >= 1, n >= 3.  All arithmetic
// is big-integer; no floating point enters a verdict.
class FermatRational {
public:
    FermatRational(mpz_class x, mpz_class y, mpz_class z, unsigned n)
        : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)), n_(n) {
        if (n_ < 3) throw DomainError("FermatRational: exponent must be >= 3");
        if (x_ < 1 || y_ < 1 || z_ < 1)
            throw DomainError("FermatRational: x, y, z must be natural numbers");
    }

    FermatRational(unsigned long x, unsigned long y, unsigned long z, unsigned n)
        : FermatRational(mpz_class(x), mpz_class(y), mpz_class(z), n) {}

    const mpz_class& x() const { return x_; }
    const mpz_class& y() const { return y_; }
    const mpz_class& z() const { return z_; }
    unsigned n() const { return n_; }

    // (x^n + y^n)/z^n in lowest terms.
    mpq_class value() const {
        mpz_class xn, yn, zn;
        mpz_pow_ui(xn.get_mpz_t(), x_.get_mpz_t(), n_);
        mpz_pow_ui(yn.get_mpz_t(), y_.get_mpz_t(), n_);
        mpz_pow_ui(zn.get_mpz_t(), z_.get_mpz_t(), n_);
        mpq_class q(xn + yn, zn);
        q.canonicalize();
        return q;
    }

    // True iff x^n + y^n = z^n exactly.
    bool is_unit_value() const {
        mpz_class xn, yn, zn;
        mpz_pow_ui(xn.get_mpz_t(), x_.get_mpz_t(), n_);
        mpz_pow_ui(yn.get_mpz_t(), y_.get_mpz_t(), n_);
        mpz_pow_ui(zn.get_mpz_t(), z_.get_mpz_t(), n_);
        return xn + yn == zn;
    }

    double to_double() const { return value().get_d(); }

    std::string str() const {
        return "(" + x_.get_str() + "^" + std::to_string(n_) + "+" + y_.get_str() + "^" +
               std::to_string(n_) + ")/" + z_.get_str() + "^" + std::to_string(n_);
    }

private:
    mpz_class x_, y_, z_;
    unsigned n_;
};

// Exhaustive scan over 1 <= x,y,z <= max_xyz, 3 <= n <= max_n; returns every
// unit-value rational found (expected: none).
inline std::vector<FermatRational> fermat_scan(unsigned max_xyz, unsigned max_n) {
    std::vector<FermatRational> hits;
    for (unsigned n = 3; n <= max_n; ++n)
        for (unsigned long x = 1; x <= max_xyz; ++x)
            for (unsigned long y = 1; y <= max_xyz; ++y)
                for (unsigned long z = 1; z <= max_xyz; ++z) {
                    FermatRational fr(x, y, z, n);
                    if (fr.is_unit_value()) hits.push_back(fr);
                }
    return hits;
}

// ---- limit experiments -------------------------------------------------------
//
// All three ratios evaluate an increment over [X, [X]^1] with X = x tau/(1-c)
// and divide by tau; the analytic targets are x, x/pi and (1+c)x/pi.

namespace detail {

inline std::pair<double, double> limit_range(double x, double tau, const LadderContext& ctx) {
    if (!(x > 0.0)) throw DomainError("limit ratio: x must be positive");
    double X = x * tau / (1.0 - ctx.c);
    if (!(X >= ctx.t_floor))
        throw DomainError("limit ratio: x*tau/(1-c) below t_floor");
    return {X, phi1_reverse(X, ctx)};
}

} // namespace detail

// (1/tau) int_X^{[X]^1} |zeta(1/2+it)|^2 dt  ->  x.
inline double hl_increment_ratio(double x, double tau, const LadderContext& ctx) {
    auto [X, X1] = detail::limit_range(x, tau, ctx);
    return ctx.hl->increment(X, X1) / tau;
}

// (1/tau) (T1([X]^1) - T1(X))  ->  x/pi.
inline double t1_increment_ratio(double x, double tau, const LadderContext& ctx,
                                 TitchmarshSums& sums) {
    auto [X, X1] = detail::limit_range(x, tau, ctx);
    return (sums.t1_sum(X1) - sums.t1_sum(X)) / tau;
}

// (1/tau) (T2([X]^1) - T2(X))  ->  (1+c) x/pi.
inline double t2_increment_ratio(double x, double tau, const LadderContext& ctx,
                                 TitchmarshSums& sums) {
    auto [X, X1] = detail::limit_range(x, tau, ctx);
    return (sums.t2_sum(X1) - sums.t2_sum(X)) / tau;
}

// ---- condition reports -------------------------------------------------------

enum class ConditionKind { Zeta, T1, T2 };

struct ConvergenceRow {
    double tau;
    double ratio;
    double target;
    double gap; // |ratio - target|
};

struct ConditionReport {
    ConditionKind kind;
    std::string rational;
    // Exact verdict: the condition "limit != forbidden value" holds iff the
    // rational is not a Fermat counterexample.  Decided at integer level.
    bool holds;
    double target;
    std::vector<ConvergenceRow> rows;
};

inline double condition_target(ConditionKind kind, double x, const LadderContext& ctx) {
    switch (kind) {
    case ConditionKind::Zeta: return x;
    case ConditionKind::T1: return x / kPi;
    default: return (1.0 + ctx.c) * x / kPi;
    }
}

inline ConditionReport condition_report(ConditionKind kind, const FermatRational& fr,
                                        const std::vector<double>& taus,
                                        const LadderContext& ctx, TitchmarshSums& sums) {
    for (std::size_t i = 1; i < taus.size(); ++i)
        if (!(taus[i] > taus[i - 1]))
            throw DomainError("condition_report: tau values must ascend");

    double x = fr.to_double();
    ConditionReport rep{kind, fr.str(), !fr.is_unit_value(), condition_target(kind, x, ctx), {}};
    for (double tau : taus) {
        double ratio;
        switch (kind) {
        case ConditionKind::Zeta: ratio = hl_increment_ratio(x, tau, ctx); break;
        case ConditionKind::T1: ratio = t1_increment_ratio(x, tau, ctx, sums); break;
        default: ratio = t2_increment_ratio(x, tau, ctx, sums); break;
        }
        rep.rows.push_back({tau, ratio, rep.target, std::abs(ratio - rep.target)});
    }
    return rep;
}

} // namespace zetalab
