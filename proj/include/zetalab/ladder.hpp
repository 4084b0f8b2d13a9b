#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "zetalab/constants.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/hardy_littlewood.hpp"

namespace zetalab {

// Two realizations of the ladder phi1.  Smooth solves the almost-exact
// main-term relation implicitly; Cumulative integrates Z^2/ln t directly so
// the chain rule phi1' = Z^2/ln t holds pointwise (the orthogonal-system
// construction needs the latter).  No finite-T object satisfies both exactly.
enum class LadderBackend { Smooth, Cumulative };

enum class ChainDirection { Forward, Reverse };

struct LadderContext {
    double c = kEulerGamma;
    double c0 = 0.0;
    LadderBackend backend = LadderBackend::Smooth;
    double t_floor = 100.0;
    double tol_rel = 1e-10;
    GramTable* gram = nullptr;
    HLIntegral* hl = nullptr;

    void validate() const {
        if (!(c > 0.577215 && c < 0.577216))
            throw DomainError("LadderContext: c is not Euler's constant");
        if (!(t_floor >= 10.0 * 2.718281828459045))
            throw DomainError("LadderContext: t_floor must be >= 10e");
        if (hl == nullptr || gram == nullptr)
            throw DomainError("LadderContext: missing gram/hl backends");
    }

    // Anchor pinning the cumulative backend to the smooth one at t_floor.
    mutable double cumulative_anchor = std::numeric_limits<double>::quiet_NaN();
};

// V(Y) = (1/pi)(Y ln Y + (c - ln 2pi) Y) + c0, the ladder-form main value;
// strictly increasing for Y > e.
inline double ladder_main_value(double Y, const LadderContext& ctx) {
    if (!(Y > 2.718281828459045))
        throw DomainError("ladder_main_value: Y must exceed e");
    return (Y * std::log(Y) + (ctx.c - kLnTwoPi) * Y) / kPi + ctx.c0;
}

namespace detail {

// Solve V(Y) = target for Y > e by Newton (V is monotone there).
inline double invert_main_value(double target, const LadderContext& ctx, double guess) {
    double Y = std::max(guess, 3.0);
    for (int it = 0; it < 100; ++it) {
        double f = ladder_main_value(Y, ctx) - target;
        double df = (std::log(Y) + 1.0 + ctx.c - kLnTwoPi) / kPi;
        double step = f / df;
        double next = Y - step;
        if (next < 3.0) next = 0.5 * (Y + 3.0);
        if (std::abs(next - Y) <= 0.5 * ctx.tol_rel * Y) return next;
        Y = next;
    }
    throw ConvergenceError("invert_main_value: Newton failed");
}

inline double phi1_smooth(double T, const LadderContext& ctx) {
    double target = ctx.hl->integral(T) / kPi;
    double lt = std::log(T);
    double guess = T * (1.0 - (1.0 - ctx.c) / lt);
    return invert_main_value(target, ctx, guess);
}

inline double cumulative_anchor(const LadderContext& ctx) {
    if (std::isnan(ctx.cumulative_anchor))
        ctx.cumulative_anchor = phi1_smooth(ctx.t_floor, ctx);
    return ctx.cumulative_anchor;
}

} // namespace detail

// phi1(T) < T with T - phi1(T) ~ (1-c) T / ln T.
inline double phi1(double T, const LadderContext& ctx) {
    ctx.validate();
    if (!(T >= ctx.t_floor)) throw DomainError("phi1: T below t_floor");
    if (ctx.backend == LadderBackend::Smooth)
        return detail::phi1_smooth(T, ctx);
    return detail::cumulative_anchor(ctx) + ctx.hl->weighted_increment(ctx.t_floor, T);
}

// First reverse iteration [T]^1: the unique Y > T with phi1(Y) = T.
inline double phi1_reverse(double T, const LadderContext& ctx) {
    ctx.validate();
    if (!(T >= ctx.t_floor)) throw DomainError("phi1_reverse: T below t_floor");

    double lo = T;
    double width0 = 2.0 * (1.0 - ctx.c) * T / std::log(T);
    double hi = T + width0;
    int widen = 0;
    while (phi1(hi, ctx) < T) {
        hi += width0;
        if (++widen > 64) throw ConvergenceError("phi1_reverse: bracket failed");
    }
    // Bisection on the monotone ladder; phi1 can be locally flat at zeta
    // zeros, so plain bisection beats Newton here.
    double tol_w = std::max(1e-12 * T, 1e-9);
    for (int it = 0; it < 300 && hi - lo > tol_w; ++it) {
        double mid = 0.5 * (lo + hi);
        if (phi1(mid, ctx) < T)
            lo = mid;
        else
            hi = mid;
    }
    if (hi - lo > tol_w) throw ConvergenceError("phi1_reverse: bisection stalled");
    return 0.5 * (lo + hi);
}

// Chain of direct or reverse iterations.
struct IterationChain {
    double base_T;
    ChainDirection direction;
    std::vector<double> points; // points[0] == base_T
    bool truncated = false;     // forward chain hit t_floor
};

inline IterationChain iterate(double T, unsigned r, ChainDirection dir, const LadderContext& ctx) {
    ctx.validate();
    if (!(T >= ctx.t_floor)) throw DomainError("iterate: T below t_floor");
    IterationChain chain{T, dir, {T}, false};
    for (unsigned i = 0; i < r; ++i) {
        double prev = chain.points.back();
        if (dir == ChainDirection::Reverse) {
            chain.points.push_back(phi1_reverse(prev, ctx));
        } else {
            double next = phi1(prev, ctx);
            if (next < ctx.t_floor) {
                chain.truncated = true;
                break;
            }
            chain.points.push_back(next);
        }
    }
    return chain;
}

// r-fold reverse iteration [T]^r.
inline double reverse_iterate(double T, unsigned r, const LadderContext& ctx) {
    return iterate(T, r, ChainDirection::Reverse, ctx).points.at(r);
}

// r-fold direct iteration phi1^r.
inline double forward_iterate(double T, unsigned r, const LadderContext& ctx) {
    IterationChain c = iterate(T, r, ChainDirection::Forward, ctx);
    if (c.truncated) throw DomainError("forward iteration fell below t_floor");
    return c.points.at(r);
}

} // namespace zetalab
