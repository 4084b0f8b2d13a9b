#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/ladder.hpp"
#include "zetalab/quadrature.hpp"

namespace zetalab {

// Legendre P_n on [-1, 1] by the three-term recurrence.
inline double legendre(unsigned n, double t) {
    if (!(t >= -1.0 && t <= 1.0))
        throw DomainError("legendre: argument outside [-1, 1]");
    double p, dp;
    detail::legendre_pd(n, t, p, dp);
    return p;
}

// |Z~(t)| = sqrt(d phi1/dt) = |Z(t)| / sqrt(ln t) under the cumulative
// backend, where the identity holds pointwise by construction.
inline double ztilde_abs(double t, const LadderContext& ctx) {
    if (!(t >= ctx.t_floor)) throw DomainError("ztilde_abs: t below t_floor");
    return std::abs(riemann_siegel_Z(t, ctx.gram->config())) / std::sqrt(std::log(t));
}

// Iteration depths (p_1, ..., p_s), base point T and the polynomial cap for
// one generated system.
struct GenerationSpec {
    std::vector<unsigned> depths; // s = depths.size(); each p_i in 1..k
    double T = 1e4;
    unsigned n_max = 6;

    unsigned s() const { return static_cast<unsigned>(depths.size()); }
    unsigned k() const {
        unsigned k = 1;
        for (unsigned p : depths) k = std::max(k, p);
        return k;
    }
    void validate(const LadderContext& ctx) const {
        for (unsigned p : depths)
            if (p == 0) throw DomainError("GenerationSpec: depths must be >= 1");
        if (!(T >= ctx.t_floor)) throw DomainError("GenerationSpec: T below t_floor");
    }
};

// Reverse iterations of both interval endpoints: lo[r] = T^r, hi[r] = (T+2)^r.
class ReverseGrid {
public:
    ReverseGrid(double T, unsigned k, const LadderContext& ctx) {
        lo_.push_back(T);
        hi_.push_back(T + 2.0);
        for (unsigned r = 1; r <= k; ++r) {
            lo_.push_back(phi1_reverse(lo_.back(), ctx));
            hi_.push_back(phi1_reverse(hi_.back(), ctx));
            if (!(lo_[r] < hi_[r]))
                throw ConvergenceError("ReverseGrid: endpoint ordering lost");
        }
    }

    double lo(unsigned r) const { return lo_.at(r); }
    double hi(unsigned r) const { return hi_.at(r); }
    unsigned depth() const { return static_cast<unsigned>(lo_.size()) - 1; }

private:
    std::vector<double> lo_, hi_;
};

namespace detail {

inline double affine_onto(unsigned p, double t, const ReverseGrid& grid) {
    // [-1, 1] onto [T^p, (T+2)^p].  (Some write-ups carry "-T^p" here; interval
    // logic forces the plus sign.)
    return 0.5 * (grid.hi(p) - grid.lo(p)) * (t + 1.0) + grid.lo(p);
}

} // namespace detail

// v_p^r(t) = phi1^r(affine(t)), lands in [T^{p-r}, (T+2)^{p-r}].
inline double v_map(unsigned p, unsigned r, double t, const ReverseGrid& grid,
                    const LadderContext& ctx) {
    if (!(t >= -1.0 && t <= 1.0)) throw DomainError("v_map: argument outside [-1, 1]");
    if (r >= p) throw DomainError("v_map: requires r < p");
    return forward_iterate(detail::affine_onto(p, t, grid), r, ctx);
}

// u_p(t) = phi1^p(affine(t)) - T - 1, an automorphism of [-1, 1].
inline double u_map(unsigned p, double t, const ReverseGrid& grid, const LadderContext& ctx) {
    if (!(t >= -1.0 && t <= 1.0)) throw DomainError("u_map: argument outside [-1, 1]");
    if (p == 0 || p > grid.depth()) throw DomainError("u_map: depth outside grid");
    return forward_iterate(detail::affine_onto(p, t, grid), p, ctx) - (grid.lo(0) + 1.0);
}

// Interval-length normalization rescales by prod sqrt(2/len_i); empirical
// normalization divides by the measured L2 norm.
enum class NormalizationMode { IntervalLength, Empirical };

// One generated system f_n^{p_1..p_s} with cached empirical norms.
class GeneratedSystem {
public:
    GeneratedSystem(GenerationSpec spec, const LadderContext& ctx, unsigned norm_quad_order = 512)
        : spec_(std::move(spec)), ctx_(ctx), norm_quad_(norm_quad_order) {
        spec_.validate(ctx);
        if (spec_.s() > 0) grid_.emplace(spec_.T, spec_.k(), ctx);
    }

    const GenerationSpec& spec() const { return spec_; }
    const ReverseGrid& grid() const { return *grid_; }

    // Composed argument and the product of |Z~| factors at one point.
    // Composition runs innermost-out: the p_s block sees t itself.
    struct PointEval {
        double u;      // argument handed to the seed polynomial
        double factor; // product of |Z~(v^r(.))| over all blocks
    };

    PointEval eval_point(double t) const {
        if (!(t >= -1.0 && t <= 1.0))
            throw DomainError("generated_fn: argument outside [-1, 1]");
        double arg = t;
        double factor = 1.0;
        for (std::size_t i = spec_.depths.size(); i-- > 0;) {
            unsigned p = spec_.depths[i];
            for (unsigned r = 0; r < p; ++r)
                factor *= ztilde_abs(v_map(p, r, arg, *grid_, ctx_), ctx_);
            arg = u_map(p, arg, *grid_, ctx_);
        }
        return {arg, factor};
    }

    double raw(unsigned n, double t) const {
        PointEval e = eval_point(t);
        return legendre(n, e.u) * e.factor;
    }

    // Interval-length prefactor (the i = 0 factor is identically 1).
    double interval_prefactor() const {
        double f = 1.0;
        for (unsigned i = 0; i <= spec_.s(); ++i) {
            double len = (spec_.s() == 0) ? 2.0 : grid_->hi(std::min(i, grid_->depth())) -
                                                      grid_->lo(std::min(i, grid_->depth()));
            f *= std::sqrt(2.0 / len);
        }
        return f;
    }

    double norm(unsigned n) {
        ensure_norms(n);
        return norms_[n];
    }

    double normalized(unsigned n, double t, NormalizationMode mode) {
        if (mode == NormalizationMode::IntervalLength) return interval_prefactor() * raw(n, t);
        return raw(n, t) / norm(n);
    }

    // Gram matrix of the system over [-1, 1] by Gauss-Legendre quadrature.
    struct GramMatrixResult {
        std::vector<std::vector<double>> m;
        bool quadrature_warning = false; // doubling the order moved an entry > 1e-4
    };

    GramMatrixResult gram_matrix(unsigned quad_order, NormalizationMode mode) {
        if (quad_order < 64) throw DomainError("gram_matrix: quad_order must be >= 64");
        auto m1 = gram_matrix_at(quad_order, mode);
        auto m2 = gram_matrix_at(2 * quad_order, mode);
        bool warn = false;
        for (std::size_t i = 0; i < m1.size(); ++i)
            for (std::size_t j = 0; j < m1.size(); ++j)
                if (std::abs(m1[i][j] - m2[i][j]) > 1e-4) warn = true;
        return {std::move(m2), warn};
    }

    // Partial sum of the Menshov-Rademacher series with empirical norms.
    double mr_partial_sum(const std::vector<double>& coeffs, double t, unsigned M) {
        if (M >= coeffs.size()) throw DomainError("mr_partial_sum: M beyond coefficients");
        if (M > 64) throw DomainError("mr_partial_sum: practical cap is M <= 64");
        ensure_norms(M);
        PointEval e = eval_point(t);
        CompensatedSum acc;
        double p0 = 1.0, p1 = e.u;
        for (unsigned n = 0; n <= M; ++n) {
            double pn = (n == 0) ? p0 : (n == 1 ? p1 : 0.0);
            if (n >= 2) {
                pn = ((2.0 * n - 1.0) * e.u * p1 - (n - 1.0) * p0) / n;
                p0 = p1;
                p1 = pn;
            }
            acc.add(coeffs[n] * e.factor * pn / norms_[n]);
        }
        return acc.value();
    }

private:
    std::vector<std::vector<double>> gram_matrix_at(unsigned quad_order, NormalizationMode mode) {
        unsigned nm = spec_.n_max;
        ensure_norms(nm);
        const GaussLegendre& rule = GaussLegendre::of_order(quad_order);
        std::vector<std::vector<CompensatedSum>> acc(nm + 1, std::vector<CompensatedSum>(nm + 1));
        std::vector<double> vals(nm + 1);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            PointEval e = eval_point(rule.nodes[q]);
            legendre_values(e.u, nm, vals);
            for (unsigned n = 0; n <= nm; ++n) {
                vals[n] *= e.factor;
                if (mode == NormalizationMode::Empirical)
                    vals[n] /= norms_[n];
                else if (mode == NormalizationMode::IntervalLength)
                    vals[n] *= interval_prefactor();
            }
            for (unsigned i = 0; i <= nm; ++i)
                for (unsigned j = i; j <= nm; ++j)
                    acc[i][j].add(rule.weights[q] * vals[i] * vals[j]);
        }
        std::vector<std::vector<double>> m(nm + 1, std::vector<double>(nm + 1));
        for (unsigned i = 0; i <= nm; ++i)
            for (unsigned j = i; j <= nm; ++j)
                m[i][j] = m[j][i] = acc[i][j].value();
        return m;
    }

    static void legendre_values(double u, unsigned n_max, std::vector<double>& out) {
        out[0] = 1.0;
        if (n_max >= 1) out[1] = u;
        for (unsigned n = 2; n <= n_max; ++n)
            out[n] = ((2.0 * n - 1.0) * u * out[n - 1] - (n - 1.0) * out[n - 2]) / n;
    }

    void ensure_norms(unsigned n_needed) {
        if (norms_.size() > n_needed) return;
        unsigned nm = n_needed;
        const GaussLegendre& rule = GaussLegendre::of_order(norm_quad_);
        std::vector<CompensatedSum> acc(nm + 1);
        std::vector<double> vals(nm + 1);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            PointEval e = eval_point(rule.nodes[q]);
            legendre_values(e.u, nm, vals);
            for (unsigned n = 0; n <= nm; ++n) {
                double f = e.factor * vals[n];
                acc[n].add(rule.weights[q] * f * f);
            }
        }
        norms_.resize(nm + 1);
        for (unsigned n = 0; n <= nm; ++n) norms_[n] = std::sqrt(acc[n].value());
    }

    GenerationSpec spec_;
    const LadderContext& ctx_;
    unsigned norm_quad_;
    std::optional<ReverseGrid> grid_;
    std::vector<double> norms_;
};

// Free-function forms mirroring the operation names.
inline double generated_fn(unsigned n, const GenerationSpec& spec, double t,
                           const LadderContext& ctx) {
    return GeneratedSystem(spec, ctx).raw(n, t);
}

inline double normalized_fn(unsigned n, const GenerationSpec& spec, double t,
                            const LadderContext& ctx,
                            NormalizationMode mode = NormalizationMode::Empirical) {
    return GeneratedSystem(spec, ctx).normalized(n, t, mode);
}

// Menshov-Rademacher hypothesis: sum (a_n ln(n+1))^2 < infinity.  Finitely
// many supplied coefficients never decide this alone, so the family carries a
// power-law decay descriptor a_n ~ (n+1)^{-alpha}.
inline bool mr_condition(const std::vector<double>& coeffs, double decay_exponent) {
    bool all_zero = true;
    for (double a : coeffs)
        if (a != 0.0) all_zero = false;
    if (all_zero) return true;
    return decay_exponent > 0.5;
}

} // namespace zetalab
