#pragma once

#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

#include "zetalab/errors.hpp"
#include "zetalab/summation.hpp"

namespace zetalab {

namespace detail {

// Legendre P_n(x) and its derivative by the three-term recurrence.
inline void legendre_pd(unsigned n, double x, double& p, double& dp) {
    double p0 = 1.0, p1 = x;
    if (n == 0) { p = p0; dp = 0.0; return; }
    for (unsigned k = 2; k <= n; ++k) {
        double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    p = p1;
    dp = n * (x * p1 - p0) / (x * x - 1.0);
}

} // namespace detail

// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(unsigned n) {
        nodes.resize(n);
        weights.resize(n);
        for (unsigned i = 0; i < (n + 1) / 2; ++i) {
            // Tricomi initial guess, then Newton.
            double x = std::cos(kPiLocal * (i + 0.75) / (n + 0.5));
            double p, dp;
            for (int it = 0; it < 64; ++it) {
                detail::legendre_pd(n, x, p, dp);
                double dx = p / dp;
                x -= dx;
                if (std::abs(dx) < 1e-15) break;
            }
            detail::legendre_pd(n, x, p, dp);
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            weights[i] = weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
    }

    // Integrate f over [a, b].
    template <class F>
    double integrate(const F& f, double a, double b) const {
        double mid = 0.5 * (a + b);
        double half = 0.5 * (b - a);
        CompensatedSum acc;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            acc.add(weights[i] * f(mid + half * nodes[i]));
        return half * acc.value();
    }

    // Shared, lazily-built rules keyed by order.
    static const GaussLegendre& of_order(unsigned n) {
        static std::map<unsigned, GaussLegendre> rules;
        auto it = rules.find(n);
        if (it == rules.end())
            it = rules.emplace(n, GaussLegendre(n)).first;
        return it->second;
    }

private:
    static constexpr double kPiLocal = 3.14159265358979323846;
};

} // namespace zetalab
