#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "zetalab/constants.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/gram.hpp"
#include "zetalab/summation.hpp"

namespace zetalab {

// Row of an asymptotic evidence table.
struct AsymptoticRow {
    double X;
    std::uint64_t N;
    std::string kind; // "t1" or "t2"
    double sum;
    double main;
    double residual;
    double normalized;
};

// The Titchmarsh sums T1(X) = sum_{t_nu <= X} (-1)^nu Z(t_nu) and
// T2(X) = -sum_{t_nu <= X} Z(t_nu) Z(t_{nu+1}), right-continuous step
// functions of X, constant on every Gram gap.
class TitchmarshSums {
public:
    explicit TitchmarshSums(GramTable& gram) : gram_(gram) {}

    double t1_sum(double X) {
        std::uint64_t n = gram_.count_below(X); // throws below t_0
        ensure_prefix(n);
        return s1_[n + 1];
    }

    // A nu-term belongs to the sum iff t_nu <= X, even when t_{nu+1} > X.
    double t2_sum(double X) {
        std::uint64_t n = gram_.count_below(X);
        ensure_prefix(n);
        return s2_[n + 1];
    }

    // Main terms of the step-function formulas.
    static double t1_main_term(double X) {
        if (!(X > 2.718281828459045))
            throw DomainError("t1_main_term: X must exceed e");
        return (X * std::log(X) - (1.0 + kLnTwoPi) * X) / kPi;
    }

    static double t2_main_term(double X) {
        return (1.0 + kEulerGamma) * t1_main_term(X);
    }

    static double t1_error_scale(double X) { return std::pow(X, 0.75) * std::log(X); }
    static double t2_error_scale(double X) {
        double lx = std::log(X);
        return std::pow(X, 11.0 / 12.0) * std::pow(lx, 23.0 / 12.0);
    }

    std::vector<AsymptoticRow> asymptotic_report(const std::vector<double>& xs) {
        for (std::size_t i = 1; i < xs.size(); ++i)
            if (!(xs[i] > xs[i - 1]))
                throw DomainError("asymptotic_report: X values must ascend");
        std::vector<AsymptoticRow> rows;
        for (double X : xs) {
            std::uint64_t n = gram_.count_below(X);
            double s1 = t1_sum(X), m1 = t1_main_term(X);
            rows.push_back({X, n, "t1", s1, m1, s1 - m1, (s1 - m1) / t1_error_scale(X)});
            double s2 = t2_sum(X), m2 = t2_main_term(X);
            rows.push_back({X, n, "t2", s2, m2, s2 - m2, (s2 - m2) / t2_error_scale(X)});
        }
        return rows;
    }

    GramTable& gram() { return gram_; }

private:
    // s1_[k] = sum over nu < k; ordered compensated prefix so values do not
    // depend on query order.
    void ensure_prefix(std::uint64_t n) {
        gram_.ensure_nu(n + 1); // t2 needs Z(t_{n+1})
        if (s1_.empty()) {
            s1_.push_back(0.0);
            s2_.push_back(0.0);
        }
        while (s1_.size() <= n + 1) {
            std::uint64_t nu = s1_.size() - 1;
            double z = gram_.z(nu);
            double sgn = (nu % 2 == 0) ? 1.0 : -1.0;
            a1_.add(sgn * z);
            a2_.add(-z * gram_.z(nu + 1));
            s1_.push_back(a1_.value());
            s2_.push_back(a2_.value());
        }
    }

    GramTable& gram_;
    CompensatedSum a1_, a2_;
    std::vector<double> s1_, s2_;
};

} // namespace zetalab
