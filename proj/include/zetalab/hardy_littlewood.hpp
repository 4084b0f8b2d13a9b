#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <string>
#include <vector>

#include "zetalab/constants.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/gram.hpp"
#include "zetalab/quadrature.hpp"
#include "zetalab/summation.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

// Checkpoint record persisted for the cumulative integral.
struct HLCheckpoint {
    double T;
    double I;
    std::uint32_t quad_order;
};

// I(T) = int_0^T |zeta(1/2+it)|^2 dt, evaluated as a fixed small-t segment
// [0, t_min] through the Euler-Maclaurin route plus Gauss-Legendre panels
// aligned to Gram gaps (Z oscillates about once per gap).  The same panel
// pass accumulates the ladder-weighted integral int Z^2 / ln t dt.
class HLIntegral {
public:
    explicit HLIntegral(GramTable& gram, unsigned quad_order = 8)
        : gram_(gram), quad_order_(quad_order) {
        if (quad_order_ < 2) throw DomainError("quad_order must be >= 2");
    }

    double t_min() const { return gram_.config().t_min; }
    unsigned quad_order() const { return quad_order_; }

    // int_0^{t_min} |zeta|^2 dt; Riemann-Siegel is unreliable there, so this
    // uses the Euler-Maclaurin evaluator on dense panels.  Cached.
    double small_t_constant() {
        if (!(small_t_ >= 0.0)) {
            const GaussLegendre& rule = GaussLegendre::of_order(32);
            CompensatedSum acc;
            const int panels = 20;
            double h = t_min() / panels;
            for (int i = 0; i < panels; ++i)
                acc.add(rule.integrate(zeta_mod_sq_em, i * h, (i + 1) * h));
            small_t_ = acc.value();
        }
        return small_t_;
    }

    // Full integral from 0.
    double integral(double T) {
        if (!(T >= t_min())) throw DomainError("hl_integral: T below t_min");
        return small_t_constant() + from_tmin(T);
    }

    // int_a^b Z^2 dt >= 0, from cached per-gap panel increments plus partial
    // end panels; never formed as a difference of large cumulative values.
    double increment(double a, double b) {
        if (!(t_min() <= a) || !(a <= b)) throw DomainError("hl_increment: bad range");
        return range_sum(a, b, inc_);
    }

    // int_a^b Z^2 / ln t dt, the cumulative-backend ladder increment.
    double weighted_increment(double a, double b) {
        if (!(t_min() <= a) || !(a <= b)) throw DomainError("hl weighted increment: bad range");
        return range_sum(a, b, incw_);
    }

    // ---- checkpoint persistence ---------------------------------------------

    static constexpr char kMagic[9] = "ZLHLCK1\n";

    void save_checkpoints(const std::string& path) {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) throw DomainError("cannot open checkpoint file for writing: " + path);
        os.write(kMagic, 8);
        CompensatedSum acc;
        for (std::size_t k = 0; k < inc_.size(); ++k) {
            acc.add(inc_[k]);
            HLCheckpoint cp{boundary(k + 1), small_t_constant() + acc.value(), quad_order_};
            os.write(reinterpret_cast<const char*>(&cp.T), 8);
            os.write(reinterpret_cast<const char*>(&cp.I), 8);
            os.write(reinterpret_cast<const char*>(&cp.quad_order), 4);
        }
    }

    static std::vector<HLCheckpoint> load_checkpoints(const std::string& path) {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw DomainError("cannot open checkpoint file: " + path);
        char magic[8];
        is.read(magic, 8);
        if (is.gcount() != 8 || std::memcmp(magic, kMagic, 8) != 0)
            throw DomainError("bad checkpoint magic/version: " + path);
        std::vector<HLCheckpoint> out;
        HLCheckpoint cp;
        while (is.read(reinterpret_cast<char*>(&cp.T), 8)) {
            is.read(reinterpret_cast<char*>(&cp.I), 8);
            is.read(reinterpret_cast<char*>(&cp.quad_order), 4);
            if (!is) throw DomainError("truncated checkpoint record: " + path);
            out.push_back(cp);
        }
        return out;
    }

private:
    // Segment k covers [boundary(k), boundary(k+1)); boundary(0) = t_min,
    // boundary(k) = t_{k-1} for k >= 1.
    double boundary(std::size_t k) {
        return k == 0 ? t_min() : gram_.t(k - 1);
    }

    void ensure_height(double T) {
        gram_.ensure_height(T);
        const GaussLegendre& rule = GaussLegendre::of_order(quad_order_);
        while (boundary(inc_.size() + 1) <= T || inc_.empty()) {
            std::size_t k = inc_.size();
            double a = boundary(k), b = boundary(k + 1);
            double vi = 0.0, vw = 0.0;
            panel(rule, a, b, vi, vw);
            inc_.push_back(vi);
            incw_.push_back(vw);
            cum_.add(vi);
            cumw_.add(vw);
            cum_vals_.push_back(cum_.value());
            cumw_vals_.push_back(cumw_.value());
        }
    }

    void panel(const GaussLegendre& rule, double a, double b, double& vi, double& vw) const {
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        CompensatedSum si, sw;
        for (std::size_t j = 0; j < rule.nodes.size(); ++j) {
            double t = mid + half * rule.nodes[j];
            double z2 = zeta_mod_sq(t, gram_.config());
            si.add(rule.weights[j] * z2);
            sw.add(rule.weights[j] * z2 / std::log(t));
        }
        vi = half * si.value();
        vw = half * sw.value();
    }

    // Index of the segment containing x (x >= t_min).
    std::size_t segment_of(double x) {
        ensure_height(x);
        if (x < boundary(1)) return 0;
        std::uint64_t n = gram_.count_below(x);
        return static_cast<std::size_t>(n) + 1; // segment [t_n, t_{n+1})
    }

    double from_tmin(double T) {
        std::size_t seg = segment_of(T);
        ensure_height(T);
        double full = (seg == 0) ? 0.0 : cum_vals_[seg - 1];
        const GaussLegendre& rule = GaussLegendre::of_order(quad_order_);
        double vi = 0.0, vw = 0.0;
        if (T > boundary(seg)) panel(rule, boundary(seg), T, vi, vw);
        return full + vi;
    }

    double range_sum(double a, double b, const std::vector<double>& inc) {
        if (a == b) return 0.0;
        std::size_t sa = segment_of(a), sb = segment_of(b);
        const GaussLegendre& rule = GaussLegendre::of_order(quad_order_);
        double vi, vw;
        if (sa == sb) {
            panel(rule, a, b, vi, vw);
            return &inc == &incw_ ? vw : vi;
        }
        CompensatedSum acc;
        panel(rule, a, boundary(sa + 1), vi, vw);
        acc.add(&inc == &incw_ ? vw : vi);
        for (std::size_t k = sa + 1; k < sb; ++k) acc.add(inc[k]);
        if (b > boundary(sb)) {
            panel(rule, boundary(sb), b, vi, vw);
            acc.add(&inc == &incw_ ? vw : vi);
        }
        return acc.value();
    }

    GramTable& gram_;
    unsigned quad_order_;
    double small_t_ = -1.0;
    std::vector<double> inc_, incw_;       // per-segment increments
    std::vector<double> cum_vals_, cumw_vals_; // compensated prefix values
    CompensatedSum cum_, cumw_;
};

} // namespace zetalab
