#pragma once

#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "zetalab/constants.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/zeta.hpp"

namespace zetalab {

// One Gram point: theta(t_nu) = pi * nu.  Indexed from nu = 0.
struct GramPoint {
    std::uint64_t nu;
    double t;
};

// Append-only table of Gram points with Z(t_nu) stored alongside, since every
// Titchmarsh sum needs it and recomputation dominates storage.
class GramTable {
public:
    explicit GramTable(ZetaEvalConfig cfg = {}) : cfg_(cfg) { cfg_.validate(); }

    static constexpr double kResidualTol = 1e-9;

    std::size_t size() const { return t_.size(); }
    std::uint64_t highest_nu() const { return t_.empty() ? 0 : t_.size() - 1; }

    double t(std::uint64_t nu) {
        ensure_nu(nu);
        return t_[nu];
    }
    double z(std::uint64_t nu) {
        ensure_nu(nu);
        return z_[nu];
    }
    GramPoint point(std::uint64_t nu) { return {nu, t(nu)}; }

    // First Gram point height t_0.
    double t0() { return t(0); }

    void ensure_nu(std::uint64_t nu) {
        while (t_.size() <= nu) append_next();
    }

    // Extend until the last cached point exceeds X (so count queries are exact).
    void ensure_height(double X) {
        if (t_.empty()) append_next();
        while (t_.back() <= X) append_next();
    }

    // N = max{nu : t_nu <= X}.  Requires X at or above the first Gram point.
    std::uint64_t count_below(double X) {
        if (X < t0())
            throw DomainError("gram_count: X below the first Gram point");
        ensure_height(X);
        // binary search for last t_nu <= X
        std::size_t lo = 0, hi = t_.size() - 1;
        while (lo < hi) {
            std::size_t mid = (lo + hi + 1) / 2;
            if (t_[mid] <= X)
                lo = mid;
            else
                hi = mid - 1;
        }
        return lo;
    }

    // All Gram points with t_nu <= X, in order.
    std::vector<GramPoint> range(double X) {
        std::uint64_t n = count_below(X);
        std::vector<GramPoint> out;
        out.reserve(n + 1);
        for (std::uint64_t nu = 0; nu <= n; ++nu)
            out.push_back({nu, t_[nu]});
        return out;
    }

    const ZetaEvalConfig& config() const { return cfg_; }

    // ---- persistence -------------------------------------------------------
    // Binary layout: magic, then one little-endian record per nu:
    // (uint64 nu, float64 t, float64 z).

    static constexpr char kMagic[9] = "ZLGRAM1\n";

    void save(const std::string& path) const {
        std::ofstream os(path, std::ios::binary | std::ios::trunc);
        if (!os) throw DomainError("cannot open cache file for writing: " + path);
        os.write(kMagic, 8);
        for (std::size_t nu = 0; nu < t_.size(); ++nu) {
            std::uint64_t n = nu;
            os.write(reinterpret_cast<const char*>(&n), 8);
            os.write(reinterpret_cast<const char*>(&t_[nu]), 8);
            os.write(reinterpret_cast<const char*>(&z_[nu]), 8);
        }
    }

    void load(const std::string& path) {
        std::ifstream is(path, std::ios::binary);
        if (!is) throw DomainError("cannot open cache file: " + path);
        char magic[8];
        is.read(magic, 8);
        if (is.gcount() != 8 || std::memcmp(magic, kMagic, 8) != 0)
            throw DomainError("bad cache magic/version: " + path);
        t_.clear();
        z_.clear();
        std::uint64_t nu;
        double tv, zv;
        while (is.read(reinterpret_cast<char*>(&nu), 8)) {
            is.read(reinterpret_cast<char*>(&tv), 8);
            is.read(reinterpret_cast<char*>(&zv), 8);
            if (!is) throw DomainError("truncated cache record: " + path);
            if (nu != t_.size())
                throw DomainError("non-contiguous cache record: " + path);
            t_.push_back(tv);
            z_.push_back(zv);
        }
    }

    void export_csv(std::ostream& os) const {
        os << "nu,t,z\n";
        os.precision(17);
        for (std::size_t nu = 0; nu < t_.size(); ++nu)
            os << nu << ',' << t_[nu] << ',' << z_[nu] << '\n';
    }

private:
    void append_next() {
        std::uint64_t nu = t_.size();
        double tn = solve_gram(nu);
        if (!t_.empty() && tn <= t_.back())
            throw ConvergenceError("gram sequence not increasing");
        t_.push_back(tn);
        z_.push_back(riemann_siegel_Z(tn, cfg_));
    }

    // Newton on theta(t) - pi*nu with a Lambert-style initial guess from the
    // leading terms (t/2) ln(t/(2 pi e)) = pi*nu + pi/8.
    double solve_gram(std::uint64_t nu) const {
        double g = kPi * static_cast<double>(nu) + kPi / 8.0;
        double a = g / (kPi * 2.718281828459045);
        double w = std::log1p(a);
        for (int i = 0; i < 4; ++i) {
            double ew = std::exp(w);
            w -= (w * ew - a) / (ew * (1.0 + w));
        }
        double t = kTwoPi * 2.718281828459045 * std::exp(w);
        if (t < cfg_.t_min + 1.0) t = cfg_.t_min + 1.0;

        // theta itself carries O(eps * theta) rounding at large heights, so
        // the acceptance floor scales with the target ordinate.
        const double tol = std::max(0.1 * kResidualTol, 1e-15 * (g + 10.0));
        for (int it = 0; it < 50; ++it) {
            double r = theta(t, cfg_.t_min) - kPi * static_cast<double>(nu);
            if (std::abs(r) <= tol) return t;
            double step = r / theta_derivative(t, cfg_.t_min);
            if (std::abs(step) <= 4e-16 * t) {
                // at the resolution limit of double; accept if within contract
                if (std::abs(r) <= kResidualTol) return t;
                break;
            }
            t -= step;
            if (t < cfg_.t_min) t = cfg_.t_min;
        }
        throw ConvergenceError("gram_point: Newton failed for nu=" + std::to_string(nu));
    }

    ZetaEvalConfig cfg_;
    std::vector<double> t_;
    std::vector<double> z_;
};

// Convenience one-shot lookups on a shared process-wide table.
inline GramTable& shared_gram_table() {
    static GramTable table;
    return table;
}

inline GramPoint gram_point(std::uint64_t nu) { return shared_gram_table().point(nu); }
inline std::uint64_t gram_count(double X) { return shared_gram_table().count_below(X); }
inline std::vector<GramPoint> gram_range(double X) { return shared_gram_table().range(X); }

} // namespace zetalab
