#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "zetalab/constants.hpp"
#include "zetalab/errors.hpp"
#include "zetalab/summation.hpp"

namespace zetalab {

// Evaluation settings for Z(t) on the critical line.
struct ZetaEvalConfig {
    int correction_order = 4;   // number of Riemann-Siegel correction terms
    double t_min = 10.0;        // below this the asymptotic machinery is refused
    double target_abs_tol = 1e-6;

    void validate() const {
        if (correction_order < 0 || correction_order > 10)
            throw DomainError("correction_order must lie in [0, 10]");
        if (!(t_min > 0.0))
            throw DomainError("t_min must be positive");
        if (target_abs_tol <= 0.0)
            throw DomainError("target_abs_tol must be positive");
    }
};

namespace detail {

inline void require_height(double t, double t_min) {
    if (!(t >= t_min) || !std::isfinite(t))
        throw DomainError("height t below admissible minimum");
}

} // namespace detail

// Riemann-Siegel theta: asymptotic expansion
//   theta(t) = (t/2) ln(t/2pi) - t/2 - pi/8 + 1/(48t) + 7/(5760 t^3) + ...
// carried far enough that the absolute error is well below 1e-10 for t >= 10.
inline double theta(double t, double t_min = 10.0) {
    detail::require_height(t, t_min);
    double u = 1.0 / t;
    double u2 = u * u;
    double tail = u * (1.0 / 48.0 + u2 * (7.0 / 5760.0 + u2 * (31.0 / 80640.0 + u2 * (127.0 / 430080.0))));
    return 0.5 * t * std::log(t / kTwoPi) - 0.5 * t - kPi / 8.0 + tail;
}

// d theta / dt.  Positive for all admissible t (ln(t/2pi) > 0 once t > 2pi).
inline double theta_derivative(double t, double t_min = 10.0) {
    detail::require_height(t, t_min);
    double u2 = 1.0 / (t * t);
    double tail = -u2 * (1.0 / 48.0 + u2 * (21.0 / 5760.0 + u2 * (155.0 / 80640.0 + u2 * (889.0 / 430080.0))));
    return 0.5 * std::log(t / kTwoPi) + tail;
}

namespace detail {

// --- Euler-Maclaurin evaluation of zeta(1/2 + it) ---------------------------
//
// The independent route to |zeta|^2: classical Euler-Maclaurin with N ~ t
// initial terms and a 12-term asymptotic tail.  Valid for any t >= 0 and
// accurate to near machine precision for the desk-scale heights used here.

inline std::complex<double> zeta_euler_maclaurin(double t) {
    const std::complex<double> s(0.5, t);
    const std::size_t n_terms = 25 + static_cast<std::size_t>(std::ceil(std::abs(t)));

    std::complex<double> acc(0.0, 0.0);
    CompensatedSum re, im;
    for (std::size_t n = 1; n < n_terms; ++n) {
        double ln_n = std::log(static_cast<double>(n));
        double r = 1.0 / std::sqrt(static_cast<double>(n));
        re.add(r * std::cos(t * ln_n));
        im.add(-r * std::sin(t * ln_n));
    }
    acc = std::complex<double>(re.value(), im.value());

    const double dn = static_cast<double>(n_terms);
    const std::complex<double> n_pow_ms = std::exp(-s * std::log(dn));
    acc += dn * n_pow_ms / (s - 1.0);
    acc += 0.5 * n_pow_ms;

    // Bernoulli numbers B_2 .. B_24.
    static const double b2k[12] = {
        1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0,
        -691.0 / 2730.0, 7.0 / 6.0, -3617.0 / 510.0, 43867.0 / 798.0,
        -174611.0 / 330.0, 854513.0 / 138.0, -236364091.0 / 2730.0};

    // term_k = B_2k/(2k)! * s(s+1)...(s+2k-2) * n^{-s-2k+1}
    std::complex<double> rising = s;          // s ... (s+2k-2)
    std::complex<double> npow = n_pow_ms / dn; // n^{-s-1}
    double fact = 2.0;                         // (2k)!
    for (int k = 1; k <= 12; ++k) {
        acc += b2k[k - 1] / fact * rising * npow;
        rising *= (s + std::complex<double>(2.0 * k - 1.0, 0.0)) *
                  (s + std::complex<double>(2.0 * k, 0.0));
        npow /= dn * dn;
        fact *= (2.0 * k + 1.0) * (2.0 * k + 2.0);
    }
    return acc;
}

// --- Riemann-Siegel correction terms ----------------------------------------
//
// Psi(p) = cos(2pi(p^2 - p - 1/16)) / cos(2pi p), entire after removing the
// common zeros.  The correction coefficients C_0..C_4 are the classical
// combinations of derivatives of Psi; the derivatives are taken by Cauchy
// contour integrals (trapezoid rule on a circle, spectrally accurate) and the
// resulting C_k are frozen into Chebyshev tables at first use.

inline std::complex<double> rs_psi(std::complex<double> z) {
    std::complex<double> num = std::cos(kTwoPi * (z * z - z - 0.0625));
    std::complex<double> den = std::cos(kTwoPi * z);
    return num / den;
}

inline double rs_psi_derivative(int k, double p) {
    constexpr int n_pts = 128;
    constexpr double radius = 0.35;
    double kfact = 1.0;
    for (int j = 2; j <= k; ++j) kfact *= j;
    CompensatedSum acc;
    for (int j = 0; j < n_pts; ++j) {
        double ang = kTwoPi * j / n_pts;
        std::complex<double> w(std::cos(ang), std::sin(ang));
        std::complex<double> val = rs_psi(p + radius * w);
        // val * e^{-i k ang}, real part
        double c = std::cos(k * ang), sn = std::sin(k * ang);
        acc.add(val.real() * c + val.imag() * sn);
    }
    return kfact * acc.value() / (n_pts * std::pow(radius, k));
}

// C_k(p), k = 0..4 (Haselgrove combinations).
inline double rs_correction_raw(int k, double p) {
    const double pi2 = kPi * kPi;
    const double pi4 = pi2 * pi2;
    const double pi6 = pi4 * pi2;
    const double pi8 = pi4 * pi4;
    switch (k) {
    case 0:
        return rs_psi_derivative(0, p);
    case 1:
        return -rs_psi_derivative(3, p) / (96.0 * pi2);
    case 2:
        return rs_psi_derivative(2, p) / (64.0 * pi2) +
               rs_psi_derivative(6, p) / (18432.0 * pi4);
    case 3:
        return -rs_psi_derivative(1, p) / (64.0 * pi2) -
               rs_psi_derivative(5, p) / (3840.0 * pi4) -
               rs_psi_derivative(9, p) / (5308416.0 * pi6);
    case 4:
        return rs_psi_derivative(0, p) / (128.0 * pi2) +
               19.0 * rs_psi_derivative(4, p) / (24576.0 * pi4) +
               11.0 * rs_psi_derivative(8, p) / (5898240.0 * pi6) +
               rs_psi_derivative(12, p) / (2038431744.0 * pi8);
    default:
        return 0.0;
    }
}

// C_5 and C_6 have no compact derivative combination here; their Chebyshev
// tables were computed once at 50-digit precision from the exact remainder
// Z(t) - mainsum(t) (least-squares in powers of (t/2pi)^{-1/2} at fixed
// fractional part) and are frozen below.
inline constexpr double kC5Cheb[48] = {
    4.7284165884834297e-15, 8.828845230586438e-5, 7.8357321641321266e-16, -1.5628684963830127e-5,
    3.8535950017273793e-16, -1.8342447736540178e-7, -1.8858280372070949e-16, 2.1097267875583794e-6,
    4.5292288127866061e-17, -6.6570161744269839e-7, -9.7443054318333616e-18, 2.7714741222723038e-8,
    1.6587592070852831e-18, 1.8111249369846403e-8, -1.5635802945441051e-19, -5.7658907993507478e-10,
    -1.1474899483096142e-20, -1.8675033439855369e-10, 6.7354812175861783e-21, -1.1051609056200889e-13,
    -9.5572353285400246e-22, 7.8706433941633477e-13, 1.9674572135621915e-23, 1.4458350756398734e-14,
    9.6092442670390263e-24, -1.5814592033067678e-15, -7.5640831529789975e-25, -4.9106385945939499e-17,
    -3.6070877346210734e-26, 1.6444201545553648e-18, 4.6718858658272151e-27, 7.7780168612765805e-20,
    7.1401800731636439e-29, -7.9322278827879594e-22, -1.5497369235779979e-29, -7.3126545257950059e-23,
    -1.5543643372597669e-31, -8.5159136219287311e-26, -8.5413829439384067e-30, 4.5051330267365677e-26,
    1.0909583303862455e-31, 3.8545381997784925e-28, 1.1462586490896959e-30, -2.0956692102547548e-29,
    1.0149938522191363e-29, -4.3331187751573048e-30, 1.9433354488500394e-30, -3.3139851695508154e-30,
};
inline constexpr double kC6Cheb[48] = {
    2.437948408241865e-5, 2.0417395416327169e-12, -1.3829760167347329e-5, -2.6656772348359431e-13,
    5.110967285425017e-6, 1.9020606257449348e-14, -2.0458136360558599e-6, -3.0859010182330059e-15,
    4.9381366233868126e-7, 1.5900980618766975e-15, -3.6187527885883264e-8, -8.5231802518098052e-16,
    -1.2876905179520892e-8, 2.8606382628164811e-16, 2.5744121198026259e-9, -5.9805371110392308e-17,
    1.3641457094756992e-10, 6.6670852686727929e-18, -3.0324396020295135e-11, 6.5852617540628514e-20,
    -1.3216670792574469e-12, -1.2611549011080661e-19, 1.3031651972185849e-13, 1.1571481632615009e-20,
    6.6358831691161664e-15, 6.002652570347774e-22, -2.4600352704391943e-16, -1.1390570992310135e-22,
    -1.6815278162781949e-17, -1.5661839686782148e-24, 1.8937909448189391e-19, 5.100812666091675e-25,
    2.4306505699536449e-20, 4.9048264486329501e-27, 4.6085607277132292e-23, -1.2569029522121167e-27,
    -2.1956896793667623e-23, 8.0116095942660825e-29, -2.2925549166616085e-25, 2.1446517496877653e-28,
    1.3065384164548423e-26, 2.0803030722623578e-28, 1.9245131543231243e-28, 7.0632207353849586e-29,
    -3.9570952521242629e-28, 1.5233828968471555e-28, -7.3228322206871155e-29, 1.2746693378328982e-28,
};

// Chebyshev interpolant of one C_k on p in [0, 1].
class RsCoefficientTable {
public:
    explicit RsCoefficientTable(int k) {
        if (k == 5 || k == 6) {
            const double* src = (k == 5) ? kC5Cheb : kC6Cheb;
            for (int m = 0; m < kN; ++m) coef_[m] = src[m];
            return;
        }
        std::array<double, kN> samples{};
        for (int j = 0; j < kN; ++j) {
            double theta_j = kPi * (j + 0.5) / kN;
            double p = 0.5 + 0.5 * std::cos(theta_j);
            samples[j] = rs_correction_raw(k, p);
        }
        for (int m = 0; m < kN; ++m) {
            double a = 0.0;
            for (int j = 0; j < kN; ++j)
                a += samples[j] * std::cos(m * kPi * (j + 0.5) / kN);
            coef_[m] = 2.0 / kN * a;
        }
    }

    double eval(double p) const {
        double x = 2.0 * p - 1.0; // map [0,1] -> [-1,1]
        double b1 = 0.0, b2 = 0.0;
        for (int m = kN - 1; m >= 1; --m) {
            double b0 = 2.0 * x * b1 - b2 + coef_[m];
            b2 = b1;
            b1 = b0;
        }
        return x * b1 - b2 + 0.5 * coef_[0];
    }

private:
    static constexpr int kN = 48;
    std::array<double, kN> coef_{};
};

inline double rs_correction(int k, double p) {
    static const std::array<RsCoefficientTable, 7> tables = {
        RsCoefficientTable(0), RsCoefficientTable(1), RsCoefficientTable(2),
        RsCoefficientTable(3), RsCoefficientTable(4), RsCoefficientTable(5),
        RsCoefficientTable(6)};
    return tables[static_cast<std::size_t>(k)].eval(p);
}

// Lazily-grown tables of ln n and 1/sqrt(n) for the main sum.
inline void main_sum_tables(std::size_t n, const double*& ln_tab, const double*& rs_tab) {
    static std::vector<double> lns{0.0, 0.0}; // index 0 unused
    static std::vector<double> rsq{0.0, 1.0};
    while (lns.size() <= n) {
        double v = static_cast<double>(lns.size());
        lns.push_back(std::log(v));
        rsq.push_back(1.0 / std::sqrt(v));
    }
    ln_tab = lns.data();
    rs_tab = rsq.data();
}

} // namespace detail

// Riemann-Siegel Z(t): main sum 2 sum_{n<=sqrt(t/2pi)} cos(theta - t ln n)/sqrt(n)
// plus cfg.correction_order correction terms (C_0..C_6 implemented; orders
// above 7 reuse the full implemented set).
inline double riemann_siegel_Z(double t, const ZetaEvalConfig& cfg = {}) {
    cfg.validate();
    detail::require_height(t, cfg.t_min);

    const double tau = std::sqrt(t / kTwoPi);
    const auto n_main = static_cast<std::size_t>(tau);
    const double p = tau - static_cast<double>(n_main);
    const double th = theta(t, cfg.t_min);

    const double *ln_tab, *rs_tab;
    detail::main_sum_tables(n_main, ln_tab, rs_tab);

    CompensatedSum acc;
    for (std::size_t n = 1; n <= n_main; ++n)
        acc.add(rs_tab[n] * std::cos(th - t * ln_tab[n]));
    double z = 2.0 * acc.value();

    const int m = std::min(cfg.correction_order, 7);
    if (m > 0) {
        double sign = (n_main % 2 == 0) ? -1.0 : 1.0; // (-1)^{N-1}
        double scale = 1.0 / std::sqrt(tau);          // (t/2pi)^{-1/4}
        double tau_pow = 1.0;
        CompensatedSum corr;
        for (int k = 0; k < m; ++k) {
            corr.add(detail::rs_correction(k, p) * tau_pow);
            tau_pow /= tau;
        }
        z += sign * scale * corr.value();
    }
    return z;
}

// |zeta(1/2+it)|^2 = Z(t)^2 via the modulus identity.
inline double zeta_mod_sq(double t, const ZetaEvalConfig& cfg = {}) {
    double z = riemann_siegel_Z(t, cfg);
    return z * z;
}

// Euler-Maclaurin route, exposed for the small-t Hardy-Littlewood segment
// and as the cross-check evaluator.  Valid down to t = 0.
inline std::complex<double> zeta_half_line(double t) {
    return detail::zeta_euler_maclaurin(t);
}

inline double zeta_mod_sq_em(double t) {
    return std::norm(detail::zeta_euler_maclaurin(t));
}

// Z(t) through the Euler-Maclaurin route: e^{i theta} zeta(1/2+it) is real.
inline double riemann_siegel_Z_em(double t, double t_min = 10.0) {
    double th = theta(t, t_min);
    std::complex<double> z = detail::zeta_euler_maclaurin(t);
    return z.real() * std::cos(th) - z.imag() * std::sin(th);
}

} // namespace zetalab
