//
// Copyright (c) 2026 The nutq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef NUTQ_SPECIAL_HPP
#define NUTQ_SPECIAL_HPP

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

#include "nutq/types.hpp"

namespace nutq {

namespace detail {

constexpr double kLnDblMax = 709.782712893384;  // ln(DBL_MAX), exponent guard
constexpr double kTwoPow53 = 9007199254740992.0;
constexpr int kGammaIterCap = 500;
constexpr double kGammaStepTol = 1e-16;

}  // namespace detail

/// ln Gamma(z) for z > 0 (Lanczos approximation, g = 5.2421875, 14 terms).
inline double ln_gamma(double z) {
    detail::require_finite(z, "z");
    if (z <= 0.0) throw domain_error("ln_gamma requires z > 0");
    if (z == 1.0 || z == 2.0) return 0.0;
    static constexpr std::array<double, 14> cof = {
        57.1562356658629235,     -59.5979603554754912,    14.1360979747417471,
        -0.491913816097620199,   0.339946499848118887e-4, 0.465236289270485756e-4,
        -0.983744753048795646e-4, 0.158088703224912494e-3, -0.210264441724104883e-3,
        0.217439618115212643e-3, -0.164318106536763890e-3, 0.844182239838527433e-4,
        -0.261908384015814087e-4, 0.368991826595316234e-5};
    double y = z;
    double tmp = z + 5.2421875;
    tmp = (z + 0.5) * std::log(tmp) - tmp;
    double ser = 0.999999999999997092;
    for (double c : cof) ser += c / ++y;
    return tmp + std::log(2.5066282746310005 * ser / z);
}

namespace detail {

// Series branch for P(r,x), valid (and used) for x < r + 1.
inline double reg_lower_gamma_series(double r, double x) {
    double ap = r;
    double del = 1.0 / r;
    double sum = del;
    for (int i = 0; i < kGammaIterCap; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::abs(del) < std::abs(sum) * kGammaStepTol)
            return sum * std::exp(-x + r * std::log(x) - ln_gamma(r));
    }
    throw convergence_error("incomplete gamma series did not converge within 500 iterations");
}

// Continued-fraction branch for Q(r,x) (modified Lentz), used for x >= r + 1.
inline double reg_upper_gamma_cf(double r, double x) {
    constexpr double tiny = 1e-300;
    double b = x + 1.0 - r;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kGammaIterCap; ++i) {
        const double an = -i * (i - r);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) <= kGammaStepTol)
            return std::exp(-x + r * std::log(x) - ln_gamma(r)) * h;
    }
    throw convergence_error(
        "incomplete gamma continued fraction did not converge within 500 iterations");
}

inline void check_gamma_args(double r, double x) {
    require_finite(r, "r");
    require_finite(x, "x");
    if (r <= 0.0) throw domain_error("incomplete gamma requires r > 0");
    if (x < 0.0) throw domain_error("incomplete gamma requires x >= 0");
}

}  // namespace detail

/// Regularized lower incomplete gamma P(r,x) = gamma(r,x)/Gamma(r).
inline double reg_lower_gamma(double r, double x) {
    detail::check_gamma_args(r, x);
    if (x == 0.0) return 0.0;
    if (x < r + 1.0) return detail::reg_lower_gamma_series(r, x);
    return 1.0 - detail::reg_upper_gamma_cf(r, x);
}

/// Regularized upper incomplete gamma Q(r,x) = Gamma(r,x)/Gamma(r) = 1 - P(r,x).
inline double reg_upper_gamma(double r, double x) {
    detail::check_gamma_args(r, x);
    if (x == 0.0) return 1.0;
    if (x < r + 1.0) return 1.0 - detail::reg_lower_gamma_series(r, x);
    return detail::reg_upper_gamma_cf(r, x);
}

namespace detail {

inline double scaled_inc_gamma(double reg, double r, const char* which) {
    if (reg == 0.0) return 0.0;
    const double ln_value = ln_gamma(r) + std::log(reg);
    if (ln_value > kLnDblMax)
        throw overflow_error(std::string(which) + ": Gamma(r) exceeds the representable range");
    return std::exp(ln_value);
}

}  // namespace detail

/// Non-regularized upper incomplete gamma Gamma(r,x).
inline double upper_inc_gamma(double r, double x) {
    return detail::scaled_inc_gamma(reg_upper_gamma(r, x), r, "upper_inc_gamma");
}

/// Non-regularized lower incomplete gamma gamma(r,x).
inline double lower_inc_gamma(double r, double x) {
    return detail::scaled_inc_gamma(reg_lower_gamma(r, x), r, "lower_inc_gamma");
}

/// Gamma(r+s,x)/Gamma(r), evaluated in the log domain.  Strictly increasing
/// in r for every s >= 0, x > 0.
inline double gamma_ratio(double s, double r, double x) {
    detail::require_finite(s, "s");
    if (s < 0.0) throw domain_error("gamma_ratio requires s >= 0");
    if (r <= 0.0 || x <= 0.0) throw domain_error("gamma_ratio requires r > 0 and x > 0");
    const double q = reg_upper_gamma(r + s, x);
    if (q == 0.0) return 0.0;
    const double ln_value = ln_gamma(r + s) - ln_gamma(r) + std::log(q);
    if (ln_value > detail::kLnDblMax)
        throw overflow_error("gamma_ratio exceeds the representable range");
    return std::exp(ln_value);
}

/// Complementary error function.
inline double erfc(double z) { return std::erfc(z); }

/// Gaussian probability integral Q(z) = erfc(z/sqrt(2))/2.
inline double gaussian_q(double z) { return 0.5 * erfc(z / std::numbers::sqrt2); }

/// Rising factorial (m)_n = (m+n-1)!/(m-1)!.  Exact while the result stays
/// below 2^53; above that only the log-domain value is reliable.
struct Pochhammer {
    double value;
    double log_value;
    bool exact;
};

inline Pochhammer pochhammer(long long m, long long n) {
    if (m < 1) throw domain_error("pochhammer requires m >= 1");
    if (n < 0) throw domain_error("pochhammer requires n >= 0");
    double value = 1.0;
    bool exact = true;
    for (long long i = 0; i < n; ++i) {
        value *= static_cast<double>(m + i);
        if (value > detail::kTwoPow53) {
            exact = false;
            break;
        }
    }
    if (exact) return {value, std::log(value), true};
    const double lv = ln_gamma(static_cast<double>(m + n)) - ln_gamma(static_cast<double>(m));
    return {lv > detail::kLnDblMax ? std::numeric_limits<double>::infinity() : std::exp(lv),
            lv, false};
}

/// Signum with sgn(0) = 0.
inline int sgn(double z) { return (z > 0.0) - (z < 0.0); }

/// A positive half-odd integer k + 0.5, k >= 0.
struct HalfOdd {
    double value;
    long long index;  // value + 0.5

    explicit HalfOdd(double v) : value(v) {
        detail::require_finite(v, "half-odd value");
        const double doubled = 2.0 * v;
        if (v < 0.5 || doubled != std::floor(doubled) ||
            static_cast<long long>(doubled) % 2 == 0)
            throw domain_error("value is not a positive half-odd integer");
        index = static_cast<long long>(doubled + 1.0) / 2;
    }
};

inline bool is_half_odd(double v) {
    if (!std::isfinite(v) || v < 0.5) return false;
    const double doubled = 2.0 * v;
    return doubled == std::floor(doubled) && static_cast<long long>(doubled) % 2 != 0;
}

/// Nearest half-odd integer at or below x: floor(x - 0.5) + 0.5.
inline HalfOdd floor_half(double x) {
    detail::require_finite(x, "x");
    if (x <= 0.0) throw domain_error("floor_half requires x > 0");
    if (x < 0.5) throw domain_error("no positive half-odd integer at or below x");
    return HalfOdd(std::floor(x - 0.5) + 0.5);
}

/// Nearest half-odd integer at or above x: ceil(x + 0.5) - 0.5.
inline HalfOdd ceil_half(double x) {
    detail::require_finite(x, "x");
    if (x <= 0.0) throw domain_error("ceil_half requires x > 0");
    return HalfOdd(std::ceil(x + 0.5) - 0.5);
}

namespace detail {

constexpr double kBesselDirectMaxZ = 300.0;

inline void check_bessel_args(double nu, double z) {
    require_finite(nu, "nu");
    require_finite(z, "z");
    if (nu <= -1.0) throw domain_error("bessel_i requires nu > -1");
    if (z < 0.0) throw domain_error("bessel_i requires z >= 0");
}

}  // namespace detail

/// Modified Bessel function of the first kind I_nu(z) by its power series,
/// with compensated summation.  Valid for z <= 300; use bessel_i_log beyond.
inline double bessel_i(double nu, double z) {
    detail::check_bessel_args(nu, z);
    if (z > detail::kBesselDirectMaxZ)
        throw domain_error("bessel_i is limited to z <= 300; use bessel_i_log");
    if (z == 0.0) {
        if (nu < 0.0) throw domain_error("bessel_i has a pole at z = 0 for nu < 0");
        return nu == 0.0 ? 1.0 : 0.0;
    }
    const double q = z * z / 4.0;
    double term = std::exp(nu * std::log(z / 2.0) - ln_gamma(nu + 1.0));
    detail::KahanSum sum;
    sum.add(term);
    for (int k = 1; k <= 4000; ++k) {
        term *= q / (k * (nu + k));
        sum.add(term);
        if (term < sum.sum * 1e-17) return sum.sum;
    }
    throw convergence_error("bessel_i power series did not converge");
}

/// ln I_nu(z), stable for large z (series summed relative to its peak term).
inline double bessel_i_log(double nu, double z) {
    detail::check_bessel_args(nu, z);
    if (z == 0.0) {
        if (nu < 0.0) throw domain_error("bessel_i_log has a pole at z = 0 for nu < 0");
        return nu == 0.0 ? 0.0 : -std::numeric_limits<double>::infinity();
    }
    const double q = z * z / 4.0;
    // Term ratio t_{k+1}/t_k = q / ((k+1)(nu+k+1)) crosses 1 near this index.
    const double disc = nu * nu + 4.0 * q;
    long long kpeak = static_cast<long long>(std::floor((-(nu + 2.0) + std::sqrt(disc)) / 2.0));
    if (kpeak < 0) kpeak = 0;
    const double kp = static_cast<double>(kpeak);
    const double ln_peak =
        (nu + 2.0 * kp) * std::log(z / 2.0) - ln_gamma(kp + 1.0) - ln_gamma(nu + kp + 1.0);
    detail::KahanSum scaled;
    scaled.add(1.0);
    double t = 1.0;
    for (long long k = kpeak;; ++k) {
        t *= q / (static_cast<double>(k + 1) * (nu + static_cast<double>(k + 1)));
        if (!(t > scaled.sum * 1e-19)) break;
        scaled.add(t);
        if (k - kpeak > 2000000) throw convergence_error("bessel_i_log series did not converge");
    }
    t = 1.0;
    for (long long k = kpeak; k > 0; --k) {
        t *= static_cast<double>(k) * (nu + static_cast<double>(k)) / q;
        if (!(t > scaled.sum * 1e-19)) break;
        scaled.add(t);
    }
    return ln_peak + std::log(scaled.sum);
}

}  // namespace nutq

#endif  // NUTQ_SPECIAL_HPP
