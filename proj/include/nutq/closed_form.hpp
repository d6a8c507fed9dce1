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

#ifndef NUTQ_CLOSED_FORM_HPP
#define NUTQ_CLOSED_FORM_HPP

// Exact finite-sum evaluators on the half-odd order lattice.  The Nuttall
// sums run in compensated double precision and report a conditioning ratio
// (sum of absolute contributions over the result) so callers can detect
// cancellation-degraded values.  The two Marcum forms cancel far more
// violently at small alpha*beta, so their inner sums run in double-double
// with the exponential brackets factored through expm1.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "nutq/dd.hpp"
#include "nutq/special.hpp"
#include "nutq/types.hpp"

namespace nutq {

/// Half-odd order pair (M, N) = (m - 0.5, n - 0.5) with m >= n >= 1.
struct HalfOddPair {
    long long m_index;
    long long n_index;

    HalfOddPair(const HalfOdd& m_order, const HalfOdd& n_order)
        : m_index(m_order.index), n_index(n_order.index) {
        if (m_index < n_index) throw domain_error("half-odd closed form requires M >= N");
    }

    HalfOddPair(double m_order, double n_order)
        : HalfOddPair(HalfOdd(m_order), HalfOdd(n_order)) {}

    double order_m() const { return static_cast<double>(m_index) - 0.5; }
    double order_n() const { return static_cast<double>(n_index) - 0.5; }
};

/// A value bundled with its cancellation diagnostic.  Ratios above 1e6 mean
/// the trailing digits are rounding noise; callers should prefer the series.
struct CondValue {
    double value;
    double conditioning;

    bool degraded() const { return !(conditioning < 1e6); }
};

namespace detail {

// Test hooks: deliberate formula mutations used by the self-check and the
// acceptance suite to prove the oracle comparison has teeth.
enum class Mutation { none, flip_parity, drop_sgn, drop_gamma };

inline double binomial_coef(long long n, long long k) {
    double r = 1.0;
    for (long long i = 1; i <= k; ++i)
        r = r * static_cast<double>(n - k + i) / static_cast<double>(i);
    return r;
}

inline int neg_one_pow(long long e) { return (e % 2 + 2) % 2 == 0 ? 1 : -1; }

// One l-sweep of the bracketed integral term: the (beta+alpha) upper gamma,
// the signed (beta-alpha) lower gamma, and the complete gamma, accumulated
// individually so the conditioning ratio sees every cancelling piece.
inline void i_mnk_accumulate(const HalfOddPair& pair, long long k, const EvalPoint& point,
                             Mutation mut, double outer_coef, KahanSum& total,
                             double& abs_total) {
    const long long m = pair.m_index;
    const long long n = pair.n_index;
    const long long cap_l = m - n + k;
    const double a = point.alpha;
    const double b = point.beta;
    const double xp = (b + a) * (b + a) / 2.0;
    const double xm = (b - a) * (b - a) / 2.0;
    const int sign_k = neg_one_pow(k + 1);
    for (long long l = 0; l <= cap_l; ++l) {
        const double hl = (static_cast<double>(l) + 1.0) / 2.0;
        double coef = binomial_coef(cap_l, l) *
                      std::pow(2.0, (static_cast<double>(l) - 1.0) / 2.0) *
                      std::pow(a, static_cast<double>(cap_l - l));
        if (!std::isfinite(coef)) {
            // log-domain fallback for extreme alpha powers
            double ln_coef = (static_cast<double>(l) - 1.0) / 2.0 * std::numbers::ln2 +
                             static_cast<double>(cap_l - l) * std::log(a);
            for (long long i = 1; i <= l; ++i)
                ln_coef += std::log(static_cast<double>(cap_l - l + i)) -
                           std::log(static_cast<double>(i));
            coef = std::exp(ln_coef);
        }
        const double scale = outer_coef * static_cast<double>(sign_k) * coef;

        int parity = neg_one_pow(m - n - l - 1);
        if (mut == Mutation::flip_parity) parity = -parity;
        const double t_plus = parity * upper_inc_gamma(hl, xp);

        double t_minus = 0.0;
        if (mut != Mutation::drop_gamma) {
            int sg = sgn(b - a);
            if (mut == Mutation::drop_sgn) sg = 1;
            if (sg != 0) {
                const int sg_pow = sg == 1 ? 1 : neg_one_pow(l + 1);
                t_minus = -static_cast<double>(sg_pow) * lower_inc_gamma(hl, xm);
            }
        }
        const double t_full = std::exp(ln_gamma(hl));

        for (double t : {t_plus, t_minus, t_full}) {
            const double contrib = scale * t;
            total.add(contrib);
            abs_total += std::abs(contrib);
        }
    }
}

inline CondValue nuttall_half_odd_impl(const HalfOddPair& pair, const EvalPoint& point,
                                       Mutation mut, bool normalized) {
    point.require_positive_alpha();
    const long long n = pair.n_index;
    const double a = point.alpha;
    const double nd = static_cast<double>(n);
    const int pref_sign = neg_one_pow(n);
    const double ln_pref =
        normalized
            ? (0.5 - nd) * std::numbers::ln2 - 0.5 * std::log(std::numbers::pi) -
                  (2.0 * nd - 1.0) * std::log(a)
            : (0.5 - nd) * std::log(2.0 * a) - 0.5 * std::log(std::numbers::pi);
    const double pref = std::exp(ln_pref);

    // The prefactor is applied once at the end: the standard and normalized
    // routes then share the inner sum bit-for-bit and the division identity
    // holds to rounding of the two prefactors alone.
    KahanSum total;
    double abs_total = 0.0;
    double pow_2a = 1.0;  // (2a)^k
    double fact_k = 1.0;  // k!
    double ln_fact_k = 0.0;
    for (long long k = 0; k < n; ++k) {
        const Pochhammer poch = pochhammer(n - k, n - 1);
        double outer = poch.value * pow_2a / fact_k;
        if (!std::isfinite(outer))
            outer = std::exp(poch.log_value + static_cast<double>(k) * std::log(2.0 * a) -
                             ln_fact_k);
        i_mnk_accumulate(pair, k, point, mut, outer, total, abs_total);
        pow_2a *= 2.0 * a;
        fact_k *= static_cast<double>(k + 1);
        ln_fact_k += std::log(static_cast<double>(k + 1));
    }
    const double value = pref_sign * pref * total.sum;
    const double cond =
        total.sum == 0.0 ? std::numeric_limits<double>::infinity()
                         : abs_total / std::abs(total.sum);
    return {value, cond};
}

}  // namespace detail

/// The term I_{m,n}^k(alpha, beta) of the half-odd Nuttall closed form.
inline double i_mnk_term(const HalfOddPair& pair, long long k, const EvalPoint& point) {
    if (k < 0 || k >= pair.n_index) throw domain_error("i_mnk_term requires 0 <= k <= n-1");
    point.require_positive_alpha();
    detail::KahanSum total;
    double abs_total = 0.0;
    detail::i_mnk_accumulate(pair, k, point, detail::Mutation::none, 1.0, total, abs_total);
    return total.sum;
}

/// Standard Nuttall Q at half-odd orders (finite closed form).
inline CondValue nuttall_half_odd_ex(const HalfOddPair& pair, const EvalPoint& point) {
    return detail::nuttall_half_odd_impl(pair, point, detail::Mutation::none, false);
}

inline double nuttall_half_odd(const HalfOddPair& pair, const EvalPoint& point) {
    return nuttall_half_odd_ex(pair, point).value;
}

/// Normalized Nuttall Q at half-odd orders, with its own prefactor
/// 2^{1/2-n} / (sqrt(pi) a^{2n-1}); equals nuttall_half_odd / a^N.
inline CondValue norm_nuttall_half_odd_ex(const HalfOddPair& pair, const EvalPoint& point) {
    return detail::nuttall_half_odd_impl(pair, point, detail::Mutation::none, true);
}

inline double norm_nuttall_half_odd(const HalfOddPair& pair, const EvalPoint& point) {
    return norm_nuttall_half_odd_ex(pair, point).value;
}

/// I_{n-1/2}(z) as the finite sum
///   (-1)^n (2z)^{1/2-n} / (sqrt(pi) e^z) sum_k (n-k)_{n-1} (2z)^k / k! (1 - (-1)^k e^{2z}).
/// Exact algebraically, but cancellation-prone for large n at small z;
/// intended as a cross-check against the power series.
inline double bessel_i_half_odd(long long n_index, double z) {
    if (n_index < 1) throw domain_error("bessel_i_half_odd requires n >= 1");
    detail::require_finite(z, "z");
    if (z < 0.0) throw domain_error("bessel_i_half_odd requires z >= 0");
    if (z > detail::kBesselDirectMaxZ)
        throw domain_error("bessel_i_half_odd is limited to z <= 300; use bessel_i_log");
    if (z == 0.0) return 0.0;
    const double em = std::expm1(2.0 * z);
    detail::KahanSum sum;
    double pow_2z = 1.0;
    double fact_k = 1.0;
    for (long long k = 0; k < n_index; ++k) {
        // 1 - (-1)^k e^{2z} = -expm1(2z) for even k, 2 + expm1(2z) for odd
        const double bracket = k % 2 == 0 ? -em : 2.0 + em;
        sum.add(pochhammer(n_index - k, n_index - 1).value * pow_2z / fact_k * bracket);
        pow_2z *= 2.0 * z;
        fact_k *= static_cast<double>(k + 1);
    }
    const double pref = detail::neg_one_pow(n_index) *
                        std::pow(2.0 * z, 0.5 - static_cast<double>(n_index)) /
                        (std::sqrt(std::numbers::pi) * std::exp(z));
    return pref * sum.sum;
}

/// Q_M(0, beta) = Gamma(M, beta^2/2) / Gamma(M); exact at alpha = 0.
inline double marcum_zero_alpha(double m, double beta) {
    if (!(m > 0.0) || !std::isfinite(m)) throw domain_error("marcum order M must be positive");
    detail::require_finite(beta, "beta");
    if (beta < 0.0) throw domain_error("beta must be non-negative");
    return reg_upper_gamma(m, beta * beta / 2.0);
}

namespace detail {

// Largest half-odd index the dd factorial/pochhammer machinery supports.
constexpr long long kMarcumClosedFormMaxIndex = 80;

// Shared bracket pieces for the two Marcum half-odd forms: with
// Y = exp(-(beta-alpha)^2/2) and E = expm1(-2 alpha beta),
//   X - Y = Y*E   and   X + Y = Y*(2+E),   X = exp(-(beta+alpha)^2/2),
// which keeps every term accurate to dd precision across all alpha*beta.
struct MarcumBrackets {
    DD diff;  // X - Y
    DD sum;   // X + Y
};

inline MarcumBrackets marcum_brackets(double a, double b) {
    const double d = a - b;
    const DD v = dd_ldexp(two_prod(d, d), -1);  // (a-b)^2/2
    const DD y = dd_exp(dd_neg(v));
    const DD e = dd_expm1(DD(-2.0 * a * b));
    return {dd_mul(y, e), dd_mul(y, dd_add(e, 2.0))};
}

}  // namespace detail

/// Generalized Marcum Q at half-odd order M via the compact Pochhammer form
///   a sqrt(2/pi) e^{-(a+b)^2/2} sum_{n=1}^{M-0.5} (-2a^2)^{-n}
///     sum_k (n-k)_{n-1}/k! (2ab)^k [1 - (-1)^k e^{2ab}]
///   + Q(b+a) + Q(b-a),
/// with the inner sums carried in double-double arithmetic.
inline CondValue marcum_half_odd_ex(const HalfOdd& order, const EvalPoint& point) {
    if (order.index > detail::kMarcumClosedFormMaxIndex)
        throw domain_error("marcum_half_odd supports orders up to 79.5");
    const double a = point.alpha;
    const double b = point.beta;
    if (a == 0.0) return {marcum_zero_alpha(order.value, b), 1.0};
    const long long top = order.index - 1;  // n runs to M - 0.5

    const detail::MarcumBrackets br = detail::marcum_brackets(a, b);
    const detail::DD inv_neg2a2 = detail::dd_div(detail::DD(-1.0), detail::DD(2.0 * a * a));
    const double z2ab = 2.0 * a * b;

    detail::DD sum(0.0);
    double abs_sum = 0.0;
    detail::DD outer(1.0);
    for (long long n = 1; n <= top; ++n) {
        outer = detail::dd_mul(outer, inv_neg2a2);  // (-2a^2)^{-n}
        detail::DD pw(1.0);                         // (2ab)^k
        for (long long k = 0; k < n; ++k) {
            detail::DD coef = detail::dd_mul(detail::dd_poch(n - k, n - 1), outer);
            coef = detail::dd_div(detail::dd_mul(coef, pw),
                                  detail::dd_factorial(static_cast<int>(k)));
            // bracket [1 - (-1)^k e^{2ab}] carries the e^{-(a+b)^2/2} prefactor:
            // even k gives X - Y, odd k gives X + Y
            const detail::DD term = detail::dd_mul(coef, k % 2 == 0 ? br.diff : br.sum);
            sum = detail::dd_add(sum, term);
            abs_sum += std::abs(term.hi);
            pw = detail::dd_mul(pw, z2ab);
        }
    }
    const double prefactor = a * std::sqrt(2.0 / std::numbers::pi);
    const double gq = gaussian_q(b + a) + gaussian_q(b - a);
    const detail::DD total = detail::dd_add(detail::dd_mul(sum, prefactor), detail::DD(gq));
    const double raw = total.to_double();
    const double cond = raw == 0.0 ? std::numeric_limits<double>::infinity()
                                   : (prefactor * abs_sum + gq) / std::abs(raw);
    return {std::clamp(raw, 0.0, 1.0), cond};
}

inline double marcum_half_odd(const HalfOdd& order, const EvalPoint& point) {
    return marcum_half_odd_ex(order, point).value;
}

namespace detail {

// alpha = 0 branch of the erfc-based form:
//   erfc(b/sqrt2) + e^{-b^2/2}/sqrt(2 pi) sum_k b^{2k+1} 2^{1-k}
//     sum_q (-1)^q / ((k-q)! q! (2q+1)).
inline CondValue li_kam_zero_alpha(long long m_index, double b) {
    const long long kmax = m_index - 2;
    KahanSum s;
    double abs_s = 0.0;
    double pow_b = b;  // b^{2k+1}
    for (long long k = 0; k <= kmax; ++k) {
        double inner = 0.0;
        for (long long q = 0; q <= k; ++q) {
            const double denom = pochhammer(1, k - q).value * pochhammer(1, q).value *
                                 static_cast<double>(2 * q + 1);
            inner += neg_one_pow(q) / denom;
        }
        const double term = pow_b * std::pow(2.0, 1.0 - static_cast<double>(k)) * inner;
        s.add(term);
        abs_s += std::abs(term);
        pow_b *= b * b;
    }
    const double damp = std::exp(-b * b / 2.0) / std::sqrt(2.0 * std::numbers::pi);
    const double erfc_part = nutq::erfc(b / std::numbers::sqrt2);
    const double raw = erfc_part + damp * s.sum;
    const double cond = raw == 0.0 ? std::numeric_limits<double>::infinity()
                                   : (erfc_part + damp * abs_s) / std::abs(raw);
    return {std::clamp(raw, 0.0, 1.0), cond};
}

}  // namespace detail

/// Generalized Marcum Q at half-odd order via the erfc-plus-triple-sum form;
/// retained as an independent route for the equivalence check against
/// marcum_half_odd.  Dispatches to the dedicated alpha = 0 expression.
inline CondValue li_kam_marcum_half_odd_ex(const HalfOdd& order, const EvalPoint& point) {
    if (order.index > detail::kMarcumClosedFormMaxIndex)
        throw domain_error("li_kam_marcum_half_odd supports orders up to 79.5");
    const double a = point.alpha;
    const double b = point.beta;
    if (a == 0.0) return detail::li_kam_zero_alpha(order.index, b);

    const long long kmax = order.index - 2;  // M - 1.5
    const detail::MarcumBrackets br = detail::marcum_brackets(a, b);
    // bracket per inner index i: (-1)^i Y - X = -(X - Y) even, -(X + Y) odd
    const detail::DD br_even = detail::dd_neg(br.diff);
    const detail::DD br_odd = detail::dd_neg(br.sum);

    const std::size_t max_pow = static_cast<std::size_t>(2 * std::max<long long>(kmax, 0) + 1);
    std::vector<detail::DD> bpow(max_pow + 1);
    std::vector<detail::DD> apow_inv(max_pow + 1);
    bpow[0] = detail::DD(1.0);
    apow_inv[0] = detail::DD(1.0);
    const detail::DD inv_a = detail::dd_div(detail::DD(1.0), detail::DD(a));
    for (std::size_t j = 1; j <= max_pow; ++j) {
        bpow[j] = detail::dd_mul(bpow[j - 1], b);
        apow_inv[j] = detail::dd_mul(apow_inv[j - 1], inv_a);
    }

    detail::DD sum(0.0);
    double abs_sum = 0.0;
    for (long long k = 0; k <= kmax; ++k) {
        for (long long q = 0; q <= k; ++q) {
            detail::DD w = detail::dd_div(
                detail::dd_factorial(static_cast<int>(2 * q)),
                detail::dd_mul(detail::dd_factorial(static_cast<int>(k - q)),
                               detail::dd_factorial(static_cast<int>(q))));
            if (q % 2 != 0) w = detail::dd_neg(w);
            w = detail::dd_ldexp(w, static_cast<int>(-k));  // / 2^k
            for (long long i = 0; i <= 2 * q; ++i) {
                detail::DD c =
                    detail::dd_mul(w, bpow[static_cast<std::size_t>(2 * k + i - 2 * q)]);
                c = detail::dd_mul(c, apow_inv[static_cast<std::size_t>(2 * q - i)]);
                c = detail::dd_div(c, detail::dd_factorial(static_cast<int>(i)));
                const detail::DD term = detail::dd_mul(c, i % 2 == 0 ? br_even : br_odd);
                sum = detail::dd_add(sum, term);
                abs_sum += std::abs(term.hi);
            }
        }
    }
    const double pre = 1.0 / (a * std::sqrt(2.0 * std::numbers::pi));
    const double erfc_part = 0.5 * nutq::erfc((b + a) / std::numbers::sqrt2) +
                             0.5 * nutq::erfc((b - a) / std::numbers::sqrt2);
    const detail::DD total = detail::dd_add(detail::dd_mul(sum, pre), detail::DD(erfc_part));
    const double raw = total.to_double();
    const double cond = raw == 0.0 ? std::numeric_limits<double>::infinity()
                                   : (pre * abs_sum + erfc_part) / std::abs(raw);
    return {std::clamp(raw, 0.0, 1.0), cond};
}

inline double li_kam_marcum_half_odd(const HalfOdd& order, const EvalPoint& point) {
    return li_kam_marcum_half_odd_ex(order, point).value;
}

}  // namespace nutq

#endif  // NUTQ_CLOSED_FORM_HPP
