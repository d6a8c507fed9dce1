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

#ifndef NUTQ_SERIES_HPP
#define NUTQ_SERIES_HPP

#include <algorithm>
#include <cmath>

#include "nutq/special.hpp"
#include "nutq/types.hpp"

namespace nutq {

/// Truncated series value with a certified bound on the discarded tail.
struct SeriesResult {
    double value;
    long long terms_used;
    double tail_bound;
};

namespace detail {

constexpr long long kSeriesTermCap = 1000000;

inline void check_series_args(double tol) {
    if (!(tol > 0.0)) throw domain_error("series tolerance must be positive");
}

}  // namespace detail

/// Generalized Marcum Q as a Poisson mixture of regularized upper incomplete
/// gammas: sum_k e^{-a^2/2} (a^2/2)^k / k! * Q(k+M, b^2/2).  The certified
/// tail bound is the remaining Poisson mass P(K+1, a^2/2), since every
/// omitted gamma factor lies in [0,1].
inline SeriesResult marcum_series(const OrderSpec& order, const EvalPoint& point,
                                  double tol = 1e-12) {
    detail::check_series_args(tol);
    const double m = order.m;
    const double y = point.beta * point.beta / 2.0;
    if (point.alpha == 0.0) return {reg_upper_gamma(m, y), 1, 0.0};

    const double lambda = point.alpha * point.alpha / 2.0;
    const double ln_lambda = std::log(lambda);
    double ln_w = -lambda;  // ln of the Poisson weight
    double q = reg_upper_gamma(m, y);
    double d = y == 0.0 ? 0.0 : std::exp(m * std::log(y) - y - ln_gamma(m + 1.0));
    detail::KahanSum value;
    detail::KahanSum cum;
    for (long long k = 0; k < detail::kSeriesTermCap; ++k) {
        const double w = std::exp(ln_w);
        value.add(w * q);
        cum.add(w);
        if (1.0 - cum.sum <= tol) {
            const double tail = reg_lower_gamma(static_cast<double>(k + 1), lambda);
            return {value.sum, k + 1, std::max(tail, 0.0)};
        }
        ln_w += ln_lambda - std::log(static_cast<double>(k + 1));
        q = std::min(1.0, q + d);
        d *= y / (m + static_cast<double>(k) + 1.0);
    }
    throw convergence_error("marcum_series exceeded the term cap (1e6)");
}

/// Normalized Nuttall Q via the incomplete-gamma series
///   e^{-a^2/2} sum_k a^{2k} / (2^{k+(N-M+1)/2} k!) *
///              Gamma(k+(M+N+1)/2, b^2/2) / Gamma(k+N+1).
/// Terminates past the term-ratio peak; the certified tail bound is the
/// geometric majorant t_K * rho / (1 - rho) with rho = t_K / t_{K-1}.
inline SeriesResult norm_nuttall_series(const OrderSpec& order, const EvalPoint& point,
                                        double tol = 1e-12) {
    detail::check_series_args(tol);
    if (!order.n) throw domain_error("norm_nuttall_series requires order N");
    point.require_positive_alpha();
    const double m = order.m;
    const double n = *order.n;
    const double h = (m + n + 1.0) / 2.0;
    const double y = point.beta * point.beta / 2.0;
    const double lambda = point.alpha * point.alpha / 2.0;
    const double ln_alpha = std::log(point.alpha);
    const double kmin = lambda + std::max(0.0, (m - n - 1.0) / 2.0) + 10.0;

    double lg_k1 = 0.0;                     // ln Gamma(k+1)
    double lg_kn = ln_gamma(n + 1.0);       // ln Gamma(k+N+1)
    double lg_kh = ln_gamma(h);             // ln Gamma(k+h)
    double q = reg_upper_gamma(h, y);
    double d = y == 0.0 ? 0.0 : std::exp(h * std::log(y) - y - ln_gamma(h + 1.0));
    detail::KahanSum sum;
    double prev_term = 0.0;
    for (long long k = 0; k < detail::kSeriesTermCap; ++k) {
        const double kd = static_cast<double>(k);
        const double ln_coef = -lambda + 2.0 * kd * ln_alpha -
                               (kd + (n - m + 1.0) / 2.0) * std::numbers::ln2 - lg_k1 - lg_kn +
                               lg_kh;
        const double term = std::exp(ln_coef) * q;
        sum.add(term);
        if (k >= 1 && kd >= kmin && term < tol * sum.sum) {
            if (term == 0.0) return {sum.sum, k + 1, 0.0};
            const double rho = term / prev_term;
            if (rho < 1.0) {
                const double tail = term * rho / (1.0 - rho);
                return {sum.sum, k + 1, std::max(tail, 0.0)};
            }
        }
        prev_term = term;
        lg_k1 += std::log(kd + 1.0);
        lg_kn += std::log(kd + n + 1.0);
        lg_kh += std::log(kd + h);
        q = std::min(1.0, q + d);
        d *= y / (h + kd + 1.0);
    }
    throw convergence_error(
        "norm_nuttall_series did not converge within the term cap (term ratio never "
        "settled below 1)");
}

}  // namespace nutq

#endif  // NUTQ_SERIES_HPP
