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

#ifndef NUTQ_BOUNDS_HPP
#define NUTQ_BOUNDS_HPP

// Certified two-sided bounds for real orders: round the order(s) to the
// nearest half-odd lattice points and evaluate the exact closed forms there.
// Monotonicity in the order (Marcum) and in the order sum at fixed integer
// difference (Nuttall) makes the rounded values true bounds.  Bounds are
// always computed through the closed forms, never the series, so the
// interval is an independent certificate for a series value.

#include <cmath>

#include "nutq/closed_form.hpp"
#include "nutq/special.hpp"
#include "nutq/types.hpp"

namespace nutq {

/// Lower/upper pair; degenerate means the order(s) were already half-odd and
/// the two ends coincide bit-for-bit.
struct BoundInterval {
    double lower;
    double upper;
    bool degenerate;
};

/// Bounds on Q_M(alpha, beta) for real M > 0.5, alpha >= 0, beta > 0.
inline BoundInterval marcum_bounds(double m, const EvalPoint& point) {
    detail::require_finite(m, "order M");
    if (!(m > 0.5))
        throw domain_error("marcum_bounds requires order M > 0.5");
    if (!(point.beta > 0.0))
        throw domain_error("marcum_bounds requires beta > 0 (order monotonicity)");
    const HalfOdd lo = floor_half(m);
    const HalfOdd hi = ceil_half(m);
    auto eval = [&](const HalfOdd& order) {
        return point.alpha == 0.0 ? marcum_zero_alpha(order.value, point.beta)
                                  : marcum_half_odd(order, point);
    };
    const double lower = eval(lo);
    if (lo.value == hi.value) return {lower, lower, true};
    return {lower, eval(hi), false};
}

namespace detail {

inline void check_nuttall_bound_orders(double m, double n, const EvalPoint& point) {
    require_finite(m, "order M");
    require_finite(n, "order N");
    if (!(m > 0.5) || !(n > 0.5))
        throw domain_error("order floor: bounds require M > 0.5 and N > 0.5");
    if (m - n < 1.0 - 1e-9)
        throw domain_error("spacing: bounds require M >= N + 1");
    const double frac_m = m - std::floor(m);
    const double frac_n = n - std::floor(n);
    if (std::abs(frac_m - frac_n) > 1e-12)
        throw domain_error("fractional mismatch: bounds require delta_M = delta_N "
                           "(M - N a positive integer)");
    if (!(point.alpha > 0.0) || !(point.beta > 0.0))
        throw domain_error("nonpositive argument: bounds require alpha > 0 and beta > 0");
}

}  // namespace detail

/// Bounds on the normalized Nuttall function for M >= N + 1, delta_M = delta_N.
inline BoundInterval norm_nuttall_bounds(double m, double n, const EvalPoint& point) {
    detail::check_nuttall_bound_orders(m, n, point);
    const HalfOddPair lo(floor_half(m), floor_half(n));
    const HalfOddPair hi(ceil_half(m), ceil_half(n));
    const double lower = norm_nuttall_half_odd(lo, point);
    if (lo.m_index == hi.m_index && lo.n_index == hi.n_index) return {lower, lower, true};
    return {lower, norm_nuttall_half_odd(hi, point), false};
}

/// Bounds on the standard Nuttall function; the order-sum monotonicity needs
/// alpha >= 1 on top of the normalized-case requirements.
inline BoundInterval std_nuttall_bounds(double m, double n, const EvalPoint& point) {
    detail::check_nuttall_bound_orders(m, n, point);
    if (point.alpha < 1.0)
        throw domain_error("alpha below 1: standard-Nuttall monotonicity not guaranteed");
    const HalfOddPair lo(floor_half(m), floor_half(n));
    const HalfOddPair hi(ceil_half(m), ceil_half(n));
    const double lower = nuttall_half_odd(lo, point);
    if (lo.m_index == hi.m_index && lo.n_index == hi.n_index) return {lower, lower, true};
    return {lower, nuttall_half_odd(hi, point), false};
}

}  // namespace nutq

#endif  // NUTQ_BOUNDS_HPP
