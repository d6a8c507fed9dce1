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

#ifndef NUTQ_EVAL_HPP
#define NUTQ_EVAL_HPP

#include <charconv>
#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "nutq/bounds.hpp"
#include "nutq/closed_form.hpp"
#include "nutq/quadrature.hpp"
#include "nutq/series.hpp"
#include "nutq/types.hpp"

namespace nutq {

enum class FunctionId { marcum, nuttall, nuttall_norm };
enum class Method { automatic, closed, series, quadrature };

inline const char* method_name(Method m) {
    switch (m) {
        case Method::automatic: return "auto";
        case Method::closed: return "closed";
        case Method::series: return "series";
        case Method::quadrature: return "quadrature";
    }
    return "?";
}

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

/// One evaluated value: what it is, how it was computed, how far it may be
/// off, and (for closed forms) the cancellation diagnostic.
struct EvalReport {
    double value = 0.0;
    Method method_used = Method::automatic;
    double est_error = 0.0;
    std::optional<double> conditioning;
    std::optional<BoundInterval> interval;

    bool low_accuracy() const { return est_error > 1e-8; }
};

namespace detail {

inline EvalReport report_closed(const CondValue& cv) {
    EvalReport r;
    r.value = cv.value;
    r.method_used = Method::closed;
    r.est_error = cv.conditioning * std::numeric_limits<double>::epsilon() * std::abs(cv.value);
    r.conditioning = cv.conditioning;
    return r;
}

inline EvalReport report_series(const SeriesResult& s) {
    EvalReport r;
    r.value = s.value;
    r.method_used = Method::series;
    r.est_error = s.tail_bound + 8.0 * std::numeric_limits<double>::epsilon() * std::abs(s.value);
    return r;
}

inline EvalReport report_quadrature(const QuadValue& q) {
    EvalReport r;
    r.value = q.value;
    r.method_used = Method::quadrature;
    r.est_error = q.est_error;
    return r;
}

inline EvalReport eval_marcum(const OrderSpec& order, const EvalPoint& point, Method method,
                              double tol) {
    const double m = order.m;
    switch (method) {
        case Method::closed: {
            if (point.alpha == 0.0) {
                EvalReport r;
                r.value = marcum_zero_alpha(m, point.beta);
                r.method_used = Method::closed;
                r.est_error = 4.0 * std::numeric_limits<double>::epsilon() * r.value;
                return r;
            }
            if (!is_half_odd(m))
                throw domain_error("closed-form Marcum evaluation requires a half-odd order");
            return report_closed(marcum_half_odd_ex(HalfOdd(m), point));
        }
        case Method::series:
            return report_series(marcum_series(order, point, tol));
        case Method::quadrature:
            return report_quadrature(marcum_quadrature_ex(m, point, tol));
        case Method::automatic: {
            if (point.alpha == 0.0 || is_half_odd(m)) {
                EvalReport r = eval_marcum(order, point, Method::closed, tol);
                if (!r.conditioning || *r.conditioning < 1e6) return r;
            }
            return report_series(marcum_series(order, point, tol));
        }
    }
    throw domain_error("unknown evaluation method");
}

inline EvalReport eval_nuttall(const OrderSpec& order, const EvalPoint& point, Method method,
                               double tol, bool normalized) {
    if (!order.n) throw domain_error("Nuttall evaluation requires order N");
    point.require_positive_alpha();
    const double m = order.m;
    const double n = *order.n;
    const double scale = std::pow(point.alpha, n);  // std = normalized * alpha^N
    switch (method) {
        case Method::closed: {
            if (!is_half_odd(m) || !is_half_odd(n))
                throw domain_error("closed-form Nuttall evaluation requires half-odd orders");
            if (m < n) throw domain_error("closed-form Nuttall evaluation requires M >= N");
            const HalfOddPair pair(m, n);
            return report_closed(normalized ? norm_nuttall_half_odd_ex(pair, point)
                                            : nuttall_half_odd_ex(pair, point));
        }
        case Method::series: {
            SeriesResult s = norm_nuttall_series(order, point, tol);
            if (!normalized) {
                s.value *= scale;
                s.tail_bound *= scale;
            }
            return report_series(s);
        }
        case Method::quadrature: {
            QuadValue q = nuttall_quadrature_ex(order, point, tol);
            if (normalized) {
                q.value /= scale;
                q.est_error /= scale;
            }
            return report_quadrature(q);
        }
        case Method::automatic: {
            if (is_half_odd(m) && is_half_odd(n) && m >= n) {
                EvalReport r = eval_nuttall(order, point, Method::closed, tol, normalized);
                if (!r.conditioning || *r.conditioning < 1e6) return r;
            }
            return eval_nuttall(order, point, Method::series, tol, normalized);
        }
    }
    throw domain_error("unknown evaluation method");
}

}  // namespace detail

/// Evaluate one of the three Q-functions.  method = automatic prefers the
/// closed form on the half-odd lattice when its conditioning is acceptable
/// and falls back to the certified series otherwise; quadrature runs only on
/// explicit request.
inline EvalReport evaluate(FunctionId fn, const OrderSpec& order, const EvalPoint& point,
                           Method method = Method::automatic, double tol = 1e-12) {
    switch (fn) {
        case FunctionId::marcum: return detail::eval_marcum(order, point, method, tol);
        case FunctionId::nuttall: return detail::eval_nuttall(order, point, method, tol, false);
        case FunctionId::nuttall_norm:
            return detail::eval_nuttall(order, point, method, tol, true);
    }
    throw domain_error("unknown function id");
}

/// Bounds dispatch for the three bound-capable functions; the report carries
/// the interval, plus the series value when requested.
inline EvalReport evaluate_bounds(FunctionId fn, const OrderSpec& order, const EvalPoint& point,
                                  bool with_value, double tol = 1e-12) {
    BoundInterval iv{0.0, 0.0, false};
    switch (fn) {
        case FunctionId::marcum: iv = marcum_bounds(order.m, point); break;
        case FunctionId::nuttall:
            if (!order.n) throw domain_error("Nuttall bounds require order N");
            iv = std_nuttall_bounds(order.m, *order.n, point);
            break;
        case FunctionId::nuttall_norm:
            if (!order.n) throw domain_error("Nuttall bounds require order N");
            iv = norm_nuttall_bounds(order.m, *order.n, point);
            break;
    }
    EvalReport r;
    r.interval = iv;
    r.method_used = Method::closed;
    r.est_error = 0.0;
    if (with_value) {
        const EvalReport series = evaluate(fn, order, point, Method::series, tol);
        r.value = series.value;
        r.est_error = series.est_error;
        r.method_used = Method::series;
    } else {
        r.value = 0.5 * (iv.lower + iv.upper);
    }
    return r;
}

}  // namespace nutq

#endif  // NUTQ_EVAL_HPP
