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

#ifndef NUTQ_QUADRATURE_HPP
#define NUTQ_QUADRATURE_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "nutq/special.hpp"
#include "nutq/types.hpp"

namespace nutq {

/// Quadrature value with the integrator's achieved error estimate
/// (interval error sum plus the analytic bound on the discarded tail).
struct QuadValue {
    double value;
    double est_error;
};

namespace detail {

// 7-15 Gauss-Kronrod pair on [-1,1] (QUADPACK abscissae/weights).
constexpr std::array<double, 8> kGK15Nodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kGK15KronrodW = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGK15GaussW = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a, b;
    double value;
    double err;
    int depth;
    bool operator<(const Interval& o) const { return err < o.err; }
};

template <typename F>
Interval gk15(const F& f, double a, double b, int depth) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double k15 = kGK15KronrodW[7] * fc;
    double g7 = kGK15GaussW[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = h * kGK15Nodes[i];
        const double y = f(c - dx) + f(c + dx);
        k15 += kGK15KronrodW[i] * y;
        if (i % 2 == 1) g7 += kGK15GaussW[i / 2] * y;
    }
    return {a, b, h * k15, std::abs(h) * std::abs(k15 - g7), depth};
}

constexpr int kQuadDepthCap = 50;
constexpr int kQuadMaxIntervals = 200000;

// Globally adaptive refinement to a relative tolerance.
template <typename F>
QuadValue adaptive_gk15(const F& f, const std::vector<double>& breakpoints, double epsrel) {
    std::priority_queue<Interval> heap;
    double total = 0.0;
    double total_err = 0.0;
    for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
        Interval iv = gk15(f, breakpoints[i], breakpoints[i + 1], 0);
        total += iv.value;
        total_err += iv.err;
        heap.push(iv);
    }
    int splits = 0;
    while (total_err > std::max(epsrel * std::abs(total), 1e-305) &&
           total_err > 2e-16 * std::abs(total)) {
        const Interval worst = heap.top();
        if (worst.err == 0.0) break;
        heap.pop();
        if (worst.depth >= kQuadDepthCap)
            throw convergence_error("quadrature refinement depth cap (50 levels) exceeded");
        if (++splits > kQuadMaxIntervals)
            throw convergence_error("quadrature interval budget exceeded");
        const double mid = 0.5 * (worst.a + worst.b);
        const Interval left = gk15(f, worst.a, mid, worst.depth + 1);
        const Interval right = gk15(f, mid, worst.b, worst.depth + 1);
        total += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push(left);
        heap.push(right);
    }
    return {total, total_err};
}

}  // namespace detail

/// Standard Nuttall Q by adaptive Gauss-Kronrod integration of
/// x^M exp(-(x^2+a^2)/2) I_N(a x) over [b, U].  The integrand is evaluated as
/// exp(M ln x - (x-a)^2/2 + ln Ihat_N(a x)) with the exponentially scaled
/// Bessel function, and U is pushed out until the analytic tail bound
/// f(U)/lambda (log-derivative decay rate lambda) is below tol/10 of the
/// integral.
inline QuadValue nuttall_quadrature_ex(const OrderSpec& order, const EvalPoint& point,
                                       double tol = 1e-12) {
    if (!(tol > 0.0)) throw domain_error("quadrature tolerance must be positive");
    if (!order.n) throw domain_error("nuttall_quadrature requires order N");
    point.require_positive_alpha();
    const double m = order.m;
    const double nu = *order.n;
    const double a = point.alpha;
    const double b = point.beta;

    auto f = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double ln_ihat = bessel_i_log(nu, a * x) - a * x;
        const double ln_f = m * std::log(x) - (x - a) * (x - a) / 2.0 + ln_ihat;
        return ln_f < -745.0 ? 0.0 : std::exp(ln_f);
    };

    const double s = std::max(a, b);
    double upper = s + 10.0 + 12.0 * std::sqrt(1.0 + s);
    // keep the tail's log-derivative decay rate comfortably negative and the
    // Bessel argument inside its asymptotic regime
    upper = std::max(upper, (nu * nu + 1.0) / a);
    while ((upper - a) - (m + 1.0) / upper < 1.0) upper *= 1.5;

    const double peak = (a + std::sqrt(a * a + 4.0 * m)) / 2.0;
    auto run = [&](double lo, double hi) {
        std::vector<double> pts = {lo};
        for (double p : {peak - 2.0, peak, peak + 2.0, peak + 6.0, (peak + hi) / 2.0})
            if (p > lo + 1e-12 && p < hi) pts.push_back(p);
        pts.push_back(hi);
        std::sort(pts.begin(), pts.end());
        return detail::adaptive_gk15(f, pts, tol);
    };

    QuadValue result = run(b, upper);
    for (int grow = 0; grow < 40; ++grow) {
        const double lambda = (upper - a) - (m + 1.0) / upper;
        const double tail = 4.0 * f(upper) / lambda;
        if (tail <= tol * std::max(std::abs(result.value), 1e-300) / 10.0) {
            result.est_error += tail;
            return result;
        }
        const double next = upper + 5.0 + upper / 4.0;
        const QuadValue ext = run(upper, next);
        result.value += ext.value;
        result.est_error += ext.est_error;
        upper = next;
    }
    throw convergence_error("nuttall_quadrature could not certify the integral tail");
}

inline double nuttall_quadrature(const OrderSpec& order, const EvalPoint& point,
                                 double tol = 1e-12) {
    return nuttall_quadrature_ex(order, point, tol).value;
}

/// Generalized Marcum Q through its defining integral: the N = M-1 Nuttall
/// integral scaled by a^{1-M}.  At a = 0 the Bessel kernel degenerates and
/// the integrand becomes x^{2M-1} e^{-x^2/2} / (2^{M-1} Gamma(M)).
inline QuadValue marcum_quadrature_ex(double m, const EvalPoint& point, double tol = 1e-12) {
    if (!(m > 0.0) || !std::isfinite(m)) throw domain_error("marcum order M must be positive");
    if (!(tol > 0.0)) throw domain_error("quadrature tolerance must be positive");
    if (point.alpha > 0.0) {
        const QuadValue raw = nuttall_quadrature_ex(OrderSpec(m, m - 1.0), point, tol);
        const double scale = std::exp((m - 1.0) * std::log(point.alpha));
        return {raw.value / scale, raw.est_error / scale};
    }
    const double ln_norm = (m - 1.0) * std::numbers::ln2 + ln_gamma(m);
    auto f = [&](double x) {
        if (x <= 0.0) return 0.0;
        const double ln_f = (2.0 * m - 1.0) * std::log(x) - x * x / 2.0 - ln_norm;
        return ln_f < -745.0 ? 0.0 : std::exp(ln_f);
    };
    const double peak = std::sqrt(std::max(2.0 * m - 1.0, 0.5));
    const double b = point.beta;
    double upper = std::max(b, peak) + 10.0 + 12.0 * std::sqrt(1.0 + std::max(b, peak));
    std::vector<double> pts = {b};
    for (double p : {peak, peak + 3.0, (peak + upper) / 2.0})
        if (p > b + 1e-12 && p < upper) pts.push_back(p);
    pts.push_back(upper);
    std::sort(pts.begin(), pts.end());
    QuadValue result = detail::adaptive_gk15(f, pts, tol);
    const double lambda = upper - (2.0 * m - 1.0) / upper;
    result.est_error += 4.0 * f(upper) / lambda;
    return result;
}

inline double marcum_quadrature(double m, const EvalPoint& point, double tol = 1e-12) {
    return marcum_quadrature_ex(m, point, tol).value;
}

}  // namespace nutq

#endif  // NUTQ_QUADRATURE_HPP
