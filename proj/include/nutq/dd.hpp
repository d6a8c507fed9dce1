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

#ifndef NUTQ_DD_HPP
#define NUTQ_DD_HPP

// Double-double arithmetic (~31 significant digits) built on the standard
// error-free transformations (Dekker/Knuth two_sum, fma-based two_prod).
// Used where the closed-form sums cancel far beyond what compensated double
// summation can absorb.

#include <array>
#include <cmath>
#include <limits>

namespace nutq::detail {

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    double to_double() const { return hi + lo; }
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

// requires |a| >= |b|
inline DD quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(const DD& a, const DD& b) {
    DD s = two_sum(a.hi, b.hi);
    const DD t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_add(const DD& a, double b) {
    DD s = two_sum(a.hi, b);
    s.lo += a.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DD dd_neg(const DD& a) { return {-a.hi, -a.lo}; }

inline DD dd_sub(const DD& a, const DD& b) { return dd_add(a, dd_neg(b)); }

inline DD dd_mul(const DD& a, const DD& b) {
    DD p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_mul(const DD& a, double b) {
    DD p = two_prod(a.hi, b);
    p.lo += a.lo * b;
    return quick_two_sum(p.hi, p.lo);
}

inline DD dd_div(const DD& a, const DD& b) {
    const double q1 = a.hi / b.hi;
    DD r = dd_sub(a, dd_mul(b, q1));
    const double q2 = r.hi / b.hi;
    r = dd_sub(r, dd_mul(b, q2));
    const double q3 = r.hi / b.hi;
    DD q = quick_two_sum(q1, q2);
    return dd_add(q, q3);
}

inline DD dd_div(const DD& a, double b) { return dd_div(a, DD(b)); }

// exact scaling by a power of two
inline DD dd_ldexp(const DD& a, int n) { return {std::ldexp(a.hi, n), std::ldexp(a.lo, n)}; }

inline DD dd_sqr(const DD& a) {
    DD p = two_prod(a.hi, a.hi);
    p.lo += 2.0 * a.hi * a.lo;
    return quick_two_sum(p.hi, p.lo);
}

inline constexpr DD kDDLn2{6.931471805599452862e-01, 2.319046813846299558e-17};

// exp(a) by argument reduction exp(a) = 2^m exp(r)^512 with |r| small,
// Taylor for exp(r) - 1, then repeated squaring via s <- 2s + s^2.
inline DD dd_exp(const DD& a) {
    if (a.hi <= -709.0) return DD(0.0);
    if (a.hi >= 709.0) return DD(std::numeric_limits<double>::infinity());
    const double m = std::floor(a.hi / kDDLn2.hi + 0.5);
    const DD r = dd_ldexp(dd_sub(a, dd_mul(kDDLn2, m)), -9);  // /512
    DD term = dd_sqr(r);
    DD s = dd_add(r, dd_ldexp(term, -1));
    term = dd_mul(term, r);  // r^3
    double fact = 6.0;
    int k = 3;
    const double thresh = 1.22e-32 / 512.0;
    for (;;) {
        s = dd_add(s, dd_div(term, fact));
        term = dd_mul(term, r);
        ++k;
        fact *= k;
        if (std::abs(term.hi) / fact <= thresh) break;
        if (k > 24) break;
    }
    for (int i = 0; i < 9; ++i) s = dd_add(dd_ldexp(s, 1), dd_sqr(s));
    s = dd_add(s, 1.0);
    return dd_ldexp(s, static_cast<int>(m));
}

// expm1(a): direct Taylor where cancellation would hit exp(a) - 1.
inline DD dd_expm1(const DD& a) {
    if (std::abs(a.hi) >= 0.5) return dd_add(dd_exp(a), -1.0);
    DD s = a;
    DD term = a;
    for (int k = 2; k <= 60; ++k) {
        term = dd_div(dd_mul(term, a), static_cast<double>(k));
        s = dd_add(s, term);
        if (std::abs(term.hi) <= 1.3e-32 * std::abs(s.hi)) break;
    }
    return s;
}

// n! as a double-double, n <= 170 (exact through 30!, ~1e-32 relative after).
inline const DD& dd_factorial(int n) {
    static const std::array<DD, 171> table = [] {
        std::array<DD, 171> t{};
        t[0] = DD(1.0);
        for (int i = 1; i <= 170; ++i) t[i] = dd_mul(t[i - 1], static_cast<double>(i));
        return t;
    }();
    return table[static_cast<std::size_t>(n)];
}

// rising factorial (m)_n in dd; exact up to ~2^106
inline DD dd_poch(long long m, long long n) {
    DD r(1.0);
    for (long long i = 0; i < n; ++i) r = dd_mul(r, static_cast<double>(m + i));
    return r;
}

// integer power with exact dd accumulation; n >= 0
inline DD dd_powi(const DD& base, long long n) {
    DD result(1.0);
    DD b = base;
    long long e = n;
    while (e > 0) {
        if (e & 1) result = dd_mul(result, b);
        b = dd_sqr(b);
        e >>= 1;
    }
    return result;
}

}  // namespace nutq::detail

#endif  // NUTQ_DD_HPP
