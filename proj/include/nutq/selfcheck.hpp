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

#ifndef NUTQ_SELFCHECK_HPP
#define NUTQ_SELFCHECK_HPP

// Self-validation: every module invariant exercised over deterministic grids,
// one result line per suite.  The fine grid widens every sweep and also maps
// the beta frontier beyond which the closed-form conditioning ratio crosses
// the 1e6 "defer to series" threshold.

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include "nutq/bounds.hpp"
#include "nutq/closed_form.hpp"
#include "nutq/eval.hpp"
#include "nutq/quadrature.hpp"
#include "nutq/series.hpp"
#include "nutq/special.hpp"

namespace nutq {

enum class SelfcheckGrid { coarse, fine };

struct SuiteResult {
    std::string name;
    bool pass = true;
    double worst = 0.0;  // largest residual (or smallest margin violation)
    long long points = 0;
};

namespace detail {

struct SuiteRecorder {
    SuiteResult r;
    explicit SuiteRecorder(std::string name) { r.name = std::move(name); }
    // residual checks: track the largest |residual|, fail past the limit
    void residual(double res, double limit) {
        ++r.points;
        res = std::abs(res);
        r.worst = std::max(r.worst, res);
        if (!(res <= limit)) r.pass = false;
    }
    // predicate checks: worst stays at the number of violations
    void require(bool ok) {
        ++r.points;
        if (!ok) {
            r.pass = false;
            r.worst += 1.0;
        }
    }
};


template <typename Body>
void run_suite(std::vector<SuiteResult>& out, const char* name, Body&& body) {
    SuiteRecorder s(name);
    try {
        body(s);
    } catch (const std::exception&) {
        s.r.pass = false;
        s.r.worst = std::numeric_limits<double>::infinity();
    }
    out.push_back(s.r);
}

inline std::vector<double> linspace(double from, double to, double step) {
    std::vector<double> v;
    for (double x = from; x <= to + step * 1e-9; x += step) v.push_back(x);
    return v;
}

}  // namespace detail

inline std::vector<SuiteResult> run_selfcheck(SelfcheckGrid grid,
                                              std::ostream* frontier_csv = nullptr) {
    const bool fine = grid == SelfcheckGrid::fine;
    std::vector<SuiteResult> out;

    const std::vector<double> alphas =
        fine ? std::vector<double>{0.5, 1.0, 2.0, 3.5, 6.5} : std::vector<double>{0.5, 2.0, 6.5};
    const std::vector<double> betas =
        fine ? std::vector<double>{0.0, 0.1, 0.5, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0}
             : std::vector<double>{0.0, 0.5, 2.0, 5.0, 8.0};

    detail::run_suite(out, "incomplete-gamma-complement", [&](detail::SuiteRecorder& s) {  // P + Q = 1
            const auto axis = fine ? detail::linspace(0.25, 100.0, 2.25)
                                   : std::vector<double>{0.3, 1.0, 2.5, 5.0, 10.0, 25.0, 50.0, 100.0};
            for (double r : axis)
                for (double x : axis)
                    s.residual(reg_lower_gamma(r, x) + reg_upper_gamma(r, x) - 1.0, 1e-13);
    });
    detail::run_suite(out, "gamma-cdf-order-monotonicity", [&](detail::SuiteRecorder& s) {  // Tricomi: P decreasing in the order
            for (double x : {0.5, 2.0, 10.0, 60.0}) {
                const double r0 = std::max(0.25, x / 4.0);
                double prev = reg_lower_gamma(r0, x);
                for (double r = r0; r <= 3.0 * x + 2.0; r *= fine ? 1.15 : 1.4) {
                    if (r == r0) continue;
                    const double cur = reg_lower_gamma(r, x);
                    s.require(cur < prev);
                    prev = cur;
                }
            }
    });
    detail::run_suite(out, "gamma-ratio-order-monotonicity", [&](detail::SuiteRecorder& s) {  // Gamma(r+s,x)/Gamma(r) increasing in r
            for (double sv : {0.0, 0.5, 1.5, 3.0}) {
                for (double x : {0.5, 2.0, 10.0}) {
                    const double rmax = sv == 0.0 ? x + 7.0 : 40.0;
                    double prev = gamma_ratio(sv, 0.25, x);
                    for (double r = 0.5; r <= rmax; r += fine ? 0.25 : 0.75) {
                        const double cur = gamma_ratio(sv, r, x);
                        s.require(cur > prev);
                        prev = cur;
                    }
                }
            }
    });
    detail::run_suite(out, "half-odd-rounding", [&](detail::SuiteRecorder& s) {  // rounding operators
            for (double x = 0.5; x <= 14.0; x += fine ? 0.015625 : 0.109375) {
                const double lo = floor_half(x).value;
                const double hi = ceil_half(x).value;
                s.require(lo <= x && x <= hi);
                if (is_half_odd(x))
                    s.require(lo == x && hi == x);
                else
                    s.require(hi - lo == 1.0);
            }
    });
    detail::run_suite(out, "bessel-half-odd-consistency", [&](detail::SuiteRecorder& s) {  // Eq.-style finite Bessel sum vs power series on its feasible set
            for (long long n = 1; n <= 12; ++n) {
                for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
                    const double ref = bessel_i(static_cast<double>(n) - 0.5, z);
                    double max_term = 0.0;
                    for (long long k = 0; k < n; ++k) {
                        const double coef = pochhammer(n - k, n - 1).value *
                                            std::pow(2.0 * z, static_cast<double>(k)) /
                                            pochhammer(1, k).value;
                        const double bracket =
                            k % 2 == 0 ? std::abs(std::expm1(2.0 * z)) : 2.0 + std::expm1(2.0 * z);
                        max_term = std::max(max_term, coef * bracket);
                    }
                    const double sum_scale = std::abs(ref) * std::sqrt(std::numbers::pi) *
                                             std::exp(z) * std::pow(2.0 * z, n - 0.5);
                    if (max_term / sum_scale < 1e3)
                        s.residual(bessel_i_half_odd(n, z) / ref - 1.0, 1e-12);
                }
            }
    });
    detail::run_suite(out, "series-quadrature-route-agreement", [&](detail::SuiteRecorder& s) {  // series vs quadrature
            const double pairs[][2] = {{1.5, 0.5}, {2.0, 1.0}, {2.7, 1.7}, {5.0, 3.0}, {4.5, 2.5}};
            for (const auto& mn : pairs) {
                for (double a : alphas) {
                    for (double b : betas) {
                        if (b == 0.0) continue;
                        const OrderSpec order(mn[0], mn[1]);
                        const EvalPoint p(a, b);
                        const SeriesResult sr = norm_nuttall_series(order, p);
                        const QuadValue q = nuttall_quadrature_ex(order, p);
                        const double scale = std::pow(a, mn[1]);
                        const double qn = q.value / scale;
                        const double slack = sr.tail_bound + 10.0 * q.est_error / scale +
                                             1e-13 * std::max(1.0, std::abs(qn));
                        s.residual(std::abs(sr.value - qn) / slack, 1.0);
                    }
                }
            }
    });
    detail::run_suite(out, "marcum-beta-zero", [&](detail::SuiteRecorder& s) {  // Q_M(a, 0) = 1
            for (double m : {0.7, 1.0, 2.5, 8.3})
                for (double a : {0.0, 1.0, 3.5})
                    s.residual(marcum_series(OrderSpec(m), EvalPoint(a, 0.0)).value - 1.0, 1e-12);
    });
    detail::run_suite(out, "marcum-nuttall-relation", [&](detail::SuiteRecorder& s) {  // Marcum = normalized Nuttall at N = M-1
            for (double m : {0.7, 1.0, 2.5, 6.0}) {
                for (double a : alphas) {
                    for (double b : betas) {
                        const SeriesResult lhs = marcum_series(OrderSpec(m), EvalPoint(a, b));
                        const SeriesResult rhs =
                            norm_nuttall_series(OrderSpec(m, m - 1.0), EvalPoint(a, b));
                        const double slack = lhs.tail_bound + rhs.tail_bound +
                                             1e-13 * std::max(1.0, std::abs(lhs.value));
                        s.residual(std::abs(lhs.value - rhs.value) / slack, 1.0);
                    }
                }
            }
    });
    detail::run_suite(out, "marcum-order-monotonicity", [&](detail::SuiteRecorder& s) {  // Marcum increasing in its order
            for (auto [a, b] : {std::pair{0.0, 1.0}, {1.0, 2.0}, {2.5, 3.0}, {5.5, 4.0}}) {
                const EvalPoint p(a, b);
                SeriesResult prev = marcum_series(OrderSpec(0.6), p);
                const double step = fine ? 0.2 : 0.4;
                for (double m = 0.6 + step; m <= (fine ? 8.0 : 6.0) + 1e-9; m += step) {
                    const SeriesResult cur = marcum_series(OrderSpec(m), p);
                    s.require(cur.value - prev.value > cur.tail_bound + prev.tail_bound);
                    prev = cur;
                }
            }
    });
    detail::run_suite(out, "nuttall-order-sum-monotonicity", [&](detail::SuiteRecorder& s) {  // Nuttall functions increasing in the order sum at fixed difference
            struct Case { double c, a, b; };
            const Case cases[] = {{1.0, 7.5, 6.5}, {1.0, 5.5, 5.5}, {1.0, 0.5, 3.5},
                                  {2.0, 3.5, 1.5}, {2.0, 2.0, 2.0}, {2.0, 1.5, 3.5}};
            const double vstep = fine ? 0.5 : 2.0;
            for (const Case& c : cases) {
                const EvalPoint p(c.a, c.b);
                double prev_norm = -1.0;
                double prev_std = -1.0;
                for (double v = 4.0; v <= 18.0 + 1e-9; v += vstep) {
                    const OrderSpec order((v + c.c) / 2.0, (v - c.c) / 2.0);
                    const double norm = norm_nuttall_series(order, p).value;
                    s.require(prev_norm < 0.0 || norm > prev_norm);
                    prev_norm = norm;
                    if (c.a >= 1.0) {
                        const double std_val = norm * std::pow(c.a, *order.n);
                        s.require(prev_std < 0.0 || std_val > prev_std);
                        prev_std = std_val;
                    }
                }
            }
    });
    detail::run_suite(out, "closed-form-oracle-equivalence", [&](detail::SuiteRecorder& s) {  // closed form vs quadrature oracle on the conditioned subgrid
            const auto m_values = fine ? detail::linspace(1.0, 12.0, 1.0)
                                       : std::vector<double>{1.0, 3.0, 6.0, 9.0, 12.0};
            for (double md : m_values) {
                const long long m = static_cast<long long>(md);
                for (long long diff : {0, 1, 2, 3}) {
                    const long long n = m - diff;
                    if (n < 1) continue;
                    for (double a : alphas) {
                        for (double b : betas) {
                            const HalfOddPair pair(static_cast<double>(m) - 0.5,
                                                   static_cast<double>(n) - 0.5);
                            const EvalPoint p(a, b);
                            const CondValue cv = nuttall_half_odd_ex(pair, p);
                            if (cv.degraded()) continue;
                            const double q = nuttall_quadrature(
                                OrderSpec(pair.order_m(), pair.order_n()), p);
                            s.residual((cv.value - q) / std::max(std::abs(q), 1e-300), 1e-9);
                        }
                    }
                }
            }
    });
    detail::run_suite(out, "marcum-dual-closed-form", [&](detail::SuiteRecorder& s) {  // the two Marcum half-odd routes agree
            for (long long idx = 1; idx <= 12; ++idx) {
                const HalfOdd m(static_cast<double>(idx) - 0.5);
                for (double a : alphas) {
                    for (double b : betas) {
                        const EvalPoint p(a, b);
                        const double lhs = marcum_half_odd(m, p);
                        const double rhs = li_kam_marcum_half_odd(m, p);
                        s.residual((lhs - rhs) / std::max(std::abs(rhs), 1e-300), 1e-10);
                    }
                }
            }
    });
    detail::run_suite(out, "closed-form-range", [&](detail::SuiteRecorder& s) {  // ranges
            for (long long idx : {1, 5, 12}) {
                const HalfOdd m(static_cast<double>(idx) - 0.5);
                for (double a : alphas) {
                    for (double b : betas) {
                        const EvalPoint p(a, b);
                        const double v = marcum_half_odd(m, p);
                        s.require(v >= 0.0 && v <= 1.0);
                        const CondValue nut = nuttall_half_odd_ex(HalfOddPair(m, m), p);
                        if (!nut.degraded()) s.require(nut.value >= 0.0);
                    }
                }
            }
    });
    detail::run_suite(out, "marcum-alpha-zero-continuity", [&](detail::SuiteRecorder& s) {  // closed-form continuity at alpha -> 0
            for (double m : {0.5, 1.5, 3.5})
                for (double b : {0.5, 1.0, 2.0, 4.0})
                    s.residual(marcum_half_odd(HalfOdd(m), EvalPoint(1e-6, b)) -
                                   marcum_zero_alpha(m, b),
                               1e-5);
    });
    detail::run_suite(out, "beta-alpha-degeneracy", [&](detail::SuiteRecorder& s) {  // gamma terms vanish identically at beta = alpha
            for (double a : {0.5, 1.0, 2.0, 3.5}) {
                const EvalPoint p(a, a);
                for (auto [m, n] : {std::pair{2.5, 1.5}, {4.5, 2.5}, {5.5, 5.5}}) {
                    const HalfOddPair pair(m, n);
                    const CondValue full =
                        detail::nuttall_half_odd_impl(pair, p, detail::Mutation::none, false);
                    const CondValue cut =
                        detail::nuttall_half_odd_impl(pair, p, detail::Mutation::drop_gamma, false);
                    s.require(full.value == cut.value);
                }
            }
    });
    detail::run_suite(out, "bound-sandwich", [&](detail::SuiteRecorder& s) {  // bound sandwich on the figure regimes
            for (double m : {2.7, 8.3}) {
                for (double b = 0.5; b <= 7.0 + 1e-9; b += 0.5) {
                    const EvalPoint p(2.5, b);
                    const BoundInterval iv = marcum_bounds(m, p);
                    const double mid = marcum_series(OrderSpec(m), p).value;
                    s.require(iv.lower < mid && mid < iv.upper);
                }
            }
            for (auto [m, n] : {std::pair{4.7, 2.7}, {5.0, 3.0}}) {
                for (double b = 0.5; b <= 7.0 + 1e-9; b += 0.5) {
                    const EvalPoint p(3.5, b);
                    const BoundInterval iv = norm_nuttall_bounds(m, n, p);
                    const double mid = norm_nuttall_series(OrderSpec(m, n), p).value;
                    s.require(iv.lower < mid && mid < iv.upper);
                }
            }
    });
    detail::run_suite(out, "bound-nesting", [&](detail::SuiteRecorder& s) {  // integer orders nest strictly between neighbouring half-odd values
            for (double m : {1.0, 2.0, 4.0, 8.0}) {
                for (double a : {0.5, 2.0, 3.5}) {
                    for (double b : {0.5, 2.0, 5.0}) {
                        const EvalPoint p(a, b);
                        const BoundInterval iv = marcum_bounds(m, p);
                        const double mid = marcum_series(OrderSpec(m), p).value;
                        s.require(iv.lower < mid && mid < iv.upper);
                    }
                }
            }
    });
    detail::run_suite(out, "bound-tightness-majority", [&](detail::SuiteRecorder& s) {  // tightness asymmetry as a majority property
            int upper_tighter = 0, lower_tighter = 0, total = 0;
            for (double a : {1.5, 2.5, 3.5}) {
                for (double b = 1.0; b <= 6.0 + 1e-9; b += 1.0) {
                    const EvalPoint p(a, b);
                    {
                        const BoundInterval iv = marcum_bounds(3.2, p);
                        const double mid = marcum_series(OrderSpec(3.2), p).value;
                        upper_tighter += (iv.upper - mid) < (mid - iv.lower);
                    }
                    {
                        const BoundInterval iv = marcum_bounds(3.8, p);
                        const double mid = marcum_series(OrderSpec(3.8), p).value;
                        lower_tighter += (mid - iv.lower) < (iv.upper - mid);
                    }
                    ++total;
                }
            }
            s.require(upper_tighter * 10 >= total * 9);
            s.require(lower_tighter * 10 >= total * 9);
    });
    detail::run_suite(out, "degenerate-bounds-bitwise", [&](detail::SuiteRecorder& s) {  // degenerate intervals match the closed form bit-for-bit
            for (double m : {3.5, 5.5}) {
                const EvalPoint p(1.5, 2.0);
                const BoundInterval iv = marcum_bounds(m, p);
                s.require(iv.degenerate && iv.lower == iv.upper &&
                          iv.lower == marcum_half_odd(HalfOdd(m), p));
                const BoundInterval nv = norm_nuttall_bounds(m, m - 2.0, p);
                s.require(nv.degenerate &&
                          nv.lower == norm_nuttall_half_odd(HalfOddPair(m, m - 2.0), p));
            }
    });

    if (fine && frontier_csv) {
        // beta value at which the closed-form conditioning first crosses 1e6
        *frontier_csv << "alpha,m,n,beta_frontier,conditioning\n";
        for (auto [m, n] : {std::pair<long long, long long>{1, 1}, {3, 2}, {6, 4},
                            {9, 7}, {12, 9}, {12, 12}}) {
            for (double a : {0.5, 1.0, 2.0, 3.5, 6.5}) {
                double frontier = std::numeric_limits<double>::quiet_NaN();
                double cond_at = std::numeric_limits<double>::quiet_NaN();
                for (double b = 0.0; b <= 16.0 + 1e-9; b += 0.25) {
                    const CondValue cv = nuttall_half_odd_ex(
                        HalfOddPair(static_cast<double>(m) - 0.5, static_cast<double>(n) - 0.5),
                        EvalPoint(a, b));
                    if (cv.degraded()) {
                        frontier = b;
                        cond_at = cv.conditioning;
                        break;
                    }
                }
                *frontier_csv << format_double(a) << ',' << m << ',' << n << ',';
                if (std::isfinite(frontier))
                    *frontier_csv << format_double(frontier) << ',' << format_double(cond_at);
                else
                    *frontier_csv << ',';
                *frontier_csv << "\n";
            }
        }
    }
    return out;
}

}  // namespace nutq

#endif  // NUTQ_SELFCHECK_HPP
