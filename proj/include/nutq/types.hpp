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

#ifndef NUTQ_TYPES_HPP
#define NUTQ_TYPES_HPP

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>

namespace nutq {

/// Invalid argument outside a function's mathematical domain.
class domain_error : public std::domain_error {
public:
    explicit domain_error(const std::string& what) : std::domain_error(what) {}
};

/// An iterative method failed to converge within its iteration budget.
class convergence_error : public std::runtime_error {
public:
    explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// A requested non-regularized value exceeds the representable range.
class overflow_error : public std::overflow_error {
public:
    explicit overflow_error(const std::string& what) : std::overflow_error(what) {}
};

namespace detail {

inline void require_finite(double x, const char* name) {
    if (!std::isfinite(x))
        throw domain_error(std::string(name) + " must be finite");
}

// Compensated (Kahan) accumulator.
struct KahanSum {
    double sum = 0.0;
    double c = 0.0;
    void add(double x) {
        const double y = x - c;
        const double t = sum + y;
        c = (t - sum) - y;
        sum = t;
    }
};

}  // namespace detail

/// Argument pair (alpha, beta) of the Q-function integrals.
struct EvalPoint {
    double alpha;
    double beta;

    EvalPoint(double a, double b) : alpha(a), beta(b) {
        detail::require_finite(a, "alpha");
        detail::require_finite(b, "beta");
        if (a < 0.0) throw domain_error("alpha must be non-negative");
        if (b < 0.0) throw domain_error("beta must be non-negative");
    }

    void require_positive_alpha() const {
        if (alpha <= 0.0)
            throw domain_error("alpha must be positive for Nuttall evaluation");
    }
};

/// Real order M (and optional second order N) with fractional-part access.
struct OrderSpec {
    double m;
    std::optional<double> n;

    explicit OrderSpec(double m_order) : m(m_order) {
        detail::require_finite(m_order, "order M");
        if (m_order <= 0.0) throw domain_error("order M must be positive");
    }

    OrderSpec(double m_order, double n_order) : OrderSpec(m_order) {
        detail::require_finite(n_order, "order N");
        if (n_order <= -1.0) throw domain_error("order N must exceed -1");
        n = n_order;
    }

    // delta_x in [0,1) with floor(x) = x - delta_x
    double frac_m() const { return m - std::floor(m); }
    double frac_n() const {
        if (!n) throw domain_error("order N not set");
        return *n - std::floor(*n);
    }
};

}  // namespace nutq

#endif  // NUTQ_TYPES_HPP
