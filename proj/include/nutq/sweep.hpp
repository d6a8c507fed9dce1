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

#ifndef NUTQ_SWEEP_HPP
#define NUTQ_SWEEP_HPP

#include <cmath>
#include <optional>
#include <ostream>
#include <vector>

#include "nutq/eval.hpp"

namespace nutq {

enum class SweepAxis { beta, order_sum, order };

/// A one-axis parameter sweep: which function, which fixed parameters, which
/// axis to vary, and what to emit per row.
struct SweepSpec {
    FunctionId function = FunctionId::marcum;
    Method method = Method::automatic;
    double m = std::numeric_limits<double>::quiet_NaN();
    double n = std::numeric_limits<double>::quiet_NaN();
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double beta = std::numeric_limits<double>::quiet_NaN();
    SweepAxis axis = SweepAxis::beta;
    double from = 0.0;
    double to = 0.0;
    double step = 0.0;
    double diff = std::numeric_limits<double>::quiet_NaN();  // fixed M-N for order-sum sweeps
    double tol = 1e-12;
    bool with_bounds = false;
    bool with_method = false;
};

struct SweepRow {
    double axis;
    std::optional<double> value;
    std::optional<BoundInterval> interval;
    std::optional<Method> method;
    std::optional<double> est_error;
};

struct SweepResult {
    std::vector<SweepRow> rows;
    int domain_errors = 0;
};

namespace detail {

inline void check_sweep_spec(const SweepSpec& spec) {
    if (!(spec.from < spec.to)) throw domain_error("sweep requires from < to");
    if (!(spec.step > 0.0)) throw domain_error("sweep requires step > 0");
    if (spec.from + spec.step > spec.to * (1.0 + 1e-12) + 1e-12)
        throw domain_error("sweep requires at least 2 grid points");
    if (spec.axis == SweepAxis::order_sum && !std::isfinite(spec.diff))
        throw domain_error("order-sum sweep requires --diff (fixed M - N)");
    if (spec.axis == SweepAxis::order_sum && spec.function == FunctionId::marcum)
        throw domain_error("order-sum sweep applies to the Nuttall functions");
}

}  // namespace detail

/// Run the sweep; rows are ordered by ascending axis value.  Per-point domain
/// errors leave the affected cells empty and are tallied in domain_errors.
inline SweepResult run_sweep(const SweepSpec& spec) {
    detail::check_sweep_spec(spec);
    SweepResult out;
    const long long npts =
        static_cast<long long>(std::floor((spec.to - spec.from) / spec.step + 1e-9)) + 1;
    for (long long i = 0; i < npts; ++i) {
        const double axis = spec.from + static_cast<double>(i) * spec.step;
        SweepRow row{axis, {}, {}, {}, {}};
        bool had_error = false;

        double m = spec.m;
        double n = spec.n;
        double beta = spec.beta;
        switch (spec.axis) {
            case SweepAxis::beta: beta = axis; break;
            case SweepAxis::order_sum:
                m = (axis + spec.diff) / 2.0;
                n = (axis - spec.diff) / 2.0;
                break;
            case SweepAxis::order: m = axis; break;
        }
        try {
            const OrderSpec order = spec.function == FunctionId::marcum && !std::isfinite(n)
                                        ? OrderSpec(m)
                                        : OrderSpec(m, n);
            const EvalPoint point(spec.alpha, beta);
            const EvalReport r = evaluate(spec.function, order, point, spec.method, spec.tol);
            row.value = r.value;
            row.method = r.method_used;
            row.est_error = r.est_error;
            if (spec.with_bounds) {
                try {
                    switch (spec.function) {
                        case FunctionId::marcum:
                            row.interval = marcum_bounds(order.m, point);
                            break;
                        case FunctionId::nuttall:
                            row.interval = std_nuttall_bounds(order.m, *order.n, point);
                            break;
                        case FunctionId::nuttall_norm:
                            row.interval = norm_nuttall_bounds(order.m, *order.n, point);
                            break;
                    }
                } catch (const domain_error&) {
                    had_error = true;
                }
            }
        } catch (const domain_error&) {
            had_error = true;
        }
        out.domain_errors += had_error ? 1 : 0;
        out.rows.push_back(row);
    }
    return out;
}

/// CSV emission: header always present, shortest round-trip numbers, '\n'
/// endings, empty cells for per-point domain errors, and a trailing
/// `# domain_errors: n` comment when any occurred.
inline void write_sweep_csv(std::ostream& os, const SweepSpec& spec, const SweepResult& result) {
    os << "axis,value";
    if (spec.with_bounds) os << ",lower,upper";
    if (spec.with_method) os << ",method,est_error";
    os << "\n";
    for (const SweepRow& row : result.rows) {
        os << format_double(row.axis) << ',';
        if (row.value) os << format_double(*row.value);
        if (spec.with_bounds) {
            os << ',';
            if (row.interval) os << format_double(row.interval->lower);
            os << ',';
            if (row.interval) os << format_double(row.interval->upper);
        }
        if (spec.with_method) {
            os << ',';
            if (row.method) os << method_name(*row.method);
            os << ',';
            if (row.est_error) os << format_double(*row.est_error);
        }
        os << "\n";
    }
    if (result.domain_errors > 0) os << "# domain_errors: " << result.domain_errors << "\n";
}

}  // namespace nutq

#endif  // NUTQ_SWEEP_HPP
