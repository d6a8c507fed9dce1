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

// Command-line surface: eval, bounds, sweep, selfcheck.
// Exit codes: 0 success, 1 selfcheck/containment failure, 2 domain error,
// 3 numerical non-convergence.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "nutq/nutq.hpp"

namespace {

using nutq::format_double;

struct EvalArgs {
    std::string function;
    double m = 0.0;
    std::optional<double> n;
    double alpha = 0.0;
    double beta = 0.0;
    std::string method = "auto";
    double tol = 1e-12;
    bool with_value = false;
};

struct SweepArgs {
    std::string function;
    std::optional<double> m, n, alpha, beta;
    std::string vary;
    double from = 0.0, to = 0.0, step = 0.0;
    std::optional<double> diff;
    std::string method = "auto";
    double tol = 1e-12;
    bool with_bounds = false;
    bool with_method = false;
    std::string out = "-";
};

nutq::Method parse_method(const std::string& name) {
    if (name == "auto") return nutq::Method::automatic;
    if (name == "closed") return nutq::Method::closed;
    if (name == "series") return nutq::Method::series;
    if (name == "quadrature") return nutq::Method::quadrature;
    throw nutq::domain_error("unknown method: " + name);
}

nutq::FunctionId parse_function(const std::string& name, bool bounds_naming) {
    if (name == "marcum") return nutq::FunctionId::marcum;
    if (!bounds_naming && name == "nuttall") return nutq::FunctionId::nuttall;
    if (bounds_naming && name == "nuttall-std") return nutq::FunctionId::nuttall;
    if (name == "nuttall-norm") return nutq::FunctionId::nuttall_norm;
    throw nutq::domain_error("unknown function: " + name);
}

nutq::OrderSpec make_order(const nutq::FunctionId fn, double m, const std::optional<double>& n) {
    if (fn == nutq::FunctionId::marcum) {
        if (n) throw nutq::domain_error("--n does not apply to the Marcum function");
        return nutq::OrderSpec(m);
    }
    if (!n) throw nutq::domain_error("--n is required for the Nuttall functions");
    return nutq::OrderSpec(m, *n);
}

int run_eval(const EvalArgs& args) {
    const nutq::FunctionId fn = parse_function(args.function, false);
    const nutq::OrderSpec order = make_order(fn, args.m, args.n);
    const nutq::EvalPoint point(args.alpha, args.beta);
    const nutq::EvalReport r =
        nutq::evaluate(fn, order, point, parse_method(args.method), args.tol);
    std::cout << "value = " << format_double(r.value) << "\n";
    std::cout << "method = " << nutq::method_name(r.method_used) << "\n";
    std::cout << "est_error = " << format_double(r.est_error) << "\n";
    if (r.conditioning) std::cout << "conditioning = " << format_double(*r.conditioning) << "\n";
    if (r.low_accuracy()) std::cout << "warning: estimated error exceeds 1e-8\n";
    return 0;
}

int run_bounds(const EvalArgs& args) {
    const nutq::FunctionId fn = parse_function(args.function, true);
    const nutq::OrderSpec order = make_order(fn, args.m, args.n);
    const nutq::EvalPoint point(args.alpha, args.beta);
    const nutq::EvalReport r = nutq::evaluate_bounds(fn, order, point, args.with_value, args.tol);
    const nutq::BoundInterval& iv = *r.interval;
    std::cout << "lower = " << format_double(iv.lower) << "\n";
    std::cout << "upper = " << format_double(iv.upper) << "\n";
    std::cout << "degenerate = " << (iv.degenerate ? "yes" : "no") << "\n";
    if (args.with_value) {
        std::cout << "value = " << format_double(r.value) << "\n";
        std::cout << "method = " << nutq::method_name(r.method_used) << "\n";
        std::cout << "est_error = " << format_double(r.est_error) << "\n";
        const bool contained = iv.lower <= r.value + r.est_error &&
                               r.value - r.est_error <= iv.upper;
        std::cout << "contained = " << (contained ? "yes" : "NO") << "\n";
        if (!contained) return 1;
    }
    return 0;
}

int run_sweep(const SweepArgs& args) {
    nutq::SweepSpec spec;
    spec.function = parse_function(args.function, false);
    spec.method = parse_method(args.method);
    spec.tol = args.tol;
    if (args.vary == "beta")
        spec.axis = nutq::SweepAxis::beta;
    else if (args.vary == "order-sum")
        spec.axis = nutq::SweepAxis::order_sum;
    else if (args.vary == "order")
        spec.axis = nutq::SweepAxis::order;
    else
        throw nutq::domain_error("unknown sweep axis: " + args.vary);
    if (args.m) spec.m = *args.m;
    if (args.n) spec.n = *args.n;
    if (args.alpha) spec.alpha = *args.alpha;
    if (args.beta) spec.beta = *args.beta;
    if (args.diff) spec.diff = *args.diff;
    spec.from = args.from;
    spec.to = args.to;
    spec.step = args.step;
    spec.with_bounds = args.with_bounds;
    spec.with_method = args.with_method;

    // fixed parameters that the axis does not provide must be present
    if (!std::isfinite(spec.alpha)) throw nutq::domain_error("--alpha is required");
    if (spec.axis != nutq::SweepAxis::beta && !std::isfinite(spec.beta))
        throw nutq::domain_error("--beta is required for order sweeps");
    if (spec.axis == nutq::SweepAxis::beta && !std::isfinite(spec.m))
        throw nutq::domain_error("--m is required for beta sweeps");
    if (spec.function != nutq::FunctionId::marcum && spec.axis != nutq::SweepAxis::order_sum &&
        !std::isfinite(spec.n))
        throw nutq::domain_error("--n is required for the Nuttall functions");

    const nutq::SweepResult result = nutq::run_sweep(spec);
    if (args.out == "-") {
        nutq::write_sweep_csv(std::cout, spec, result);
    } else {
        std::ofstream os(args.out);
        if (!os) throw std::runtime_error("cannot open output file: " + args.out);
        nutq::write_sweep_csv(os, spec, result);
    }
    return 0;
}

int run_selfcheck(const std::string& grid_name, const std::string& out) {
    const nutq::SelfcheckGrid grid =
        grid_name == "fine" ? nutq::SelfcheckGrid::fine : nutq::SelfcheckGrid::coarse;
    std::ofstream frontier;
    std::ostream* frontier_os = nullptr;
    if (grid == nutq::SelfcheckGrid::fine) {
        frontier.open(out);
        if (!frontier) throw std::runtime_error("cannot open output file: " + out);
        frontier_os = &frontier;
    }
    const std::vector<nutq::SuiteResult> results = nutq::run_selfcheck(grid, frontier_os);
    bool all_pass = true;
    for (const nutq::SuiteResult& r : results) {
        std::cout << (r.pass ? "PASS" : "FAIL") << "  " << r.name
                  << "  (points: " << r.points << ", worst: " << format_double(r.worst) << ")\n";
        all_pass = all_pass && r.pass;
    }
    std::cout << (all_pass ? "selfcheck: all suites passed" : "selfcheck: FAILURES present")
              << "\n";
    if (grid == nutq::SelfcheckGrid::fine)
        std::cout << "conditioning frontier written to " << out << "\n";
    return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Marcum and Nuttall Q-function evaluator with certified bounds"};
    app.require_subcommand(1);

    EvalArgs eval_args;
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate a Q-function at one point");
    eval_cmd->add_option("function", eval_args.function, "marcum|nuttall|nuttall-norm")
        ->required();
    eval_cmd->add_option("--m", eval_args.m, "order M")->required();
    eval_cmd->add_option("--n", eval_args.n, "order N (Nuttall only)");
    eval_cmd->add_option("--alpha", eval_args.alpha, "noncentrality parameter")->required();
    eval_cmd->add_option("--beta", eval_args.beta, "threshold parameter")->required();
    eval_cmd->add_option("--method", eval_args.method, "auto|closed|series|quadrature");
    eval_cmd->add_option("--tol", eval_args.tol, "series/quadrature tolerance");

    EvalArgs bounds_args;
    CLI::App* bounds_cmd =
        app.add_subcommand("bounds", "certified lower/upper bounds for real orders");
    bounds_cmd->add_option("function", bounds_args.function, "marcum|nuttall-std|nuttall-norm")
        ->required();
    bounds_cmd->add_option("--m", bounds_args.m, "order M")->required();
    bounds_cmd->add_option("--n", bounds_args.n, "order N (Nuttall only)");
    bounds_cmd->add_option("--alpha", bounds_args.alpha, "noncentrality parameter")->required();
    bounds_cmd->add_option("--beta", bounds_args.beta, "threshold parameter")->required();
    bounds_cmd->add_flag("--with-value", bounds_args.with_value,
                         "also print the series value and containment");
    bounds_cmd->add_option("--tol", bounds_args.tol, "series tolerance for --with-value");

    SweepArgs sweep_args;
    CLI::App* sweep_cmd = app.add_subcommand("sweep", "CSV sweep along beta or the order axes");
    sweep_cmd->add_option("function", sweep_args.function, "marcum|nuttall|nuttall-norm")
        ->required();
    sweep_cmd->add_option("--m", sweep_args.m, "order M (fixed)");
    sweep_cmd->add_option("--n", sweep_args.n, "order N (fixed)");
    sweep_cmd->add_option("--alpha", sweep_args.alpha, "alpha (fixed)");
    sweep_cmd->add_option("--beta", sweep_args.beta, "beta (fixed, order sweeps)");
    sweep_cmd->add_option("--vary", sweep_args.vary, "beta|order-sum|order")->required();
    sweep_cmd->add_option("--from", sweep_args.from, "axis start")->required();
    sweep_cmd->add_option("--to", sweep_args.to, "axis end")->required();
    sweep_cmd->add_option("--step", sweep_args.step, "axis step")->required();
    sweep_cmd->add_option("--diff", sweep_args.diff, "fixed M - N for order-sum sweeps");
    sweep_cmd->add_option("--method", sweep_args.method, "auto|closed|series|quadrature");
    sweep_cmd->add_option("--tol", sweep_args.tol, "evaluation tolerance");
    sweep_cmd->add_flag("--with-bounds", sweep_args.with_bounds, "emit lower,upper columns");
    sweep_cmd->add_flag("--with-method", sweep_args.with_method,
                        "emit method,est_error columns");
    sweep_cmd->add_option("--out", sweep_args.out, "output path (default: stdout)");

    std::string grid = "coarse";
    std::string frontier_out = "conditioning_frontier.csv";
    CLI::App* selfcheck_cmd = app.add_subcommand("selfcheck", "run the invariant suites");
    selfcheck_cmd->add_option("--grid", grid, "coarse|fine");
    selfcheck_cmd->add_option("--out", frontier_out,
                              "conditioning-frontier CSV path (fine grid)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eval_cmd) return run_eval(eval_args);
        if (*bounds_cmd) return run_bounds(bounds_args);
        if (*sweep_cmd) return run_sweep(sweep_args);
        if (*selfcheck_cmd) return run_selfcheck(grid, frontier_out);
    } catch (const nutq::domain_error& e) {
        std::cerr << "domain error: " << e.what() << "\n";
        return 2;
    } catch (const nutq::convergence_error& e) {
        std::cerr << "convergence error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
