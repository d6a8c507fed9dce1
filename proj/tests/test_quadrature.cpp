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

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "nutq/quadrature.hpp"
#include "nutq/series.hpp"
#include "oracle_util.hpp"

using namespace nutq;

namespace {
constexpr double kNuttall5_3_4_6 = 40.799957287324609;      // Q_{5,3}(4,6)
constexpr double kMarcumZero27_3 = 0.13294300059795586;     // Q_2.7(0,3)
}  // namespace

TEST_CASE("nuttall_quadrature reproduces Marcum normalization at beta = 0", "[quadrature]") {
    // Q_{M,M-1}(a,0) = a^{M-1}
    CHECK_THAT(nuttall_quadrature(OrderSpec(1.0, 0.0), EvalPoint(1.0, 0.0)),
               Catch::Matchers::WithinRel(1.0, 1e-11));
    CHECK_THAT(nuttall_quadrature(OrderSpec(2.5, 1.5), EvalPoint(2.0, 0.0)),
               Catch::Matchers::WithinRel(std::pow(2.0, 1.5), 1e-11));
}

TEST_CASE("nuttall_quadrature against the independent Simpson oracle", "[quadrature]") {
    const double got = nuttall_quadrature(OrderSpec(5.0, 3.0), EvalPoint(4.0, 6.0));
    const double oracle = testoracle::nuttall_ref(5.0, 3.0, 4.0, 6.0, 1e-12);
    CHECK_THAT(oracle, Catch::Matchers::WithinRel(kNuttall5_3_4_6, 1e-10));
    CHECK_THAT(got, Catch::Matchers::WithinRel(kNuttall5_3_4_6, 1e-11));
}

TEST_CASE("quadrature and series routes agree within certified errors", "[quadrature]") {
    const double pairs[][2] = {{1.5, 0.5}, {2.0, 1.0}, {2.7, 1.7}, {5.0, 3.0}, {4.5, 2.5}};
    for (const auto& mn : pairs) {
        for (double a : {0.5, 2.0, 6.5}) {
            for (double b : {0.1, 1.0, 4.0, 8.0}) {
                const OrderSpec order(mn[0], mn[1]);
                const EvalPoint point(a, b);
                const SeriesResult s = norm_nuttall_series(order, point);
                const QuadValue q = nuttall_quadrature_ex(order, point);
                const double qn = q.value / std::pow(a, mn[1]);
                const double slack =
                    s.tail_bound + 10.0 * (q.est_error / std::pow(a, mn[1])) +
                    1e-13 * std::max(1.0, std::abs(qn));
                CHECK(std::abs(s.value - qn) <= slack);
            }
        }
    }
}

TEST_CASE("marcum_quadrature matches the series and the alpha = 0 form", "[quadrature]") {
    CHECK_THAT(marcum_quadrature(2.0, EvalPoint(1.0, 2.0)),
               Catch::Matchers::WithinRel(0.53014690808396572, 1e-11));
    CHECK_THAT(marcum_quadrature(2.7, EvalPoint(0.0, 3.0)),
               Catch::Matchers::WithinRel(kMarcumZero27_3, 1e-11));
    for (double m : {0.7, 1.0, 3.3}) {
        const double s = marcum_series(OrderSpec(m), EvalPoint(1.5, 2.5)).value;
        CHECK_THAT(marcum_quadrature(m, EvalPoint(1.5, 2.5)),
                   Catch::Matchers::WithinRel(s, 1e-10));
    }
}

TEST_CASE("quadrature handles deep-tail and tiny-value points", "[quadrature]") {
    // value ~ 1e-13; the relative tolerance must still hold.  The reference
    // is the relative-stopping Nuttall series (the Marcum series' certified
    // tail is a bound on absolute Poisson mass, far coarser at this scale).
    const double got = marcum_quadrature(1.0, EvalPoint(0.5, 8.0));
    const double ref = norm_nuttall_series(OrderSpec(1.0, 0.0), EvalPoint(0.5, 8.0)).value;
    CHECK_THAT(got, Catch::Matchers::WithinRel(ref, 1e-9));
}

TEST_CASE("quadrature argument validation", "[quadrature]") {
    CHECK_THROWS_AS(nuttall_quadrature(OrderSpec(1.0, 0.0), EvalPoint(0.0, 1.0)), domain_error);
    CHECK_THROWS_AS(nuttall_quadrature(OrderSpec(1.0), EvalPoint(1.0, 1.0)), domain_error);
    CHECK_THROWS_AS(nuttall_quadrature(OrderSpec(1.0, 0.0), EvalPoint(1.0, 1.0), 0.0),
                    domain_error);
    CHECK_THROWS_AS(marcum_quadrature(0.0, EvalPoint(1.0, 1.0)), domain_error);
}
