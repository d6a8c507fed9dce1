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
#include <string>

#include "nutq/bounds.hpp"
#include "nutq/quadrature.hpp"
#include "nutq/series.hpp"

using namespace nutq;

TEST_CASE("marcum_bounds", "[bounds]") {
    SECTION("degenerate at a half-odd order") {
        const BoundInterval iv = marcum_bounds(2.5, EvalPoint(1.5, 2.0));
        CHECK(iv.degenerate);
        CHECK(iv.lower == iv.upper);
        CHECK(iv.lower == marcum_half_odd(HalfOdd(2.5), EvalPoint(1.5, 2.0)));
    }
    SECTION("M = 2.7 bracketed by the 2.5 and 3.5 orders") {
        for (double b = 0.5; b <= 7.0; b += 0.5) {
            const EvalPoint p(2.5, b);
            const BoundInterval iv = marcum_bounds(2.7, p);
            CHECK(iv.lower == marcum_half_odd(HalfOdd(2.5), p));
            CHECK(iv.upper == marcum_half_odd(HalfOdd(3.5), p));
            const double mid = marcum_series(OrderSpec(2.7), p).value;
            CHECK(iv.lower < mid);
            CHECK(mid < iv.upper);
        }
    }
    SECTION("integer order sits strictly inside its interval") {
        const EvalPoint p(3.5, 4.0);
        const BoundInterval iv = marcum_bounds(4.0, p);
        const double mid = marcum_series(OrderSpec(4.0), p).value;
        CHECK(iv.lower < mid);
        CHECK(mid < iv.upper);
        CHECK_FALSE(iv.degenerate);
    }
    SECTION("alpha = 0 goes through the exact route") {
        const BoundInterval iv = marcum_bounds(1.7, EvalPoint(0.0, 2.0));
        CHECK(iv.lower == marcum_zero_alpha(1.5, 2.0));
        CHECK(iv.upper == marcum_zero_alpha(2.5, 2.0));
        const double mid = marcum_series(OrderSpec(1.7), EvalPoint(0.0, 2.0)).value;
        CHECK((iv.lower < mid && mid < iv.upper));
    }
    CHECK_THROWS_AS(marcum_bounds(0.5, EvalPoint(1.0, 1.0)), domain_error);
    CHECK_THROWS_AS(marcum_bounds(0.3, EvalPoint(1.0, 1.0)), domain_error);
    CHECK_THROWS_AS(marcum_bounds(2.0, EvalPoint(1.0, 0.0)), domain_error);
}

TEST_CASE("norm_nuttall_bounds", "[bounds]") {
    SECTION("degenerate at half-odd orders") {
        const BoundInterval iv = norm_nuttall_bounds(4.5, 2.5, EvalPoint(2.0, 1.0));
        CHECK(iv.degenerate);
        CHECK(iv.lower == norm_nuttall_half_odd(HalfOddPair(4.5, 2.5), EvalPoint(2.0, 1.0)));
    }
    SECTION("integer orders bracketed by the neighbouring half-odd pairs") {
        for (double a : {0.5, 4.0, 6.5}) {
            for (double b : {1.0, 3.0, 6.0}) {
                const EvalPoint p(a, b);
                const BoundInterval iv = norm_nuttall_bounds(5.0, 3.0, p);
                CHECK(iv.lower == norm_nuttall_half_odd(HalfOddPair(4.5, 2.5), p));
                CHECK(iv.upper == norm_nuttall_half_odd(HalfOddPair(5.5, 3.5), p));
                const double mid = norm_nuttall_series(OrderSpec(5.0, 3.0), p).value;
                CHECK(iv.lower < mid);
                CHECK(mid < iv.upper);
            }
        }
    }
    SECTION("fractional orders") {
        const EvalPoint p(3.5, 4.0);
        const BoundInterval iv = norm_nuttall_bounds(4.7, 2.7, p);
        const double mid = norm_nuttall_series(OrderSpec(4.7, 2.7), p).value;
        CHECK(iv.lower < mid);
        CHECK(mid < iv.upper);
    }
    SECTION("floor reaching N = 0.5 is admissible") {
        const BoundInterval iv = norm_nuttall_bounds(2.2, 1.2, EvalPoint(1.0, 1.0));
        CHECK(iv.lower == norm_nuttall_half_odd(HalfOddPair(1.5, 0.5), EvalPoint(1.0, 1.0)));
    }
    SECTION("named domain errors") {
        CHECK_THROWS_WITH(norm_nuttall_bounds(2.0, 0.4, EvalPoint(1.0, 1.0)),
                          Catch::Matchers::ContainsSubstring("order floor"));
        CHECK_THROWS_WITH(norm_nuttall_bounds(3.0, 2.5, EvalPoint(1.0, 1.0)),
                          Catch::Matchers::ContainsSubstring("spacing"));
        CHECK_THROWS_WITH(norm_nuttall_bounds(4.7, 2.5, EvalPoint(1.0, 1.0)),
                          Catch::Matchers::ContainsSubstring("fractional mismatch"));
        CHECK_THROWS_WITH(norm_nuttall_bounds(4.0, 3.0, EvalPoint(1.0, 0.0)),
                          Catch::Matchers::ContainsSubstring("nonpositive argument"));
    }
}

TEST_CASE("std_nuttall_bounds", "[bounds]") {
    SECTION("degenerate") {
        const BoundInterval iv = std_nuttall_bounds(5.5, 3.5, EvalPoint(2.0, 1.0));
        CHECK(iv.degenerate);
    }
    SECTION("containment of the quadrature value") {
        const EvalPoint p(2.0, 2.0);
        const BoundInterval iv = std_nuttall_bounds(5.0, 3.0, p);
        const double mid = nuttall_quadrature(OrderSpec(5.0, 3.0), p);
        CHECK(iv.lower < mid);
        CHECK(mid < iv.upper);
    }
    SECTION("alpha gate") {
        CHECK_THROWS_WITH(std_nuttall_bounds(5.0, 3.0, EvalPoint(0.9, 2.0)),
                          Catch::Matchers::ContainsSubstring("alpha below 1"));
        CHECK_NOTHROW(std_nuttall_bounds(5.0, 3.0, EvalPoint(1.0, 2.0)));
    }
}

TEST_CASE("bound tightness asymmetry by fractional part", "[bounds]") {
    // delta < 0.5 favours the upper bound, delta > 0.5 the lower one;
    // checked as a majority property over a small grid.
    int upper_tighter = 0, total = 0;
    for (double b = 1.0; b <= 6.0; b += 1.0) {
        const EvalPoint p(2.5, b);
        const BoundInterval iv = marcum_bounds(3.2, p);  // delta = 0.2
        const double mid = marcum_series(OrderSpec(3.2), p).value;
        upper_tighter += (iv.upper - mid) < (mid - iv.lower);
        ++total;
    }
    CHECK(upper_tighter >= (9 * total) / 10);

    int lower_tighter = 0;
    total = 0;
    for (double b = 1.0; b <= 6.0; b += 1.0) {
        const EvalPoint p(2.5, b);
        const BoundInterval iv = marcum_bounds(3.8, p);  // delta = 0.8
        const double mid = marcum_series(OrderSpec(3.8), p).value;
        lower_tighter += (mid - iv.lower) < (iv.upper - mid);
        ++total;
    }
    CHECK(lower_tighter >= (9 * total) / 10);
}
