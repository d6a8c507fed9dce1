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
#include <numbers>

#include "nutq/closed_form.hpp"
#include "nutq/quadrature.hpp"
#include "nutq/series.hpp"
#include "oracle_util.hpp"

using namespace nutq;

namespace {
constexpr double kImnk_1_1_0 = -1.7112487837842976;   // I_{1,1}^0(1,0)
constexpr double kImnk_2_1_0 = -2.1750049780717796;   // I_{2,1}^0(1,1)
constexpr double kImnk_3_2_1 = 12.519389656276278;    // I_{3,2}^1(2,0.5)
constexpr double kNuttall05_05_1_1 = 0.47724986805182079;
constexpr double kNuttall45_25_35_4 = 68.986380720502426;
constexpr double kNormNuttall55_35 = 0.85927925967437953;  // alpha=0.5, beta=3.5
constexpr double kMarcum25_25_3 = 0.59582287986367220;
constexpr double kMarcum15_1_1 = 0.86770144583642383;
constexpr double kMarcumZero35_2 = 0.77977740847571592;    // Q_3.5(0,2)
constexpr double kMarcumZero27_3 = 0.13294300059795586;    // Q_2.7(0,3)
constexpr double kErfcInvSqrt2 = 0.31731050786291410;
}  // namespace

TEST_CASE("i_mnk_term frozen values", "[closed_form]") {
    CHECK_THAT(i_mnk_term(HalfOddPair(0.5, 0.5), 0, EvalPoint(1.0, 0.0)),
               Catch::Matchers::WithinRel(kImnk_1_1_0, 1e-13));
    CHECK_THAT(i_mnk_term(HalfOddPair(1.5, 0.5), 0, EvalPoint(1.0, 1.0)),
               Catch::Matchers::WithinRel(kImnk_2_1_0, 1e-13));
    CHECK_THAT(i_mnk_term(HalfOddPair(2.5, 1.5), 1, EvalPoint(2.0, 0.5)),
               Catch::Matchers::WithinRel(kImnk_3_2_1, 1e-13));
    CHECK_THROWS_AS(i_mnk_term(HalfOddPair(2.5, 1.5), 2, EvalPoint(1.0, 1.0)), domain_error);
}

TEST_CASE("gamma contributions vanish identically at beta = alpha", "[closed_form]") {
    for (double a : {0.5, 1.0, 3.0}) {
        const EvalPoint p(a, a);
        for (auto [m, n] : {std::pair{2.5, 1.5}, {4.5, 2.5}, {3.5, 3.5}}) {
            const HalfOddPair pair(m, n);
            const CondValue full =
                detail::nuttall_half_odd_impl(pair, p, detail::Mutation::none, false);
            const CondValue nogamma =
                detail::nuttall_half_odd_impl(pair, p, detail::Mutation::drop_gamma, false);
            CHECK(full.value == nogamma.value);  // bit-for-bit
        }
    }
}

TEST_CASE("nuttall_half_odd values", "[closed_form]") {
    SECTION("beta = 0 Marcum normalization") {
        CHECK_THAT(nuttall_half_odd(HalfOddPair(2.5, 1.5), EvalPoint(2.0, 0.0)),
                   Catch::Matchers::WithinRel(std::pow(2.0, 1.5), 1e-11));
    }
    SECTION("M = N = 0.5 against the Simpson oracle") {
        const double oracle = testoracle::nuttall_ref(0.5, 0.5, 1.0, 1.0, 1e-12);
        CHECK_THAT(oracle, Catch::Matchers::WithinRel(kNuttall05_05_1_1, 1e-10));
        CHECK_THAT(nuttall_half_odd(HalfOddPair(0.5, 0.5), EvalPoint(1.0, 1.0)),
                   Catch::Matchers::WithinRel(kNuttall05_05_1_1, 1e-12));
    }
    SECTION("larger orders against the series") {
        const double series =
            norm_nuttall_series(OrderSpec(4.5, 2.5), EvalPoint(3.5, 4.0)).value *
            std::pow(3.5, 2.5);
        CHECK_THAT(series, Catch::Matchers::WithinRel(kNuttall45_25_35_4, 1e-11));
        CHECK_THAT(nuttall_half_odd(HalfOddPair(4.5, 2.5), EvalPoint(3.5, 4.0)),
                   Catch::Matchers::WithinRel(kNuttall45_25_35_4, 1e-11));
    }
    CHECK_THROWS_AS(nuttall_half_odd(HalfOddPair(2.5, 1.5), EvalPoint(0.0, 1.0)), domain_error);
    CHECK_THROWS_AS(HalfOddPair(1.5, 2.5), domain_error);
    CHECK_THROWS_AS(HalfOddPair(2.0, 1.0), domain_error);
}

TEST_CASE("norm_nuttall_half_odd and the division identity", "[closed_form]") {
    CHECK_THAT(norm_nuttall_half_odd(HalfOddPair(2.5, 1.5), EvalPoint(2.0, 0.0)),
               Catch::Matchers::WithinRel(1.0, 1e-12));
    CHECK_THAT(norm_nuttall_half_odd(HalfOddPair(5.5, 3.5), EvalPoint(0.5, 3.5)),
               Catch::Matchers::WithinRel(kNormNuttall55_35, 1e-10));
    for (auto [m, n] : {std::pair{1.5, 0.5}, {3.5, 1.5}, {6.5, 4.5}}) {
        for (double a : {0.5, 2.0, 5.0}) {
            for (double b : {0.0, 1.0, 3.0}) {
                const HalfOddPair pair(m, n);
                const EvalPoint p(a, b);
                const double via_std = nuttall_half_odd(pair, p) / std::pow(a, n);
                const double direct = norm_nuttall_half_odd(pair, p);
                CHECK_THAT(direct, Catch::Matchers::WithinRel(via_std, 1e-13));
            }
        }
    }
}

TEST_CASE("bessel_i_half_odd against the power series", "[closed_form]") {
    const double sinh_form = std::sqrt(2.0 / std::numbers::pi) * std::sinh(1.0);
    CHECK_THAT(bessel_i_half_odd(1, 1.0), Catch::Matchers::WithinRel(sinh_form, 1e-14));
    CHECK_THAT(bessel_i_half_odd(3, 2.0),
               Catch::Matchers::WithinRel(bessel_i(2.5, 2.0), 1e-12));
    // The finite sum cancels catastrophically for large n at small z, so the
    // match is asserted where its conditioning (largest term over the summed
    // magnitude) is sane.  The probe below mirrors the sum with lgamma-based
    // coefficients, independent of the implementation.
    for (long long n = 1; n <= 12; ++n) {
        for (double z : {0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) {
            const double ref = bessel_i(static_cast<double>(n) - 0.5, z);
            double max_term = 0.0;
            for (long long k = 0; k < n; ++k) {
                const double poch = std::exp(std::lgamma(static_cast<double>(2 * n - k - 1)) -
                                             std::lgamma(static_cast<double>(n - k)));
                const double coef = poch * std::pow(2.0 * z, static_cast<double>(k)) /
                                    std::exp(std::lgamma(static_cast<double>(k + 1)));
                const double bracket = k % 2 == 0 ? std::abs(std::expm1(2.0 * z))
                                                  : 2.0 + std::expm1(2.0 * z);
                max_term = std::max(max_term, coef * bracket);
            }
            const double sum_scale = std::abs(ref) * std::sqrt(std::numbers::pi) *
                                     std::exp(z) * std::pow(2.0 * z, n - 0.5);
            if (max_term / sum_scale < 1e3)
                CHECK_THAT(bessel_i_half_odd(n, z), Catch::Matchers::WithinRel(ref, 1e-12));
        }
    }
    CHECK(bessel_i_half_odd(2, 0.0) == 0.0);
    CHECK_THROWS_AS(bessel_i_half_odd(0, 1.0), domain_error);
    CHECK_THROWS_AS(bessel_i_half_odd(1, 350.0), domain_error);
}

TEST_CASE("marcum_half_odd base cases", "[closed_form]") {
    SECTION("M = 0.5 is the Gaussian Q pair") {
        for (double a : {0.5, 1.0, 2.5}) {
            for (double b : {0.0, 0.7, 3.0}) {
                const double expect = gaussian_q(b + a) + gaussian_q(b - a);
                CHECK_THAT(marcum_half_odd(HalfOdd(0.5), EvalPoint(a, b)),
                           Catch::Matchers::WithinRel(expect, 1e-14));
            }
        }
        CHECK_THAT(marcum_half_odd(HalfOdd(0.5), EvalPoint(1.0, 1.0)),
                   Catch::Matchers::WithinRel(gaussian_q(2.0) + gaussian_q(0.0), 1e-14));
    }
    SECTION("alpha = 0 dispatches to the exact form") {
        CHECK_THAT(marcum_half_odd(HalfOdd(0.5), EvalPoint(0.0, 1.0)),
                   Catch::Matchers::WithinRel(kErfcInvSqrt2, 1e-13));
    }
    SECTION("value against the series") {
        CHECK_THAT(marcum_half_odd(HalfOdd(2.5), EvalPoint(2.5, 3.0)),
                   Catch::Matchers::WithinRel(kMarcum25_25_3, 1e-12));
        const double series = marcum_series(OrderSpec(2.5), EvalPoint(2.5, 3.0)).value;
        CHECK_THAT(series, Catch::Matchers::WithinRel(kMarcum25_25_3, 1e-11));
    }
}

TEST_CASE("li_kam_marcum_half_odd matches the compact form", "[closed_form]") {
    SECTION("empty sum at M = 0.5") {
        CHECK_THAT(li_kam_marcum_half_odd(HalfOdd(0.5), EvalPoint(1.3, 2.1)),
                   Catch::Matchers::WithinRel(marcum_half_odd(HalfOdd(0.5), EvalPoint(1.3, 2.1)),
                                              1e-15));
    }
    SECTION("frozen values") {
        CHECK_THAT(li_kam_marcum_half_odd(HalfOdd(1.5), EvalPoint(1.0, 1.0)),
                   Catch::Matchers::WithinRel(kMarcum15_1_1, 1e-12));
        CHECK_THAT(li_kam_marcum_half_odd(HalfOdd(3.5), EvalPoint(0.0, 2.0)),
                   Catch::Matchers::WithinRel(kMarcumZero35_2, 1e-12));
        CHECK(li_kam_marcum_half_odd(HalfOdd(3.5), EvalPoint(0.0, 2.0)) ==
              Catch::Approx(marcum_zero_alpha(3.5, 2.0)).epsilon(1e-13));
    }
    SECTION("dual-route agreement at the worst-conditioned corner") {
        for (double b : {0.5, 1.0, 2.0}) {
            const EvalPoint p(0.5, b);
            const double lhs = marcum_half_odd(HalfOdd(11.5), p);
            const double rhs = li_kam_marcum_half_odd(HalfOdd(11.5), p);
            CHECK_THAT(lhs, Catch::Matchers::WithinRel(rhs, 1e-12));
        }
    }
}

TEST_CASE("marcum_zero_alpha", "[closed_form]") {
    CHECK(marcum_zero_alpha(1.7, 0.0) == 1.0);
    CHECK_THAT(marcum_zero_alpha(1.0, 2.0), Catch::Matchers::WithinRel(std::exp(-2.0), 1e-13));
    CHECK_THAT(marcum_zero_alpha(2.7, 3.0), Catch::Matchers::WithinRel(kMarcumZero27_3, 1e-13));
    CHECK_THAT(testoracle::marcum_ref(2.7, 0.0, 3.0),
               Catch::Matchers::WithinRel(kMarcumZero27_3, 1e-10));
}

TEST_CASE("continuity of the Marcum closed form at alpha -> 0", "[closed_form]") {
    for (double m : {0.5, 1.5, 3.5}) {
        for (double b : {0.5, 1.0, 2.0}) {
            const double near = marcum_half_odd(HalfOdd(m), EvalPoint(1e-6, b));
            const double zero = marcum_zero_alpha(m, b);
            CHECK(std::abs(near - zero) <= 1e-5);
        }
    }
}

TEST_CASE("Marcum closed-form values stay in [0,1]", "[closed_form]") {
    for (double m : {0.5, 2.5, 5.5, 11.5}) {
        for (double a : {0.5, 2.0, 6.5}) {
            for (double b : {0.0, 0.1, 1.0, 4.0, 8.0}) {
                const double v = marcum_half_odd(HalfOdd(m), EvalPoint(a, b));
                CHECK(v >= 0.0);
                CHECK(v <= 1.0);
                const double w = li_kam_marcum_half_odd(HalfOdd(m), EvalPoint(a, b));
                CHECK(w >= 0.0);
                CHECK(w <= 1.0);
            }
        }
    }
}

TEST_CASE("conditioning diagnostic flags deep-tail cancellation", "[closed_form]") {
    // far tail: the bracketed gammas cancel against Gamma((l+1)/2)
    const CondValue bad = nuttall_half_odd_ex(HalfOddPair(5.5, 3.5), EvalPoint(0.5, 8.0));
    CHECK(bad.degraded());
    const CondValue good = nuttall_half_odd_ex(HalfOddPair(5.5, 3.5), EvalPoint(2.0, 2.0));
    CHECK_FALSE(good.degraded());
}
