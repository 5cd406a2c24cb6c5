#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <set>

#include "charloc/selftest.hpp"
#include "charloc/sl2.hpp"

using namespace charloc;
using namespace charloc::sl2;

namespace {

LaurentPoly x_pow(std::int64_t m, Int c = 1) {
    return LaurentPoly::monomial(Weight({2 * m}), c);
}

// independent Clebsch-Gordan oracle on exponent maps
std::map<std::int64_t, long> cg_oracle(std::int64_t k, std::int64_t kp) {
    std::map<std::int64_t, long> out;
    for (std::int64_t j = std::llabs(k - kp); j <= k + kp; j += 2) out[j] = 1;
    return out;
}

} // namespace

TEST_CASE("module validation and parsing") {
    CHECK_THROWS_AS(sl2::discrete_plus(0), std::invalid_argument);
    CHECK_THROWS_AS(sl2::finite(-1), std::invalid_argument);
    CHECK(parse_module("F:2").kind == Kind::Finite);
    CHECK(parse_module("D+:5").k == 5);
    CHECK(parse_module("D-:3").kind == Kind::DiscreteMinus);
    CHECK_THROWS_AS(parse_module("G:1"), std::invalid_argument);
}

TEST_CASE("characters") {
    // D+:3 is literally X^3 / (1 - X^2)
    RationalChar d3 = sl2_character(sl2::discrete_plus(3));
    CHECK(d3.num() == x_pow(3));
    REQUIRE(d3.den_alphas().size() == 1);
    CHECK(den_factor(d3.den_alphas()[0]) == LaurentPoly::unit(1) - x_pow(2));

    // F:0 is the unit
    CHECK(rc_eq(sl2_character(sl2::finite(0)), RationalChar::unit(1)));

    // D-:1 equals the dual of D+:1
    CHECK(rc_eq(sl2_character(sl2::discrete_minus(1)), rc_dual(sl2_character(sl2::discrete_plus(1)))));
    // and its series is the mirrored comb
    TruncatedSeries s = module_series(sl2::discrete_minus(1), 15);
    for (std::int64_t m = -15; m <= 15; ++m)
        CHECK(s.at({2 * m}) == ((m <= -1 && (-m - 1) % 2 == 0) ? 1 : 0));
}

TEST_CASE("finite tensor against the Clebsch-Gordan oracle") {
    for (std::int64_t k = 0; k <= 20; ++k)
        for (std::int64_t kp = 0; kp <= 20; ++kp) {
            auto dec = tensor_decompose(sl2::finite(k), sl2::finite(kp));
            REQUIRE(!dec.not_discretely_decomposable);
            CHECK(dec.complete);
            auto oracle = cg_oracle(k, kp);
            CHECK(dec.parts.size() == oracle.size());
            for (const auto& [mod, mult] : dec.parts) {
                CHECK(mod.kind == Kind::Finite);
                CHECK(mult == 1);
                CHECK(oracle.count(mod.k) == 1);
            }
        }
    // F1 (x) F1 = F2 + F0
    auto dec = tensor_decompose(sl2::finite(1), sl2::finite(1));
    REQUIRE(dec.parts.size() == 2);
    CHECK(dec.parts[0].first.k == 2);
    CHECK(dec.parts[1].first.k == 0);
}

TEST_CASE("discrete x finite tensor") {
    // D5 (x) F2 = D7 + D5 + D3
    auto dec = tensor_decompose(sl2::discrete_plus(5), sl2::finite(2));
    REQUIRE(!dec.not_discretely_decomposable);
    CHECK(dec.complete);
    REQUIRE(dec.parts.size() == 3);
    CHECK(dec.parts[0].first.k == 7);
    CHECK(dec.parts[1].first.k == 5);
    CHECK(dec.parts[2].first.k == 3);
    for (const auto& [mod, mult] : dec.parts) {
        CHECK(mod.kind == Kind::DiscretePlus);
        CHECK(mult == 1);
    }

    // the sweep of the acceptance range, with the rc_eq validation
    for (std::int64_t k = 1; k <= 10; ++k)
        for (std::int64_t kp = 0; kp <= 5; ++kp) {
            if (k < kp + 3) continue;
            auto d = tensor_decompose(sl2::discrete_plus(k), sl2::finite(kp));
            REQUIRE(!d.not_discretely_decomposable);
            CHECK(d.complete);
            CHECK(d.parts.size() == static_cast<std::size_t>(kp + 1));
            std::set<std::int64_t> ks;
            for (const auto& [mod, mult] : d.parts) {
                CHECK(mult == 1);
                ks.insert(mod.k);
            }
            std::set<std::int64_t> expect;
            for (std::int64_t j = k - kp; j <= k + kp; j += 2) expect.insert(j);
            CHECK(ks == expect);
            RationalChar sum(LaurentPoly(1));
            for (const auto& [mod, mult] : d.parts)
                sum = rc_add(sum, sl2_character(mod).scaled(mult));
            CHECK(rc_eq(sum, rc_mul(sl2_character(sl2::discrete_plus(k)), sl2_character(sl2::finite(kp)))));
        }

    // mirrored side
    auto dm = tensor_decompose(sl2::discrete_minus(5), sl2::finite(2));
    REQUIRE(dm.parts.size() == 3);
    for (const auto& [mod, mult] : dm.parts) CHECK(mod.kind == Kind::DiscreteMinus);
}

TEST_CASE("discrete x discrete stays discrete") {
    for (std::int64_t k = 1; k <= 6; ++k)
        for (std::int64_t kp = 1; kp <= 6; ++kp) {
            auto dec = tensor_decompose(sl2::discrete_plus(k), sl2::discrete_plus(kp));
            REQUIRE(!dec.not_discretely_decomposable);
            CHECK(!dec.complete); // infinitely many constituents, box truncated
            REQUIRE(!dec.parts.empty());
            for (const auto& [mod, mult] : dec.parts) {
                CHECK(mod.kind == Kind::DiscretePlus);
                CHECK(mult == 1);
                CHECK((mod.k - (k + kp)) % 2 == 0);
                CHECK(mod.k >= k + kp);
            }
        }
}

TEST_CASE("opposite discrete series are not discretely decomposable") {
    for (std::int64_t k = 1; k <= 6; ++k)
        for (std::int64_t kp = 1; kp <= 6; ++kp) {
            CHECK(tensor_decompose(sl2::discrete_plus(k), sl2::discrete_minus(kp))
                      .not_discretely_decomposable);
            CHECK(tensor_decompose(sl2::discrete_minus(k), sl2::discrete_plus(kp))
                      .not_discretely_decomposable);
        }
    CHECK(tensor_decompose(sl2::discrete_plus(3), sl2::discrete_minus(2)).not_discretely_decomposable);
}

TEST_CASE("blattner") {
    TruncatedSeries b3 = blattner(3, 41);
    for (std::int64_t m = -41; m <= 41; ++m)
        CHECK(b3.at({2 * m}) == ((m >= 3 && (m - 3) % 2 == 0) ? 1 : 0));
    CHECK(b3.at({2 * 1}) == 0); // below the lowest type

    TruncatedSeries b1 = blattner(1, 41);
    for (std::int64_t m = 1; m <= 41; m += 2) CHECK(b1.at({2 * m}) == 1);

    for (std::int64_t k = 1; k <= 10; ++k) {
        TruncatedSeries b = blattner(k, 101);
        for (std::int64_t m = -101; m <= 101; ++m) {
            std::int64_t expect = (m >= k && (m - k) % 2 == 0) ? 1 : 0;
            CHECK(b.at({2 * m}) == expect);
        }
    }
}

TEST_CASE("kernel relation") {
    CHECK(kernel_relation_check(20));
    CHECK(kernel_relation_check(40));
    CHECK_THROWS_AS(kernel_relation_check(2), box_error);

    // replacing the opposite limit by D-3's cone breaks the identity
    RationalChar d1 = sl2_character(sl2::discrete_plus(1));
    RationalChar d3 = sl2_character(sl2::discrete_plus(3));
    Box box = so2_box(20);
    TruncatedSeries z =
        expand_rational(d1, alpha_gen(), datum().inner, box) -
        expand_rational(d3, -alpha_gen(), datum().inner, box);
    TruncatedSeries y = kernel_y(alpha_root(), 1, false, box);
    CHECK(!TruncatedSeries::equal_on_common_valid(z, y));
}

TEST_CASE("multiplicity profiles") {
    auto p1 = multiplicity_profile({{sl2::discrete_plus(3), 1}}, 30);
    CHECK(p1.odd_max == 1);
    CHECK(p1.even_max == 0);

    auto p2 = multiplicity_profile({{sl2::finite(2), 1}}, 30);
    CHECK(p2.even_max == 1);
    CHECK(p2.odd_max == 0);

    auto p3 = multiplicity_profile({{sl2::discrete_plus(2), 2}}, 30);
    CHECK(p3.even_max == 2);
    CHECK(p3.odd_max == 0);

    // the kernel-relation pair has profile 1 on the odds
    auto p4 = multiplicity_profile({{sl2::discrete_plus(1), 1}, {sl2::discrete_minus(1), 1}}, 30);
    CHECK(p4.odd_max == 1);
    CHECK(p4.even_max == 0);
}
