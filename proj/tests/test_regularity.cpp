#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "charloc/regularity.hpp"
#include "charloc/selftest.hpp"
#include "charloc/sl2.hpp"

using namespace charloc;

namespace {

const Weight kBeta = sl2::alpha_root(); // 2 alpha, <alpha,alpha> = 1

// rank-1 instance of the spec example: Delta(u') = {2a}, lambda0 = rho(u') = a
RegularityInstance single_instance(std::int64_t m) {
    return RegularityInstance::with_default_anchor(selftest::datum_a1(), {kBeta},
                                                   Weight({2 * m}));
}

// doubled u'-multiset: Delta(u') = {2a, 2a}, lambda0 = rho(u') = 2a
RegularityInstance doubled_instance(std::int64_t m) {
    return RegularityInstance::with_default_anchor(selftest::datum_a1(), {kBeta, kBeta},
                                                   Weight({2 * m}));
}

// hand oracle for the single instance: thresholds 2(n+2) for n in {0,1},
// left sides |2m| and |2(m+2)| over the Weyl orbit
bool single_oracle(std::int64_t m) {
    for (std::int64_t lhs : {2 * std::llabs(m), 2 * std::llabs(m + 2)})
        for (std::int64_t n : {0, 1})
            if (lhs < 2 * (n + 2)) return false;
    return true;
}

} // namespace

TEST_CASE("condition (S) on the rank-1 spec instance") {
    CHECK(single_instance(3).ambient.rank == 1);
    CHECK(single_instance(3).lambda0 == Weight({2})); // rho(u') = alpha

    auto r3 = check_condition_S(single_instance(3));
    CHECK(r3.holds);

    auto r0 = check_condition_S(single_instance(0));
    CHECK(!r0.holds);
    REQUIRE(r0.witness.has_value());
    // the first violator sits at the identity Weyl element
    CHECK(r0.witness->weyl_index == 0);
    CHECK(r0.witness->beta1 == kBeta);

    for (std::int64_t m = -20; m <= 20; ++m)
        CHECK(check_condition_S(single_instance(m)).holds == single_oracle(m));
}

TEST_CASE("condition (S) is vacuous without roots") {
    InnerProduct inner;
    inner.rank = 1;
    inner.gram = {Rat(1)};
    RegularityInstance inst =
        RegularityInstance::with_default_anchor(make_root_datum(1, inner, {}), {}, Weight({0}));
    CHECK(check_condition_S(inst).holds);
}

TEST_CASE("monotonicity away from the anchor") {
    // once the condition holds it keeps holding as the orbit distances grow
    auto lhs_min = [](const RegularityInstance& inst) {
        Weight shifted = inst.lambda + inst.rho_uprime();
        Rat best;
        bool first = true;
        for (const auto& w : inst.ambient.weyl_group) {
            Rat v = rat_abs(pair_weights(apply_weyl(w, shifted) - inst.lambda0, kBeta,
                                         inst.ambient.inner));
            if (first || v < best) best = v;
            first = false;
        }
        return best;
    };
    for (std::int64_t m = -15; m <= 15; ++m)
        for (std::int64_t mp = -15; mp <= 15; ++mp) {
            RegularityInstance a = single_instance(m), b = single_instance(mp);
            if (check_condition_S(a).holds && lhs_min(b) >= lhs_min(a))
                CHECK(check_condition_S(b).holds);
        }
}

TEST_CASE("window consistency: (S) matches the kernel windows exactly") {
    // the doubled instance admits exponents n <= 2, matching windows n <= 3
    const InnerProduct& inner = selftest::datum_a1().inner;
    for (std::int64_t m = -20; m <= 20; ++m) {
        RegularityInstance inst = doubled_instance(m);
        bool cond = check_condition_S(inst).holds;
        bool outside = true;
        Weight shifted = inst.lambda + inst.rho_uprime();
        for (unsigned n = 1; n <= 3; ++n) {
            KernelSpec spec{{kBeta}, {n}};
            for (const auto& w : inst.ambient.weyl_group)
                if (window_contains(spec, inner, inst.lambda0,
                                    apply_weyl(w, shifted).x2))
                    outside = false;
        }
        CHECK(cond == outside);
    }
}

TEST_CASE("the i=1 duplication flag") {
    // excluding the distinguished root weakens the threshold to 1/2<b,b>
    RegularityInstance inst = single_instance(1);
    CHECK(!check_condition_S(inst).holds);
    CHECK(check_condition_S(inst, /*include_beta1_in_sum=*/false).holds);
}

TEST_CASE("condition (S')") {
    // b = 0 forces all exponents to zero
    RegularityInstance far = single_instance(6);
    far.b = 0;
    CHECK(check_condition_Sprime(far).holds);

    // b = 1: threshold 6 with the orbit {|2m-2|, |2m+2|} around lambda0 = a
    for (std::int64_t m = -20; m <= 20; ++m) {
        RegularityInstance inst = single_instance(m);
        inst.b = 1;
        bool expect = true;
        for (std::int64_t lhs : {std::llabs(2 * m - 2), std::llabs(2 * m + 2)})
            if (lhs < 6) expect = false;
        CHECK(check_condition_Sprime(inst).holds == expect);
    }

    // lambda = lambda0: the identity element gives left side 0
    RegularityInstance at_anchor = single_instance(0);
    at_anchor.lambda = at_anchor.lambda0;
    at_anchor.b = 1;
    auto r = check_condition_Sprime(at_anchor);
    CHECK(!r.holds);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->weyl_index == 0);
}

TEST_CASE("multiplicity bounds") {
    RegularityInstance inst = single_instance(0);
    inst.b = 0;
    inst.cX = 1;
    inst.dX = 0;

    // blattner profile of D3: all multiplicities 1
    std::map<Weight, Int> profile;
    for (std::int64_t m = 3; m <= 21; m += 2) profile[sl2::so2_type(m)] = 1;
    CHECK(check_multiplicity_bound(profile, inst));

    profile[sl2::so2_type(5)] = 5;
    CHECK(!check_multiplicity_bound(profile, inst));

    CHECK(check_multiplicity_bound({}, inst));

    // a linear bound with b = 1 admits linearly growing entries
    RegularityInstance lin = single_instance(0);
    lin.b = 1;
    lin.cX = 1;
    lin.dX = 2;
    std::map<Weight, Int> growing;
    for (std::int64_t m = 1; m <= 10; m += 2)
        growing[sl2::so2_type(m)] = 2 * m; // <m a + a, 2a> = 2(m+1) >= 2m
    CHECK(check_multiplicity_bound(growing, lin));
}

TEST_CASE("enumeration cap") {
    // an instance with many distinct roots trips the guard at a tiny cap
    RegularityInstance inst = doubled_instance(0);
    CHECK_THROWS_AS(check_condition_S(inst, true, 0), std::length_error);
}

TEST_CASE("JSON config loader") {
    std::string text = R"({
        "datum": {"rank": 1, "gram": [[1]], "u_roots": [[2]]},
        "uprime_roots": [[2], [2]],
        "lambda": [8],
        "b": 1,
        "cX": 2,
        "dX": 1
    })";
    RegularityInstance inst = regularity_instance_from_json(text);
    CHECK(inst.ambient.rank == 1);
    CHECK(inst.uprime_roots.size() == 2);
    CHECK(inst.lambda == Weight({8}));
    CHECK(inst.lambda0 == Weight({4})); // default anchor rho(u') = 2 alpha
    CHECK(inst.b == 1);
    CHECK(inst.cX == 2);
}
