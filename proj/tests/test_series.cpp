#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "charloc/selftest.hpp"
#include "charloc/series.hpp"
#include "charloc/sl2.hpp"

using namespace charloc;

namespace {

const Weight kAlpha = sl2::alpha_root(); // the rank-1 root 2*alpha_gen
const InnerProduct& inner1() { return sl2::datum().inner; }

LaurentPoly x_pow(std::int64_t m, Int c = 1) {
    return LaurentPoly::monomial(Weight({2 * m}), c);
}

} // namespace

TEST_CASE("geometric series with a unit-norm root") {
    // alpha = alpha_gen itself: ones at every odd doubled coordinate 1..19
    TruncatedSeries s = geometric_s(Weight({2}), Box{{20}});
    for (std::int64_t x = -20; x <= 20; ++x)
        CHECK(s.at({x}) == ((x >= 1 && x % 2 == 1) ? 1 : 0));
    // and the full two-sided comb for the matching kernel element
    TruncatedSeries y = kernel_y(Weight({2}), 1, false, Box{{20}});
    for (std::int64_t x = -20; x <= 20; ++x)
        CHECK(y.at({x}) == ((x % 2 != 0) ? 1 : 0));
    CHECK_THROWS_AS(geometric_s(Weight({0}), Box{{8}}), std::invalid_argument);
}

TEST_CASE("geometric series and annihilation by d-") {
    Box box{{60}};
    TruncatedSeries s = geometric_s(kAlpha, box);
    // ones exactly at doubled coordinates 2, 6, 10, ...
    for (std::int64_t x = -60; x <= 60; ++x) {
        std::int64_t expect = (x >= 2 && (x - 2) % 4 == 0) ? 1 : 0;
        CHECK(s.at({x}) == expect);
    }
    LaurentPoly dm = d_factor(kAlpha, false);
    CHECK(dm == LaurentPoly::monomial(Weight({-2})) - LaurentPoly::monomial(Weight({2})));
    TruncatedSeries prod = mul_poly(s, dm);
    CHECK(TruncatedSeries::equal_on_common_valid(prod,
                                                 series_from_poly(LaurentPoly::unit(1), box)));

    // d- * (w s) = -1: the mirrored comb
    TruncatedSeries ws(1, box);
    for (std::int64_t x = -60; x <= 60; ++x)
        if (x <= -2 && (-x - 2) % 4 == 0) ws.set({x}, 1);
    TruncatedSeries prod2 = mul_poly(ws, dm);
    CHECK(TruncatedSeries::equal_on_common_valid(
        prod2, series_from_poly(LaurentPoly::unit(1).scaled(-1), box)));
}

TEST_CASE("d factors") {
    LaurentPoly dp = d_factor(kAlpha, true);
    LaurentPoly dm = d_factor(kAlpha, false);
    // (a^-1/2 + a^1/2)(a^-1/2 - a^1/2) = a^-1 - a, with a = 2 alpha_gen
    CHECK(dp * dm == x_pow(-2) - x_pow(2));
    // reflection swaps the two terms of d-: t -> -t gives the negative
    CHECK(dm.dual() == -dm);
}

TEST_CASE("kernel elements: combs and binomial growth") {
    Box box{{120}};
    TruncatedSeries y1 = kernel_y(kAlpha, 1, false, box);
    for (std::int64_t x = -120; x <= 120; ++x)
        CHECK(y1.at({x}) == ((x % 4 == 2 || x % 4 == -2) ? 1 : 0));

    // n = 2: linear growth, sign -1 on the mirror side
    TruncatedSeries y2 = kernel_y(kAlpha, 2, false, box);
    for (std::int64_t i = 0; 2 * (2 + 2 * i) <= 120; ++i) {
        CHECK(Int(y2.at({2 * (2 + 2 * i)})) == binomial(1 + i, 1));
        CHECK(Int(y2.at({-2 * (2 + 2 * i)})) == -binomial(1 + i, 1));
    }
    for (unsigned n = 1; n <= 5; ++n) {
        TruncatedSeries yn = kernel_y(kAlpha, n, false, box);
        for (std::int64_t i = 0; 2 * (n + 2 * i) <= 120; ++i) {
            Int expect = binomial(n - 1 + i, n - 1);
            CHECK(Int(yn.at({2 * (static_cast<std::int64_t>(n) + 2 * i)})) == expect);
            Int mirrored = (n % 2 == 0) ? -expect : expect;
            CHECK(Int(yn.at({-2 * (static_cast<std::int64_t>(n) + 2 * i)})) == mirrored);
        }
    }
}

TEST_CASE("kernel ladder and annihilation") {
    Box box{{120}};
    LaurentPoly dm = d_factor(kAlpha, false);
    for (unsigned n = 2; n <= 5; ++n) {
        TruncatedSeries yn = kernel_y(kAlpha, n, false, box);
        TruncatedSeries lower = kernel_y(kAlpha, n - 1, false, box);
        CHECK(TruncatedSeries::equal_on_common_valid(mul_poly(yn, dm), lower));
    }
    for (unsigned n = 1; n <= 4; ++n) {
        KernelSpec spec{{kAlpha}, {n}};
        CHECK(annihilation_check(spec, kernel_y(kAlpha, n, false, box)));
    }
    // s_alpha is not annihilated by d-^2
    KernelSpec spec2{{kAlpha}, {2}};
    CHECK(!annihilation_check(spec2, geometric_s(kAlpha, box)));
    // zero is
    CHECK(annihilation_check(spec2, TruncatedSeries(1, box)));
    // undecidable on a too-small box
    CHECK_THROWS_AS(annihilation_check(KernelSpec{{kAlpha}, {3}}, TruncatedSeries(1, Box{{2}})),
                    box_error);
}

TEST_CASE("plus family") {
    Box box{{80}};
    LaurentPoly dp = d_factor(kAlpha, true);
    for (unsigned n = 1; n <= 5; ++n) {
        TruncatedSeries lhs = mul_poly(kernel_y(kAlpha, n, false, box), dp);
        TruncatedSeries rhs = kernel_y(kAlpha, n, true, box);
        CHECK(TruncatedSeries::equal_on_common_valid(lhs, rhs));
    }
}

TEST_CASE("mixed kernel generators") {
    // r = 1 reduces to kernel_y
    Box box{{60}};
    KernelSpec single{{kAlpha}, {2}};
    CHECK(kernel_y_mixed(single, box).data() == kernel_y(kAlpha, 2, false, box).data());

    // r = 2 orthogonal roots in rank 2
    Weight a1 = weight_from_base_coords({2, 0});
    Weight a2 = weight_from_base_coords({0, 2});
    KernelSpec spec{{a1, a2}, {1, 1}};
    Box box2{{24, 24}};
    TruncatedSeries y = kernel_y_mixed(spec, box2);
    CHECK(annihilation_check(spec, y));
    // d_{a1,-} d_{a2,-} y = 0 on the shrunken box, by direct multiplication
    TruncatedSeries z = mul_poly(mul_poly(y, d_factor(a1, false)), d_factor(a2, false));
    CHECK(z.zero_on_valid());
    CHECK_THROWS_AS(kernel_y_mixed(KernelSpec{{a1, a1}, {1, 1}}, box2), std::invalid_argument);
}

TEST_CASE("window membership and uniqueness") {
    const InnerProduct& inner = inner1();
    KernelSpec spec{{kAlpha}, {1}};
    Weight lambda0({0});

    // y^(1) has coefficient 1 at alpha^(1/2), inside the window
    Box box{{40}};
    TruncatedSeries y1 = kernel_y(kAlpha, 1, false, box);
    CHECK(window_contains(spec, inner, lambda0, {2}));
    CHECK(window_uniqueness_check(spec, inner, lambda0, y1) ==
          WindowVerdict::NonzeroWithWindowHit);

    CHECK(window_uniqueness_check(spec, inner, lambda0, TruncatedSeries(1, box)) ==
          WindowVerdict::Zero);

    // tiny box: undecidable
    CHECK(window_uniqueness_check(spec, inner, lambda0, TruncatedSeries(1, Box{{1}})) ==
          WindowVerdict::Undecidable);

    // non-kernel input is rejected
    CHECK_THROWS_AS(window_uniqueness_check(spec, inner, lambda0, geometric_s(kAlpha, box)),
                    std::invalid_argument);
}

TEST_CASE("window-vanishing combinations are identically zero (rank 1)") {
    std::mt19937_64 rng(53);
    const InnerProduct& inner = inner1();
    Box box{{80}};
    for (unsigned n = 1; n <= 3; ++n) {
        KernelSpec spec{{kAlpha}, {n}};
        Weight lambda0({0});
        std::vector<TruncatedSeries> gens;
        for (unsigned j = 1; j <= n; ++j)
            for (std::int64_t sh = -3; sh <= 3; ++sh)
                for (bool plus : {false, true}) {
                    Weight s({sh});
                    gens.push_back(kernel_y(kAlpha, j, plus, box, &s));
                }
        auto window = window_points(spec, inner, lambda0, box);
        REQUIRE(!window.empty());
        RatMatrix m(window.size(), gens.size());
        for (std::size_t r = 0; r < window.size(); ++r)
            for (std::size_t c = 0; c < gens.size(); ++c) m.at(r, c) = gens[c].at(window[r]);
        for (const auto& v : nullspace(m)) {
            auto iv = clear_denominators(v);
            TruncatedSeries z(1, box);
            for (std::size_t c = 0; c < gens.size(); ++c)
                if (iv[c] != 0) z = z + gens[c].scaled(to_int64(iv[c]));
            CHECK(z.zero_on_valid());
        }
        // random combinations: nonzero ones must hit the window
        for (int t = 0; t < 25; ++t) {
            std::uniform_int_distribution<std::int64_t> cd(-4, 4);
            TruncatedSeries z(1, box);
            for (auto& g : gens) {
                std::int64_t c = cd(rng);
                if (c != 0) z = z + g.scaled(c);
            }
            WindowVerdict verdict = window_uniqueness_check(spec, inner, lambda0, z);
            if (z.zero_on_valid())
                CHECK(verdict == WindowVerdict::Zero);
            else
                CHECK(verdict == WindowVerdict::NonzeroWithWindowHit);
        }
    }
}

TEST_CASE("expand_rational") {
    const InnerProduct& inner = inner1();
    Box box{{40}};
    // X^3/(1-X^2) toward +: ones at 3, 5, 7, ...
    RationalChar d3(x_pow(3), {Weight({-4})});
    TruncatedSeries e = expand_rational(d3, sl2::alpha_gen(), inner, box);
    for (std::int64_t m = -20; m <= 20; ++m)
        CHECK(e.at({2 * m}) == ((m >= 3 && (m - 3) % 2 == 0) ? 1 : 0));

    // trivial denominator: the embedding
    RationalChar unit = RationalChar::unit(1);
    CHECK(TruncatedSeries::equal_on_common_valid(
        expand_rational(unit, sl2::alpha_gen(), inner, box),
        series_from_poly(LaurentPoly::unit(1), box)));

    // divisible input matches exact division
    RationalChar fin(x_pow(-2) - x_pow(4), {Weight({-4})});
    auto q = exact_divide(fin);
    REQUIRE(q.has_value());
    CHECK(*q == x_pow(-2) + x_pow(0) + x_pow(2));
    CHECK(TruncatedSeries::equal_on_common_valid(
        expand_rational(fin, sl2::alpha_gen(), inner, box), series_from_poly(*q, box)));

    // direction orthogonal to a factor
    InnerProduct id2;
    id2.rank = 2;
    id2.gram = {Rat(1), Rat(0), Rat(0), Rat(1)};
    RationalChar r2(LaurentPoly::unit(2), {weight_from_base_coords({1, 0})});
    CHECK_THROWS_AS(expand_rational(r2, Weight({0, 2}), id2, Box{{8, 8}}), std::domain_error);
}

TEST_CASE("expansion factor order does not matter") {
    const InnerProduct& inner = inner1();
    Box box{{60}};
    RationalChar a(x_pow(2), {Weight({-4}), Weight({4})});
    RationalChar b(x_pow(2), {Weight({4}), Weight({-4})});
    CHECK(expand_rational(a, sl2::alpha_gen(), inner, box).data() ==
          expand_rational(b, sl2::alpha_gen(), inner, box).data());
}

TEST_CASE("box monotonicity") {
    std::mt19937_64 rng(59);
    const InnerProduct& inner = inner1();
    for (int t = 0; t < 20; ++t) {
        LaurentPoly p = selftest::random_poly(rng, 1, 5, 8, 9);
        RationalChar x(p, {Weight({-4})});
        TruncatedSeries small = expand_rational(x, sl2::alpha_gen(), inner, Box{{30}});
        TruncatedSeries large = expand_rational(x, sl2::alpha_gen(), inner, Box{{70}});
        CHECK(TruncatedSeries::equal_on_common_valid(small, large));

        TruncatedSeries ys = kernel_y(kAlpha, 2, false, Box{{30}});
        TruncatedSeries yl = kernel_y(kAlpha, 2, false, Box{{70}});
        CHECK(TruncatedSeries::equal_on_common_valid(mul_poly(ys, p), mul_poly(yl, p)));
    }
}

TEST_CASE("parallel kernels match the serial reference") {
    std::mt19937_64 rng(61);
    const InnerProduct& inner = inner1();
    for (int t = 0; t < 15; ++t) {
        LaurentPoly p = selftest::random_poly(rng, 1, 8, 12, 9);
        TruncatedSeries base = kernel_y(kAlpha, 1 + t % 4, false, Box{{90}});
        CHECK(mul_poly(base, p).data() == mul_poly_serial(base, p).data());
        RationalChar x(selftest::random_poly(rng, 1, 4, 6, 9), {Weight({-4})});
        CHECK(expand_rational(x, sl2::alpha_gen(), inner, Box{{50}}).data() ==
              expand_rational_serial(x, sl2::alpha_gen(), inner, Box{{50}}).data());
    }
    // rank 2
    Weight a1 = weight_from_base_coords({2, 0});
    Weight a2 = weight_from_base_coords({0, 2});
    TruncatedSeries y = kernel_y_mixed(KernelSpec{{a1, a2}, {1, 1}}, Box{{16, 16}});
    LaurentPoly q = d_factor(a1, false) * d_factor(a2, true);
    CHECK(mul_poly(y, q).data() == mul_poly_serial(y, q).data());
}

TEST_CASE("beta finiteness") {
    Box box{{40}};
    // a finite polynomial is certified
    TruncatedSeries fin = series_from_poly(x_pow(1) + x_pow(-2), box);
    auto rep = beta_finiteness(fin, {kAlpha});
    CHECK(rep.finite);
    CHECK(!rep.boundary_touching);

    // the geometric comb touches the boundary in its own direction
    auto rep2 = beta_finiteness(geometric_s(kAlpha, box), {kAlpha});
    CHECK(!rep2.finite);
    CHECK(rep2.boundary_touching);

    // orthogonal direction: certified when the box is wide enough
    Weight a1 = weight_from_base_coords({2, 0});
    Weight a2 = weight_from_base_coords({0, 2});
    TruncatedSeries comb = geometric_s(a1, Box{{10, 10}});
    auto rep3 = beta_finiteness(comb, {a2});
    CHECK(rep3.finite);
}

TEST_CASE("series dump and parse round trip") {
    TruncatedSeries y = kernel_y(kAlpha, 2, false, Box{{10}});
    std::stringstream ss;
    y.dump(ss);
    TruncatedSeries back = TruncatedSeries::parse(ss);
    CHECK(back.data() == y.data());
    CHECK(back.box() == y.box());
    CHECK(back.valid() == y.valid());

    Weight a1 = weight_from_base_coords({2, 0});
    Weight a2 = weight_from_base_coords({0, 2});
    TruncatedSeries y2 = kernel_y_mixed(KernelSpec{{a1, a2}, {1, 1}}, Box{{6, 6}});
    std::stringstream ss2;
    y2.dump(ss2);
    TruncatedSeries back2 = TruncatedSeries::parse(ss2);
    CHECK(back2.data() == y2.data());
}
