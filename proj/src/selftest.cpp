#include "charloc/selftest.hpp"

#include <ostream>
#include <set>

#include "charloc/regularity.hpp"
#include "charloc/series.hpp"
#include "charloc/sl2.hpp"
#include "charloc/weyl_kostant.hpp"

namespace charloc {
namespace selftest {

namespace {

struct Suite {
    std::ostream& os;
    bool ok = true;
    void check(const char* name, bool pass) {
        os << (pass ? "  [ok]   " : "  [FAIL] ") << name << "\n";
        ok = ok && pass;
    }
};

} // namespace

LaurentPoly random_poly(std::mt19937_64& rng, std::size_t rank, std::size_t max_terms,
                        std::int64_t coord_range, std::int64_t coeff_range) {
    std::uniform_int_distribution<std::size_t> nterms(1, max_terms);
    std::uniform_int_distribution<std::int64_t> coord(-coord_range, coord_range);
    std::uniform_int_distribution<std::int64_t> coeff(-coeff_range, coeff_range);
    LaurentPoly p(rank);
    std::size_t n = nterms(rng);
    for (std::size_t t = 0; t < n; ++t) {
        std::vector<std::int64_t> x(rank);
        for (auto& c : x) c = coord(rng);
        std::int64_t c = coeff(rng);
        if (c == 0) c = 1;
        p.add_term(Weight(x), c);
    }
    return p;
}

Weight random_weight(std::mt19937_64& rng, std::size_t rank, std::int64_t coord_range) {
    std::uniform_int_distribution<std::int64_t> coord(-coord_range, coord_range);
    std::vector<std::int64_t> x(rank);
    for (auto& c : x) c = coord(rng);
    return Weight(x);
}

const RootDatum& datum_a1() { return sl2::datum(); }

const RootDatum& datum_a2() {
    static const RootDatum d = [] {
        // fundamental-weight basis: gram = inverse Cartan / A2 conventions,
        // simple roots alpha1 = (2,-1), alpha2 = (-1,2)
        InnerProduct inner;
        inner.rank = 2;
        inner.gram = {Rat(2, 3), Rat(1, 3), Rat(1, 3), Rat(2, 3)};
        std::vector<Weight> roots = {weight_from_base_coords({2, -1}),
                                     weight_from_base_coords({-1, 2}),
                                     weight_from_base_coords({1, 1})};
        return make_root_datum(2, inner, roots);
    }();
    return d;
}

const RootDatum& datum_a1xa1() {
    static const RootDatum d = [] {
        InnerProduct inner;
        inner.rank = 2;
        inner.gram = {Rat(2), Rat(0), Rat(0), Rat(2)};
        std::vector<Weight> roots = {weight_from_base_coords({1, 0}),
                                     weight_from_base_coords({0, 1})};
        return make_root_datum(2, inner, roots);
    }();
    return d;
}

bool lattice(std::uint64_t seed, std::ostream& os) {
    Suite s{os};
    std::mt19937_64 rng(seed);

    bool inv = true;
    for (const RootDatum* d : {&datum_a1(), &datum_a2(), &datum_a1xa1()}) {
        for (int t = 0; t < 50 && inv; ++t) {
            Weight a = random_weight(rng, d->rank, 10);
            Weight b = random_weight(rng, d->rank, 10);
            for (const auto& w : d->weyl_group)
                if (pair_weights(apply_weyl(w, a), apply_weyl(w, b), d->inner) !=
                    pair_weights(a, b, d->inner))
                    inv = false;
        }
    }
    s.check("Weyl invariance of the form", inv);

    bool invol = true;
    const RootDatum& a2 = datum_a2();
    for (int t = 0; t < 100 && invol; ++t) {
        Weight l = random_weight(rng, 2, 20);
        const Weight& alpha = a2.u_roots[t % a2.u_roots.size()];
        if (reflect(alpha, reflect(alpha, l, a2.inner), a2.inner) != l) invol = false;
    }
    s.check("reflections are involutions", invol);

    bool lengths = true;
    for (const auto& w : a2.weyl_group)
        if (w.length != w.word_length) lengths = false;
    s.check("inversion count equals minimal word length (A2)", lengths);

    return s.ok;
}

bool ring(std::uint64_t seed, std::ostream& os) {
    Suite s{os};
    std::mt19937_64 rng(seed);

    bool axioms = true;
    for (std::size_t rank = 1; rank <= 3 && axioms; ++rank) {
        for (int t = 0; t < 30; ++t) {
            LaurentPoly a = random_poly(rng, rank, 5, 6, 9);
            LaurentPoly b = random_poly(rng, rank, 5, 6, 9);
            LaurentPoly c = random_poly(rng, rank, 5, 6, 9);
            if ((a * b) * c != a * (b * c)) axioms = false;
            if (a * (b + c) != a * b + a * c) axioms = false;
            if (a * b != b * a) axioms = false;
            if (a * LaurentPoly::unit(rank) != a) axioms = false;
        }
    }
    s.check("ring axioms on random sparse polynomials", axioms);

    bool domain = true;
    for (int t = 0; t < 200 && domain; ++t) {
        LaurentPoly a = random_poly(rng, 2, 4, 5, 9);
        LaurentPoly b = random_poly(rng, 2, 4, 5, 9);
        if (!a.is_zero() && !b.is_zero() && (a * b).is_zero()) domain = false;
    }
    s.check("no zero divisors", domain);

    bool weyl = true;
    for (const RootDatum* d : {&datum_a1(), &datum_a2(), &datum_a1xa1()})
        if (weyl_element(*d) != weyl_element_from_exterior_powers(*d)) weyl = false;
    s.check("exterior-power expansion equals the root product", weyl);

    bool dual_identity = true;
    for (const RootDatum* d : {&datum_a1(), &datum_a2(), &datum_a1xa1()}) {
        LaurentPoly w = weyl_element(*d);
        Weight top = zero_weight(d->rank);
        for (const Weight& a : d->u_roots) top = top - a;
        LaurentPoly lhs = w.dual().shifted(top).scaled(d->dim_u() % 2 == 0 ? 1 : -1);
        if (lhs != w) dual_identity = false;
    }
    s.check("dual Weyl element identity", dual_identity);

    return s.ok;
}

bool localization(std::uint64_t seed, std::ostream& os) {
    Suite s{os};
    std::mt19937_64 rng(seed);

    auto random_rc = [&](std::size_t rank) {
        std::vector<Weight> den;
        std::uniform_int_distribution<int> nden(0, 2);
        int k = nden(rng);
        for (int i = 0; i < k; ++i) {
            Weight a = random_weight(rng, rank, 3);
            if (a.is_zero()) a.x2[0] = 2;
            den.push_back(a);
        }
        return RationalChar(random_poly(rng, rank, 4, 5, 9), den);
    };

    bool equiv = true;
    for (int t = 0; t < 50 && equiv; ++t) {
        RationalChar x = random_rc(2);
        Weight f = random_weight(rng, 2, 3);
        if (f.is_zero()) f.x2[0] = 2;
        Weight g = random_weight(rng, 2, 3);
        if (g.is_zero()) g.x2[1] = 2;
        RationalChar y(x.num() * den_factor(f), [&] {
            auto d = x.den_alphas();
            d.push_back(f);
            return d;
        }());
        RationalChar z(y.num() * den_factor(g), [&] {
            auto d = y.den_alphas();
            d.push_back(g);
            return d;
        }());
        if (!rc_eq(x, x) || !rc_eq(x, y) || !rc_eq(y, x) || !rc_eq(y, z) || !rc_eq(x, z))
            equiv = false;
    }
    s.check("rc_eq is an equivalence relation on scaled pairs", equiv);

    bool welldef = true;
    for (int t = 0; t < 30 && welldef; ++t) {
        RationalChar x = random_rc(2);
        Weight f = random_weight(rng, 2, 3);
        if (f.is_zero()) f.x2[0] = 2;
        RationalChar x2(x.num() * den_factor(f), [&] {
            auto d = x.den_alphas();
            d.push_back(f);
            return d;
        }());
        RationalChar y = random_rc(2);
        if (!rc_eq(rc_mul(x, y), rc_mul(x2, y))) welldef = false;
        if (!rc_eq(rc_add(x, y), rc_add(x2, y))) welldef = false;
    }
    s.check("arithmetic is well defined on classes", welldef);

    bool divide = true;
    for (int t = 0; t < 50 && divide; ++t) {
        // build p * den and divide back
        LaurentPoly p = random_poly(rng, 2, 4, 4, 9);
        std::vector<Weight> den;
        for (int i = 0; i < 2; ++i) {
            Weight a = random_weight(rng, 2, 3);
            if (a.is_zero()) a.x2[i] = 2;
            den.push_back(a);
        }
        RationalChar x(p * RationalChar(LaurentPoly::unit(2), den).den_poly(), den);
        auto q = exact_divide(x);
        if (!q || *q != p) divide = false;
    }
    s.check("exact_divide inverts multiplication by the denominator", divide);

    bool inject = true;
    for (int t = 0; t < 100 && inject; ++t) {
        LaurentPoly a = random_poly(rng, 2, 4, 5, 9);
        LaurentPoly b = random_poly(rng, 2, 4, 5, 9);
        if (a == b) continue;
        if (rc_eq(RationalChar(a), RationalChar(b))) inject = false;
    }
    s.check("embedding of the ring is injective", inject);

    return s.ok;
}

bool characters(std::uint64_t seed, std::ostream& os) {
    Suite s{os};
    std::mt19937_64 rng(seed);

    bool mult = true;
    std::uniform_int_distribution<std::int64_t> kdist(0, 6);
    for (int t = 0; t < 10 && mult; ++t) {
        // sl2
        std::int64_t ka = kdist(rng), kb = kdist(rng);
        const RootDatum& d1 = datum_a1();
        RationalChar lhs = rc_mul(euler_character(d1, Weight({2 * ka})),
                                  euler_character(d1, Weight({2 * kb})));
        RationalChar rhs(restrict_finite(d1, Weight({2 * ka})) *
                         restrict_finite(d1, Weight({2 * kb})));
        if (!rc_eq(lhs, rhs)) mult = false;
        // A2 on fundamental-weight coordinates
        const RootDatum& d2 = datum_a2();
        std::uniform_int_distribution<std::int64_t> fw(0, 2);
        Weight la({2 * fw(rng), 2 * fw(rng)});
        Weight mb({2 * fw(rng), 2 * fw(rng)});
        RationalChar lhs2 = rc_mul(euler_character(d2, la), euler_character(d2, mb));
        RationalChar rhs2(restrict_finite(d2, la) * restrict_finite(d2, mb));
        if (!rc_eq(lhs2, rhs2)) mult = false;
    }
    s.check("multiplicativity against the restriction convolution", mult);

    bool addv = true;
    for (int t = 0; t < 10 && addv; ++t) {
        std::int64_t ka = kdist(rng), kb = kdist(rng);
        const RootDatum& d1 = datum_a1();
        RationalChar sum = rc_add(euler_character(d1, Weight({2 * ka})),
                                  euler_character(d1, Weight({2 * kb})));
        LaurentPoly both =
            restrict_finite(d1, Weight({2 * ka})) + restrict_finite(d1, Weight({2 * kb}));
        if (!rc_eq(sum, RationalChar(both))) addv = false;
    }
    s.check("additivity of the character map", addv);

    bool support = true;
    const RootDatum& d2 = datum_a2();
    for (const Weight& lambda : {Weight({0, 0}), Weight({2, 0}), Weight({2, 2})}) {
        CohomologyTable table = kostant_table(d2, lambda);
        std::vector<std::size_t> census(d2.dim_u() + 1, 0);
        for (const auto& w : d2.weyl_group) census[w.length] += 1;
        for (std::size_t q = 0; q < table.degrees(); ++q) {
            if (table[q].term_count() != census[q]) support = false;
            for (const auto& [w, c] : table[q].terms())
                if (c != 1) support = false;
        }
    }
    s.check("Kostant support matches the length census", support);

    bool mass = true;
    for (const Weight& lambda : {Weight({0, 0}), Weight({2, 0}), Weight({2, 2}), Weight({4, 2})})
        if (restrict_finite(d2, lambda).mass() != weyl_dimension(d2, lambda)) mass = false;
    for (std::int64_t k = 0; k <= 12; ++k)
        if (restrict_finite(datum_a1(), Weight({2 * k})).mass() !=
            weyl_dimension(datum_a1(), Weight({2 * k})))
            mass = false;
    s.check("restriction mass equals the Weyl dimension", mass);

    bool kunneth = true;
    for (int t = 0; t < 10 && kunneth; ++t) {
        std::int64_t ka = kdist(rng), kb = kdist(rng);
        const RootDatum& d1 = datum_a1();
        LaurentPoly na = euler_character(d1, Weight({2 * ka})).num();
        LaurentPoly nb = euler_character(d1, Weight({2 * kb})).num();
        LaurentPoly w = weyl_element(d1);
        LaurentPoly tensor_h =
            restrict_finite(d1, Weight({2 * ka})) * restrict_finite(d1, Weight({2 * kb})) * w;
        if (na * nb != w * tensor_h) kunneth = false;
    }
    s.check("numerator product equals W times the tensor numerator", kunneth);

    return s.ok;
}

bool series(std::uint64_t seed, std::ostream& os) {
    Suite s{os};
    std::mt19937_64 rng(seed);
    const Weight alpha = sl2::alpha_root();
    const InnerProduct& inner = sl2::datum().inner;
    Box box{{120}};

    TruncatedSeries sa = geometric_s(alpha, box);
    LaurentPoly dm = d_factor(alpha, false);
    s.check("d- * s = 1",
            TruncatedSeries::equal_on_common_valid(
                mul_poly(sa, dm), series_from_poly(LaurentPoly::unit(1), box)));

    bool ladder = true;
    for (unsigned n = 2; n <= 5 && ladder; ++n) {
        TruncatedSeries yn = kernel_y(alpha, n, false, box);
        TruncatedSeries lower = kernel_y(alpha, n - 1, false, box);
        if (!TruncatedSeries::equal_on_common_valid(mul_poly(yn, dm), lower)) ladder = false;
    }
    s.check("d- lowers the kernel ladder", ladder);

    bool binom_growth = true;
    for (unsigned n = 1; n <= 5 && binom_growth; ++n) {
        TruncatedSeries yn = kernel_y(alpha, n, false, box);
        for (std::int64_t i = 0; 2 * (n + 2 * i) <= box.radius[0]; ++i) {
            Int expect = binomial(n - 1 + i, n - 1);
            if (Int(yn.at({2 * (static_cast<std::int64_t>(n) + 2 * i)})) != expect)
                binom_growth = false;
        }
    }
    s.check("kernel coefficients grow by the binomial pattern", binom_growth);

    bool round_trip = true;
    for (int t = 0; t < 20 && round_trip; ++t) {
        std::uniform_int_distribution<std::int64_t> kd(1, 5);
        std::int64_t k = 2 * kd(rng);
        // (X^-k - X^(k+2)) / (1 - X^2) expands to the finite string
        LaurentPoly num(1);
        num.add_term(Weight({-2 * k}), 1);
        num.add_term(Weight({2 * (k + 2)}), -1);
        RationalChar x(num, {Weight({-4})});
        TruncatedSeries e = expand_rational(x, sl2::alpha_gen(), inner, box);
        auto q = exact_divide(x);
        if (!q) {
            round_trip = false;
            break;
        }
        if (!TruncatedSeries::equal_on_common_valid(e, series_from_poly(*q, box)))
            round_trip = false;
    }
    s.check("expansion agrees with exact division on divisible input", round_trip);

    bool monotone = true;
    for (int t = 0; t < 10 && monotone; ++t) {
        LaurentPoly p = random_poly(rng, 1, 4, 6, 9);
        TruncatedSeries small = mul_poly(series_from_poly(p, Box{{40}}), dm);
        TruncatedSeries large = mul_poly(series_from_poly(p, Box{{80}}), dm);
        if (!TruncatedSeries::equal_on_common_valid(small, large)) monotone = false;
    }
    s.check("box enlargement never changes valid coefficients", monotone);

    bool par = true;
    for (int t = 0; t < 10 && par; ++t) {
        LaurentPoly p = random_poly(rng, 1, 6, 10, 9);
        TruncatedSeries base = kernel_y(alpha, 1 + t % 3, false, box);
        TruncatedSeries a = mul_poly(base, p);
        TruncatedSeries b = mul_poly_serial(base, p);
        if (!(a.data() == b.data())) par = false;
        RationalChar x = sl2::sl2_character(sl2::discrete_plus(1 + t % 5));
        TruncatedSeries c = expand_rational(x, sl2::alpha_gen(), inner, box);
        TruncatedSeries d = expand_rational_serial(x, sl2::alpha_gen(), inner, box);
        if (!(c.data() == d.data())) par = false;
    }
    s.check("parallel kernels match the serial reference", par);

    return s.ok;
}

bool sl2(std::uint64_t seed, std::ostream& os) {
    Suite s{os};
    (void)seed;

    bool tensor_df = true;
    for (std::int64_t k = 1; k <= 10 && tensor_df; ++k)
        for (std::int64_t kp = 0; kp <= 5; ++kp) {
            if (k < kp + 3) continue;
            auto dec = sl2::tensor_decompose(sl2::discrete_plus(k), sl2::finite(kp));
            if (dec.not_discretely_decomposable || !dec.complete) tensor_df = false;
            RationalChar sum(LaurentPoly(1));
            for (const auto& [mod, mult] : dec.parts) {
                if (mod.kind != sl2::Kind::DiscretePlus || mult != 1) tensor_df = false;
                sum = rc_add(sum, sl2::sl2_character(mod).scaled(mult));
            }
            RationalChar prod = rc_mul(sl2::sl2_character(sl2::discrete_plus(k)),
                                       sl2::sl2_character(sl2::finite(kp)));
            if (!rc_eq(sum, prod)) tensor_df = false;
        }
    s.check("discrete x finite tensor decompositions are exact", tensor_df);

    bool tensor_ff = true;
    for (std::int64_t k = 0; k <= 20 && tensor_ff; ++k)
        for (std::int64_t kp = 0; kp <= 20; ++kp) {
            auto dec = sl2::tensor_decompose(sl2::finite(k), sl2::finite(kp));
            if (!dec.complete) tensor_ff = false;
            // Clebsch-Gordan: |k-kp|, |k-kp|+2, ..., k+kp, multiplicity one
            std::set<std::int64_t> expect;
            for (std::int64_t j = std::llabs(k - kp); j <= k + kp; j += 2) expect.insert(j);
            std::set<std::int64_t> got;
            for (const auto& [mod, mult] : dec.parts) {
                if (mult != 1) tensor_ff = false;
                got.insert(mod.k);
            }
            if (got != expect) tensor_ff = false;
        }
    s.check("finite tensor decompositions match Clebsch-Gordan", tensor_ff);

    bool blat = true;
    for (std::int64_t k = 1; k <= 10 && blat; ++k) {
        TruncatedSeries b = sl2::blattner(k, 101);
        for (std::int64_t m = -101; m <= 101; ++m) {
            std::int64_t expect = (m >= k && (m - k) % 2 == 0) ? 1 : 0;
            if (b.at({2 * m}) != expect) blat = false;
        }
    }
    s.check("Blattner series are 0/1 combs", blat);

    bool dd = true;
    for (std::int64_t k = 1; k <= 4 && dd; ++k)
        for (std::int64_t kp = 1; kp <= 4; ++kp) {
            auto dec = sl2::tensor_decompose(sl2::discrete_plus(k), sl2::discrete_plus(kp));
            if (dec.not_discretely_decomposable) dd = false;
            for (const auto& [mod, mult] : dec.parts)
                if (mod.kind != sl2::Kind::DiscretePlus) dd = false;
        }
    s.check("discrete x discrete stays discrete", dd);

    s.check("kernel relation holds on box 20", sl2::kernel_relation_check(20));

    return s.ok;
}

bool regularity(std::uint64_t seed, std::ostream& os) {
    Suite s{os};
    (void)seed;
    const RootDatum& d1 = datum_a1();
    const Weight beta = sl2::alpha_root();

    // rank-1 instance with the doubled u'-root multiset
    auto make_inst = [&](std::int64_t m) {
        return RegularityInstance::with_default_anchor(d1, {beta, beta}, Weight({2 * m}));
    };

    bool mono = true;
    // the condition, once it holds, keeps holding as |lambda| grows
    bool seen_true_pos = false, seen_true_neg = false;
    for (std::int64_t m = 0; m <= 20; ++m) {
        bool h = check_condition_S(make_inst(m)).holds;
        if (seen_true_pos && !h) mono = false;
        seen_true_pos = seen_true_pos || h;
    }
    for (std::int64_t m = 0; m >= -20; --m) {
        bool h = check_condition_S(make_inst(m)).holds;
        if (seen_true_neg && !h) mono = false;
        seen_true_neg = seen_true_neg || h;
    }
    s.check("rank-1 monotonicity away from the anchor", mono);

    bool window_consistency = true;
    const InnerProduct& inner = d1.inner;
    for (std::int64_t m = -20; m <= 20; ++m) {
        RegularityInstance inst = make_inst(m);
        bool cond = check_condition_S(inst).holds;
        bool outside = true;
        Weight shifted = inst.lambda + inst.rho_uprime();
        for (unsigned n = 1; n <= 3; ++n) {
            KernelSpec spec{{beta}, {n}};
            for (const auto& w : d1.weyl_group)
                if (window_contains(spec, inner, inst.lambda0, apply_weyl(w, shifted).x2))
                    outside = false;
        }
        if (cond != outside) window_consistency = false;
    }
    s.check("condition (S) matches the kernel windows", window_consistency);

    return s.ok;
}

bool all(std::uint64_t seed, std::ostream& os) {
    bool ok = true;
    os << "lattice:\n";
    ok &= lattice(seed, os);
    os << "ring:\n";
    ok &= ring(seed, os);
    os << "localization:\n";
    ok &= localization(seed, os);
    os << "characters:\n";
    ok &= characters(seed, os);
    os << "series:\n";
    ok &= series(seed, os);
    os << "sl2:\n";
    ok &= sl2(seed, os);
    os << "regularity:\n";
    ok &= regularity(seed, os);
    return ok;
}

} // namespace selftest
} // namespace charloc
