#include "charloc/weyl_kostant.hpp"

#include <algorithm>
#include <set>

namespace charloc {

bool is_dominant(const RootDatum& datum, const Weight& lambda) {
    for (const Weight& a : simple_roots(datum.u_roots))
        if (pair_weights(lambda, a, datum.inner) < 0) return false;
    return true;
}

namespace {

void require_dominant(const RootDatum& datum, const Weight& lambda) {
    if (!is_dominant(datum, lambda))
        throw std::domain_error("highest weight is not dominant");
}

} // namespace

LaurentPoly kostant_cohomology(const RootDatum& datum, const Weight& lambda, unsigned q) {
    require_dominant(datum, lambda);
    LaurentPoly h(datum.rank);
    Weight shifted = lambda + datum.rho_u;
    for (const WeylElement& w : datum.weyl_group) {
        if (w.length != q) continue;
        h.add_term(apply_weyl(w, shifted) - datum.rho_u, 1);
    }
    return h;
}

CohomologyTable kostant_table(const RootDatum& datum, const Weight& lambda) {
    CohomologyTable t;
    t.by_degree.resize(datum.dim_u() + 1, LaurentPoly(datum.rank));
    Weight shifted = lambda + datum.rho_u;
    require_dominant(datum, lambda);
    for (const WeylElement& w : datum.weyl_group)
        t.by_degree.at(w.length).add_term(apply_weyl(w, shifted) - datum.rho_u, 1);
    return t;
}

std::vector<LeviConstituent> kostant_parabolic(const RootDatum& datum_g,
                                               const std::vector<Weight>& levi_roots,
                                               const Weight& lambda) {
    require_dominant(datum_g, lambda);
    std::set<Weight> pos(datum_g.u_roots.begin(), datum_g.u_roots.end());
    for (const Weight& b : levi_roots)
        if (!pos.count(b)) throw std::invalid_argument("Levi root not in the positive system");

    std::vector<LeviConstituent> out;
    Weight shifted = lambda + datum_g.rho_u;
    for (const WeylElement& w : datum_g.weyl_group) {
        // minimal-length coset representative: w^{-1} maps Delta+(l) into Delta+
        WeylElement winv;
        winv.mat = w.mat.inverse();
        bool minimal = true;
        for (const Weight& b : levi_roots) {
            if (!pos.count(apply_weyl(winv, b))) {
                minimal = false;
                break;
            }
        }
        if (!minimal) continue;
        out.push_back({apply_weyl(w, shifted) - datum_g.rho_u, w.length});
    }
    std::sort(out.begin(), out.end(), [](const LeviConstituent& a, const LeviConstituent& b) {
        return a.degree < b.degree || (a.degree == b.degree && a.highest_weight < b.highest_weight);
    });
    return out;
}

RationalChar euler_character(const RootDatum& datum, const Weight& lambda) {
    require_dominant(datum, lambda);
    LaurentPoly num(datum.rank);
    Weight shifted = lambda + datum.rho_u;
    for (const WeylElement& w : datum.weyl_group)
        num.add_term(apply_weyl(w, shifted) - datum.rho_u, (w.length % 2 == 0) ? 1 : -1);
    return RationalChar(std::move(num), datum.u_roots);
}

LaurentPoly restrict_finite(const RootDatum& datum, const Weight& lambda) {
    auto p = exact_divide(euler_character(datum, lambda));
    if (!p) throw std::logic_error("restrict_finite: exact division failed (formula bug)");
    return *p;
}

Int weyl_dimension(const RootDatum& datum, const Weight& lambda) {
    require_dominant(datum, lambda);
    std::set<Weight> distinct(datum.u_roots.begin(), datum.u_roots.end());
    Rat dim = 1;
    for (const Weight& b : distinct) {
        Rat den = pair_weights(datum.rho_u, b, datum.inner);
        if (den == 0) throw std::domain_error("weyl_dimension: rho orthogonal to a root");
        dim *= pair_weights(lambda + datum.rho_u, b, datum.inner) / den;
    }
    if (boost::multiprecision::denominator(dim) != 1 || dim <= 0)
        throw std::logic_error("weyl_dimension: non-integral result");
    return boost::multiprecision::numerator(dim);
}

namespace {

RootDatum levi_datum(const RootDatum& datum_g, const std::vector<Weight>& levi_roots) {
    return make_root_datum(datum_g.rank, datum_g.inner, levi_roots);
}

} // namespace

bool check_transitivity(const RootDatum& datum_g, const std::vector<Weight>& levi_roots,
                        const Weight& lambda) {
    std::set<Weight> pos(datum_g.u_roots.begin(), datum_g.u_roots.end());
    for (const Weight& b : levi_roots)
        if (!pos.count(b)) throw std::invalid_argument("invalid Levi chain");

    RationalChar one_step = euler_character(datum_g, lambda);

    RootDatum datum_l = levi_datum(datum_g, levi_roots);
    std::vector<Weight> u_complement;
    std::set<Weight> levi_set(levi_roots.begin(), levi_roots.end());
    for (const Weight& b : datum_g.u_roots)
        if (!levi_set.count(b)) u_complement.push_back(b);

    // two-step: Kostant to the Levi, then the Levi characters to the Cartan,
    // all over the cleared intermediate Weyl factor.
    RationalChar two_step(LaurentPoly(datum_g.rank));
    for (const LeviConstituent& c : kostant_parabolic(datum_g, levi_roots, lambda)) {
        RationalChar piece = euler_character(datum_l, c.highest_weight);
        if (c.degree % 2 == 1) piece = piece.scaled(-1);
        two_step = rc_add(two_step, piece);
    }
    two_step = two_step.over_factors(u_complement);

    return rc_eq(one_step, two_step);
}

bool check_duality(const RootDatum& datum, const Weight& lambda) {
    require_dominant(datum, lambda);
    Weight dual_lambda = -apply_weyl(datum.longest_element(), lambda);
    require_dominant(datum, dual_lambda);
    return rc_eq(euler_character(datum, dual_lambda), rc_dual(euler_character(datum, lambda)));
}

} // namespace charloc
