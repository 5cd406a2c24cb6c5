#pragma once

#include <vector>

#include "charloc/rational_char.hpp"

namespace charloc {

// Dominance for the positive system of the datum: <lambda, alpha> >= 0 for
// every simple root.
bool is_dominant(const RootDatum& datum, const Weight& lambda);

// Per-degree classes sum [H^q(u;V)] as torus characters; zero outside
// 0..dim u.
struct CohomologyTable {
    std::vector<LaurentPoly> by_degree;
    const LaurentPoly& operator[](std::size_t q) const { return by_degree[q]; }
    std::size_t degrees() const { return by_degree.size(); }
};

// Degree-q cohomology of the irreducible with highest weight lambda, for a
// Cartan Levi (u-roots = the full positive system): the sum over length-q
// Weyl elements of [w(lambda+rho(u)) - rho(u)], each with coefficient one.
LaurentPoly kostant_cohomology(const RootDatum& datum, const Weight& lambda, unsigned q);
CohomologyTable kostant_table(const RootDatum& datum, const Weight& lambda);

// Parabolic version: Levi-highest weights w(lambda+rho)-rho over the
// minimal-length coset representatives (w^{-1} Delta^+(l) inside Delta^+),
// with rho the half-sum of the full positive system. Returned grouped with
// the representative's length.
struct LeviConstituent {
    Weight highest_weight;
    unsigned degree;
};
std::vector<LeviConstituent> kostant_parabolic(const RootDatum& datum_g,
                                               const std::vector<Weight>& levi_roots,
                                               const Weight& lambda);

// c(V_lambda) = sum_q (-1)^q [H^q(u;V)] / W_q. The numerator is the signed
// Kostant sum; the denominator factors are the u-roots.
RationalChar euler_character(const RootDatum& datum, const Weight& lambda);

// Full weight-multiplicity character: exact division of euler_character,
// which always succeeds for finite-dimensional input (asserted).
LaurentPoly restrict_finite(const RootDatum& datum, const Weight& lambda);

// prod_{beta in Delta+} <lambda+rho, beta> / <rho, beta>, exact.
Int weyl_dimension(const RootDatum& datum, const Weight& lambda);

// Chain g > l > m (m the Cartan): one-step character to m vs the two-step
// composite through the Levi given by levi_roots (a subset of the positive
// system closed under the induced root system). True iff the two agree in
// the localization after clearing W_p = W_{p cap l} * W_u.
bool check_transitivity(const RootDatum& datum_g, const std::vector<Weight>& levi_roots,
                        const Weight& lambda);

// c(V_{-w0 lambda}) == dual(c(V_lambda)); requires -w0(lambda) dominant.
bool check_duality(const RootDatum& datum, const Weight& lambda);

} // namespace charloc
