#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "charloc/lattice.hpp"
#include "charloc/series.hpp"

namespace charloc {

// Instance data for the sampling conditions: the ambient datum carries
// Delta(u+u',l') (its u_roots) and the Weyl group; uprime_roots is the
// multiset Delta(u',l') whose counts bound the exponents.
struct RegularityInstance {
    RootDatum ambient;
    std::vector<Weight> uprime_roots;
    Weight lambda0;
    Weight lambda;
    unsigned b = 0;
    Rat cX = 0, dX = 0;

    Weight rho_uprime() const;
    static RegularityInstance with_default_anchor(RootDatum ambient,
                                                  std::vector<Weight> uprime_roots,
                                                  Weight lambda); // lambda0 = rho(u')
};

struct RegularityWitness {
    std::size_t weyl_index = 0;
    Weight beta1;
    std::vector<std::pair<Weight, unsigned>> exponents; // (beta_i, n_i) over distinct roots
    std::string to_json() const;
};

struct RegularityResult {
    bool holds = false;
    std::optional<RegularityWitness> witness; // first violator in enumeration order
};

// Condition on K-type highest weights: for every Weyl element w, every
// distinguished beta1 among the distinct elements of Delta(u+u',l'), and
// every exponent assignment n with, for all subsets S,
//   sum_{s in S} n_s <= #{beta in Delta(u',l') : exists i in S,
//                         <beta_i, beta> != 0},
// require
//   |<w(lambda + rho(u')) - lambda0, beta1>| >=
//       1/2 <beta1,beta1> + sum_i (n_i+1)/2 <beta1, beta_i>,
// the sum taken over all distinct roots (set include_beta1_in_sum=false to
// exclude the i=1 term from the sum). max_tuples guards the enumeration.
RegularityResult check_condition_S(const RegularityInstance& inst,
                                   bool include_beta1_in_sum = true,
                                   std::size_t max_tuples = 200000);

// Variant on infinitesimal characters: the exponent assignments satisfy the
// equality sum_i n_i = b * #{beta in Delta(u',l') : exists j, <beta_j, beta>
// != 0} and the left side uses w(lambda) without the rho shift.
RegularityResult check_condition_Sprime(const RegularityInstance& inst,
                                        bool include_beta1_in_sum = true,
                                        std::size_t max_tuples = 200000);

// Every multiplicity obeys m <= cX * prod_{beta in Delta(u')} <lambda +
// rho(u'), beta>^b + dX, exact rational arithmetic.
bool check_multiplicity_bound(const std::map<Weight, Int>& profile,
                              const RegularityInstance& inst);

// JSON config loader for the CLI:
//   { "datum": {...}, "uprime_roots": [[...]], "lambda": [...],
//     "lambda0": [...] (optional, default rho(u')), "b": n,
//     "cX": x, "dX": y }
// with lambda/lambda0 in doubled coordinates.
RegularityInstance regularity_instance_from_json(const std::string& text);

} // namespace charloc
