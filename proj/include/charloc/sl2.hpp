#pragma once

#include <string>
#include <utility>
#include <vector>

#include "charloc/series.hpp"
#include "charloc/weyl_kostant.hpp"

namespace charloc {
namespace sl2 {

// (sl2, SO(2)) catalogue. SO(2)-types are indexed by integers m (the
// character m*alpha, alpha the generator); the u-root is 2*alpha.
enum class Kind { Finite, DiscretePlus, DiscreteMinus };

struct Sl2Module {
    Kind kind;
    std::int64_t k;

    void validate() const;
    std::string to_string() const;
};

Sl2Module finite(std::int64_t k);
Sl2Module discrete_plus(std::int64_t k);
Sl2Module discrete_minus(std::int64_t k);
Sl2Module parse_module(const std::string& text); // "F:2", "D+:5", "D-:3"

// The rank-1 root datum: <alpha,alpha> = 1, Delta(u) = {2 alpha}.
const RootDatum& datum();
// Generator weights.
Weight alpha_gen();  // alpha (doubled coords [2])
Weight alpha_root(); // 2 alpha, the root used by the series layer

// Weight of the SO(2)-type m.
Weight so2_type(std::int64_t m);

// Box over SO(2)-type units: |m| <= n covers doubled coordinates |x2| <= 2n.
Box so2_box(std::int64_t n);

// Characters: Finite(k) via the Weyl formula (numerator X^k - X^-(k+2) over
// 1 - X^-2), DiscretePlus(k) = X^k/(1-X^2), DiscreteMinus(k) its dual.
RationalChar sl2_character(const Sl2Module& m);

// The one-sided restriction series of a module on the given box.
TruncatedSeries module_series(const Sl2Module& m, std::int64_t box_n);

struct TensorDecomposition {
    bool not_discretely_decomposable = false;
    std::string reason;
    // complete: the listed parts sum exactly to the product character
    // (rc_eq); false means a discrete decomposition truncated at the box.
    bool complete = false;
    std::vector<std::pair<Sl2Module, Int>> parts;
};

TensorDecomposition tensor_decompose(const Sl2Module& a, const Sl2Module& b);

// Blattner series of D_k: ones at k, k+2, k+4, ... within the box.
TruncatedSeries blattner(std::int64_t k, std::int64_t box_n);

// The displayed kernel relation: the Blattner expansion of the D_1 character
// minus its opposite-cone expansion (which is -[D_{-1}|]) assembles the
// two-sided comb, compared exactly against y_alpha^(1). Requires box_n >= 4.
bool kernel_relation_check(std::int64_t box_n);

using Sl2Combination = std::vector<std::pair<Sl2Module, std::int64_t>>;

struct MultiplicityProfile {
    Int even_max = 0;
    Int odd_max = 0;
};

// Per-parity maximum absolute SO(2)-multiplicity of the expanded restriction
// within the box.
MultiplicityProfile multiplicity_profile(const Sl2Combination& combo, std::int64_t box_n);

} // namespace sl2
} // namespace charloc
