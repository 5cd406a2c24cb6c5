#pragma once

#include <map>
#include <optional>
#include <string>

#include "charloc/lattice.hpp"
#include "charloc/numeric.hpp"

namespace charloc {

// Element of the group ring Z[Lambda]: finitely supported integer
// coefficients on lattice points, no stored zeros. Terms iterate in the
// canonical (lexicographic on doubled coordinates) order, which also fixes
// the JSON serialization.
class LaurentPoly {
public:
    LaurentPoly() : rank_(0) {}
    explicit LaurentPoly(std::size_t rank) : rank_(rank) {}

    static LaurentPoly unit(std::size_t rank) {
        LaurentPoly p(rank);
        p.add_term(zero_weight(rank), 1);
        return p;
    }
    static LaurentPoly monomial(const Weight& w, Int c = 1) {
        LaurentPoly p(w.rank());
        p.add_term(w, std::move(c));
        return p;
    }

    std::size_t rank() const { return rank_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Weight, Int>& terms() const { return terms_; }

    Int coeff(const Weight& w) const {
        auto it = terms_.find(w);
        return it == terms_.end() ? Int(0) : it->second;
    }

    void add_term(const Weight& w, Int c);

    LaurentPoly operator+(const LaurentPoly& o) const;
    LaurentPoly operator-(const LaurentPoly& o) const;
    LaurentPoly operator-() const;
    LaurentPoly operator*(const LaurentPoly& o) const; // convolution
    LaurentPoly scaled(const Int& c) const;
    LaurentPoly shifted(const Weight& w) const; // multiply by the monomial [w]

    // nu -> -nu termwise; an involution and a ring isomorphism.
    LaurentPoly dual() const;

    // Sum of all coefficients (total multiplicity mass).
    Int mass() const;

    bool operator==(const LaurentPoly& o) const {
        return rank_ == o.rank_ && terms_ == o.terms_;
    }
    bool operator!=(const LaurentPoly& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    std::size_t rank_;
    std::map<Weight, Int> terms_;
};

// Pushforward along a lattice homomorphism Lambda -> Lambda', given by an
// integer matrix acting on doubled coordinates; collisions sum.
LaurentPoly restrict_weights(const std::vector<std::vector<std::int64_t>>& map_matrix,
                             const LaurentPoly& a);

// Weyl element W_q = prod_{alpha in Delta(u,l)} (1 - [-alpha]).
LaurentPoly weyl_element(const RootDatum& datum);

// The same element from its exterior-power expansion
// sum_q (-1)^q [Lambda^q u*], for cross-checking against the root product.
LaurentPoly weyl_element_from_exterior_powers(const RootDatum& datum);

// JSON: {"terms": [{"w2": [...], "c": n}, ...]} in canonical term order.
// Coefficients that fit in 64 bits serialize as numbers, larger ones as
// decimal strings.
std::string laurent_to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const std::string& text);

} // namespace charloc
