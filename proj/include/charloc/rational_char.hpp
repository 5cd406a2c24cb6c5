#pragma once

#include <optional>
#include <string>
#include <vector>

#include "charloc/laurent.hpp"

namespace charloc {

// Element of the localization Z[Lambda][W^-1]: a numerator polynomial over a
// multiset of denominator factors, each kept in the shape 1 - [-alpha] and
// identified by its parameter alpha. Equality is by cross-multiplication, so
// representations with different factor shapes (e.g. 1-X^2 vs 1-X^-2 in rank
// one) compare equal exactly when they agree in the localized ring.
class RationalChar {
public:
    RationalChar() = default;
    explicit RationalChar(LaurentPoly num) : num_(std::move(num)) {}
    RationalChar(LaurentPoly num, std::vector<Weight> den_alphas);

    static RationalChar unit(std::size_t rank) {
        return RationalChar(LaurentPoly::unit(rank));
    }
    static RationalChar from_poly(const LaurentPoly& p) { return RationalChar(p); }

    std::size_t rank() const { return num_.rank(); }
    const LaurentPoly& num() const { return num_; }
    // Sorted multiset of factor parameters; factor i is 1 - [-alpha_i].
    const std::vector<Weight>& den_alphas() const { return den_alphas_; }
    LaurentPoly den_poly() const;
    bool den_trivial() const { return den_alphas_.empty(); }

    RationalChar scaled(const Int& c) const;
    // Append denominator factors 1 - [-alpha] (divide by their product).
    RationalChar over_factors(const std::vector<Weight>& alphas) const;

    std::string to_string() const;

private:
    LaurentPoly num_;
    std::vector<Weight> den_alphas_;
};

// The two-term factor 1 - [-alpha].
LaurentPoly den_factor(const Weight& alpha);

RationalChar rc_add(const RationalChar& x, const RationalChar& y);
RationalChar rc_sub(const RationalChar& x, const RationalChar& y);
RationalChar rc_mul(const RationalChar& x, const RationalChar& y);

// Dual: num -> dual(num) * prod_i (-[-alpha_i]); the factor parameters are
// unchanged, absorbing the unit extracted from dualizing each 1 - [-alpha].
RationalChar rc_dual(const RationalChar& x);

// a/b = c/d  iff  a * prod(d) = c * prod(b) in Z[Lambda].
bool rc_eq(const RationalChar& x, const RationalChar& y);

// Exact division of a polynomial by a two-term factor 1 - [-alpha]; returns
// the quotient when it exists in Z[Lambda].
std::optional<LaurentPoly> divide_by_factor(const LaurentPoly& num, const Weight& alpha);

// Divides num(x) by every denominator factor; the finitely supported witness
// p with p * den(x) = num(x), when it exists.
std::optional<LaurentPoly> exact_divide(const RationalChar& x);

// JSON: {"num": <poly>, "den": [<poly>, ...]} with the factors serialized as
// their two-term polynomials.
std::string rational_char_to_json(const RationalChar& x);
RationalChar rational_char_from_json(const std::string& text);

} // namespace charloc
