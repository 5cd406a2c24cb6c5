#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "charloc/numeric.hpp"

namespace charloc {

// Point of the lattice Lambda = (1/2)Lambda0, stored by the integer
// coordinates of 2*lambda in a fixed basis of Lambda0. Coordinates all even
// <=> the point lies in Lambda0; a point h is a square root of a in Lambda0
// iff 2h = a.
struct Weight {
    std::vector<std::int64_t> x2;

    Weight() = default;
    explicit Weight(std::vector<std::int64_t> doubled) : x2(std::move(doubled)) {}

    std::size_t rank() const { return x2.size(); }
    bool in_base_lattice() const {
        for (auto c : x2)
            if (c % 2 != 0) return false;
        return true;
    }
    bool is_zero() const {
        for (auto c : x2)
            if (c != 0) return false;
        return true;
    }

    Weight operator+(const Weight& o) const;
    Weight operator-(const Weight& o) const;
    Weight operator-() const;
    Weight scaled(std::int64_t k) const;
    // Square root in Lambda: defined when all doubled coordinates are even.
    Weight half() const;

    bool operator==(const Weight& o) const { return x2 == o.x2; }
    bool operator!=(const Weight& o) const { return x2 != o.x2; }
    // Canonical (lexicographic) order on doubled coordinates.
    bool operator<(const Weight& o) const;
};

std::ostream& operator<<(std::ostream& os, const Weight& w);

Weight zero_weight(std::size_t rank);

// W_Lambda-invariant bilinear scalar product, given by a symmetric rational
// Gram matrix on the Lambda0 basis, positive definite on Lambda0 (x) R.
struct InnerProduct {
    std::size_t rank = 0;
    std::vector<Rat> gram; // row-major rank x rank

    const Rat& g(std::size_t i, std::size_t j) const { return gram[i * rank + j]; }
    void validate() const; // symmetry + leading principal minors > 0
};

// <lambda, mu> = (2lambda)^T G (2mu) / 4, exact.
Rat pair_weights(const Weight& a, const Weight& b, const InnerProduct& inner);

// Orthogonal reflection w_alpha: lambda - 2<lambda,alpha>/<alpha,alpha> alpha.
// Throws std::domain_error if alpha is isotropic or the image leaves Lambda.
Weight reflect(const Weight& alpha, const Weight& lambda, const InnerProduct& inner);

struct WeylElement {
    RatMatrix mat;       // action on doubled coordinates
    unsigned length = 0; // inversion count
    unsigned word_length = 0; // BFS depth in simple reflections
};

Weight apply_weyl(const WeylElement& w, const Weight& lambda);

// Ambient rank, invariant form, the multiset Delta(u,l) of u-roots with
// rho(u) = half their sum, and the full Weyl group of the root system the
// u-roots generate.
struct RootDatum {
    std::size_t rank = 0;
    InnerProduct inner;
    std::vector<Weight> u_roots; // multiset, each in Lambda0
    Weight rho_u;
    std::vector<WeylElement> weyl_group;

    std::size_t dim_u() const { return u_roots.size(); }
    const WeylElement& longest_element() const;
};

// Simple roots of a positive system: the elements not expressible as a sum
// of two elements of the system.
std::vector<Weight> simple_roots(const std::vector<Weight>& positive_roots);

// Full enumeration by closure under simple reflections. Supported input:
// positive systems of products of type A components (A_n with n <= 4).
// Lengths are inversion counts; word lengths from the BFS are kept so tests
// can compare the two. Throws std::domain_error on unsupported systems or
// if closure exceeds ten times the predicted order.
std::vector<WeylElement> enumerate_weyl_group(const std::vector<Weight>& positive_roots,
                                              const InnerProduct& inner);

// Builds rho(u) and the Weyl group, and checks the datum invariants
// (invariance of the form, permutation of +-Delta).
RootDatum make_root_datum(std::size_t rank, InnerProduct inner, std::vector<Weight> u_roots);

// JSON loaders. Document shape:
//   { "rank": n, "gram": [[...]], "u_roots": [[...]] }
// where u_roots are given in Lambda0 coordinates (halved relative to the
// stored doubled coordinates) and gram entries are integers or [num, den].
RootDatum root_datum_from_json(const std::string& text);
RootDatum root_datum_from_file(const std::string& path);
std::string root_datum_to_json(const RootDatum& datum);

// Weight helper: lambda0-coordinates -> Weight (doubles them).
Weight weight_from_base_coords(const std::vector<std::int64_t>& coords);

} // namespace charloc
