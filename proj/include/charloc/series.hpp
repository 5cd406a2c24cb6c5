#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "charloc/rational_char.hpp"

namespace charloc {

// Raised when a box is too small to certify a result (distinct from a
// mathematical "false").
struct box_error : std::runtime_error {
    explicit box_error(const std::string& what) : std::runtime_error(what) {}
};

// Componentwise radii in doubled coordinates: the box holds the lattice
// points with |x2_i| <= radius_i.
struct Box {
    std::vector<std::int64_t> radius;

    std::size_t rank() const { return radius.size(); }
    bool contains(const std::vector<std::int64_t>& x2) const {
        for (std::size_t i = 0; i < radius.size(); ++i)
            if (x2[i] < -radius[i] || x2[i] > radius[i]) return false;
        return true;
    }
    bool operator==(const Box& o) const { return radius == o.radius; }
};

// Stand-in for Z[[Lambda]]: a dense integer grid over a box, together with
// the (possibly smaller) region on which the stored coefficients are the
// true ones. Convolution against finite-support factors corrupts a margin
// of the factor's support radius, which is what valid tracks.
class TruncatedSeries {
public:
    TruncatedSeries() = default;
    TruncatedSeries(std::size_t rank, Box box);
    TruncatedSeries(std::size_t rank, Box box, Box valid);

    std::size_t rank() const { return rank_; }
    const Box& box() const { return box_; }
    const Box& valid() const { return valid_; }
    std::size_t cells() const { return data_.size(); }
    const std::vector<std::int64_t>& data() const { return data_; }
    std::vector<std::int64_t>& data() { return data_; }

    std::size_t index_of(const std::vector<std::int64_t>& x2) const;
    std::vector<std::int64_t> coords_of(std::size_t idx) const;
    void decode(std::size_t idx, std::vector<std::int64_t>& x2) const;

    std::int64_t at(const std::vector<std::int64_t>& x2) const {
        return box_.contains(x2) ? data_[index_of(x2)] : 0;
    }
    void set(const std::vector<std::int64_t>& x2, std::int64_t v) { data_[index_of(x2)] = v; }

    bool in_valid(const std::vector<std::int64_t>& x2) const {
        for (std::size_t i = 0; i < rank_; ++i)
            if (x2[i] < -valid_.radius[i] || x2[i] > valid_.radius[i]) return false;
        return true;
    }

    void shrink_valid(const std::vector<std::int64_t>& margin);

    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    TruncatedSeries scaled(std::int64_t c) const;

    bool zero_on_valid() const;
    std::int64_t max_abs_on_valid() const;

    // Coefficients equal on the intersection of the two valid regions.
    static bool equal_on_common_valid(const TruncatedSeries& a, const TruncatedSeries& b);

    // Dump format: "rank", "box", "valid" headers, then the dense grid
    // row-major over doubled coordinates (last coordinate fastest).
    void dump(std::ostream& os) const;
    static TruncatedSeries parse(std::istream& is);

private:
    std::size_t rank_ = 0;
    Box box_, valid_;
    std::vector<std::int64_t> stride_;
    std::vector<std::int64_t> data_;
};

// Exact embedding of a polynomial: throws box_error when the support does
// not fit. The whole box is valid.
TruncatedSeries series_from_poly(const LaurentPoly& p, Box box);

// Convolution with a finite polynomial. The valid region shrinks by the
// factor's support radius in every touched direction. OpenMP-parallel over
// output cells; mul_poly_serial is the reference implementation kept for
// testing and benchmarking.
TruncatedSeries mul_poly(const TruncatedSeries& s, const LaurentPoly& p);
TruncatedSeries mul_poly_serial(const TruncatedSeries& s, const LaurentPoly& p);

// s_alpha = alpha^(1/2) sum_{k>=0} alpha^k: ones along the odd multiples of
// the half-root. alpha must be a nonzero Lambda0 point.
TruncatedSeries geometric_s(const Weight& alpha, Box box);

// d_{alpha,+-} = alpha^(-1/2) +- alpha^(1/2).
LaurentPoly d_factor(const Weight& alpha, bool plus);

// y_alpha^(n) = s^n + (-1)^(n+1) (w s)^n, by its closed binomial form; with
// plus=true the d_{alpha,+} multiple of it (again closed form, so products
// against d-factors stay meaningful cross-checks). Optional lattice shift.
TruncatedSeries kernel_y(const Weight& alpha, unsigned n, bool plus, Box box,
                         const Weight* shift = nullptr);

// Collection (alpha_i, n_i) with pairwise distinct, linearly independent
// alphas.
struct KernelSpec {
    std::vector<Weight> alphas;
    std::vector<unsigned> exponents;

    std::size_t count() const { return alphas.size(); }
    void validate() const;
    LaurentPoly annihilator() const; // prod d_{alpha_i,-}^{n_i}
};

// prod_i s_{alpha_i}^{n_i} + (-1)^(1+sum n_i) prod_i (w s)_{alpha_i}^{n_i},
// filled cell by cell from the closed form. Optional lattice shift.
TruncatedSeries kernel_y_mixed(const KernelSpec& spec, Box box, const Weight* shift = nullptr);

// True iff prod d_{alpha_i,-}^{n_i} * z vanishes on the shrunken valid box.
// Throws box_error when the valid region cannot absorb the annihilator's
// support radius.
bool annihilation_check(const KernelSpec& spec, const TruncatedSeries& z);

// Window membership for the kernel uniqueness test: lambda lies in the
// window around lambda0 iff for some i
//   |<lambda - lambda0, alpha_i>| <
//       (n_i+1)/2 <alpha_i,alpha_i> + sum_{j != i} n_j/2 <alpha_i,alpha_j>.
bool window_contains(const KernelSpec& spec, const InnerProduct& inner, const Weight& lambda0,
                     const std::vector<std::int64_t>& x2);

// All window points inside a region box.
std::vector<std::vector<std::int64_t>> window_points(const KernelSpec& spec,
                                                     const InnerProduct& inner,
                                                     const Weight& lambda0, const Box& region);

enum class WindowVerdict {
    Zero,                 // vanishes on the window, hence (checked) everywhere
    NonzeroWithWindowHit, // some window coefficient is nonzero
    TheoremFalsified,     // window-vanishing but nonzero outside: test failure
    Undecidable           // box smaller than the window
};

const char* to_string(WindowVerdict v);

// Requires z in the kernel (annihilation_check true is asserted).
WindowVerdict window_uniqueness_check(const KernelSpec& spec, const InnerProduct& inner,
                                      const Weight& lambda0, const TruncatedSeries& z);

// Geometric expansion of a rational character, every denominator factor
// expanded toward positive <., direction>. Reads only the exact numerator,
// so the result is the exact truncation and the whole box is valid.
// Throws std::domain_error when direction is orthogonal to some factor.
TruncatedSeries expand_rational(const RationalChar& x, const Weight& direction,
                                const InnerProduct& inner, Box box);
TruncatedSeries expand_rational_serial(const RationalChar& x, const Weight& direction,
                                       const InnerProduct& inner, Box box);

struct FinitenessReport {
    bool finite = false;
    bool boundary_touching = false; // undecidable at this box, folded into false
};

// (beta_1,...,beta_r)-finiteness within the truncation: support orbits under
// the beta-lattice must stay clear of the valid-box boundary.
FinitenessReport beta_finiteness(const TruncatedSeries& z, const std::vector<Weight>& betas);

} // namespace charloc
