#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace charloc {

// Exact coefficient and scalar types. Ring coefficients are unbounded
// integers; inner products and thresholds are exact rationals.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Int binomial(std::int64_t n, std::int64_t k) {
    if (k < 0 || n < 0 || k > n) return 0;
    if (k > n - k) k = n - k;
    Int r = 1;
    for (std::int64_t i = 0; i < k; ++i) {
        r *= n - i;
        r /= i + 1;
    }
    return r;
}

inline Rat rat_abs(const Rat& x) { return x < 0 ? Rat(-x) : x; }

inline std::int64_t to_int64(const Int& v) {
    if (v < std::numeric_limits<std::int64_t>::min() ||
        v > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("integer exceeds 64 bits");
    return static_cast<std::int64_t>(v);
}

inline Rat rat_pow(Rat base, unsigned e) {
    Rat r = 1;
    while (e) {
        if (e & 1u) r *= base;
        base *= base;
        e >>= 1u;
    }
    return r;
}

// Dense rational matrix, row-major. Small sizes only (rank <= 4 root data,
// window linear systems with a few hundred rows).
class RatMatrix {
public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), a_(rows * cols, Rat(0)) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    RatMatrix operator*(const RatMatrix& o) const {
        if (cols_ != o.rows_) throw std::invalid_argument("RatMatrix: shape mismatch");
        RatMatrix r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const Rat& aik = at(i, k);
                if (aik == 0) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    r.at(i, j) += aik * o.at(k, j);
            }
        return r;
    }

    std::vector<Rat> apply(const std::vector<Rat>& v) const {
        if (v.size() != cols_) throw std::invalid_argument("RatMatrix: vector size mismatch");
        std::vector<Rat> r(rows_, Rat(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (at(i, j) != 0) r[i] += at(i, j) * v[j];
        return r;
    }

    bool operator==(const RatMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

    // Gauss-Jordan inverse; throws on singular input.
    RatMatrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("RatMatrix: inverse of non-square");
        std::size_t n = rows_;
        RatMatrix a = *this;
        RatMatrix inv = identity(n);
        for (std::size_t col = 0; col < n; ++col) {
            std::size_t piv = col;
            while (piv < n && a.at(piv, col) == 0) ++piv;
            if (piv == n) throw std::domain_error("RatMatrix: singular matrix");
            if (piv != col) {
                for (std::size_t j = 0; j < n; ++j) {
                    std::swap(a.at(piv, j), a.at(col, j));
                    std::swap(inv.at(piv, j), inv.at(col, j));
                }
            }
            Rat d = a.at(col, col);
            for (std::size_t j = 0; j < n; ++j) {
                a.at(col, j) /= d;
                inv.at(col, j) /= d;
            }
            for (std::size_t i = 0; i < n; ++i) {
                if (i == col || a.at(i, col) == 0) continue;
                Rat f = a.at(i, col);
                for (std::size_t j = 0; j < n; ++j) {
                    a.at(i, j) -= f * a.at(col, j);
                    inv.at(i, j) -= f * inv.at(col, j);
                }
            }
        }
        return inv;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

// Basis of the right nullspace {x : A x = 0}, one vector per free column.
inline std::vector<std::vector<Rat>> nullspace(RatMatrix a) {
    const std::size_t m = a.rows(), n = a.cols();
    std::vector<std::size_t> pivot_col;
    std::size_t row = 0;
    for (std::size_t col = 0; col < n && row < m; ++col) {
        std::size_t piv = row;
        while (piv < m && a.at(piv, col) == 0) ++piv;
        if (piv == m) continue;
        if (piv != row)
            for (std::size_t j = 0; j < n; ++j) std::swap(a.at(piv, j), a.at(row, j));
        Rat d = a.at(row, col);
        for (std::size_t j = 0; j < n; ++j) a.at(row, j) /= d;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == row || a.at(i, col) == 0) continue;
            Rat f = a.at(i, col);
            for (std::size_t j = 0; j < n; ++j) a.at(i, j) -= f * a.at(row, j);
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : pivot_col) is_pivot[c] = true;
    std::vector<std::vector<Rat>> basis;
    for (std::size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(n, Rat(0));
        v[free] = 1;
        for (std::size_t r = 0; r < pivot_col.size(); ++r)
            v[pivot_col[r]] = -a.at(r, free);
        basis.push_back(std::move(v));
    }
    return basis;
}

// Scale a rational vector to a primitive integer vector.
inline std::vector<Int> clear_denominators(const std::vector<Rat>& v) {
    Int lcm = 1;
    for (const Rat& x : v) {
        Int d = boost::multiprecision::denominator(x);
        lcm = boost::multiprecision::lcm(lcm, d);
    }
    std::vector<Int> out;
    out.reserve(v.size());
    for (const Rat& x : v)
        out.push_back(boost::multiprecision::numerator(x) * (lcm / boost::multiprecision::denominator(x)));
    Int g = 0;
    for (const Int& x : out) g = boost::multiprecision::gcd(g, x);
    if (g > 1)
        for (Int& x : out) x /= g;
    return out;
}

} // namespace charloc
