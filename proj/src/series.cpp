#include "charloc/series.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace charloc {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("series addition overflow");
    return r;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("series multiply overflow");
    return r;
}

std::vector<std::int64_t> poly_radius(const LaurentPoly& p) {
    std::vector<std::int64_t> r(p.rank(), 0);
    for (const auto& [w, c] : p.terms())
        for (std::size_t i = 0; i < p.rank(); ++i)
            r[i] = std::max<std::int64_t>(r[i], std::llabs(w.x2[i]));
    return r;
}

} // namespace

TruncatedSeries::TruncatedSeries(std::size_t rank, Box box)
    : TruncatedSeries(rank, box, box) {}

TruncatedSeries::TruncatedSeries(std::size_t rank, Box box, Box valid)
    : rank_(rank), box_(std::move(box)), valid_(std::move(valid)) {
    if (box_.rank() != rank_ || valid_.rank() != rank_)
        throw std::invalid_argument("TruncatedSeries: box rank mismatch");
    for (std::size_t i = 0; i < rank_; ++i) {
        if (box_.radius[i] < 0) throw std::invalid_argument("TruncatedSeries: negative radius");
        if (valid_.radius[i] > box_.radius[i])
            throw std::invalid_argument("TruncatedSeries: valid box exceeds box");
    }
    stride_.assign(rank_, 1);
    std::size_t total = 1;
    for (std::size_t i = rank_; i-- > 0;) {
        stride_[i] = static_cast<std::int64_t>(total);
        total *= static_cast<std::size_t>(2 * box_.radius[i] + 1);
    }
    data_.assign(total, 0);
}

std::size_t TruncatedSeries::index_of(const std::vector<std::int64_t>& x2) const {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rank_; ++i)
        idx += static_cast<std::size_t>((x2[i] + box_.radius[i]) * stride_[i]);
    return idx;
}

void TruncatedSeries::decode(std::size_t idx, std::vector<std::int64_t>& x2) const {
    x2.resize(rank_);
    for (std::size_t i = 0; i < rank_; ++i) {
        std::size_t q = idx / static_cast<std::size_t>(stride_[i]);
        idx %= static_cast<std::size_t>(stride_[i]);
        x2[i] = static_cast<std::int64_t>(q) - box_.radius[i];
    }
}

std::vector<std::int64_t> TruncatedSeries::coords_of(std::size_t idx) const {
    std::vector<std::int64_t> x2;
    decode(idx, x2);
    return x2;
}

void TruncatedSeries::shrink_valid(const std::vector<std::int64_t>& margin) {
    for (std::size_t i = 0; i < rank_; ++i) {
        valid_.radius[i] -= margin[i];
        if (valid_.radius[i] < 0)
            throw box_error("valid region exhausted: box too small for this operation");
    }
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    if (!(box_ == o.box_)) throw std::invalid_argument("series add: box mismatch");
    Box v = valid_;
    for (std::size_t i = 0; i < rank_; ++i)
        v.radius[i] = std::min(v.radius[i], o.valid_.radius[i]);
    TruncatedSeries r(rank_, box_, v);
    for (std::size_t i = 0; i < data_.size(); ++i)
        r.data_[i] = checked_add(data_[i], o.data_[i]);
    return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    return *this + o.scaled(-1);
}

TruncatedSeries TruncatedSeries::scaled(std::int64_t c) const {
    TruncatedSeries r(rank_, box_, valid_);
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] = checked_mul(data_[i], c);
    return r;
}

bool TruncatedSeries::zero_on_valid() const {
    std::vector<std::int64_t> x2;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (data_[i] == 0) continue;
        decode(i, x2);
        if (in_valid(x2)) return false;
    }
    return true;
}

std::int64_t TruncatedSeries::max_abs_on_valid() const {
    std::int64_t m = 0;
    std::vector<std::int64_t> x2;
    for (std::size_t i = 0; i < data_.size(); ++i) {
        if (data_[i] == 0) continue;
        decode(i, x2);
        if (in_valid(x2)) m = std::max<std::int64_t>(m, std::llabs(data_[i]));
    }
    return m;
}

bool TruncatedSeries::equal_on_common_valid(const TruncatedSeries& a, const TruncatedSeries& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("series compare: rank mismatch");
    Box common;
    common.radius.resize(a.rank());
    for (std::size_t i = 0; i < a.rank(); ++i)
        common.radius[i] = std::min(a.valid_.radius[i], b.valid_.radius[i]);
    std::vector<std::int64_t> x2(a.rank(), -0);
    // iterate the common region
    for (std::size_t i = 0; i < a.rank(); ++i) x2[i] = -common.radius[i];
    while (true) {
        if (a.at(x2) != b.at(x2)) return false;
        std::size_t i = a.rank();
        while (i-- > 0) {
            if (x2[i] < common.radius[i]) {
                ++x2[i];
                break;
            }
            x2[i] = -common.radius[i];
            if (i == 0) return true;
        }
        if (a.rank() == 0) return true;
    }
}

void TruncatedSeries::dump(std::ostream& os) const {
    os << "rank " << rank_ << "\n";
    os << "box";
    for (auto r : box_.radius) os << " " << r;
    os << "\nvalid";
    for (auto r : valid_.radius) os << " " << r;
    os << "\n";
    std::size_t row = rank_ == 0 ? 1 : static_cast<std::size_t>(2 * box_.radius.back() + 1);
    for (std::size_t i = 0; i < data_.size(); ++i) {
        os << data_[i];
        os << (((i + 1) % row == 0) ? "\n" : " ");
    }
}

TruncatedSeries TruncatedSeries::parse(std::istream& is) {
    std::string tag;
    std::size_t rank;
    is >> tag >> rank;
    if (tag != "rank") throw std::invalid_argument("series parse: missing rank header");
    Box box, valid;
    is >> tag;
    if (tag != "box") throw std::invalid_argument("series parse: missing box header");
    box.radius.resize(rank);
    for (auto& r : box.radius) is >> r;
    is >> tag;
    if (tag != "valid") throw std::invalid_argument("series parse: missing valid header");
    valid.radius.resize(rank);
    for (auto& r : valid.radius) is >> r;
    TruncatedSeries s(rank, box, valid);
    for (auto& v : s.data_) is >> v;
    if (!is) throw std::invalid_argument("series parse: truncated grid");
    return s;
}

TruncatedSeries series_from_poly(const LaurentPoly& p, Box box) {
    TruncatedSeries s(p.rank(), std::move(box));
    for (const auto& [w, c] : p.terms()) {
        if (!s.box().contains(w.x2)) throw box_error("series embedding: support exceeds box");
        s.set(w.x2, to_int64(c));
    }
    return s;
}

namespace {

struct PolyTerm {
    std::vector<std::int64_t> x2;
    std::int64_t c;
};

std::vector<PolyTerm> flatten(const LaurentPoly& p) {
    std::vector<PolyTerm> t;
    t.reserve(p.term_count());
    for (const auto& [w, c] : p.terms()) t.push_back({w.x2, to_int64(c)});
    return t;
}

} // namespace

TruncatedSeries mul_poly(const TruncatedSeries& s, const LaurentPoly& p) {
    if (s.rank() != p.rank()) throw std::invalid_argument("mul_poly: rank mismatch");
    TruncatedSeries out(s.rank(), s.box(), s.valid());
    out.shrink_valid(poly_radius(p));
    const auto terms = flatten(p);
    const std::int64_t n = static_cast<std::int64_t>(out.cells());
#pragma omp parallel
    {
        std::vector<std::int64_t> x2(s.rank()), y(s.rank());
#pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < n; ++idx) {
            out.decode(static_cast<std::size_t>(idx), x2);
            std::int64_t acc = 0;
            for (const PolyTerm& t : terms) {
                for (std::size_t i = 0; i < x2.size(); ++i) y[i] = x2[i] - t.x2[i];
                acc = checked_add(acc, checked_mul(t.c, s.at(y)));
            }
            out.data()[static_cast<std::size_t>(idx)] = acc;
        }
    }
    return out;
}

TruncatedSeries mul_poly_serial(const TruncatedSeries& s, const LaurentPoly& p) {
    if (s.rank() != p.rank()) throw std::invalid_argument("mul_poly: rank mismatch");
    TruncatedSeries out(s.rank(), s.box(), s.valid());
    out.shrink_valid(poly_radius(p));
    std::vector<std::int64_t> x2, y(s.rank());
    for (const auto& [w, c] : p.terms()) {
        std::int64_t ci = to_int64(c);
        for (std::size_t idx = 0; idx < out.cells(); ++idx) {
            out.decode(idx, x2);
            for (std::size_t i = 0; i < x2.size(); ++i) y[i] = x2[i] - w.x2[i];
            out.data()[idx] = checked_add(out.data()[idx], checked_mul(ci, s.at(y)));
        }
    }
    return out;
}

namespace {

// Exact solver for H c = x with linearly independent integer columns h_i:
// c = (H^T H)^{-1} H^T x, precomputed as an integer matrix over a common
// denominator.
struct ColumnSolver {
    std::size_t rank, r;
    std::vector<std::int64_t> h;    // rank x r, column-major
    std::vector<std::int64_t> pint; // r x rank
    std::int64_t denom = 1;

    ColumnSolver(const std::vector<std::vector<std::int64_t>>& cols, std::size_t ambient_rank)
        : rank(ambient_rank), r(cols.size()) {
        h.assign(rank * r, 0);
        for (std::size_t j = 0; j < r; ++j)
            for (std::size_t i = 0; i < rank; ++i) h[i * r + j] = cols[j][i];
        RatMatrix H(rank, r);
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < r; ++j) H.at(i, j) = h[i * r + j];
        RatMatrix Ht(r, rank);
        for (std::size_t i = 0; i < rank; ++i)
            for (std::size_t j = 0; j < r; ++j) Ht.at(j, i) = H.at(i, j);
        RatMatrix gram = Ht * H;
        RatMatrix P;
        try {
            P = gram.inverse() * Ht;
        } catch (const std::domain_error&) {
            throw std::invalid_argument("kernel generators: roots not linearly independent");
        }
        Int lcm = 1;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < rank; ++j)
                lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(P.at(i, j)));
        denom = to_int64(lcm);
        pint.assign(r * rank, 0);
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < rank; ++j) {
                Rat scaled = P.at(i, j) * lcm;
                pint[i * rank + j] = to_int64(boost::multiprecision::numerator(scaled));
            }
    }

    // true iff x lies in the column lattice; c receives integer coordinates
    bool solve(const std::vector<std::int64_t>& x, std::vector<std::int64_t>& c) const {
        c.assign(r, 0);
        for (std::size_t i = 0; i < r; ++i) {
            std::int64_t acc = 0;
            for (std::size_t j = 0; j < rank; ++j)
                acc = checked_add(acc, checked_mul(pint[i * rank + j], x[j]));
            if (acc % denom != 0) return false;
            c[i] = acc / denom;
        }
        // verify (catches points outside the column span)
        for (std::size_t j = 0; j < rank; ++j) {
            std::int64_t acc = 0;
            for (std::size_t i = 0; i < r; ++i)
                acc = checked_add(acc, checked_mul(h[j * r + i], c[i]));
            if (acc != x[j]) return false;
        }
        return true;
    }
};

std::vector<std::int64_t> half_root(const Weight& alpha) {
    if (alpha.is_zero()) throw std::invalid_argument("zero root");
    if (!alpha.in_base_lattice()) throw std::invalid_argument("root not in Lambda0");
    std::vector<std::int64_t> h(alpha.rank());
    for (std::size_t i = 0; i < alpha.rank(); ++i) h[i] = alpha.x2[i] / 2;
    return h;
}

std::int64_t binom64(std::int64_t n, std::int64_t k) { return to_int64(binomial(n, k)); }

// plus-family coefficient: C(n-1+i, n-1) + C(n-2+i, n-1)
std::int64_t plus_coeff(unsigned n, std::int64_t i) {
    return checked_add(binom64(static_cast<std::int64_t>(n) - 1 + i, n - 1),
                       binom64(static_cast<std::int64_t>(n) - 2 + i, n - 1));
}

} // namespace

TruncatedSeries geometric_s(const Weight& alpha, Box box) {
    auto h = half_root(alpha);
    TruncatedSeries s(alpha.rank(), std::move(box));
    ColumnSolver solver({h}, alpha.rank());
    const std::int64_t n = static_cast<std::int64_t>(s.cells());
#pragma omp parallel
    {
        std::vector<std::int64_t> x2(s.rank()), c;
#pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < n; ++idx) {
            s.decode(static_cast<std::size_t>(idx), x2);
            if (!solver.solve(x2, c)) continue;
            if (c[0] >= 1 && c[0] % 2 == 1) s.data()[static_cast<std::size_t>(idx)] = 1;
        }
    }
    return s;
}

LaurentPoly d_factor(const Weight& alpha, bool plus) {
    auto h = half_root(alpha);
    Weight hw(h);
    LaurentPoly p(alpha.rank());
    p.add_term(-hw, 1);
    p.add_term(hw, plus ? 1 : -1);
    return p;
}

TruncatedSeries kernel_y(const Weight& alpha, unsigned n, bool plus, Box box,
                         const Weight* shift) {
    if (n < 1) throw std::invalid_argument("kernel_y: exponent must be >= 1");
    auto h = half_root(alpha);
    TruncatedSeries s(alpha.rank(), std::move(box));
    ColumnSolver solver({h}, alpha.rank());
    const std::int64_t mirror_sign = (n % 2 == 0) ? -1 : 1; // (-1)^(n+1)
    const std::int64_t cells = static_cast<std::int64_t>(s.cells());
    std::vector<std::int64_t> base(alpha.rank(), 0);
    if (shift) base = shift->x2;
#pragma omp parallel
    {
        std::vector<std::int64_t> x2(s.rank()), c, rel(s.rank());
#pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < cells; ++idx) {
            s.decode(static_cast<std::size_t>(idx), x2);
            for (std::size_t i = 0; i < s.rank(); ++i) rel[i] = x2[i] - base[i];
            if (!solver.solve(rel, c)) continue;
            std::int64_t v = 0;
            const std::int64_t nn = static_cast<std::int64_t>(n);
            if (!plus) {
                // support at (n+2k) h and its mirror, coefficient C(n-1+k, n-1)
                if (c[0] >= nn && (c[0] - nn) % 2 == 0)
                    v = checked_add(v, binom64(nn - 1 + (c[0] - nn) / 2, nn - 1));
                if (-c[0] >= nn && (-c[0] - nn) % 2 == 0)
                    v = checked_add(v, mirror_sign * binom64(nn - 1 + (-c[0] - nn) / 2, nn - 1));
            } else {
                if (c[0] >= nn - 1 && (c[0] - (nn - 1)) % 2 == 0)
                    v = checked_add(v, plus_coeff(n, (c[0] - (nn - 1)) / 2));
                if (-c[0] >= nn - 1 && (-c[0] - (nn - 1)) % 2 == 0)
                    v = checked_add(v, mirror_sign * plus_coeff(n, (-c[0] - (nn - 1)) / 2));
            }
            s.data()[static_cast<std::size_t>(idx)] = v;
        }
    }
    return s;
}

void KernelSpec::validate() const {
    if (alphas.size() != exponents.size())
        throw std::invalid_argument("KernelSpec: alphas/exponents size mismatch");
    if (alphas.empty()) throw std::invalid_argument("KernelSpec: empty");
    for (unsigned n : exponents)
        if (n < 1) throw std::invalid_argument("KernelSpec: exponent must be >= 1");
    for (std::size_t i = 0; i < alphas.size(); ++i)
        for (std::size_t j = i + 1; j < alphas.size(); ++j)
            if (alphas[i] == alphas[j]) throw std::invalid_argument("KernelSpec: overlapping alphas");
}

LaurentPoly KernelSpec::annihilator() const {
    validate();
    LaurentPoly p = LaurentPoly::unit(alphas.front().rank());
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        LaurentPoly d = d_factor(alphas[i], false);
        for (unsigned k = 0; k < exponents[i]; ++k) p = p * d;
    }
    return p;
}

TruncatedSeries kernel_y_mixed(const KernelSpec& spec, Box box, const Weight* shift) {
    spec.validate();
    const std::size_t rank = spec.alphas.front().rank();
    std::vector<std::vector<std::int64_t>> cols;
    for (const Weight& a : spec.alphas) cols.push_back(half_root(a));
    ColumnSolver solver(cols, rank);
    unsigned total_n = 0;
    for (unsigned n : spec.exponents) total_n += n;
    const std::int64_t mirror_sign = (total_n % 2 == 0) ? -1 : 1; // (-1)^(1+sum n)
    TruncatedSeries s(rank, std::move(box));
    std::vector<std::int64_t> base(rank, 0);
    if (shift) base = shift->x2;
    const std::int64_t cells = static_cast<std::int64_t>(s.cells());
#pragma omp parallel
    {
        std::vector<std::int64_t> x2(rank), rel(rank), target(rank), c;
#pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < cells; ++idx) {
            s.decode(static_cast<std::size_t>(idx), x2);
            for (std::size_t i = 0; i < rank; ++i) rel[i] = x2[i] - base[i];
            std::int64_t v = 0;
            for (int side = 0; side < 2; ++side) {
                for (std::size_t i = 0; i < rank; ++i)
                    target[i] = side == 0 ? rel[i] : -rel[i];
                if (!solver.solve(target, c)) continue;
                std::int64_t prod = 1;
                bool ok = true;
                for (std::size_t i = 0; i < spec.count(); ++i) {
                    const std::int64_t n = spec.exponents[i];
                    if (c[i] < n || (c[i] - n) % 2 != 0) {
                        ok = false;
                        break;
                    }
                    prod = checked_mul(prod, binom64(n - 1 + (c[i] - n) / 2, n - 1));
                }
                if (ok) v = checked_add(v, side == 0 ? prod : mirror_sign * prod);
            }
            s.data()[static_cast<std::size_t>(idx)] = v;
        }
    }
    return s;
}

bool annihilation_check(const KernelSpec& spec, const TruncatedSeries& z) {
    LaurentPoly ann = spec.annihilator();
    // mul_poly throws box_error when the valid region cannot absorb the
    // annihilator radius, which is exactly the undecidable case here.
    TruncatedSeries w = mul_poly(z, ann);
    return w.zero_on_valid();
}

namespace {

std::vector<Rat> window_bounds(const KernelSpec& spec, const InnerProduct& inner) {
    std::vector<Rat> bounds;
    for (std::size_t i = 0; i < spec.count(); ++i) {
        Rat b = Rat(spec.exponents[i] + 1) / 2 * pair_weights(spec.alphas[i], spec.alphas[i], inner);
        for (std::size_t j = 0; j < spec.count(); ++j) {
            if (j == i) continue;
            b += Rat(spec.exponents[j]) / 2 * pair_weights(spec.alphas[i], spec.alphas[j], inner);
        }
        bounds.push_back(b);
    }
    return bounds;
}

} // namespace

bool window_contains(const KernelSpec& spec, const InnerProduct& inner, const Weight& lambda0,
                     const std::vector<std::int64_t>& x2) {
    std::vector<Rat> bounds = window_bounds(spec, inner);
    Weight lambda{x2};
    for (std::size_t i = 0; i < spec.count(); ++i) {
        Rat v = pair_weights(lambda - lambda0, spec.alphas[i], inner);
        if (rat_abs(v) < bounds[i]) return true;
    }
    return false;
}

std::vector<std::vector<std::int64_t>> window_points(const KernelSpec& spec,
                                                     const InnerProduct& inner,
                                                     const Weight& lambda0, const Box& region) {
    std::vector<std::vector<std::int64_t>> pts;
    TruncatedSeries probe(region.rank(), region); // for cell iteration only
    std::vector<std::int64_t> x2;
    for (std::size_t idx = 0; idx < probe.cells(); ++idx) {
        probe.decode(idx, x2);
        if (window_contains(spec, inner, lambda0, x2)) pts.push_back(x2);
    }
    return pts;
}

const char* to_string(WindowVerdict v) {
    switch (v) {
        case WindowVerdict::Zero: return "zero";
        case WindowVerdict::NonzeroWithWindowHit: return "nonzero-with-window-hit";
        case WindowVerdict::TheoremFalsified: return "theorem-falsified";
        case WindowVerdict::Undecidable: return "undecidable";
    }
    return "?";
}

WindowVerdict window_uniqueness_check(const KernelSpec& spec, const InnerProduct& inner,
                                      const Weight& lambda0, const TruncatedSeries& z) {
    spec.validate();
    // the valid box must reach past the window in every constrained direction
    std::vector<Rat> bounds = window_bounds(spec, inner);
    for (std::size_t i = 0; i < spec.count(); ++i) {
        // max |<x/2 - lambda0, alpha_i>| over the valid box
        Rat reach = rat_abs(pair_weights(lambda0, spec.alphas[i], inner));
        for (std::size_t j = 0; j < z.rank(); ++j) {
            Weight ej(std::vector<std::int64_t>(z.rank(), 0));
            ej.x2[j] = 1;
            reach += rat_abs(pair_weights(ej, spec.alphas[i], inner)) * z.valid().radius[j];
        }
        if (reach < bounds[i]) return WindowVerdict::Undecidable;
    }
    if (!annihilation_check(spec, z))
        throw std::invalid_argument("window_uniqueness_check: z is not a kernel element");

    bool window_hit = false;
    std::vector<std::int64_t> x2;
    for (std::size_t idx = 0; idx < z.cells(); ++idx) {
        if (z.data()[idx] == 0) continue;
        z.decode(idx, x2);
        if (!z.in_valid(x2)) continue;
        if (window_contains(spec, inner, lambda0, x2)) {
            window_hit = true;
            break;
        }
    }
    if (window_hit) return WindowVerdict::NonzeroWithWindowHit;
    return z.zero_on_valid() ? WindowVerdict::Zero : WindowVerdict::TheoremFalsified;
}

namespace {

struct ExpansionPlan {
    std::size_t rank = 0;
    std::int64_t sign = 1;
    std::vector<std::vector<std::int64_t>> steps; // per factor, doubled coords
    std::vector<std::int64_t> start;              // first exponent (0 or 1)
    // numerator on a dense sub-grid
    std::vector<std::int64_t> nmin, nmax, nstride;
    std::vector<std::int64_t> ngrid;
    // direction functional with cleared denominators
    std::vector<std::int64_t> phi;
    std::int64_t phi_min = 0;

    std::int64_t phi_of(const std::vector<std::int64_t>& x) const {
        std::int64_t acc = 0;
        for (std::size_t i = 0; i < rank; ++i) acc = checked_add(acc, checked_mul(phi[i], x[i]));
        return acc;
    }

    std::int64_t num_at(const std::vector<std::int64_t>& x) const {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < rank; ++i) {
            if (x[i] < nmin[i] || x[i] > nmax[i]) return 0;
            idx += static_cast<std::size_t>((x[i] - nmin[i]) * nstride[i]);
        }
        return ngrid[idx];
    }
};

ExpansionPlan make_plan(const RationalChar& x, const Weight& direction,
                        const InnerProduct& inner, std::size_t rank) {
    ExpansionPlan plan;
    plan.rank = rank;

    // integer functional proportional to <., direction>
    std::vector<Rat> v(rank);
    Int lcm = 1;
    for (std::size_t i = 0; i < rank; ++i) {
        Weight ej(std::vector<std::int64_t>(rank, 0));
        ej.x2[i] = 1;
        v[i] = pair_weights(ej, direction, inner);
        lcm = boost::multiprecision::lcm(lcm, boost::multiprecision::denominator(v[i]));
    }
    plan.phi.resize(rank);
    for (std::size_t i = 0; i < rank; ++i)
        plan.phi[i] = to_int64(boost::multiprecision::numerator(Rat(v[i] * lcm)));

    for (const Weight& alpha : x.den_alphas()) {
        Rat s = pair_weights(alpha, direction, inner);
        if (s == 0) throw std::domain_error("expand_rational: direction orthogonal to a factor");
        std::vector<std::int64_t> step(rank);
        if (s < 0) {
            // 1/(1-[-a]) = sum_{k>=0} [-a]^k, support climbing in direction
            for (std::size_t i = 0; i < rank; ++i) step[i] = -alpha.x2[i];
            plan.start.push_back(0);
        } else {
            // 1/(1-[-a]) = -[a]/(1-[a]) = -sum_{k>=1} [a]^k
            for (std::size_t i = 0; i < rank; ++i) step[i] = alpha.x2[i];
            plan.start.push_back(1);
            plan.sign = -plan.sign;
        }
        plan.steps.push_back(std::move(step));
    }

    // numerator sub-grid
    const LaurentPoly& num = x.num();
    plan.nmin.assign(rank, 0);
    plan.nmax.assign(rank, 0);
    bool first = true;
    for (const auto& [w, c] : num.terms()) {
        for (std::size_t i = 0; i < rank; ++i) {
            if (first || w.x2[i] < plan.nmin[i]) plan.nmin[i] = w.x2[i];
            if (first || w.x2[i] > plan.nmax[i]) plan.nmax[i] = w.x2[i];
        }
        first = false;
    }
    plan.nstride.assign(rank, 1);
    std::size_t total = 1;
    for (std::size_t i = rank; i-- > 0;) {
        plan.nstride[i] = static_cast<std::int64_t>(total);
        total *= static_cast<std::size_t>(plan.nmax[i] - plan.nmin[i] + 1);
    }
    plan.ngrid.assign(num.is_zero() ? 1 : total, 0);
    plan.phi_min = 0;
    first = true;
    for (const auto& [w, c] : num.terms()) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < rank; ++i)
            idx += static_cast<std::size_t>((w.x2[i] - plan.nmin[i]) * plan.nstride[i]);
        plan.ngrid[idx] = to_int64(c);
        std::int64_t pv = plan.phi_of(w.x2);
        if (first || pv < plan.phi_min) plan.phi_min = pv;
        first = false;
    }
    if (num.is_zero()) plan.phi_min = 1; // empty walk

    return plan;
}

// recursion with per-level copies, the form actually used by both drivers
std::int64_t eval_cell(const ExpansionPlan& plan, const std::vector<std::int64_t>& x2) {
    struct Rec {
        const ExpansionPlan& p;
        std::int64_t operator()(std::vector<std::int64_t> y, std::size_t level) const {
            if (level == p.steps.size()) return p.num_at(y);
            const auto& t = p.steps[level];
            for (std::size_t i = 0; i < p.rank; ++i) y[i] -= p.start[level] * t[i];
            std::int64_t acc = 0;
            while (p.phi_of(y) >= p.phi_min) {
                acc = checked_add(acc, (*this)(y, level + 1));
                for (std::size_t i = 0; i < p.rank; ++i) y[i] -= t[i];
            }
            return acc;
        }
    };
    return checked_mul(plan.sign, Rec{plan}(x2, 0));
}

} // namespace

TruncatedSeries expand_rational(const RationalChar& x, const Weight& direction,
                                const InnerProduct& inner, Box box) {
    ExpansionPlan plan = make_plan(x, direction, inner, x.rank());
    TruncatedSeries out(x.rank(), std::move(box));
    const std::int64_t cells = static_cast<std::int64_t>(out.cells());
#pragma omp parallel
    {
        std::vector<std::int64_t> x2(out.rank());
#pragma omp for schedule(static)
        for (std::int64_t idx = 0; idx < cells; ++idx) {
            out.decode(static_cast<std::size_t>(idx), x2);
            out.data()[static_cast<std::size_t>(idx)] = eval_cell(plan, x2);
        }
    }
    return out;
}

TruncatedSeries expand_rational_serial(const RationalChar& x, const Weight& direction,
                                       const InnerProduct& inner, Box box) {
    ExpansionPlan plan = make_plan(x, direction, inner, x.rank());
    TruncatedSeries out(x.rank(), std::move(box));
    std::vector<std::int64_t> x2;
    for (std::size_t idx = 0; idx < out.cells(); ++idx) {
        out.decode(idx, x2);
        out.data()[idx] = eval_cell(plan, x2);
    }
    return out;
}

FinitenessReport beta_finiteness(const TruncatedSeries& z, const std::vector<Weight>& betas) {
    FinitenessReport rep;
    std::vector<std::int64_t> x2, y(z.rank());
    for (std::size_t idx = 0; idx < z.cells(); ++idx) {
        if (z.data()[idx] == 0) continue;
        z.decode(idx, x2);
        if (!z.in_valid(x2)) continue;
        for (const Weight& b : betas) {
            for (int sgn : {+1, -1}) {
                for (std::size_t i = 0; i < z.rank(); ++i) y[i] = x2[i] + sgn * b.x2[i];
                if (!z.in_valid(y)) {
                    rep.boundary_touching = true;
                    rep.finite = false;
                    return rep;
                }
            }
        }
    }
    rep.finite = true;
    return rep;
}

} // namespace charloc
