#include "charloc/sl2.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace charloc {
namespace sl2 {

void Sl2Module::validate() const {
    switch (kind) {
        case Kind::Finite:
            if (k < 0) throw std::invalid_argument("Finite(k) needs k >= 0");
            break;
        case Kind::DiscretePlus:
        case Kind::DiscreteMinus:
            if (k < 1) throw std::invalid_argument("discrete series need k >= 1");
            break;
    }
}

std::string Sl2Module::to_string() const {
    std::ostringstream os;
    switch (kind) {
        case Kind::Finite: os << "F:"; break;
        case Kind::DiscretePlus: os << "D+:"; break;
        case Kind::DiscreteMinus: os << "D-:"; break;
    }
    os << k;
    return os.str();
}

Sl2Module finite(std::int64_t k) {
    Sl2Module m{Kind::Finite, k};
    m.validate();
    return m;
}
Sl2Module discrete_plus(std::int64_t k) {
    Sl2Module m{Kind::DiscretePlus, k};
    m.validate();
    return m;
}
Sl2Module discrete_minus(std::int64_t k) {
    Sl2Module m{Kind::DiscreteMinus, k};
    m.validate();
    return m;
}

Sl2Module parse_module(const std::string& text) {
    auto colon = text.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("module syntax: F:k, D+:k, D-:k");
    std::string kind = text.substr(0, colon);
    std::int64_t k = std::stoll(text.substr(colon + 1));
    if (kind == "F") return finite(k);
    if (kind == "D+") return discrete_plus(k);
    if (kind == "D-") return discrete_minus(k);
    throw std::invalid_argument("unknown module kind: " + kind);
}

const RootDatum& datum() {
    static const RootDatum d = [] {
        InnerProduct inner;
        inner.rank = 1;
        inner.gram = {Rat(1)};
        return make_root_datum(1, inner, {weight_from_base_coords({2})});
    }();
    return d;
}

Weight alpha_gen() { return Weight({2}); }
Weight alpha_root() { return Weight({4}); }

Weight so2_type(std::int64_t m) { return Weight({2 * m}); }

Box so2_box(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("box radius must be positive");
    return Box{{2 * n}};
}

RationalChar sl2_character(const Sl2Module& m) {
    m.validate();
    switch (m.kind) {
        case Kind::Finite:
            return euler_character(datum(), so2_type(m.k));
        case Kind::DiscretePlus:
            return RationalChar(LaurentPoly::monomial(so2_type(m.k)), {-alpha_root()});
        case Kind::DiscreteMinus:
            return rc_dual(sl2_character(discrete_plus(m.k)));
    }
    throw std::logic_error("unreachable");
}

TruncatedSeries module_series(const Sl2Module& m, std::int64_t box_n) {
    Box box = so2_box(box_n);
    switch (m.kind) {
        case Kind::Finite:
            return series_from_poly(restrict_finite(datum(), so2_type(m.k)), box);
        case Kind::DiscretePlus:
            return expand_rational(sl2_character(m), alpha_gen(), datum().inner, box);
        case Kind::DiscreteMinus:
            return expand_rational(sl2_character(m), -alpha_gen(), datum().inner, box);
    }
    throw std::logic_error("unreachable");
}

namespace {

TensorDecomposition decompose_finite_finite(std::int64_t ka, std::int64_t kb) {
    std::map<std::int64_t, Int> prod;
    for (std::int64_t ma = -ka; ma <= ka; ma += 2)
        for (std::int64_t mb = -kb; mb <= kb; mb += 2) prod[ma + mb] += 1;
    for (auto it = prod.begin(); it != prod.end();)
        it = (it->second == 0) ? prod.erase(it) : std::next(it);

    TensorDecomposition result;
    while (!prod.empty()) {
        auto top = std::prev(prod.end());
        std::int64_t m = top->first;
        Int c = top->second;
        if (m < 0 || c < 0) {
            result.not_discretely_decomposable = true;
            result.reason = "finite peeling failed";
            return result;
        }
        result.parts.emplace_back(finite(m), c);
        for (std::int64_t j = -m; j <= m; j += 2) {
            prod[j] -= c;
            if (prod[j] == 0) prod.erase(j);
        }
    }
    result.complete = true;
    return result;
}

// minimal nonzero SO(2) exponent of an expansion (even doubled coords only)
bool minimal_type(const TruncatedSeries& e, std::int64_t& m, std::int64_t& c) {
    const std::int64_t n = e.valid().radius[0];
    for (std::int64_t x = -n; x <= n; ++x) {
        std::int64_t v = e.at({x});
        if (v != 0) {
            if (x % 2 != 0) throw std::logic_error("module expansion off the SO(2) lattice");
            m = x / 2;
            c = v;
            return true;
        }
    }
    return false;
}

Sl2Module dual_module(const Sl2Module& m) {
    switch (m.kind) {
        case Kind::Finite: return m;
        case Kind::DiscretePlus: return discrete_minus(m.k);
        case Kind::DiscreteMinus: return discrete_plus(m.k);
    }
    throw std::logic_error("unreachable");
}

} // namespace

TensorDecomposition tensor_decompose(const Sl2Module& a, const Sl2Module& b) {
    a.validate();
    b.validate();

    if (a.kind == Kind::Finite && b.kind == Kind::Finite)
        return decompose_finite_finite(a.k, b.k);

    const bool has_plus = a.kind == Kind::DiscretePlus || b.kind == Kind::DiscretePlus;
    const bool has_minus = a.kind == Kind::DiscreteMinus || b.kind == Kind::DiscreteMinus;

    if (has_plus && has_minus) {
        // opposite discrete series: certify the divergence of the SO(2)
        // multiplicities of the product character under box growth
        RationalChar prod = rc_mul(sl2_character(a), sl2_character(b));
        std::int64_t n0 = 2 * (std::llabs(a.k) + std::llabs(b.k)) + 24;
        TruncatedSeries e1 =
            expand_rational(prod, alpha_gen(), datum().inner, so2_box(n0));
        TruncatedSeries e2 =
            expand_rational(prod, alpha_gen(), datum().inner, so2_box(2 * n0));
        TensorDecomposition result;
        if (e2.max_abs_on_valid() > e1.max_abs_on_valid()) {
            result.not_discretely_decomposable = true;
            result.reason = "SO(2)-multiplicities grow with the box: continuous spectrum";
            return result;
        }
        throw std::logic_error("opposite discrete series without multiplicity growth");
    }

    if (has_minus) {
        // mirror through duality and flip the parts back
        TensorDecomposition mirrored = tensor_decompose(dual_module(a), dual_module(b));
        for (auto& [mod, mult] : mirrored.parts) mod = dual_module(mod);
        return mirrored;
    }

    // at least one DiscretePlus, possibly a Finite partner: greedy peeling by
    // minimal SO(2)-type, which is uniquely determined per peel
    RationalChar prod = rc_mul(sl2_character(a), sl2_character(b));
    const std::int64_t budget = 2 * (a.k + b.k) + 16;
    TruncatedSeries rem = expand_rational(prod, alpha_gen(), datum().inner, so2_box(budget));

    TensorDecomposition result;
    RationalChar sum(LaurentPoly(1));
    std::int64_t m = 0, c = 0;
    std::size_t guard = rem.cells() + 1;
    while (minimal_type(rem, m, c)) {
        if (--guard == 0) throw std::logic_error("tensor peeling did not terminate");
        if (c < 0) {
            result.not_discretely_decomposable = true;
            result.reason = "negative multiplicity at the minimal SO(2)-type";
            result.parts.clear();
            return result;
        }
        if (m < 1) {
            result.not_discretely_decomposable = true;
            result.reason = "minimal SO(2)-type below the discrete-series range";
            result.parts.clear();
            return result;
        }
        Sl2Module part = discrete_plus(m);
        RationalChar pc = sl2_character(part);
        rem = rem - expand_rational(pc, alpha_gen(), datum().inner, so2_box(budget)).scaled(c);
        result.parts.emplace_back(part, Int(c));
        sum = rc_add(sum, pc.scaled(Int(c)));
    }
    result.complete = rc_eq(prod, sum);
    std::sort(result.parts.begin(), result.parts.end(),
              [](const auto& x, const auto& y) { return x.first.k > y.first.k; });
    return result;
}

TruncatedSeries blattner(std::int64_t k, std::int64_t box_n) {
    if (k < 1) throw std::invalid_argument("blattner: k >= 1");
    return expand_rational(sl2_character(discrete_plus(k)), alpha_gen(), datum().inner,
                           so2_box(box_n));
}

bool kernel_relation_check(std::int64_t box_n) {
    if (box_n < 4) throw box_error("kernel_relation_check: box too small (need >= 4)");
    RationalChar d1 = sl2_character(discrete_plus(1));
    TruncatedSeries plus_cone = expand_rational(d1, alpha_gen(), datum().inner, so2_box(box_n));
    TruncatedSeries minus_cone = expand_rational(d1, -alpha_gen(), datum().inner, so2_box(box_n));
    TruncatedSeries z = plus_cone - minus_cone;
    TruncatedSeries y = kernel_y(alpha_root(), 1, false, so2_box(box_n));
    return TruncatedSeries::equal_on_common_valid(z, y);
}

MultiplicityProfile multiplicity_profile(const Sl2Combination& combo, std::int64_t box_n) {
    TruncatedSeries acc(1, so2_box(box_n));
    for (const auto& [mod, coeff] : combo)
        acc = acc + module_series(mod, box_n).scaled(coeff);
    MultiplicityProfile prof;
    const std::int64_t n = acc.valid().radius[0];
    for (std::int64_t x = -n; x <= n; ++x) {
        if (x % 2 != 0) continue;
        Int v = acc.at({x});
        if (v < 0) v = -v;
        if (std::llabs(x / 2) % 2 == 0)
            prof.even_max = std::max(prof.even_max, v);
        else
            prof.odd_max = std::max(prof.odd_max, v);
    }
    return prof;
}

} // namespace sl2
} // namespace charloc
