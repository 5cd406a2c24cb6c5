#include "charloc/rational_char.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace charloc {

namespace {

// multiset difference a \ b on sorted vectors
std::vector<Weight> ms_diff(const std::vector<Weight>& a, const std::vector<Weight>& b) {
    std::vector<Weight> out;
    std::size_t i = 0, j = 0;
    while (i < a.size()) {
        if (j < b.size() && !(a[i] < b[j]) && !(b[j] < a[i])) {
            ++i;
            ++j;
        } else if (j < b.size() && b[j] < a[i]) {
            ++j;
        } else {
            out.push_back(a[i++]);
        }
    }
    return out;
}

std::vector<Weight> ms_union_max(const std::vector<Weight>& a, const std::vector<Weight>& b) {
    std::vector<Weight> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && a[i] < b[j]))
            out.push_back(a[i++]);
        else if (i == a.size() || b[j] < a[i])
            out.push_back(b[j++]);
        else {
            out.push_back(a[i++]);
            ++j;
        }
    }
    return out;
}

std::vector<Weight> ms_common(const std::vector<Weight>& a, const std::vector<Weight>& b) {
    std::vector<Weight> out;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] < b[j])
            ++i;
        else if (b[j] < a[i])
            ++j;
        else {
            out.push_back(a[i]);
            ++i;
            ++j;
        }
    }
    return out;
}

LaurentPoly product_of_factors(std::size_t rank, const std::vector<Weight>& alphas) {
    LaurentPoly p = LaurentPoly::unit(rank);
    for (const Weight& a : alphas) p = p * den_factor(a);
    return p;
}

} // namespace

LaurentPoly den_factor(const Weight& alpha) {
    if (alpha.is_zero()) throw std::invalid_argument("denominator factor with zero root");
    LaurentPoly f = LaurentPoly::unit(alpha.rank());
    f.add_term(-alpha, -1);
    return f;
}

RationalChar::RationalChar(LaurentPoly num, std::vector<Weight> den_alphas)
    : num_(std::move(num)), den_alphas_(std::move(den_alphas)) {
    for (const Weight& a : den_alphas_) {
        if (a.rank() != num_.rank()) throw std::invalid_argument("RationalChar: rank mismatch");
        if (a.is_zero()) throw std::invalid_argument("RationalChar: zero denominator root");
    }
    std::sort(den_alphas_.begin(), den_alphas_.end());
}

LaurentPoly RationalChar::den_poly() const { return product_of_factors(rank(), den_alphas_); }

RationalChar RationalChar::scaled(const Int& c) const {
    return RationalChar(num_.scaled(c), den_alphas_);
}

RationalChar RationalChar::over_factors(const std::vector<Weight>& alphas) const {
    std::vector<Weight> den = den_alphas_;
    den.insert(den.end(), alphas.begin(), alphas.end());
    return RationalChar(num_, std::move(den));
}

std::string RationalChar::to_string() const {
    std::ostringstream os;
    os << "(" << num_.to_string() << ")";
    if (!den_alphas_.empty()) {
        os << " / ";
        for (const Weight& a : den_alphas_) os << "(" << den_factor(a).to_string() << ")";
    }
    return os.str();
}

RationalChar rc_add(const RationalChar& x, const RationalChar& y) {
    if (x.rank() != y.rank()) throw std::invalid_argument("rc_add: rank mismatch");
    std::vector<Weight> den = ms_union_max(x.den_alphas(), y.den_alphas());
    LaurentPoly nx = x.num() * product_of_factors(x.rank(), ms_diff(den, x.den_alphas()));
    LaurentPoly ny = y.num() * product_of_factors(y.rank(), ms_diff(den, y.den_alphas()));
    return RationalChar(nx + ny, std::move(den));
}

RationalChar rc_sub(const RationalChar& x, const RationalChar& y) {
    return rc_add(x, y.scaled(-1));
}

RationalChar rc_mul(const RationalChar& x, const RationalChar& y) {
    if (x.rank() != y.rank()) throw std::invalid_argument("rc_mul: rank mismatch");
    std::vector<Weight> den = x.den_alphas();
    den.insert(den.end(), y.den_alphas().begin(), y.den_alphas().end());
    return RationalChar(x.num() * y.num(), std::move(den));
}

RationalChar rc_dual(const RationalChar& x) {
    // dual(1 - [-a]) = 1 - [a] = -[a] (1 - [-a]); the unit -[a] moves into
    // the numerator as -[-a] once inverted, keeping the factor parameters.
    LaurentPoly n = x.num().dual();
    for (const Weight& a : x.den_alphas()) {
        n = n.shifted(-a);
        n = n.scaled(-1);
    }
    return RationalChar(std::move(n), x.den_alphas());
}

bool rc_eq(const RationalChar& x, const RationalChar& y) {
    if (x.rank() != y.rank()) throw std::invalid_argument("rc_eq: rank mismatch");
    std::vector<Weight> common = ms_common(x.den_alphas(), y.den_alphas());
    LaurentPoly dy = product_of_factors(x.rank(), ms_diff(y.den_alphas(), common));
    LaurentPoly dx = product_of_factors(x.rank(), ms_diff(x.den_alphas(), common));
    return x.num() * dy == y.num() * dx;
}

std::optional<LaurentPoly> divide_by_factor(const LaurentPoly& num, const Weight& alpha) {
    const std::size_t rank = num.rank();
    if (num.is_zero()) return LaurentPoly(rank);
    LaurentPoly f = den_factor(alpha);

    // The quotient support box is forced: for every coordinate functional,
    // max over the quotient = max over num minus max over the factor.
    std::vector<std::int64_t> nmin(rank), nmax(rank);
    bool first = true;
    for (const auto& [w, c] : num.terms()) {
        for (std::size_t i = 0; i < rank; ++i) {
            if (first || w.x2[i] < nmin[i]) nmin[i] = w.x2[i];
            if (first || w.x2[i] > nmax[i]) nmax[i] = w.x2[i];
        }
        first = false;
    }
    std::vector<std::int64_t> qmin(rank), qmax(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        std::int64_t fmin = std::min<std::int64_t>(0, -alpha.x2[i]);
        std::int64_t fmax = std::max<std::int64_t>(0, -alpha.x2[i]);
        qmin[i] = nmin[i] - fmin;
        qmax[i] = nmax[i] - fmax;
        if (qmin[i] > qmax[i]) return std::nullopt;
    }

    // Leading-term elimination in the canonical order. Each step cancels the
    // current lexicographic maximum, so quotient terms appear in strictly
    // decreasing order; any step leaving the forced box proves indivisibility.
    Weight lead = zero_weight(rank);
    Int lead_c = 1;
    Weight other = -alpha;
    if (lead < other) {
        std::swap(lead, other);
        lead_c = -1;
    }
    LaurentPoly q(rank);
    LaurentPoly r = num;
    while (!r.is_zero()) {
        const auto& [mu, c] = *r.terms().rbegin();
        Weight qw = mu - lead;
        for (std::size_t i = 0; i < rank; ++i)
            if (qw.x2[i] < qmin[i] || qw.x2[i] > qmax[i]) return std::nullopt;
        Int qc = (lead_c == 1) ? c : Int(-c);
        q.add_term(qw, qc);
        r = r - f.shifted(qw).scaled(qc);
    }
    return q;
}

std::optional<LaurentPoly> exact_divide(const RationalChar& x) {
    LaurentPoly cur = x.num();
    for (const Weight& a : x.den_alphas()) {
        auto next = divide_by_factor(cur, a);
        if (!next) return std::nullopt;
        cur = std::move(*next);
    }
    return cur;
}

std::string rational_char_to_json(const RationalChar& x) {
    nlohmann::json j;
    j["num"] = nlohmann::json::parse(laurent_to_json(x.num()));
    nlohmann::json den = nlohmann::json::array();
    for (const Weight& a : x.den_alphas())
        den.push_back(nlohmann::json::parse(laurent_to_json(den_factor(a))));
    j["den"] = den;
    return j.dump();
}

RationalChar rational_char_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    LaurentPoly num = laurent_from_json(j.at("num").dump());
    std::vector<Weight> alphas;
    for (const auto& d : j.at("den")) {
        LaurentPoly f = laurent_from_json(d.dump());
        if (f.term_count() != 2 || f.coeff(zero_weight(f.rank())) != 1)
            throw std::invalid_argument("denominator factor must be 1 - [-alpha]");
        for (const auto& [w, c] : f.terms())
            if (!w.is_zero()) {
                if (c != -1) throw std::invalid_argument("denominator factor must be 1 - [-alpha]");
                alphas.push_back(-w);
            }
    }
    return RationalChar(std::move(num), std::move(alphas));
}

} // namespace charloc
