#include "charloc/laurent.hpp"

#include <sstream>

#include <json.hpp>

namespace charloc {

void LaurentPoly::add_term(const Weight& w, Int c) {
    if (w.rank() != rank_) throw std::invalid_argument("LaurentPoly: term rank mismatch");
    if (c == 0) return;
    auto [it, inserted] = terms_.try_emplace(w, std::move(c));
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

LaurentPoly LaurentPoly::operator+(const LaurentPoly& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("poly add: rank mismatch");
    LaurentPoly r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, c);
    return r;
}

LaurentPoly LaurentPoly::operator-(const LaurentPoly& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("poly sub: rank mismatch");
    LaurentPoly r = *this;
    for (const auto& [w, c] : o.terms_) r.add_term(w, -c);
    return r;
}

LaurentPoly LaurentPoly::operator-() const {
    LaurentPoly r(rank_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(w, -c);
    return r;
}

LaurentPoly LaurentPoly::operator*(const LaurentPoly& o) const {
    if (rank_ != o.rank_) throw std::invalid_argument("poly mul: rank mismatch");
    LaurentPoly r(rank_);
    for (const auto& [wa, ca] : terms_)
        for (const auto& [wb, cb] : o.terms_) r.add_term(wa + wb, ca * cb);
    return r;
}

LaurentPoly LaurentPoly::scaled(const Int& c) const {
    LaurentPoly r(rank_);
    if (c == 0) return r;
    for (const auto& [w, k] : terms_) r.terms_.emplace(w, k * c);
    return r;
}

LaurentPoly LaurentPoly::shifted(const Weight& w) const {
    LaurentPoly r(rank_);
    for (const auto& [v, c] : terms_) r.terms_.emplace(v + w, c);
    return r;
}

LaurentPoly LaurentPoly::dual() const {
    LaurentPoly r(rank_);
    for (const auto& [w, c] : terms_) r.terms_.emplace(-w, c);
    return r;
}

Int LaurentPoly::mass() const {
    Int m = 0;
    for (const auto& [w, c] : terms_) m += c;
    return m;
}

std::string LaurentPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, c] : terms_) {
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Int ac = c < 0 ? Int(-c) : c;
        if (ac != 1 || w.is_zero()) os << ac;
        if (!w.is_zero()) {
            if (ac != 1) os << "*";
            os << "X^" << w;
        }
        first = false;
    }
    return os.str();
}

LaurentPoly restrict_weights(const std::vector<std::vector<std::int64_t>>& map_matrix,
                             const LaurentPoly& a) {
    std::size_t out_rank = map_matrix.size();
    for (const auto& row : map_matrix)
        if (row.size() != a.rank())
            throw std::invalid_argument("restrict_weights: matrix shape mismatch");
    LaurentPoly r(out_rank);
    for (const auto& [w, c] : a.terms()) {
        Weight img(std::vector<std::int64_t>(out_rank, 0));
        for (std::size_t i = 0; i < out_rank; ++i)
            for (std::size_t j = 0; j < a.rank(); ++j)
                img.x2[i] += map_matrix[i][j] * w.x2[j];
        r.add_term(img, c);
    }
    return r;
}

LaurentPoly weyl_element(const RootDatum& datum) {
    LaurentPoly w = LaurentPoly::unit(datum.rank);
    for (const Weight& a : datum.u_roots) {
        LaurentPoly f = LaurentPoly::unit(datum.rank);
        f.add_term(-a, -1);
        w = w * f;
    }
    return w;
}

LaurentPoly weyl_element_from_exterior_powers(const RootDatum& datum) {
    // u* carries the weights -alpha; Lambda^q u* contributes the sums of
    // q-subsets of them with sign (-1)^q.
    const std::size_t n = datum.dim_u();
    if (n > 30) throw std::invalid_argument("exterior-power expansion: u too large");
    LaurentPoly w(datum.rank);
    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        Weight s = zero_weight(datum.rank);
        int q = 0;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1ull << i)) {
                s = s - datum.u_roots[i];
                ++q;
            }
        w.add_term(s, (q % 2 == 0) ? 1 : -1);
    }
    return w;
}

std::string laurent_to_json(const LaurentPoly& p) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [w, c] : p.terms()) {
        nlohmann::json t;
        t["w2"] = w.x2;
        if (c >= std::numeric_limits<std::int64_t>::min() &&
            c <= std::numeric_limits<std::int64_t>::max())
            t["c"] = static_cast<std::int64_t>(c);
        else
            t["c"] = c.str();
        terms.push_back(t);
    }
    nlohmann::json j;
    j["rank"] = p.rank();
    j["terms"] = terms;
    return j.dump();
}

LaurentPoly laurent_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::optional<LaurentPoly> p;
    if (j.contains("rank")) p.emplace(j.at("rank").get<std::size_t>());
    for (const auto& t : j.at("terms")) {
        Weight w(t.at("w2").get<std::vector<std::int64_t>>());
        if (!p) p.emplace(w.rank());
        Int c;
        if (t.at("c").is_string())
            c = Int(t.at("c").get<std::string>());
        else
            c = Int(t.at("c").get<std::int64_t>());
        p->add_term(w, c);
    }
    if (!p) throw std::invalid_argument("laurent_from_json: empty term list has no rank");
    return *p;
}

} // namespace charloc
