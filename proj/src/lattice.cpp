#include "charloc/lattice.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace charloc {

namespace {

void require_same_rank(const Weight& a, const Weight& b) {
    if (a.rank() != b.rank()) throw std::invalid_argument("weight rank mismatch");
}

} // namespace

Weight Weight::operator+(const Weight& o) const {
    require_same_rank(*this, o);
    Weight r = *this;
    for (std::size_t i = 0; i < x2.size(); ++i) r.x2[i] += o.x2[i];
    return r;
}

Weight Weight::operator-(const Weight& o) const {
    require_same_rank(*this, o);
    Weight r = *this;
    for (std::size_t i = 0; i < x2.size(); ++i) r.x2[i] -= o.x2[i];
    return r;
}

Weight Weight::operator-() const {
    Weight r = *this;
    for (auto& c : r.x2) c = -c;
    return r;
}

Weight Weight::scaled(std::int64_t k) const {
    Weight r = *this;
    for (auto& c : r.x2) c *= k;
    return r;
}

Weight Weight::half() const {
    if (!in_base_lattice()) throw std::domain_error("no square root in Lambda: odd coordinate");
    Weight r = *this;
    for (auto& c : r.x2) c /= 2;
    return r;
}

bool Weight::operator<(const Weight& o) const {
    if (x2.size() != o.x2.size()) return x2.size() < o.x2.size();
    return std::lexicographical_compare(x2.begin(), x2.end(), o.x2.begin(), o.x2.end());
}

std::ostream& operator<<(std::ostream& os, const Weight& w) {
    os << "(";
    for (std::size_t i = 0; i < w.x2.size(); ++i) {
        if (i) os << ",";
        os << w.x2[i];
    }
    os << ")/2";
    return os;
}

Weight zero_weight(std::size_t rank) { return Weight(std::vector<std::int64_t>(rank, 0)); }

void InnerProduct::validate() const {
    if (gram.size() != rank * rank) throw std::invalid_argument("gram size mismatch");
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (g(i, j) != g(j, i)) throw std::invalid_argument("gram not symmetric");
    // positive definiteness via leading principal minors
    RatMatrix m(rank, rank);
    for (std::size_t i = 0; i < rank; ++i)
        for (std::size_t j = 0; j < rank; ++j) m.at(i, j) = g(i, j);
    for (std::size_t k = 1; k <= rank; ++k) {
        // determinant of leading k x k block by fraction-free-ish elimination
        RatMatrix b(k, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) b.at(i, j) = m.at(i, j);
        Rat det = 1;
        for (std::size_t col = 0; col < k; ++col) {
            std::size_t piv = col;
            while (piv < k && b.at(piv, col) == 0) ++piv;
            if (piv == k) {
                det = 0;
                break;
            }
            if (piv != col) {
                for (std::size_t j = 0; j < k; ++j) std::swap(b.at(piv, j), b.at(col, j));
                det = -det;
            }
            det *= b.at(col, col);
            for (std::size_t i = col + 1; i < k; ++i) {
                if (b.at(i, col) == 0) continue;
                Rat f = b.at(i, col) / b.at(col, col);
                for (std::size_t j = col; j < k; ++j) b.at(i, j) -= f * b.at(col, j);
            }
        }
        if (det <= 0) throw std::invalid_argument("gram not positive definite");
    }
}

Rat pair_weights(const Weight& a, const Weight& b, const InnerProduct& inner) {
    if (a.rank() != b.rank() || a.rank() != inner.rank)
        throw std::invalid_argument("pair_weights: rank mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < inner.rank; ++i) {
        if (a.x2[i] == 0) continue;
        for (std::size_t j = 0; j < inner.rank; ++j) {
            if (b.x2[j] == 0) continue;
            s += Rat(a.x2[i]) * inner.g(i, j) * Rat(b.x2[j]);
        }
    }
    return s / 4;
}

Weight reflect(const Weight& alpha, const Weight& lambda, const InnerProduct& inner) {
    Rat aa = pair_weights(alpha, alpha, inner);
    if (aa == 0) throw std::domain_error("reflect: isotropic root");
    Rat c = 2 * pair_weights(lambda, alpha, inner) / aa;
    Weight r = lambda;
    for (std::size_t i = 0; i < lambda.rank(); ++i) {
        Rat nc = Rat(lambda.x2[i]) - c * Rat(alpha.x2[i]);
        if (boost::multiprecision::denominator(nc) != 1)
            throw std::domain_error("reflect: image leaves the lattice");
        r.x2[i] = static_cast<std::int64_t>(boost::multiprecision::numerator(nc));
    }
    return r;
}

Weight apply_weyl(const WeylElement& w, const Weight& lambda) {
    std::vector<Rat> v(lambda.x2.begin(), lambda.x2.end());
    std::vector<Rat> img = w.mat.apply(v);
    Weight r;
    r.x2.resize(img.size());
    for (std::size_t i = 0; i < img.size(); ++i) {
        if (boost::multiprecision::denominator(img[i]) != 1)
            throw std::domain_error("apply_weyl: image leaves the lattice");
        r.x2[i] = static_cast<std::int64_t>(boost::multiprecision::numerator(img[i]));
    }
    return r;
}

const WeylElement& RootDatum::longest_element() const {
    if (weyl_group.empty()) throw std::logic_error("empty Weyl group");
    const WeylElement* best = &weyl_group.front();
    for (const auto& w : weyl_group)
        if (w.length > best->length) best = &w;
    return *best;
}

std::vector<Weight> simple_roots(const std::vector<Weight>& positive_roots) {
    std::set<Weight> pos(positive_roots.begin(), positive_roots.end());
    std::vector<Weight> simple;
    for (const Weight& a : pos) {
        bool decomposable = false;
        for (const Weight& b : pos) {
            if (decomposable) break;
            for (const Weight& c : pos) {
                if (b + c == a) {
                    decomposable = true;
                    break;
                }
            }
        }
        if (!decomposable) simple.push_back(a);
    }
    return simple;
}

namespace {

RatMatrix reflection_matrix(const Weight& alpha, const InnerProduct& inner) {
    std::size_t n = inner.rank;
    Rat aa = pair_weights(alpha, alpha, inner);
    if (aa == 0) throw std::domain_error("isotropic simple root");
    RatMatrix m = RatMatrix::identity(n);
    // column j: image of the j-th doubled basis vector
    for (std::size_t j = 0; j < n; ++j) {
        Weight ej(std::vector<std::int64_t>(n, 0));
        ej.x2[j] = 1;
        Rat c = 2 * pair_weights(ej, alpha, inner) / aa;
        for (std::size_t i = 0; i < n; ++i) m.at(i, j) -= c * Rat(alpha.x2[i]);
    }
    return m;
}

unsigned inversion_count(const RatMatrix& m, const std::vector<Weight>& pos) {
    std::set<Weight> posset(pos.begin(), pos.end());
    unsigned inv = 0;
    WeylElement w;
    w.mat = m;
    for (const Weight& b : pos) {
        Weight img = apply_weyl(w, b);
        if (posset.count(-img)) ++inv;
    }
    return inv;
}

// Predicted group order for a disjoint union of type A Dynkin paths.
std::size_t predicted_order(const std::vector<Weight>& simple, const InnerProduct& inner) {
    std::size_t n = simple.size();
    std::vector<std::vector<std::size_t>> adj(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            Rat cij = 2 * pair_weights(simple[i], simple[j], inner) /
                      pair_weights(simple[j], simple[j], inner);
            if (cij == 0) continue;
            if (cij != -1) throw std::domain_error("unsupported root system: non-A Cartan entry");
            adj[i].push_back(j);
        }
    std::vector<int> comp(n, -1);
    std::size_t order = 1;
    for (std::size_t s = 0; s < n; ++s) {
        if (comp[s] >= 0) continue;
        // walk the component, checking it is a path
        std::vector<std::size_t> stack{s};
        comp[s] = static_cast<int>(s);
        std::size_t size = 0, edges = 0;
        while (!stack.empty()) {
            std::size_t v = stack.back();
            stack.pop_back();
            ++size;
            if (adj[v].size() > 2) throw std::domain_error("unsupported root system: branch node");
            for (std::size_t w : adj[v]) {
                ++edges;
                if (comp[w] < 0) {
                    comp[w] = static_cast<int>(s);
                    stack.push_back(w);
                }
            }
        }
        if (edges != 2 * (size - 1)) throw std::domain_error("unsupported root system: cycle");
        if (size > 4) throw std::domain_error("unsupported root system: component rank > 4");
        std::size_t f = 1;
        for (std::size_t k = 2; k <= size + 1; ++k) f *= k;
        order *= f;
    }
    return order;
}

std::string matrix_key(const RatMatrix& m) {
    std::ostringstream os;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) os << m.at(i, j) << ";";
    return os.str();
}

} // namespace

std::vector<WeylElement> enumerate_weyl_group(const std::vector<Weight>& positive_roots,
                                              const InnerProduct& inner) {
    if (positive_roots.empty()) {
        WeylElement e;
        e.mat = RatMatrix::identity(inner.rank);
        return {e};
    }
    std::set<Weight> distinct(positive_roots.begin(), positive_roots.end());
    std::vector<Weight> pos(distinct.begin(), distinct.end());
    std::vector<Weight> simple = simple_roots(pos);
    std::size_t expected = predicted_order(simple, inner);
    std::size_t bound = 10 * expected;

    std::vector<RatMatrix> gens;
    for (const Weight& a : simple) gens.push_back(reflection_matrix(a, inner));

    std::vector<WeylElement> group;
    std::map<std::string, std::size_t> seen;
    WeylElement e;
    e.mat = RatMatrix::identity(inner.rank);
    e.length = 0;
    e.word_length = 0;
    group.push_back(e);
    seen[matrix_key(e.mat)] = 0;
    std::size_t head = 0;
    while (head < group.size()) {
        WeylElement cur = group[head++];
        for (const RatMatrix& s : gens) {
            RatMatrix prod = s * cur.mat;
            std::string key = matrix_key(prod);
            if (seen.count(key)) continue;
            if (group.size() >= bound)
                throw std::domain_error("Weyl closure exceeded bound: unsupported input");
            WeylElement w;
            w.mat = prod;
            w.word_length = cur.word_length + 1;
            w.length = inversion_count(prod, pos);
            seen[key] = group.size();
            group.push_back(w);
        }
    }
    if (group.size() != expected)
        throw std::domain_error("Weyl closure has unexpected order");
    return group;
}

RootDatum make_root_datum(std::size_t rank, InnerProduct inner, std::vector<Weight> u_roots) {
    inner.validate();
    RootDatum d;
    d.rank = rank;
    d.inner = std::move(inner);
    d.u_roots = std::move(u_roots);
    // rho(u) = half the sum of u-roots; 2 rho(u) = sum of roots lies in Lambda0.
    std::vector<std::int64_t> sum(rank, 0);
    for (const Weight& a : d.u_roots) {
        if (a.rank() != rank) throw std::invalid_argument("u-root rank mismatch");
        if (!a.in_base_lattice()) throw std::invalid_argument("u-root not in Lambda0");
        for (std::size_t i = 0; i < rank; ++i) sum[i] += a.x2[i] / 2;
    }
    d.rho_u = Weight(std::move(sum));
    d.weyl_group = enumerate_weyl_group(d.u_roots, d.inner);

    // invariants: each group element preserves the form and permutes +-Delta
    std::set<Weight> pm;
    for (const Weight& a : d.u_roots) {
        pm.insert(a);
        pm.insert(-a);
    }
    for (const auto& w : d.weyl_group) {
        for (const Weight& a : d.u_roots) {
            Weight img = apply_weyl(w, a);
            if (!pm.count(img)) throw std::logic_error("Weyl element does not permute roots");
            if (pair_weights(img, img, d.inner) != pair_weights(a, a, d.inner))
                throw std::logic_error("Weyl element does not preserve the form");
        }
    }
    return d;
}

Weight weight_from_base_coords(const std::vector<std::int64_t>& coords) {
    Weight w;
    w.x2.reserve(coords.size());
    for (auto c : coords) w.x2.push_back(2 * c);
    return w;
}

namespace {

Rat rat_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return Rat(j.get<std::int64_t>());
    if (j.is_array() && j.size() == 2)
        return Rat(j[0].get<std::int64_t>(), j[1].get<std::int64_t>());
    throw std::invalid_argument("gram entry must be an integer or [num, den]");
}

} // namespace

RootDatum root_datum_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::size_t rank = j.at("rank").get<std::size_t>();
    InnerProduct inner;
    inner.rank = rank;
    const auto& g = j.at("gram");
    if (g.size() != rank) throw std::invalid_argument("gram row count != rank");
    for (const auto& row : g) {
        if (row.size() != rank) throw std::invalid_argument("gram column count != rank");
        for (const auto& entry : row) inner.gram.push_back(rat_from_json(entry));
    }
    std::vector<Weight> roots;
    for (const auto& r : j.at("u_roots")) {
        std::vector<std::int64_t> coords = r.get<std::vector<std::int64_t>>();
        if (coords.size() != rank) throw std::invalid_argument("u-root length != rank");
        roots.push_back(weight_from_base_coords(coords));
    }
    return make_root_datum(rank, std::move(inner), std::move(roots));
}

RootDatum root_datum_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open root datum file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return root_datum_from_json(ss.str());
}

std::string root_datum_to_json(const RootDatum& datum) {
    nlohmann::json j;
    j["rank"] = datum.rank;
    nlohmann::json gram = nlohmann::json::array();
    for (std::size_t i = 0; i < datum.rank; ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t k = 0; k < datum.rank; ++k) {
            const Rat& x = datum.inner.g(i, k);
            if (boost::multiprecision::denominator(x) == 1)
                row.push_back(static_cast<std::int64_t>(boost::multiprecision::numerator(x)));
            else
                row.push_back({static_cast<std::int64_t>(boost::multiprecision::numerator(x)),
                               static_cast<std::int64_t>(boost::multiprecision::denominator(x))});
        }
        gram.push_back(row);
    }
    j["gram"] = gram;
    nlohmann::json roots = nlohmann::json::array();
    for (const Weight& a : datum.u_roots) {
        std::vector<std::int64_t> coords;
        for (auto c : a.x2) coords.push_back(c / 2);
        roots.push_back(coords);
    }
    j["u_roots"] = roots;
    return j.dump(2);
}

} // namespace charloc
