#include "charloc/regularity.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include <json.hpp>

namespace charloc {

Weight RegularityInstance::rho_uprime() const {
    std::vector<std::int64_t> sum(ambient.rank, 0);
    for (const Weight& b : uprime_roots) {
        if (!b.in_base_lattice()) throw std::invalid_argument("u'-root not in Lambda0");
        for (std::size_t i = 0; i < ambient.rank; ++i) sum[i] += b.x2[i] / 2;
    }
    return Weight(std::move(sum));
}

RegularityInstance RegularityInstance::with_default_anchor(RootDatum ambient,
                                                           std::vector<Weight> uprime_roots,
                                                           Weight lambda) {
    RegularityInstance inst;
    inst.ambient = std::move(ambient);
    inst.uprime_roots = std::move(uprime_roots);
    inst.lambda = std::move(lambda);
    inst.lambda0 = inst.rho_uprime();
    return inst;
}

std::string RegularityWitness::to_json() const {
    nlohmann::json j;
    j["weyl_index"] = weyl_index;
    j["beta1"] = beta1.x2;
    nlohmann::json exps = nlohmann::json::array();
    for (const auto& [beta, n] : exponents) {
        nlohmann::json e;
        e["beta"] = beta.x2;
        e["n"] = n;
        exps.push_back(e);
    }
    j["exponents"] = exps;
    return j.dump();
}

namespace {

struct Enumeration {
    std::vector<Weight> distinct;               // distinct elements of Delta(u+u')
    std::vector<std::vector<bool>> hits;        // hits[i][m]: <beta_i, uprime_m> != 0
    std::size_t uprime_count = 0;
};

Enumeration prepare(const RegularityInstance& inst) {
    Enumeration e;
    std::set<Weight> d(inst.ambient.u_roots.begin(), inst.ambient.u_roots.end());
    e.distinct.assign(d.begin(), d.end());
    e.uprime_count = inst.uprime_roots.size();
    e.hits.resize(e.distinct.size());
    for (std::size_t i = 0; i < e.distinct.size(); ++i) {
        e.hits[i].resize(e.uprime_count);
        for (std::size_t m = 0; m < e.uprime_count; ++m)
            e.hits[i][m] =
                pair_weights(e.distinct[i], inst.uprime_roots[m], inst.ambient.inner) != 0;
    }
    return e;
}

// #{beta in Delta(u') : exists i in S with <beta_i, beta> != 0}, multiset count
std::size_t subset_count(const Enumeration& e, const std::vector<std::size_t>& subset) {
    std::size_t n = 0;
    for (std::size_t m = 0; m < e.uprime_count; ++m)
        for (std::size_t i : subset)
            if (e.hits[i][m]) {
                ++n;
                break;
            }
    return n;
}

// All exponent assignments n : distinct -> Z>=0 with, for every subset S,
// sum_S n <= subset_count(S). Enumerated in ascending lexicographic order.
std::vector<std::vector<unsigned>> admissible_subset_bounded(const Enumeration& e,
                                                             std::size_t max_tuples) {
    const std::size_t r = e.distinct.size();
    std::vector<std::size_t> caps; // per-subset caps, subsets encoded as masks
    std::vector<std::vector<std::size_t>> subsets;
    for (std::size_t mask = 1; mask < (1u << r); ++mask) {
        std::vector<std::size_t> s;
        for (std::size_t i = 0; i < r; ++i)
            if (mask & (1u << i)) s.push_back(i);
        caps.push_back(subset_count(e, s));
        subsets.push_back(std::move(s));
    }
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(r, 0);
    std::function<void(std::size_t)> rec = [&](std::size_t i) {
        if (out.size() > max_tuples) throw std::length_error("regularity: exponent enumeration cap hit");
        if (i == r) {
            for (std::size_t s = 0; s < subsets.size(); ++s) {
                std::size_t sum = 0;
                for (std::size_t idx : subsets[s]) sum += cur[idx];
                if (sum > caps[s]) return;
            }
            out.push_back(cur);
            return;
        }
        // per-element cap from the singleton subset keeps the recursion small
        std::size_t cap = subset_count(e, {i});
        for (unsigned n = 0; n <= cap; ++n) {
            cur[i] = n;
            rec(i + 1);
        }
        cur[i] = 0;
    };
    rec(0);
    return out;
}

std::vector<std::vector<unsigned>> admissible_equal_sum(const Enumeration& e, unsigned target,
                                                        std::size_t max_tuples) {
    const std::size_t r = e.distinct.size();
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur(r, 0);
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
        if (out.size() > max_tuples) throw std::length_error("regularity: exponent enumeration cap hit");
        if (i + 1 == r) {
            cur[i] = left;
            out.push_back(cur);
            cur[i] = 0;
            return;
        }
        for (unsigned n = 0; n <= left; ++n) {
            cur[i] = n;
            rec(i + 1, left - n);
        }
        cur[i] = 0;
    };
    if (r == 0) return out;
    rec(0, target);
    return out;
}

RegularityResult run_check(const RegularityInstance& inst, bool sprime, bool include_beta1,
                           std::size_t max_tuples) {
    Enumeration e = prepare(inst);
    const std::size_t r = e.distinct.size();
    RegularityResult result;
    result.holds = true;
    if (r == 0) return result; // vacuously true

    std::vector<std::vector<unsigned>> assignments;
    if (sprime) {
        std::vector<std::size_t> all(r);
        for (std::size_t i = 0; i < r; ++i) all[i] = i;
        unsigned target = static_cast<unsigned>(inst.b * subset_count(e, all));
        assignments = admissible_equal_sum(e, target, max_tuples);
    } else {
        assignments = admissible_subset_bounded(e, max_tuples);
    }

    // cache <beta1, beta_i> pairings
    std::vector<std::vector<Rat>> pair_cache(r, std::vector<Rat>(r));
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j)
            pair_cache[i][j] = pair_weights(e.distinct[i], e.distinct[j], inst.ambient.inner);

    const Weight base = sprime ? inst.lambda : inst.lambda + inst.rho_uprime();
    for (std::size_t w = 0; w < inst.ambient.weyl_group.size(); ++w) {
        Weight moved = apply_weyl(inst.ambient.weyl_group[w], base) - inst.lambda0;
        std::vector<Rat> lhs(r);
        for (std::size_t i = 0; i < r; ++i)
            lhs[i] = rat_abs(pair_weights(moved, e.distinct[i], inst.ambient.inner));
        for (const auto& n : assignments) {
            for (std::size_t b1 = 0; b1 < r; ++b1) {
                Rat rhs = pair_cache[b1][b1] / 2;
                for (std::size_t i = 0; i < r; ++i) {
                    if (!include_beta1 && i == b1) continue;
                    rhs += Rat(n[i] + 1) / 2 * pair_cache[b1][i];
                }
                if (lhs[b1] < rhs) {
                    RegularityWitness wit;
                    wit.weyl_index = w;
                    wit.beta1 = e.distinct[b1];
                    for (std::size_t i = 0; i < r; ++i)
                        wit.exponents.emplace_back(e.distinct[i], n[i]);
                    result.holds = false;
                    result.witness = std::move(wit);
                    return result;
                }
            }
        }
    }
    return result;
}

} // namespace

RegularityResult check_condition_S(const RegularityInstance& inst, bool include_beta1_in_sum,
                                   std::size_t max_tuples) {
    return run_check(inst, false, include_beta1_in_sum, max_tuples);
}

RegularityResult check_condition_Sprime(const RegularityInstance& inst, bool include_beta1_in_sum,
                                        std::size_t max_tuples) {
    return run_check(inst, true, include_beta1_in_sum, max_tuples);
}

bool check_multiplicity_bound(const std::map<Weight, Int>& profile,
                              const RegularityInstance& inst) {
    Weight rho = inst.rho_uprime();
    for (const auto& [lambda, m] : profile) {
        Rat prod = 1;
        for (const Weight& beta : inst.uprime_roots)
            prod *= rat_pow(pair_weights(lambda + rho, beta, inst.ambient.inner), inst.b);
        Rat bound = inst.cX * prod + inst.dX;
        if (Rat(m) > bound) return false;
    }
    return true;
}

RegularityInstance regularity_instance_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    RegularityInstance inst;
    inst.ambient = root_datum_from_json(j.at("datum").dump());
    for (const auto& r : j.at("uprime_roots"))
        inst.uprime_roots.push_back(weight_from_base_coords(r.get<std::vector<std::int64_t>>()));
    inst.lambda = Weight(j.at("lambda").get<std::vector<std::int64_t>>());
    if (j.contains("lambda0"))
        inst.lambda0 = Weight(j.at("lambda0").get<std::vector<std::int64_t>>());
    else
        inst.lambda0 = inst.rho_uprime();
    inst.b = j.value("b", 0u);
    inst.cX = Rat(j.value("cX", 0));
    inst.dX = Rat(j.value("dX", 0));
    return inst;
}

} // namespace charloc
