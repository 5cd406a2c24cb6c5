#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "charloc/regularity.hpp"
#include "charloc/selftest.hpp"
#include "charloc/series.hpp"
#include "charloc/sl2.hpp"
#include "charloc/weyl_kostant.hpp"

namespace {

using namespace charloc;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitMathFailure = 2;

struct JobConfig {
    std::string output = "text";
    std::uint64_t seed = 1;
    std::int64_t box = 0; // 0: command default
};

std::vector<std::int64_t> parse_coords(const std::string& text) {
    std::vector<std::int64_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(std::stoll(item));
    return out;
}

nlohmann::json poly_json(const LaurentPoly& p) {
    return nlohmann::json::parse(laurent_to_json(p));
}

int run_char_finite(const JobConfig& cfg, const std::string& datum_path,
                    const std::string& lambda_text) {
    RootDatum datum = root_datum_from_file(datum_path);
    Weight lambda = weight_from_base_coords(parse_coords(lambda_text));
    if (lambda.rank() != datum.rank) {
        std::cerr << "lambda rank does not match the datum\n";
        return kExitUsage;
    }
    CohomologyTable table = kostant_table(datum, lambda);
    RationalChar character = euler_character(datum, lambda);
    LaurentPoly restriction = restrict_finite(datum, lambda);
    Int dim = weyl_dimension(datum, lambda);
    if (restriction.mass() != dim) {
        std::cerr << "restriction mass disagrees with the dimension formula\n";
        return kExitMathFailure;
    }
    if (cfg.output == "json") {
        nlohmann::json j;
        j["lambda"] = lambda.x2;
        nlohmann::json coh;
        for (std::size_t q = 0; q < table.degrees(); ++q)
            coh[std::to_string(q)] = poly_json(table[q]);
        j["cohomology"] = coh;
        j["character"] = nlohmann::json::parse(rational_char_to_json(character));
        j["restriction"] = poly_json(restriction);
        j["dimension"] = dim.str();
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "lambda (doubled): " << lambda << "\n";
        for (std::size_t q = 0; q < table.degrees(); ++q)
            std::cout << "H^" << q << ": " << table[q].to_string() << "\n";
        std::cout << "character: " << character.to_string() << "\n";
        std::cout << "restriction: " << restriction.to_string() << "\n";
        std::cout << "dimension: " << dim << "\n";
    }
    return kExitOk;
}

int run_sl2_char(const JobConfig& cfg, const std::string& module_text) {
    sl2::Sl2Module m = sl2::parse_module(module_text);
    RationalChar c = sl2::sl2_character(m);
    if (cfg.output == "json") {
        nlohmann::json j;
        j["module"] = m.to_string();
        j["character"] = nlohmann::json::parse(rational_char_to_json(c));
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << m.to_string() << ": " << c.to_string() << "\n";
    }
    return kExitOk;
}

int run_sl2_tensor(const JobConfig& cfg, const std::string& left, const std::string& right) {
    auto a = sl2::parse_module(left);
    auto b = sl2::parse_module(right);
    auto dec = sl2::tensor_decompose(a, b);
    if (cfg.output == "json") {
        nlohmann::json j;
        j["left"] = a.to_string();
        j["right"] = b.to_string();
        j["not_discretely_decomposable"] = dec.not_discretely_decomposable;
        if (dec.not_discretely_decomposable) j["reason"] = dec.reason;
        j["complete"] = dec.complete;
        nlohmann::json parts = nlohmann::json::array();
        for (const auto& [mod, mult] : dec.parts) {
            nlohmann::json p;
            p["module"] = mod.to_string();
            p["multiplicity"] = mult.str();
            parts.push_back(p);
        }
        j["parts"] = parts;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << a.to_string() << " (x) " << b.to_string() << " = ";
        if (dec.not_discretely_decomposable) {
            std::cout << "not discretely decomposable (" << dec.reason << ")\n";
        } else {
            bool first = true;
            for (const auto& [mod, mult] : dec.parts) {
                if (!first) std::cout << " + ";
                if (mult != 1) std::cout << mult << "*";
                std::cout << mod.to_string();
                first = false;
            }
            std::cout << (dec.complete ? "\n" : " + ... (box truncated)\n");
        }
    }
    return kExitOk;
}

int run_sl2_blattner(const JobConfig& cfg, std::int64_t k, std::int64_t box, bool dump) {
    TruncatedSeries b = sl2::blattner(k, box);
    if (dump) {
        b.dump(std::cout);
        return kExitOk;
    }
    if (cfg.output == "json") {
        nlohmann::json types = nlohmann::json::array();
        for (std::int64_t m = -box; m <= box; ++m)
            if (b.at({2 * m}) != 0) types.push_back(m);
        nlohmann::json j;
        j["k"] = k;
        j["box"] = box;
        j["so2_types"] = types;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "D_" << k << " restricted: SO(2)-types";
        for (std::int64_t m = -box; m <= box; ++m)
            if (b.at({2 * m}) != 0) std::cout << " " << m;
        std::cout << "\n";
    }
    return kExitOk;
}

int run_sl2_kernel_relation(const JobConfig& cfg, std::int64_t box) {
    bool ok = sl2::kernel_relation_check(box);
    if (cfg.output == "json") {
        nlohmann::json j;
        j["box"] = box;
        j["holds"] = ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "kernel relation on box " << box << ": " << (ok ? "holds" : "FAILS") << "\n";
    }
    return ok ? kExitOk : kExitMathFailure;
}

int run_kernel_window(const JobConfig& cfg, unsigned n, std::int64_t box, unsigned combos) {
    const Weight alpha = sl2::alpha_root();
    const InnerProduct& inner = sl2::datum().inner;
    const Weight lambda0 = zero_weight(1);
    Box grid{{2 * box}};

    // generator family: shifted kernel elements of every exponent up to n
    std::vector<TruncatedSeries> gens;
    std::vector<std::string> names;
    for (unsigned j = 1; j <= n; ++j)
        for (std::int64_t shift = -3; shift <= 3; ++shift)
            for (bool plus : {false, true}) {
                Weight sh({shift});
                gens.push_back(kernel_y(alpha, j, plus, grid, &sh));
                std::ostringstream nm;
                nm << "y^(" << j << (plus ? ",+" : "") << ") shift " << shift;
                names.push_back(nm.str());
            }

    KernelSpec spec{{alpha}, {n}};
    auto window = window_points(spec, inner, lambda0, grid);

    RatMatrix a(window.size(), gens.size());
    for (std::size_t r = 0; r < window.size(); ++r)
        for (std::size_t c = 0; c < gens.size(); ++c) a.at(r, c) = gens[c].at(window[r]);
    auto basis = nullspace(a);

    bool falsified = false;
    std::size_t zero_combos = 0;
    for (const auto& v : basis) {
        std::vector<Int> iv = clear_denominators(v);
        TruncatedSeries z(1, grid);
        for (std::size_t c = 0; c < gens.size(); ++c)
            if (iv[c] != 0) z = z + gens[c].scaled(to_int64(iv[c]));
        WindowVerdict verdict = window_uniqueness_check(spec, inner, lambda0, z);
        if (verdict == WindowVerdict::Zero)
            ++zero_combos;
        else
            falsified = true;
    }

    // random combinations must either hit the window or vanish identically
    std::mt19937_64 rng(cfg.seed);
    std::uniform_int_distribution<std::int64_t> cd(-4, 4);
    std::size_t window_hits = 0;
    for (unsigned t = 0; t < combos; ++t) {
        TruncatedSeries z(1, grid);
        bool nonzero = false;
        for (auto& g : gens) {
            std::int64_t c = cd(rng);
            if (c != 0) {
                z = z + g.scaled(c);
                nonzero = true;
            }
        }
        if (!nonzero) continue;
        WindowVerdict verdict = window_uniqueness_check(spec, inner, lambda0, z);
        if (verdict == WindowVerdict::NonzeroWithWindowHit)
            ++window_hits;
        else if (verdict == WindowVerdict::Zero) {
            if (!z.zero_on_valid()) falsified = true;
        } else
            falsified = true;
    }

    if (cfg.output == "json") {
        nlohmann::json j;
        j["n"] = n;
        j["box"] = box;
        j["generators"] = gens.size();
        j["window_points"] = window.size();
        j["solved_null_combinations"] = basis.size();
        j["verdict"] = falsified ? "theorem-falsified" : "zero";
        j["random_combinations_with_window_hit"] = window_hits;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "window demo: n=" << n << " box=" << box << ", " << gens.size()
                  << " generators, " << window.size() << " window points\n";
        std::cout << "null-space combinations vanishing on the window: " << basis.size()
                  << " (all identically zero: " << (falsified ? "NO" : "yes") << ")\n";
        std::cout << "random combinations hitting the window: " << window_hits << "\n";
        std::cout << "verdict: " << (falsified ? "theorem-falsified" : "zero") << "\n";
    }
    return falsified ? kExitMathFailure : kExitOk;
}

int run_regularity(const JobConfig& cfg, bool sprime, const std::string& config_path,
                   bool exclude_beta1) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "cannot open config: " << config_path << "\n";
        return kExitUsage;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    RegularityInstance inst = regularity_instance_from_json(ss.str());
    RegularityResult res = sprime ? check_condition_Sprime(inst, !exclude_beta1)
                                  : check_condition_S(inst, !exclude_beta1);
    if (cfg.output == "json") {
        nlohmann::json j;
        j["condition"] = sprime ? "S'" : "S";
        j["holds"] = res.holds;
        if (res.witness) j["witness"] = nlohmann::json::parse(res.witness->to_json());
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "condition (" << (sprime ? "S'" : "S") << "): "
                  << (res.holds ? "holds" : "violated") << "\n";
        if (res.witness) std::cout << "witness: " << res.witness->to_json() << "\n";
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"charloc: exact algebraic characters in localized character rings"};
    app.require_subcommand(1);
    app.fallthrough();

    JobConfig cfg;
    app.add_option("--output", cfg.output, "output format: text or json")
        ->check(CLI::IsMember({"text", "json"}));
    app.add_option("--seed", cfg.seed, "seed for randomized sweeps");

    // char finite
    auto* cmd_char = app.add_subcommand("char", "finite-dimensional characters");
    auto* cmd_char_finite = cmd_char->add_subcommand("finite", "Weyl/Kostant data for one weight");
    std::string datum_path, lambda_text;
    bool char_selftest = false;
    cmd_char->add_flag("--selftest", char_selftest, "run the character invariant suite");
    cmd_char_finite->add_option("--datum", datum_path, "root datum JSON file");
    cmd_char_finite->add_option("--lambda", lambda_text, "highest weight, Lambda0 coordinates");

    // sl2 family
    auto* cmd_sl2 = app.add_subcommand("sl2", "the (sl2, SO(2)) catalogue");
    bool sl2_selftest = false;
    cmd_sl2->add_flag("--selftest", sl2_selftest, "run the sl2 invariant suite");
    auto* cmd_sl2_char = cmd_sl2->add_subcommand("char", "character of one module");
    std::string module_text;
    cmd_sl2_char->add_option("--module", module_text, "module, e.g. F:2, D+:5, D-:3")->required();
    auto* cmd_sl2_tensor = cmd_sl2->add_subcommand("tensor", "tensor decomposition");
    std::string left_text, right_text;
    cmd_sl2_tensor->add_option("--left", left_text)->required();
    cmd_sl2_tensor->add_option("--right", right_text)->required();
    auto* cmd_sl2_blattner = cmd_sl2->add_subcommand("blattner", "restriction series of D_k");
    std::int64_t blattner_k = 1, blattner_box = 0;
    bool blattner_dump = false;
    cmd_sl2_blattner->add_option("--k", blattner_k)->required();
    cmd_sl2_blattner->add_option("--box", blattner_box, "SO(2)-type radius")
        ->envname("CHARLOC_BOX_DEFAULT");
    cmd_sl2_blattner->add_flag("--dump", blattner_dump, "emit the dense series grid");
    auto* cmd_sl2_kernel = cmd_sl2->add_subcommand("kernel-relation", "two-sided comb identity");
    std::int64_t kernel_box = 0;
    cmd_sl2_kernel->add_option("--box", kernel_box, "SO(2)-type radius")
        ->envname("CHARLOC_BOX_DEFAULT");

    // kernel window
    auto* cmd_kernel = app.add_subcommand("kernel", "localization-kernel analysis");
    bool kernel_selftest = false;
    cmd_kernel->add_flag("--selftest", kernel_selftest, "run the series invariant suite");
    auto* cmd_kernel_window = cmd_kernel->add_subcommand("window", "window uniqueness demo");
    unsigned window_n = 1;
    std::int64_t window_box = 0;
    unsigned window_combos = 25;
    cmd_kernel_window->add_option("--n", window_n, "kernel exponent");
    cmd_kernel_window->add_option("--box", window_box, "SO(2)-type radius")
        ->envname("CHARLOC_BOX_DEFAULT");
    cmd_kernel_window->add_option("--combos", window_combos, "random combinations to test");

    // regularity
    auto* cmd_reg = app.add_subcommand("regularity", "sampling-condition predicates");
    bool reg_selftest = false;
    cmd_reg->add_flag("--selftest", reg_selftest, "run the regularity invariant suite");
    auto* cmd_reg_s = cmd_reg->add_subcommand("s", "condition (S)");
    auto* cmd_reg_sprime = cmd_reg->add_subcommand("sprime", "condition (S')");
    std::string reg_config;
    bool reg_exclude = false;
    for (auto* c : {cmd_reg_s, cmd_reg_sprime}) {
        c->add_option("--config", reg_config, "instance JSON")->required();
        c->add_flag("--exclude-beta1", reg_exclude,
                    "drop the distinguished root from the threshold sum");
    }

    // selftest everything
    auto* cmd_selftest = app.add_subcommand("selftest", "run every invariant suite");

    // global flags and the group --selftest remain reachable after a leaf
    for (auto* c : {cmd_char, cmd_char_finite, cmd_sl2, cmd_sl2_char, cmd_sl2_tensor,
                    cmd_sl2_blattner, cmd_sl2_kernel, cmd_kernel, cmd_kernel_window, cmd_reg,
                    cmd_reg_s, cmd_reg_sprime, cmd_selftest})
        c->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (cmd_selftest->parsed())
            return selftest::all(cfg.seed, std::cout) ? kExitOk : kExitMathFailure;

        if (cmd_char->parsed()) {
            if (char_selftest || (cmd_char_finite->parsed() && char_selftest))
                return selftest::characters(cfg.seed, std::cout) ? kExitOk : kExitMathFailure;
            if (cmd_char_finite->parsed()) {
                if (datum_path.empty() || lambda_text.empty()) {
                    std::cerr << "char finite needs --datum and --lambda\n";
                    return kExitUsage;
                }
                return run_char_finite(cfg, datum_path, lambda_text);
            }
            std::cerr << "char: missing subcommand\n";
            return kExitUsage;
        }

        if (cmd_sl2->parsed()) {
            if (sl2_selftest) return selftest::sl2(cfg.seed, std::cout) ? kExitOk : kExitMathFailure;
            if (cmd_sl2_char->parsed()) return run_sl2_char(cfg, module_text);
            if (cmd_sl2_tensor->parsed()) return run_sl2_tensor(cfg, left_text, right_text);
            if (cmd_sl2_blattner->parsed())
                return run_sl2_blattner(cfg, blattner_k, blattner_box > 0 ? blattner_box : 41,
                                        blattner_dump);
            if (cmd_sl2_kernel->parsed())
                return run_sl2_kernel_relation(cfg, kernel_box > 0 ? kernel_box : 20);
            std::cerr << "sl2: missing subcommand\n";
            return kExitUsage;
        }

        if (cmd_kernel->parsed()) {
            if (kernel_selftest)
                return selftest::series(cfg.seed, std::cout) ? kExitOk : kExitMathFailure;
            if (cmd_kernel_window->parsed())
                return run_kernel_window(cfg, window_n, window_box > 0 ? window_box : 30,
                                         window_combos);
            std::cerr << "kernel: missing subcommand\n";
            return kExitUsage;
        }

        if (cmd_reg->parsed()) {
            if (reg_selftest)
                return selftest::regularity(cfg.seed, std::cout) ? kExitOk : kExitMathFailure;
            if (cmd_reg_s->parsed()) return run_regularity(cfg, false, reg_config, reg_exclude);
            if (cmd_reg_sprime->parsed()) return run_regularity(cfg, true, reg_config, reg_exclude);
            std::cerr << "regularity: missing subcommand\n";
            return kExitUsage;
        }
    } catch (const box_error& e) {
        std::cerr << "box error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::length_error& e) {
        std::cerr << "enumeration cap: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    std::cerr << "no command\n";
    return kExitUsage;
}
