// hajos: enumeration, verification and analysis workflows for factorizations
// of cyclic groups and finite maximal codes.
//
// Exit codes: 0 all requested checks pass, 1 a checked property is false,
// 2 precondition or bound violated, 3 parse error, 4 theorem violation.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hajos/hajos.hpp"

namespace {

using namespace hajos;
using nlohmann::json;

constexpr int kSchemaVersion = 1;

struct RunConfig {
    Nat n_bound = kDefaultEnumBound;
    unsigned long long budget = 1'000'000;
    uint64_t seed = 1;
    std::string format = "json";
    std::string out_path;
    char letter = 'a';
};

void emit(const RunConfig& cfg, const json& doc, const std::string& text) {
    std::ostream* os = &std::cout;
    std::ofstream file;
    if (!cfg.out_path.empty()) {
        file.open(cfg.out_path);
        if (!file) throw PreconditionError("cannot open output file: " + cfg.out_path);
        os = &file;
    }
    if (cfg.format == "json")
        *os << doc.dump(2) << "\n";
    else
        *os << text;
}

std::string load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string render_pair(const FactorizationPair& p) {
    std::ostringstream os;
    os << "(";
    for (auto it = p.left.begin(); it != p.left.end(); ++it)
        os << (it == p.left.begin() ? "{" : ",") << *it;
    os << "}, ";
    for (auto it = p.right.begin(); it != p.right.end(); ++it)
        os << (it == p.right.begin() ? "{" : ",") << *it;
    os << "})";
    if (p.chain) os << "  chain " << p.chain->to_string();
    return os.str();
}

int cmd_factorize(const RunConfig& cfg, Nat n, const std::string& kind) {
    std::vector<FactorizationPair> pairs;
    if (kind == "all")
        pairs = enumerate_factorizations(n, cfg.n_bound);
    else if (kind == "krasner")
        pairs = enumerate_krasner(n);
    else if (kind == "hajos")
        pairs = hajos_enumerate(n, cfg.n_bound);
    else
        throw PreconditionError("unknown kind: " + kind);

    json items = json::array();
    std::ostringstream text;
    text << kind << " factorizations of Z_" << n << ": " << pairs.size() << "\n";
    for (const auto& p : pairs) {
        items.push_back(to_json(p));
        text << "  " << render_pair(p) << "\n";
    }
    emit(cfg, json{{"schema_version", kSchemaVersion}, {"n", n}, {"kind", kind},
                   {"count", pairs.size()}, {"pairs", items}},
         text.str());
    return 0;
}

int cmd_check(const RunConfig& cfg, const std::string& path, bool chk_code, bool chk_class,
              bool chk_maximal, bool chk_factorization) {
    FiniteCode code = parse_code_file(load_file(path));
    json doc{{"schema_version", kSchemaVersion}, {"code", to_json(code)}};
    std::ostringstream text;
    bool all_pass = true;

    CodeDecision dec{true, std::nullopt};
    if (chk_code || chk_maximal || chk_factorization) {
        dec = is_code(code);
        if (chk_code) {
            doc["is_code"] = dec.is_code;
            text << "is_code: " << (dec.is_code ? "yes" : "no") << "\n";
            if (!dec.is_code) {
                doc["witness"] = *dec.witness;
                text << "  witness: " << *dec.witness << "\n";
                all_pass = false;
            }
        }
    }
    if (chk_class) {
        CodeClass cc = code_class(code);
        doc["class"] = {{"prefix", cc.prefix}, {"suffix", cc.suffix}, {"bifix", cc.bifix}};
        text << "prefix: " << cc.prefix << " suffix: " << cc.suffix << " bifix: " << cc.bifix
             << "\n";
    }
    if (chk_maximal) {
        if (!dec.is_code) {
            doc["is_maximal"] = false;
            all_pass = false;
        } else {
            bool mx = is_maximal(code);
            auto [num, den] = uniform_measure(code);
            doc["is_maximal"] = mx;
            doc["measure"] = num.str() + "/" + den.str();
            text << "is_maximal: " << (mx ? "yes" : "no") << "  (measure " << num.str() << "/"
                 << den.str() << ")\n";
            if (!mx) all_pass = false;
        }
    }
    if (chk_factorization) {
        if (!dec.is_code || !is_maximal(code)) {
            doc["factorization"] = nullptr;
            all_pass = false;
        } else {
            auto f = search_positive_factorization(code, cfg.budget);
            if (f) {
                json pj = json::array(), sj = json::array();
                text << "factorization: P = {";
                for (const auto& w : f->p) {
                    pj.push_back(w);
                    text << (w.empty() ? "1" : w) << " ";
                }
                text << "} S = {";
                for (const auto& w : f->s) {
                    sj.push_back(w);
                    text << (w.empty() ? "1" : w) << " ";
                }
                text << "}\n";
                doc["factorization"] = {{"P", pj}, {"S", sj}};
            } else {
                doc["factorization"] = nullptr;
                text << "factorization: none found in the candidate space\n";
                all_pass = false;
            }
        }
    }
    emit(cfg, doc, text.str());
    return all_pass ? 0 : 1;
}

int cmd_analyze(const RunConfig& cfg, const std::string& path) {
    FiniteCode code = parse_code_file(load_file(path));
    if (!is_code(code).is_code || !is_maximal(code))
        throw PreconditionError("analyze requires a finite maximal code");
    CodeAnalyzer az(code, cfg.letter);
    auto sys = az.enumerate_system();

    json doc{{"schema_version", kSchemaVersion},
             {"code", to_json(code)},
             {"letter", std::string(1, cfg.letter)},
             {"n", az.order()},
             {"lefts", json::array()},
             {"rights", json::array()}};
    for (const auto& p : sys.lefts) doc["lefts"].push_back(to_json(p.residues));
    for (const auto& q : sys.rights) doc["rights"].push_back(to_json(q.residues));

    std::ostringstream text;
    text << "order of '" << cfg.letter << "': " << az.order() << "\n";
    text << "left sets: " << sys.lefts.size() << ", right sets: " << sys.rights.size() << "\n";

    // every system pair must factorize Z_n
    for (const auto& p : sys.lefts)
        for (const auto& q : sys.rights)
            if (!is_factorization(p.residues, q.residues, az.order()))
                throw TheoremViolation("system pair is not a factorization",
                                       az.bundle("analyze", ""));

    // Krasner pairs present in the system
    std::vector<FactorizationPair> in_system;
    for (const auto& k : krasner_pairs_oriented(az.order()))
        if (sys.contains_left(k.left) && sys.contains_right(k.right)) in_system.push_back(k);
    doc["krasner_in_system"] = json::array();
    for (const auto& k : in_system) doc["krasner_in_system"].push_back(to_json(k));

    doc["separators"] = json::array();
    for (const Word& w : az.separators()) {
        auto xw = az.compute_Xw(w);
        auto tri = triangle_property(xw);
        json sep{{"w", w}, {"Xw", to_json(xw)["Xw"]}, {"triangle", tri.ok}};
        text << "w = " << w << ": |Xw| = " << xw.elements.size()
             << ", triangle: " << (tri.ok ? "yes" : "NO") << "\n";
        if (!in_system.empty()) {
            auto ga = az.good_arrangement_from_system(w, in_system[0].left, in_system[0].right,
                                                      sys);
            auto chk = is_good_arrangement(ga, in_system[0].left, in_system[0].right);
            if (!chk.good)
                throw TheoremViolation("constructed arrangement is not good",
                                       az.bundle("analyze", w));
            injection_from_good_arrangement(ga, in_system[0].left, in_system[0].right);
            sep["arrangement"] = to_json(ga);
            sep["arrangement_kind"] = "good";
        } else if (!sys.lefts.empty()) {
            auto arr = az.zhmain_arrangement(w, sys.lefts[0], sys.rights[0], sys);
            sep["arrangement"] = to_json(arr.matrix);
            sep["arrangement_kind"] = "zhmain";
        }
        doc["separators"].push_back(std::move(sep));
    }
    emit(cfg, doc, text.str());
    return 0;
}

int cmd_scan(const RunConfig& cfg, const std::string& mode, Nat count) {
    auto corpus = generate_corpus(count, cfg.seed);
    json items = json::array();
    Nat hits = 0, applicable = 0;
    bool any_violation = false;

    for (const auto& gc : corpus) {
        json item{{"code", to_json(gc.code)}};
        auto order = letter_order(gc.code, cfg.letter);
        if (!order) {
            item["skipped"] = "letter has no order";
            items.push_back(std::move(item));
            continue;
        }
        CodeAnalyzer az(gc.code, cfg.letter);
        auto sys = az.enumerate_system();
        item["n"] = az.order();

        std::vector<FactorizationPair> in_system;
        for (const auto& k : krasner_pairs_oriented(az.order()))
            if (sys.contains_left(k.left) && sys.contains_right(k.right)) in_system.push_back(k);

        if (mode == "krasner-in-system") {
            ++applicable;
            item["krasner_in_system"] = !in_system.empty();
            if (!in_system.empty()) ++hits;
        } else if (mode == "triangle") {
            // triangle status wherever one of the established hypotheses holds
            bool prime = az.order() >= 2;
            for (Nat d = 2; d * d <= az.order(); ++d)
                if (az.order() % d == 0) prime = false;
            bool singleton =
                std::any_of(sys.lefts.begin(), sys.lefts.end(),
                            [](const SidedSet& s) { return s.residues.size() == 1; }) ||
                std::any_of(sys.rights.begin(), sys.rights.end(),
                            [](const SidedSet& s) { return s.residues.size() == 1; });
            bool hypothesis = prime || singleton || !in_system.empty() || az.order() == 1;
            if (!hypothesis) {
                item["skipped"] = "no hypothesis applies";
                items.push_back(std::move(item));
                continue;
            }
            ++applicable;
            bool all_tri = true;
            for (const Word& w : az.separators())
                if (!triangle_property(az.compute_Xw(w)).ok) all_tri = false;
            item["triangle"] = all_tri;
            if (all_tri) ++hits;
            else any_violation = true;
        } else if (mode == "omega2") {
            if (omega(az.order()) > 2) {
                item["skipped"] = "omega > 2";
                items.push_back(std::move(item));
                continue;
            }
            ++applicable;
            bool all_found = true;
            for (const Word& w : az.separators()) {
                auto xw = az.compute_Xw(w);
                bool found = false;
                for (const auto& k : krasner_pairs_oriented(az.order())) {
                    if (xw.elements.size() != az.order()) break;
                    if (find_good_arrangement(xw.elements, w, k.left, k.right, cfg.budget)) {
                        found = true;
                        break;
                    }
                }
                if (!found && !az.separators().empty()) all_found = false;
            }
            item["good_arrangement_everywhere"] = all_found;
            if (all_found) ++hits;
        } else if (mode == "pair2") {
            bool small_factor =
                std::any_of(sys.lefts.begin(), sys.lefts.end(),
                            [](const SidedSet& s) { return s.residues.size() <= 2; }) ||
                std::any_of(sys.rights.begin(), sys.rights.end(),
                            [](const SidedSet& s) { return s.residues.size() <= 2; });
            if (!small_factor) {
                item["skipped"] = "no factor of size <= 2";
                items.push_back(std::move(item));
                continue;
            }
            ++applicable;
            bool all_tri = true;
            for (const Word& w : az.separators())
                if (!triangle_property(az.compute_Xw(w)).ok) all_tri = false;
            item["triangle"] = all_tri;
            if (all_tri) ++hits;
            else any_violation = true;
        } else {
            throw PreconditionError("unknown scan mode: " + mode);
        }
        items.push_back(std::move(item));
    }

    json doc{{"schema_version", kSchemaVersion}, {"mode", mode},      {"seed", cfg.seed},
             {"count", count},                   {"applicable", applicable},
             {"hits", hits},                     {"items", items}};
    std::ostringstream text;
    text << "scan mode " << mode << " over " << count << " codes (seed " << cfg.seed << "): "
         << hits << "/" << applicable << " applicable items positive\n";
    emit(cfg, doc, text.str());
    return any_violation ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact toolkit for factorizations of cyclic groups and finite maximal codes"};
    app.require_subcommand(1);
    RunConfig cfg;
    app.add_option("--n-bound", cfg.n_bound, "enumeration bound for exhaustive listings");
    app.add_option("--budget", cfg.budget, "search budget");
    app.add_option("--seed", cfg.seed, "seed for randomized corpora");
    app.add_option("--format", cfg.format, "output format: json or text")
        ->check(CLI::IsMember({"json", "text"}));
    app.add_option("--out", cfg.out_path, "write the report to a file");
    std::string letter = "a";
    app.add_option("--letter", letter, "distinguished letter");

    auto* fact = app.add_subcommand("factorize", "enumerate factorizations of Z_n");
    Nat fact_n = 1;
    std::string kind = "all";
    fact->add_option("n", fact_n, "modulus")->required();
    fact->add_option("--kind", kind, "all, krasner or hajos")
        ->check(CLI::IsMember({"all", "krasner", "hajos"}));

    auto* check = app.add_subcommand("check", "run code-theoretic predicates on a code file");
    std::string check_path;
    bool chk_all = false, chk_code = false, chk_class = false, chk_max = false, chk_fact = false;
    check->add_option("code-file", check_path, "path to the code file")->required();
    check->add_flag("--all", chk_all, "run every check");
    check->add_flag("--code", chk_code, "unique decipherability");
    check->add_flag("--class", chk_class, "prefix/suffix/bifix flags");
    check->add_flag("--maximal", chk_max, "maximality via the Kraft equality");
    check->add_flag("--factorization", chk_fact, "search a positive factorization");

    auto* analyze = app.add_subcommand("analyze", "left/right sets, X_w tables and arrangements");
    std::string analyze_path;
    analyze->add_option("code-file", analyze_path, "path to the code file")->required();

    auto* scan = app.add_subcommand("scan", "evidence scans over a generated corpus");
    std::string mode = "triangle";
    Nat scan_count = 50;
    scan->add_option("--mode", mode, "krasner-in-system, omega2, pair2 or triangle")
        ->check(CLI::IsMember({"krasner-in-system", "omega2", "pair2", "triangle"}));
    scan->add_option("--count", scan_count, "corpus size");

    CLI11_PARSE(app, argc, argv);
    cfg.letter = letter.empty() ? 'a' : letter[0];

    try {
        if (fact->parsed()) return cmd_factorize(cfg, fact_n, kind);
        if (check->parsed()) {
            if (chk_all) chk_code = chk_class = chk_max = chk_fact = true;
            if (!(chk_code || chk_class || chk_max || chk_fact)) chk_code = true;
            return cmd_check(cfg, check_path, chk_code, chk_class, chk_max, chk_fact);
        }
        if (analyze->parsed()) return cmd_analyze(cfg, analyze_path);
        if (scan->parsed()) return cmd_scan(cfg, mode, scan_count);
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return 3;
    } catch (const TheoremViolation& e) {
        std::cerr << "theorem violation: " << e.what() << "\nreproduction: " << e.bundle << "\n";
        return 4;
    } catch (const ResourceLimitError& e) {
        std::cerr << "bound exceeded: " << e.what() << "\n";
        return 2;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
