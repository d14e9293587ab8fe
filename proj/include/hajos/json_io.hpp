#pragma once

#include <json.hpp>

#include "hajos/analysis.hpp"
#include "hajos/arrangement.hpp"
#include "hajos/code.hpp"
#include "hajos/factorization.hpp"

namespace hajos {

using nlohmann::json;

inline json to_json(const NatSet& s) { return json(std::vector<Nat>(s.begin(), s.end())); }

inline json to_json(const FactorizationPair& p) {
    json j{{"n", p.modulus},
           {"left", to_json(p.left)},
           {"right", to_json(p.right)},
           {"kind", to_string(p.kind)}};
    if (p.chain) j["chain"] = p.chain->ks;
    return j;
}

inline FactorizationPair pair_from_json(const json& j) {
    FactorizationPair p;
    p.modulus = j.at("n").get<Nat>();
    for (Nat x : j.at("left").get<std::vector<Nat>>()) p.left.insert(x);
    for (Nat x : j.at("right").get<std::vector<Nat>>()) p.right.insert(x);
    std::string kind = j.value("kind", "factorization");
    p.kind = kind == "krasner"  ? PairKind::Krasner
             : kind == "hajos" ? PairKind::Hajos
                                : PairKind::Factorization;
    if (j.contains("chain")) p.chain = DivisorChain(j.at("chain").get<std::vector<Nat>>());
    return p;
}

inline json to_json(const NatMatrix& m) {
    return json{{"m", m.rows()}, {"l", m.cols()}, {"entries", m.entries}};
}

inline json to_json(const Bayonet& b, const Word& sep) {
    return json{{"i", b.first}, {"sep", sep}, {"j", b.second}};
}

inline json to_json(const WordMatrix& w) {
    json rows = json::array();
    for (const auto& row : w.entries) {
        json r = json::array();
        for (const auto& cell : row) r.push_back(to_json(cell, w.sep));
        rows.push_back(r);
    }
    return json{{"m", w.rows()}, {"l", w.cols()}, {"sep", w.sep}, {"entries", rows}};
}

inline json to_json(const FiniteCode& c) {
    std::vector<Word> sorted(c.words.begin(), c.words.end());
    std::sort(sorted.begin(), sorted.end(), ShortLex{});
    return json{{"alphabet", c.alphabet}, {"words", sorted}};
}

inline FiniteCode code_from_json(const json& j) {
    try {
        auto words = j.at("words").get<std::vector<Word>>();
        return FiniteCode(j.at("alphabet").get<std::string>(),
                          std::set<Word>(words.begin(), words.end()));
    } catch (const PreconditionError& e) {
        throw ParseError(e.what());
    } catch (const json::exception& e) {
        throw ParseError(e.what());
    }
}

/// Accepts either the JSON or the plain-text code format.
inline FiniteCode parse_code_file(const std::string& content) {
    size_t first = content.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && content[first] == '{') {
        json j = json::parse(content, nullptr, false);
        if (j.is_discarded()) throw ParseError("malformed JSON code file");
        return code_from_json(j);
    }
    return FiniteCode::from_text(content);
}

inline json to_json(const BayonetTable& t) {
    json elems = json::array();
    for (const auto& [i, j] : t.elements) elems.push_back(json::array({i, j}));
    return json{{"w", t.separator}, {"Xw", elems}, {"n", t.modulus}, {"bound", t.bound}};
}

inline json to_json(const SidedSet& s) {
    return json{{"side", s.side == SidedSet::Side::Left ? "left" : "right"},
                {"residues", to_json(s.residues)},
                {"generator", s.generator}};
}

inline json to_json(const SystemOfFactorizations& sys) {
    json lefts = json::array(), rights = json::array();
    for (const auto& p : sys.lefts) lefts.push_back(to_json(p.residues));
    for (const auto& q : sys.rights) rights.push_back(to_json(q.residues));
    return json{{"n", sys.modulus}, {"lefts", lefts}, {"rights", rights}};
}

}  // namespace hajos
