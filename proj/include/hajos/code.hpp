#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <queue>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hajos/base.hpp"
#include "hajos/errors.hpp"
#include "hajos/polynomial.hpp"

namespace hajos {

/// Finite set of nonempty words over a declared alphabet.
struct FiniteCode {
    std::string alphabet;
    std::set<Word> words;

    FiniteCode(std::string alpha, std::set<Word> ws)
        : alphabet(normalize_alphabet(std::move(alpha))), words(std::move(ws)) {
        for (const auto& w : words) {
            if (w.empty()) throw PreconditionError("code words must be nonempty");
            if (!word_over(w, alphabet))
                throw PreconditionError("code word not over the alphabet: " + w);
        }
    }

    Nat max_length() const {
        Nat m = 0;
        for (const auto& w : words) m = std::max<Nat>(m, static_cast<Nat>(w.size()));
        return m;
    }
    Polynomial characteristic() const {
        return Polynomial::characteristic(alphabet, words);
    }
    friend bool operator==(const FiniteCode& a, const FiniteCode& b) {
        return a.alphabet == b.alphabet && a.words == b.words;
    }
    friend bool operator<(const FiniteCode& a, const FiniteCode& b) {
        if (a.alphabet != b.alphabet) return a.alphabet < b.alphabet;
        return a.words < b.words;
    }

    std::string to_text() const {
        std::ostringstream os;
        os << "alphabet: " << alphabet << "\n";
        std::vector<Word> sorted(words.begin(), words.end());
        std::sort(sorted.begin(), sorted.end(), ShortLex{});
        for (const auto& w : sorted) os << w << "\n";
        return os.str();
    }
    static FiniteCode from_text(const std::string& text) {
        std::istringstream is(text);
        std::string line;
        if (!std::getline(is, line) || line.rfind("alphabet:", 0) != 0)
            throw ParseError("code file must start with 'alphabet: ...'");
        std::string alpha = line.substr(9);
        alpha.erase(std::remove_if(alpha.begin(), alpha.end(),
                                   [](unsigned char c) { return std::isspace(c); }),
                    alpha.end());
        std::set<Word> ws;
        while (std::getline(is, line)) {
            while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
                line.pop_back();
            if (line.empty()) continue;
            if (!ws.insert(line).second) throw ParseError("duplicate word: " + line);
        }
        try {
            return FiniteCode(alpha, ws);
        } catch (const PreconditionError& e) {
            throw ParseError(e.what());
        }
    }
};

struct CodeDecision {
    bool is_code = false;
    /// A shortest word with two distinct codeword factorizations, when not a code.
    std::optional<Word> witness;
};

/// Sardinas-Patterson decision. The witness is reconstructed by a uniform
/// cost search over dangling suffixes: a state u carries a pair of words
/// alpha = beta u whose leading codewords differ, and closing u against a
/// codeword equal to it yields the ambiguous word alpha.
inline CodeDecision is_code(const FiniteCode& x) {
    struct Derivation {
        size_t cost;  // |beta|
        Word alpha, beta;
    };
    std::map<Word, Derivation> best;
    using QEntry = std::pair<size_t, Word>;
    std::priority_queue<QEntry, std::vector<QEntry>, std::greater<>> queue;

    auto offer = [&](const Word& u, Derivation d) {
        auto it = best.find(u);
        if (it != best.end() && it->second.cost <= d.cost) return;
        best[u] = d;
        queue.push({d.cost, u});
    };

    for (const auto& xl : x.words)
        for (const auto& yl : x.words) {
            if (xl.size() >= yl.size() || yl.compare(0, xl.size(), xl) != 0) continue;
            Word u = yl.substr(xl.size());
            offer(u, {xl.size(), yl, xl});
        }

    std::optional<Word> witness;
    size_t witness_len = 0;
    while (!queue.empty()) {
        auto [cost, u] = queue.top();
        queue.pop();
        auto it = best.find(u);
        if (it == best.end() || it->second.cost != cost) continue;
        const Derivation d = it->second;
        if (witness && cost + u.size() >= witness_len) continue;
        for (const auto& w : x.words) {
            if (w == u) {
                size_t len = d.beta.size() + u.size();
                if (!witness || len < witness_len) {
                    witness = d.beta + u;
                    witness_len = len;
                }
                continue;
            }
            if (w.size() > u.size() && w.compare(0, u.size(), u) == 0) {
                // w = u u': swap roles
                offer(w.substr(u.size()), {d.beta.size() + u.size(), d.beta + w, d.alpha});
            } else if (u.size() > w.size() && u.compare(0, w.size(), w) == 0) {
                offer(u.substr(w.size()), {d.beta.size() + w.size(), d.alpha, d.beta + w});
            }
        }
    }
    if (witness) return {false, witness};
    return {true, std::nullopt};
}

struct CodeClass {
    bool prefix = false;
    bool suffix = false;
    bool bifix = false;
};

inline CodeClass code_class(const FiniteCode& x) {
    CodeClass c;
    c.prefix = true;
    c.suffix = true;
    for (const auto& u : x.words)
        for (const auto& v : x.words) {
            if (u.size() >= v.size() || u == v) continue;
            if (v.compare(0, u.size(), u) == 0) c.prefix = false;
            if (v.compare(v.size() - u.size(), u.size(), u) == 0) c.suffix = false;
        }
    c.bifix = c.prefix && c.suffix;
    return c;
}

/// Maximality of a finite code via the Kraft equality: the uniform Bernoulli
/// measure sum_{x} k^{-|x|} equals 1 exactly. Computed as the integer
/// identity sum_x k^{L - |x|} = k^L with L the maximal length.
inline bool is_maximal(const FiniteCode& x) {
    if (!is_code(x).is_code) throw PreconditionError("is_maximal: not a code");
    const Int k = static_cast<int>(x.alphabet.size());
    const Nat L = x.max_length();
    Int total = 0;
    for (const auto& w : x.words) total += boost::multiprecision::pow(k, L - w.size());
    return total == boost::multiprecision::pow(k, L);
}

/// The exact uniform measure as a (numerator, denominator) pair k^L-scaled.
inline std::pair<Int, Int> uniform_measure(const FiniteCode& x) {
    const Int k = static_cast<int>(x.alphabet.size());
    const Nat L = x.max_length();
    Int total = 0;
    for (const auto& w : x.words) total += boost::multiprecision::pow(k, L - w.size());
    return {total, boost::multiprecision::pow(k, L)};
}

/// n with a^n in X, when present.
inline std::optional<Nat> letter_order(const FiniteCode& x, char a) {
    for (const auto& w : x.words)
        if (count_letter(w, a) == w.size()) return static_cast<Nat>(w.size());
    return std::nullopt;
}

/// True iff underline(C) = P (underline(A) - 1) S + 1 exactly. When the
/// equality holds and P, S are nonnegative, the classical consequences are
/// asserted: P and S must have coefficients 0/1 and C must be a maximal
/// code; breaking one of those raises a theorem violation rather than being
/// ignored.
inline bool verify_factorization_PS(const Polynomial& p, const Polynomial& s,
                                    const FiniteCode& c) {
    const std::string& alpha = c.alphabet;
    if (p.alphabet() != alpha || s.alphabet() != alpha)
        throw AlphabetMismatchError("verify_factorization_PS: alphabet mismatch");
    Polynomial lhs = c.characteristic();
    Polynomial rhs = p * (Polynomial::letters(alpha) - Polynomial::constant(alpha, 1)) * s +
                     Polynomial::constant(alpha, 1);
    if (lhs != rhs) return false;
    if (p.is_nonnegative() && s.is_nonnegative()) {
        if (!p.is_characteristic() || !s.is_characteristic())
            throw TheoremViolation(
                "verify_factorization_PS: nonnegative factorization with a coefficient >= 2",
                "{\"P\": \"" + p.to_string() + "\", \"S\": \"" + s.to_string() + "\"}");
        if (!is_code(c).is_code || !is_maximal(c))
            throw TheoremViolation(
                "verify_factorization_PS: factorized set is not a maximal code",
                "{\"C\": \"" + lhs.to_string() + "\"}");
    }
    return true;
}

/// Evaluates P (underline(A) - 1) S + 1 for finite word sets P, S and returns
/// the support as a code when the result is characteristic with no empty
/// word. Errors carry the first offending word.
inline FiniteCode build_code_from_PS(const std::string& alphabet, const std::set<Word>& p,
                                     const std::set<Word>& s) {
    const std::string alpha = normalize_alphabet(alphabet);
    Polynomial poly =
        Polynomial::characteristic(alpha, p) *
            (Polynomial::letters(alpha) - Polynomial::constant(alpha, 1)) *
            Polynomial::characteristic(alpha, s) +
        Polynomial::constant(alpha, 1);
    for (const auto& [w, k] : poly.terms()) {
        if (k < 0)
            throw NotALanguageError("build_code_from_PS: negative coefficient at '" + w + "'", w);
        if (k > 1)
            throw MultiplicityError("build_code_from_PS: coefficient " + k.str() + " at '" + w +
                                        "'",
                                    w);
    }
    if (poly.coeff("") != 0)
        throw NotALanguageError("build_code_from_PS: empty word in the result", "");
    return FiniteCode(alpha, poly.support());
}

/// All factors (substrings, including the empty word) of the words of X of
/// length strictly below the bound.
inline std::set<Word> factor_universe(const FiniteCode& x, Nat below) {
    std::set<Word> out{""};
    for (const auto& w : x.words)
        for (size_t i = 0; i < w.size(); ++i)
            for (size_t len = 1; len <= w.size() - i && len < below; ++len)
                out.insert(w.substr(i, len));
    return out;
}

struct PositiveFactorization {
    std::set<Word> p, s;
};

/// Exhaustive search for finite word sets P, S with
/// underline(C) = P (A - 1) S + 1. Candidates are factors of C's words of
/// length below max |c|; both sets must contain the empty word and the sizes
/// obey (|A|-1) |P| |S| = |C| - 1, which prunes the subset lattice hard.
/// Splits are visited with |S| ascending, so prefix codes report S = {1}.
/// Returns nothing after exhaustion; throws when the pair budget is hit.
inline std::optional<PositiveFactorization> search_positive_factorization(
    const FiniteCode& c, unsigned long long budget = 1'000'000) {
    const Nat k = static_cast<Nat>(c.alphabet.size());
    if (c.words.size() == 1 && c.words.count(Word())) return std::nullopt;
    if ((c.words.size() - 1) % (k - 1) != 0) return std::nullopt;
    const unsigned long long target = (c.words.size() - 1) / (k - 1);

    std::vector<Word> cands;
    for (const auto& w : factor_universe(c, c.max_length()))
        if (!w.empty()) cands.push_back(w);
    std::sort(cands.begin(), cands.end(), ShortLex{});

    unsigned long long tried = 0;
    const Polynomial one = Polynomial::constant(c.alphabet, 1);
    const Polynomial amid = Polynomial::letters(c.alphabet) - one;
    const Polynomial want = c.characteristic() - one;

    // all subsets of `cands` of a given size, lexicographic, plus the empty word
    auto for_each_subset = [&](Nat extra, auto&& fn) {
        if (extra > cands.size()) return;
        std::vector<size_t> idx(extra);
        for (size_t i = 0; i < extra; ++i) idx[i] = i;
        while (true) {
            std::set<Word> sub{""};
            for (size_t i : idx) sub.insert(cands[i]);
            if (fn(sub)) return;
            bool advanced = false;
            for (size_t i = extra; i-- > 0;) {
                if (idx[i] < cands.size() - extra + i) {
                    ++idx[i];
                    for (size_t j = i + 1; j < extra; ++j) idx[j] = idx[j - 1] + 1;
                    advanced = true;
                    break;
                }
            }
            if (!advanced) return;
        }
    };

    std::optional<PositiveFactorization> found;
    for (unsigned long long ssize = 1; ssize <= target && !found; ++ssize) {
        if (target % ssize != 0) continue;
        unsigned long long psize = target / ssize;
        if (psize - 1 > cands.size() || ssize - 1 > cands.size()) continue;
        for_each_subset(static_cast<Nat>(ssize - 1), [&](const std::set<Word>& s) {
            Polynomial spoly = Polynomial::characteristic(c.alphabet, s);
            for_each_subset(static_cast<Nat>(psize - 1), [&](const std::set<Word>& p) {
                if (++tried > budget)
                    throw ResourceLimitError("search_positive_factorization: budget exceeded");
                if (Polynomial::characteristic(c.alphabet, p) * amid * spoly == want) {
                    found = PositiveFactorization{p, s};
                    return true;
                }
                return false;
            });
            return found.has_value();
        });
    }
    return found;
}

}  // namespace hajos
