#pragma once

#include <random>
#include <set>
#include <string>
#include <vector>

#include "hajos/base.hpp"
#include "hajos/code.hpp"
#include "hajos/factorization.hpp"

namespace hajos {

/// A positively factorizing code together with the word sets that built it.
struct GeneratedCode {
    std::set<Word> p, s;
    FiniteCode code;
};

namespace corpus_detail {

/// Random prefix-closed set containing the empty word: the internal nodes of
/// a prefix tree. P(A-1)+1 is then the characteristic polynomial of the
/// leaves, a finite maximal prefix code.
inline std::set<Word> random_prefix_closed(std::mt19937_64& gen, const std::string& alphabet,
                                           Nat extra) {
    std::vector<Word> p{""};
    for (Nat i = 0; i < extra; ++i) {
        const Word& base = p[gen() % p.size()];
        char c = alphabet[gen() % alphabet.size()];
        Word cand = base + c;
        if (std::find(p.begin(), p.end(), cand) == p.end()) p.push_back(cand);
    }
    return {p.begin(), p.end()};
}

inline std::set<Word> reversed_all(const std::set<Word>& ws) {
    std::set<Word> out;
    for (const auto& w : ws) out.insert(Word(w.rbegin(), w.rend()));
    return out;
}

inline std::set<Word> a_powers(const NatSet& s) {
    std::set<Word> out;
    for (Nat e : s) out.insert(Word(e, 'a'));
    return out;
}

}  // namespace corpus_detail

/// Deterministic corpus of positively factorizing codes over {a, b}: maximal
/// prefix and suffix codes, bayonet codes a^n + a^I b a^J from Krasner
/// pairs, their one-row right-shifted variants, and random filtered (P, S)
/// attempts. Reproducible from the seed alone.
inline std::vector<GeneratedCode> generate_corpus(Nat count, uint64_t seed, Nat max_order = 6) {
    std::mt19937_64 gen(seed);
    std::vector<GeneratedCode> out;
    const std::string ab = "ab";

    auto offer = [&](const std::set<Word>& p, const std::set<Word>& s) {
        if (out.size() >= count) return;
        try {
            FiniteCode c = build_code_from_PS(ab, p, s);
            if (c.words.size() > 12 || c.max_length() > 12) return;
            out.push_back({p, s, std::move(c)});
        } catch (const Error&) {
        }
    };

    // fixed seeds of the corpus: the alphabet itself and the Krasner bayonet codes
    offer({""}, {""});
    for (Nat n = 2; n <= max_order; ++n)
        for (const auto& k : enumerate_krasner(n)) {
            offer(corpus_detail::a_powers(k.left), corpus_detail::a_powers(k.right));
            offer(corpus_detail::a_powers(k.right), corpus_detail::a_powers(k.left));
        }

    while (out.size() < count) {
        switch (gen() % 5) {
            case 0:
                offer(corpus_detail::random_prefix_closed(gen, ab, 1 + gen() % 8), {""});
                break;
            case 1:
                offer({""}, corpus_detail::reversed_all(
                                corpus_detail::random_prefix_closed(gen, ab, 1 + gen() % 8)));
                break;
            case 2: {
                // bayonet code with one row's right exponents shifted:
                // P = a^I + a^{i0} b a^{0..t-1}, S = a^J
                Nat n = 2 + gen() % (max_order - 1);
                auto ks = enumerate_krasner(n);
                auto k = ks[gen() % ks.size()];
                if (gen() % 2) std::swap(k.left, k.right);
                auto p = corpus_detail::a_powers(k.left);
                Nat i0 = *std::next(k.left.begin(), gen() % k.left.size());
                Nat t = 1 + gen() % 2;
                for (Nat l = 0; l < t; ++l) p.insert(Word(i0, 'a') + "b" + Word(l, 'a'));
                offer(p, corpus_detail::a_powers(k.right));
                break;
            }
            case 3: {
                // dual construction on the suffix side
                Nat n = 2 + gen() % (max_order - 1);
                auto ks = enumerate_krasner(n);
                auto k = ks[gen() % ks.size()];
                if (gen() % 2) std::swap(k.left, k.right);
                auto s = corpus_detail::a_powers(k.right);
                Nat j0 = *std::next(k.right.begin(), gen() % k.right.size());
                Nat t = 1 + gen() % 2;
                for (Nat l = 0; l < t; ++l) s.insert(Word(l, 'a') + "b" + Word(j0, 'a'));
                offer(corpus_detail::a_powers(k.left), s);
                break;
            }
            default: {
                // random small attempt, kept only on success
                auto rand_word = [&](Nat maxlen) {
                    Word w;
                    Nat len = gen() % (maxlen + 1);
                    for (Nat i = 0; i < len; ++i) w += ab[gen() % 2];
                    return w;
                };
                std::set<Word> p{""}, s{""};
                for (Nat i = 0, np = gen() % 3; i < np; ++i) p.insert(rand_word(3));
                for (Nat i = 0, ns = gen() % 3; i < ns; ++i) s.insert(rand_word(3));
                offer(p, s);
            }
        }
    }
    return out;
}

}  // namespace hajos
