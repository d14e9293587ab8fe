#pragma once

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "hajos/base.hpp"
#include "hajos/code.hpp"
#include "hajos/errors.hpp"

namespace hajos {

/// Deterministic complete recognizer of X* for a finite code X, built by the
/// subset construction over the proper-prefix NFA of X (one nondeterministic
/// state per proper prefix, looping back to the root on each full codeword).
/// State 0 is the start; a dead sink is present whenever some word leads out
/// of every prefix.
class StarRecognizer {
  public:
    explicit StarRecognizer(const FiniteCode& x) : alphabet_(x.alphabet) {
        // NFA states: proper prefixes of codewords; index 0 is the root (empty prefix)
        std::vector<Word> prefixes{""};
        std::map<Word, size_t> prefix_id{{"", 0}};
        for (const auto& w : x.words)
            for (size_t len = 1; len < w.size(); ++len) {
                Word p = w.substr(0, len);
                if (prefix_id.emplace(p, prefixes.size()).second) prefixes.push_back(p);
            }

        const size_t k = alphabet_.size();
        // nfa[state][letter] -> set of nfa states
        std::vector<std::vector<std::vector<size_t>>> nfa(prefixes.size(),
                                                          std::vector<std::vector<size_t>>(k));
        for (size_t s = 0; s < prefixes.size(); ++s)
            for (size_t li = 0; li < k; ++li) {
                Word next = prefixes[s] + alphabet_[li];
                auto it = prefix_id.find(next);
                if (it != prefix_id.end()) nfa[s][li].push_back(it->second);
                if (x.words.count(next)) nfa[s][li].push_back(0);
            }

        std::map<std::set<size_t>, Nat> dfa_id;
        std::vector<std::set<size_t>> subsets;
        auto intern = [&](const std::set<size_t>& sub) {
            auto [it, fresh] = dfa_id.emplace(sub, static_cast<Nat>(subsets.size()));
            if (fresh) {
                subsets.push_back(sub);
                delta_.emplace_back(k, 0);
                accepting_.push_back(sub.count(0) > 0);
            }
            return it->second;
        };
        intern({0});           // start: the root prefix, accepts the empty word
        (void)intern({});      // dead sink
        for (Nat s = 0; s < subsets.size(); ++s) {
            for (size_t li = 0; li < k; ++li) {
                std::set<size_t> next;
                for (size_t ns : subsets[s])
                    for (size_t t : nfa[ns][li]) next.insert(t);
                delta_[s][li] = intern(next);
            }
        }
        compute_reachability();
    }

    const std::string& alphabet() const { return alphabet_; }
    Nat state_count() const { return static_cast<Nat>(delta_.size()); }
    Nat start() const { return 0; }
    bool accepting(Nat s) const { return accepting_[s]; }

    Nat step(Nat s, char c) const {
        size_t li = alphabet_.find(c);
        if (li == std::string::npos) throw PreconditionError("letter not in alphabet");
        return delta_[s][li];
    }
    Nat walk(Nat s, const Word& w) const {
        for (char c : w) s = step(s, c);
        return s;
    }
    Nat state_of(const Word& w) const { return walk(0, w); }

    bool accepts(const Word& w) const { return accepting_[state_of(w)]; }

    /// Some accepting state is reachable from s.
    bool coaccessible(Nat s) const { return coaccessible_[s]; }
    /// Every state reachable from s can still reach an accepting state.
    bool safe(Nat s) const { return safe_[s]; }

    bool is_right_completable(const Word& w) const { return coaccessible(state_of(w)); }
    bool is_strongly_right_completable(const Word& w) const { return safe(state_of(w)); }

    /// A shortest word leading from the start to each state (empty optional
    /// for unreachable states, which do not occur by construction).
    std::vector<Word> shortest_witnesses() const {
        std::vector<Word> wit(state_count());
        std::vector<bool> seen(state_count(), false);
        std::queue<Nat> bfs;
        bfs.push(0);
        seen[0] = true;
        while (!bfs.empty()) {
            Nat s = bfs.front();
            bfs.pop();
            for (size_t li = 0; li < alphabet_.size(); ++li) {
                Nat t = delta_[s][li];
                if (!seen[t]) {
                    seen[t] = true;
                    wit[t] = wit[s] + alphabet_[li];
                    bfs.push(t);
                }
            }
        }
        return wit;
    }

  private:
    void compute_reachability() {
        const Nat n = state_count();
        coaccessible_.assign(n, false);
        // reverse reachability from accepting states
        std::vector<std::vector<Nat>> rev(n);
        for (Nat s = 0; s < n; ++s)
            for (Nat t : delta_[s]) rev[t].push_back(s);
        std::queue<Nat> bfs;
        for (Nat s = 0; s < n; ++s)
            if (accepting_[s]) {
                coaccessible_[s] = true;
                bfs.push(s);
            }
        while (!bfs.empty()) {
            Nat t = bfs.front();
            bfs.pop();
            for (Nat s : rev[t])
                if (!coaccessible_[s]) {
                    coaccessible_[s] = true;
                    bfs.push(s);
                }
        }
        // safe: forward closure stays coaccessible
        safe_.assign(n, true);
        for (Nat s = 0; s < n; ++s) {
            if (!coaccessible_[s]) {
                safe_[s] = false;
                continue;
            }
            std::set<Nat> seen{s};
            std::queue<Nat> fwd;
            fwd.push(s);
            while (!fwd.empty() && safe_[s]) {
                Nat u = fwd.front();
                fwd.pop();
                if (!coaccessible_[u]) safe_[s] = false;
                for (Nat t : delta_[u])
                    if (seen.insert(t).second) fwd.push(t);
            }
        }
    }

    std::string alphabet_;
    std::vector<std::vector<Nat>> delta_;
    std::vector<bool> accepting_;
    std::vector<bool> coaccessible_;
    std::vector<bool> safe_;
};

/// Convenience operation-level wrappers.
inline StarRecognizer build_star_recognizer(const FiniteCode& x) { return StarRecognizer(x); }

inline bool is_right_completable(const Word& w, const FiniteCode& x) {
    return StarRecognizer(x).is_right_completable(w);
}
inline bool is_strongly_right_completable(const Word& w, const FiniteCode& x) {
    return StarRecognizer(x).is_strongly_right_completable(w);
}

/// Brute-force X* membership by dynamic programming, used as the recognizer's
/// independent oracle in tests.
inline bool star_member_bruteforce(const FiniteCode& x, const Word& w) {
    std::vector<char> dp(w.size() + 1, 0);
    dp[0] = 1;
    for (size_t i = 1; i <= w.size(); ++i)
        for (const auto& c : x.words)
            if (c.size() <= i && dp[i - c.size()] && w.compare(i - c.size(), c.size(), c) == 0) {
                dp[i] = 1;
                break;
            }
    return dp[w.size()];
}

}  // namespace hajos
