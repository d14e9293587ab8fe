#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hajos/base.hpp"
#include "hajos/errors.hpp"
#include "hajos/intpoly.hpp"

namespace hajos {

constexpr Nat kDefaultEnumBound = 16;

/// Strictly increasing chain of divisors k_0 = 1 | k_1 | ... | k_s = n.
struct DivisorChain {
    std::vector<Nat> ks;

    DivisorChain() = default;
    explicit DivisorChain(std::vector<Nat> chain) : ks(std::move(chain)) {
        if (!valid()) throw PreconditionError("invalid divisor chain");
    }

    bool valid() const {
        if (ks.empty() || ks.front() != 1) return false;
        for (size_t i = 1; i < ks.size(); ++i)
            if (ks[i] <= ks[i - 1] || ks[i] % ks[i - 1] != 0) return false;
        return true;
    }
    Nat modulus() const { return ks.back(); }
    /// Number of proper steps s.
    Nat length() const { return static_cast<Nat>(ks.size()) - 1; }
    DivisorChain dropped_top() const {
        return DivisorChain(std::vector<Nat>(ks.begin(), ks.end() - 1));
    }

    std::string to_string() const {
        std::ostringstream os;
        for (size_t i = 0; i < ks.size(); ++i) os << (i ? "|" : "") << ks[i];
        return os.str();
    }
    friend bool operator==(const DivisorChain& a, const DivisorChain& b) { return a.ks == b.ks; }
    friend bool operator<(const DivisorChain& a, const DivisorChain& b) { return a.ks < b.ks; }
};

/// All divisor chains from 1 to n.
inline std::vector<DivisorChain> divisor_chains(Nat n) {
    if (n == 0) throw PreconditionError("divisor_chains: n must be positive");
    std::vector<DivisorChain> out;
    std::vector<Nat> cur{1};
    auto rec = [&](auto&& self) -> void {
        if (cur.back() == n) {
            out.push_back(DivisorChain(cur));
            return;
        }
        for (Nat d : divisors_of(n / cur.back()))
            if (d > 1) {
                cur.push_back(cur.back() * d);
                self(self);
                cur.pop_back();
            }
    };
    rec(rec);
    std::sort(out.begin(), out.end());
    return out;
}

enum class PairKind { Factorization, Krasner, Hajos };

inline std::string to_string(PairKind k) {
    switch (k) {
        case PairKind::Factorization: return "factorization";
        case PairKind::Krasner: return "krasner";
        case PairKind::Hajos: return "hajos";
    }
    return "?";
}

/// Pair of subsets of N together with a modulus; depending on `kind` it is a
/// plain factorization of Z_n, a Krasner pair or a Hajos pair, possibly
/// annotated with a defining divisor chain.
struct FactorizationPair {
    NatSet left;
    NatSet right;
    Nat modulus = 1;
    std::optional<DivisorChain> chain;
    PairKind kind = PairKind::Factorization;

    FactorizationPair swapped() const {
        FactorizationPair p = *this;
        std::swap(p.left, p.right);
        return p;
    }
    friend bool operator==(const FactorizationPair& a, const FactorizationPair& b) {
        return a.left == b.left && a.right == b.right && a.modulus == b.modulus;
    }
    friend bool operator<(const FactorizationPair& a, const FactorizationPair& b) {
        if (a.left != b.left) return a.left < b.left;
        if (a.right != b.right) return a.right < b.right;
        return a.modulus < b.modulus;
    }
};

/// True iff every residue of Z_n is t + r for exactly one (t, r) in T x R.
inline bool is_factorization(const NatSet& left, const NatSet& right, Nat n) {
    if (n == 0) throw PreconditionError("is_factorization: n must be positive");
    if (left.empty() || right.empty()) return false;
    if (static_cast<unsigned long long>(left.size()) * right.size() != n) return false;
    std::vector<Nat> count(n, 0);
    for (Nat t : left)
        for (Nat r : right) {
            Nat z = (t % n + r % n) % n;
            if (++count[z] > 1) return false;
        }
    return true;
}

namespace detail {

inline uint32_t mask_of(const NatSet& s) {
    uint32_t m = 0;
    for (Nat x : s) m |= 1u << x;
    return m;
}
inline NatSet set_of(uint32_t mask) {
    NatSet s;
    for (Nat i = 0; i < 32; ++i)
        if (mask & (1u << i)) s.insert(i);
    return s;
}

inline bool is_factorization_mask(uint32_t t, uint32_t r, Nat n) {
    std::array<uint8_t, 32> count{};
    for (Nat i = 0; i < n; ++i) {
        if (!(t & (1u << i))) continue;
        for (Nat j = 0; j < n; ++j) {
            if (!(r & (1u << j))) continue;
            Nat z = (i + j) % n;
            if (++count[z] > 1) return false;
        }
    }
    for (Nat z = 0; z < n; ++z)
        if (count[z] != 1) return false;
    return true;
}

/// All bitmasks over n bits with exactly k bits set.
inline std::vector<uint32_t> masks_with_popcount(Nat n, Nat k) {
    std::vector<uint32_t> out;
    for (uint32_t m = 0; m < (1u << n); ++m)
        if (static_cast<Nat>(std::popcount(m)) == k) out.push_back(m);
    return out;
}

}  // namespace detail

/// Exhaustive list of all factorizations (T, R) of Z_n with T, R subsets of
/// {0..n-1}, canonically ordered. Guarded: this is exponential in n.
inline std::vector<FactorizationPair> enumerate_factorizations(Nat n,
                                                               Nat bound = kDefaultEnumBound) {
    if (n == 0) throw PreconditionError("enumerate_factorizations: n must be positive");
    if (n > bound || n > 24)
        throw ResourceLimitError("enumerate_factorizations: n exceeds the enumeration bound");
    std::vector<FactorizationPair> out;
    for (Nat d : divisors_of(n)) {
        auto ts = detail::masks_with_popcount(n, d);
        auto rs = detail::masks_with_popcount(n, n / d);
        for (uint32_t t : ts)
            for (uint32_t r : rs)
                if (detail::is_factorization_mask(t, r, n))
                    out.push_back({detail::set_of(t), detail::set_of(r), n, std::nullopt,
                                   PairKind::Factorization});
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Krasner pair of a divisor chain: even-index quotient factors multiply to
/// a^I, odd-index ones to a^J; the empty product is a^{0} = 1.
inline FactorizationPair krasner_from_chain(const DivisorChain& chain) {
    if (!chain.valid()) throw PreconditionError("krasner_from_chain: invalid chain");
    ExpPoly left = ExpPoly::from_set({0});
    ExpPoly right = ExpPoly::from_set({0});
    for (Nat j = 1; j < chain.ks.size(); ++j) {
        Nat q = chain.ks[j] / chain.ks[j - 1];
        NatSet factor;
        for (Nat i = 0; i < q; ++i) factor.insert(i * chain.ks[j - 1]);
        if (j % 2 == 0)
            left = left * ExpPoly::from_set(factor);
        else
            right = right * ExpPoly::from_set(factor);
    }
    auto is = left.to_set();
    auto js = right.to_set();
    if (!is || !js)
        throw TheoremViolation("krasner_from_chain: product not characteristic",
                               "{\"chain\": \"" + chain.to_string() + "\"}");
    return {*is, *js, chain.modulus(), chain, PairKind::Krasner};
}

/// Krasner-Ranulac test: a^I a^J = (a^n - 1)/(a - 1) exactly, with no
/// modular reduction.
inline bool is_krasner(const NatSet& I, const NatSet& J, Nat n) {
    if (n == 0) return false;
    if (I.empty() || J.empty()) return false;
    return (ExpPoly::from_set(I) * ExpPoly::from_set(J)).poly() == IntPoly::geometric(n);
}

/// One Krasner pair per divisor chain of n, deduplicated, canonically sorted.
inline std::vector<FactorizationPair> enumerate_krasner(Nat n) {
    if (n == 0) throw PreconditionError("enumerate_krasner: n must be positive");
    std::vector<FactorizationPair> out;
    for (const auto& c : divisor_chains(n)) {
        FactorizationPair p = krasner_from_chain(c);
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// Krasner pairs of order n in both orientations (the Krasner property is
/// symmetric: the product of the two characteristic polynomials commutes).
inline std::vector<FactorizationPair> krasner_pairs_oriented(Nat n) {
    std::vector<FactorizationPair> out;
    for (const auto& p : enumerate_krasner(n)) {
        if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
        FactorizationPair q = p.swapped();
        if (std::find(out.begin(), out.end(), q) == out.end()) out.push_back(q);
    }
    std::sort(out.begin(), out.end());
    return out;
}

/// S o T: the family of sets {s_i + t_i} over all assignments of one element
/// of T to each element of S. No modular reduction is applied.
inline std::vector<NatSet> circ(const NatSet& S, const NatSet& T) {
    std::vector<Nat> s(S.begin(), S.end());
    std::vector<Nat> t(T.begin(), T.end());
    std::set<NatSet> family;
    if (s.empty()) return {NatSet{}};
    std::vector<size_t> pick(s.size(), 0);
    while (true) {
        NatSet member;
        for (size_t i = 0; i < s.size(); ++i) member.insert(s[i] + t[pick[i]]);
        family.insert(std::move(member));
        size_t i = 0;
        while (i < pick.size() && ++pick[i] == t.size()) pick[i++] = 0;
        if (i == pick.size()) break;
    }
    return {family.begin(), family.end()};
}

/// All Hajos factorizations of Z_n, built by the chain recursion: the base
/// pair of Z_1 is ({0},{0}); a pair of Z_n arises from a pair (R', T') of
/// Z_h (h | n, h < n, g = n/h) as R' + {0,h,...,(g-1)h} on one coordinate and
/// a member of T' o {0,h,...,(g-1)h} on the other, in both orientations.
/// Each pair is annotated with the first defining chain found.
inline std::vector<FactorizationPair> hajos_enumerate(Nat n, Nat bound = kDefaultEnumBound) {
    if (n == 0) throw PreconditionError("hajos_enumerate: n must be positive");
    if (n > bound) throw ResourceLimitError("hajos_enumerate: n exceeds the enumeration bound");

    std::map<Nat, std::vector<FactorizationPair>> table;
    table[1] = {{{0}, {0}, 1, DivisorChain({1}), PairKind::Hajos}};

    for (Nat m : divisors_of(n)) {
        if (m == 1) continue;
        std::map<std::pair<uint32_t, uint32_t>, DivisorChain> seen;
        for (Nat h : divisors_of(m)) {
            if (h == m) continue;
            Nat g = m / h;
            NatSet G;
            for (Nat k = 0; k < g; ++k) G.insert(k * h);
            for (const auto& sub : table.at(h)) {
                NatSet r1 = sumset(sub.left, G);
                DivisorChain chain = *sub.chain;
                chain.ks.push_back(m);
                for (const auto& t1 : circ(sub.right, G)) {
                    seen.emplace(std::make_pair(detail::mask_of(r1), detail::mask_of(t1)), chain);
                    seen.emplace(std::make_pair(detail::mask_of(t1), detail::mask_of(r1)), chain);
                }
            }
        }
        auto& list = table[m];
        for (const auto& [masks, chain] : seen)
            list.push_back({detail::set_of(masks.first), detail::set_of(masks.second), m, chain,
                            PairKind::Hajos});
        std::sort(list.begin(), list.end());
    }
    return table.at(n);
}

/// Solves a^R = a^I (1 + a^M (a-1)) for M: the quotient
/// (a^R - a^I) / (a^I (a-1)) when it exists and is characteristic.
inline std::optional<NatSet> solve_eq_EF(const NatSet& R, const NatSet& I) {
    IntPoly numerator = char_poly(R) - char_poly(I);
    IntPoly denominator = char_poly(I) * IntPoly::power_minus_one(1);
    auto q = exact_divide(numerator, denominator);
    if (!q) return std::nullopt;
    return ExpPoly(*q).is_characteristic() ? ExpPoly(*q).to_set() : std::nullopt;
}

/// Direct membership in the chain definition: alternate sumset and o steps
/// over the quotient sets of some chain, starting the two coordinates on
/// opposite operations, and compare against the full generated families.
/// Used as an independent oracle against hajos_enumerate.
inline bool hajos_def_member(const NatSet& R, const NatSet& T, Nat n) {
    if (n == 0) throw PreconditionError("hajos_def_member: n must be positive");
    if (n == 1) return R == NatSet{0} && T == NatSet{0};
    for (const auto& chain : divisor_chains(n)) {
        // family for the coordinate whose first operation is the sumset
        auto build = [&](bool sumset_first) {
            std::set<NatSet> family{NatSet{0}};
            for (Nat j = 1; j < chain.ks.size(); ++j) {
                Nat q = chain.ks[j] / chain.ks[j - 1];
                NatSet factor;
                for (Nat i = 0; i < q; ++i) factor.insert(i * chain.ks[j - 1]);
                bool use_sumset = (j % 2 == 1) == sumset_first;
                std::set<NatSet> next;
                for (const auto& s : family) {
                    if (use_sumset) {
                        // keep only multiplicity-free sumsets: a^S a^F must
                        // stay a characteristic polynomial
                        if (auto prod = (ExpPoly::from_set(s) * ExpPoly::from_set(factor)).to_set())
                            next.insert(*prod);
                    } else {
                        for (auto& member : circ(s, factor)) next.insert(member);
                    }
                }
                family = std::move(next);
            }
            return family;
        };
        auto plus_family = build(true);
        auto circ_family = build(false);
        if (plus_family.count(R) && circ_family.count(T)) return true;
        if (plus_family.count(T) && circ_family.count(R)) return true;
    }
    return false;
}

/// Hajos test via condition 3 of the chain/companion equivalence: some
/// Krasner pair (I, J) of order n admits solutions of both coordinate
/// equations. Sets outside {0..n-1} are first reduced mod n.
inline bool is_hajos(const NatSet& R, const NatSet& T, Nat n) {
    if (n == 0) throw PreconditionError("is_hajos: n must be positive");
    NatSet r = residues(R, n);
    NatSet t = residues(T, n);
    for (const auto& k : krasner_pairs_oriented(n))
        if (solve_eq_EF(r, k.left) && solve_eq_EF(t, k.right)) return true;
    return false;
}

/// All Krasner pairs (I, J) of order n with (I, T) and (R, J) factorizations
/// of Z_n. Empty when (R, T) is not Hajos.
inline std::vector<FactorizationPair> krasner_companions(const NatSet& R, const NatSet& T, Nat n) {
    std::vector<FactorizationPair> out;
    for (const auto& k : krasner_pairs_oriented(n))
        if (is_factorization(k.left, T, n) && is_factorization(R, k.right, n)) out.push_back(k);
    return out;
}

/// Output of the reduction lemma for a^R = a^I (1 + a^M (a-1)): M splits as
/// the disjoint union M' u M'' with a^{R'} = a^I (1 + a^{M'} (a-1)) for the
/// reduced R' = R mod n, a^{M''} = a^J a^H for the ladder multiset H of the
/// lifts, and a^R = a^{R'} + a^I (a-1) a^{M''}.
struct L72Decomposition {
    NatSet m_prime;
    NatSet m_second;
    NatMultiset h;
    /// The containment I + max M' + 1 in {0..n-1} is skipped when M' is
    /// empty (max of an empty set is undefined); reported here.
    bool bound_check_skipped = false;
};

inline L72Decomposition lemma_L72_decompose(const NatSet& I, const NatSet& J, const NatSet& R,
                                            const NatSet& M, Nat n) {
    if (!is_krasner(I, J, n))
        throw PreconditionError("lemma_L72_decompose: (I, J) is not a Krasner pair of order n");
    const IntPoly lhs = char_poly(R);
    const IntPoly rhs =
        char_poly(I) * (IntPoly::one() + char_poly(M) * IntPoly::power_minus_one(1));
    if (lhs != rhs)
        throw PreconditionError("lemma_L72_decompose: a^R = a^I(1 + a^M(a-1)) does not hold");

    const NatSet r_prime = residues(R, n);
    auto bundle = [&] {
        std::ostringstream os;
        os << "{\"op\": \"lemma_L72_decompose\", \"n\": " << n << "}";
        return os.str();
    };

    auto m_prime_opt = solve_eq_EF(r_prime, I);
    if (!m_prime_opt)
        throw TheoremViolation("lemma_L72_decompose: no M' for the reduced set", bundle());
    L72Decomposition out;
    out.m_prime = *m_prime_opt;

    if (out.m_prime.empty()) {
        out.bound_check_skipped = true;
    } else {
        Nat max_mp = *out.m_prime.rbegin();
        for (Nat i : I)
            if (i + max_mp + 1 > n - 1)
                throw TheoremViolation("lemma_L72_decompose: I + max M' + 1 escapes {0..n-1}",
                                       bundle());
    }

    // lift offsets: each residue class of R' contains exactly one element of R
    ExpPoly h_poly;
    NatMultiset h;
    for (Nat rp : r_prime) {
        Nat lift = 0;
        bool found = false;
        for (Nat x : R)
            if (x % n == rp) {
                lift = (x - rp) / n;
                found = true;
                break;
            }
        if (!found || std::count_if(R.begin(), R.end(), [&](Nat x) { return x % n == rp; }) != 1)
            throw TheoremViolation("lemma_L72_decompose: residues of R are not simple", bundle());
        NatSet ladder;
        for (Nat q = 0; q < lift; ++q) ladder.insert(rp + q * n);
        for (Nat x : ladder) h.insert(x);
        h_poly = h_poly + ExpPoly::from_set(ladder);
    }
    out.h = h;

    // M'' = M \ M', which must be disjoint-union-complementary to M'
    for (Nat x : out.m_prime)
        if (!M.count(x))
            throw TheoremViolation("lemma_L72_decompose: M' is not a subset of M", bundle());
    for (Nat x : M)
        if (!out.m_prime.count(x)) out.m_second.insert(x);

    // the three polynomial identities of the lemma, re-verified exactly
    const IntPoly mp_id =
        char_poly(I) * (IntPoly::one() + char_poly(out.m_prime) * IntPoly::power_minus_one(1));
    if (mp_id != char_poly(r_prime))
        throw TheoremViolation("lemma_L72_decompose: reduced identity failed", bundle());
    if (char_poly(out.m_second) != (ExpPoly::from_set(J).poly() * h_poly.poly()))
        throw TheoremViolation("lemma_L72_decompose: a^{M''} = a^J a^H failed", bundle());
    const IntPoly split = char_poly(r_prime) + char_poly(I) * IntPoly::power_minus_one(1) *
                                                   char_poly(out.m_second);
    if (split != char_poly(R))
        throw TheoremViolation("lemma_L72_decompose: split identity failed", bundle());
    return out;
}

}  // namespace hajos
