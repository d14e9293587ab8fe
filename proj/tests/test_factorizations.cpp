#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hajos/factorization.hpp"

using namespace hajos;

namespace {

bool contains_pair(const std::vector<FactorizationPair>& v, const NatSet& l, const NatSet& r) {
    return std::any_of(v.begin(), v.end(),
                       [&](const FactorizationPair& p) { return p.left == l && p.right == r; });
}

// chain-count recurrence: c(1) = 1, c(m) = sum of c(d) over proper divisors
Nat chain_count_oracle(Nat n) {
    std::map<Nat, Nat> c{{1, 1}};
    for (Nat m : divisors_of(n)) {
        if (m == 1) continue;
        Nat total = 0;
        for (Nat d : divisors_of(m))
            if (d < m) total += c.at(d);
        c[m] = total;
    }
    return c.at(n);
}

}  // namespace

TEST_CASE("is_factorization") {
    REQUIRE(is_factorization({0, 1}, {0, 2, 4}, 6));
    REQUIRE(is_factorization({0}, {0}, 1));
    REQUIRE_FALSE(is_factorization({0, 1}, {0, 1}, 4));
    REQUIRE_THROWS_AS(is_factorization({0}, {0}, 0), PreconditionError);
}

TEST_CASE("residues") {
    REQUIRE(residues({7, 8}, 6) == NatSet{1, 2});
    REQUIRE(residues({}, 5).empty());
    REQUIRE(residues({0, 3}, 2) == NatSet{0, 1});
}

TEST_CASE("omega counts prime factors with multiplicity") {
    REQUIRE(omega(12) == 3);
    REQUIRE(omega(1) == 0);
    REQUIRE(omega(7) == 1);
    REQUIRE(omega(16) == 4);
}

TEST_CASE("enumerate_factorizations") {
    auto f1 = enumerate_factorizations(1);
    REQUIRE(f1.size() == 1);
    REQUIRE(f1[0].left == NatSet{0});
    REQUIRE(f1[0].right == NatSet{0});

    auto f2 = enumerate_factorizations(2);
    REQUIRE(contains_pair(f2, {0, 1}, {0}));
    REQUIRE(contains_pair(f2, {0}, {0, 1}));

    auto f6 = enumerate_factorizations(6);
    REQUIRE(contains_pair(f6, {1, 2}, {1, 3, 5}));
    for (const auto& p : f6) REQUIRE(is_factorization(p.left, p.right, 6));

    REQUIRE_THROWS_AS(enumerate_factorizations(17), ResourceLimitError);
}

TEST_CASE("krasner pairs from chains") {
    SECTION("the 1|2|6 chain") {
        auto p = krasner_from_chain(DivisorChain({1, 2, 6}));
        REQUIRE(p.left == NatSet{0, 2, 4});
        REQUIRE(p.right == NatSet{0, 1});
    }
    SECTION("the trivial chain gives ({0}, {0..n-1})") {
        auto p = krasner_from_chain(DivisorChain({1, 5}));
        REQUIRE(p.left == NatSet{0});
        REQUIRE(p.right == NatSet{0, 1, 2, 3, 4});
    }
    SECTION("the 1|2|6|12 chain") {
        auto p = krasner_from_chain(DivisorChain({1, 2, 6, 12}));
        REQUIRE(p.left == NatSet{0, 2, 4});
        REQUIRE(p.right == NatSet{0, 1, 6, 7});
    }
    SECTION("invalid chains are rejected") {
        REQUIRE_THROWS_AS(DivisorChain({2, 4}), PreconditionError);
        REQUIRE_THROWS_AS(DivisorChain({1, 5, 12}), PreconditionError);
        REQUIRE_THROWS_AS(DivisorChain({1, 2, 2, 4}), PreconditionError);
    }
}

TEST_CASE("is_krasner") {
    REQUIRE(is_krasner({0, 1}, {0, 2, 4}, 6));
    REQUIRE(is_krasner({0}, {0}, 1));
    REQUIRE_FALSE(is_krasner({1, 2}, {1, 3, 5}, 6));
    REQUIRE(is_krasner({0, 1, 6, 7}, {0, 2, 4}, 12));
}

TEST_CASE("enumerate_krasner") {
    auto k2 = enumerate_krasner(2);
    REQUIRE(k2.size() == 1);
    REQUIRE(k2[0].left == NatSet{0});
    REQUIRE(k2[0].right == NatSet{0, 1});

    auto k12 = enumerate_krasner(12);
    REQUIRE(k12.size() == 8);
    REQUIRE(k12.size() == chain_count_oracle(12));
    REQUIRE(contains_pair(k12, {0, 2, 4}, {0, 1, 6, 7}));

    // soundness for every n <= 16 and every chain
    for (Nat n = 1; n <= 16; ++n)
        for (const auto& chain : divisor_chains(n)) {
            auto p = krasner_from_chain(chain);
            REQUIRE(is_krasner(p.left, p.right, n));
            REQUIRE(is_factorization(p.left, p.right, n));
        }
}

TEST_CASE("circ families") {
    auto fam = circ({0, 1}, {0, 2, 4});
    REQUIRE(std::find(fam.begin(), fam.end(), NatSet{1, 2}) != fam.end());

    auto single = circ({0, 1, 4}, {0});
    REQUIRE(single.size() == 1);
    REQUIRE(single[0] == NatSet{0, 1, 4});

    auto point = circ({0}, {0, 1});
    REQUIRE(point == std::vector<NatSet>{{0}, {1}});
}

TEST_CASE("hajos_enumerate reproduces the worked factorizations") {
    auto h2 = hajos_enumerate(2);
    REQUIRE(contains_pair(h2, {0, 1}, {1}));

    auto h6 = hajos_enumerate(6);
    REQUIRE(contains_pair(h6, {1, 2}, {1, 3, 5}));

    auto h12 = hajos_enumerate(12);
    REQUIRE(contains_pair(h12, {1, 2, 7, 8}, {1, 3, 5}));

    REQUIRE_THROWS_AS(hajos_enumerate(18), ResourceLimitError);

    SECTION("every enumerated pair is a factorization (n <= 12)") {
        for (Nat n : {1u, 2u, 3u, 4u, 6u, 8u, 12u})
            for (const auto& p : hajos_enumerate(n))
                REQUIRE(is_factorization(p.left, p.right, n));
    }
    SECTION("every Krasner pair is Hajos (n <= 12)") {
        for (Nat n = 1; n <= 12; ++n) {
            auto hs = hajos_enumerate(n);
            for (const auto& k : enumerate_krasner(n)) {
                REQUIRE(contains_pair(hs, k.left, k.right));
                REQUIRE(contains_pair(hs, k.right, k.left));
            }
        }
    }
    SECTION("annotated chains define their pairs via the membership oracle") {
        for (const auto& p : hajos_enumerate(6)) REQUIRE(hajos_def_member(p.left, p.right, 6));
    }
}

TEST_CASE("is_hajos") {
    REQUIRE(is_hajos({1, 2}, {1, 3, 5}, 6));
    for (Nat n : {2u, 3u, 5u, 6u})
        for (Nat t = 0; t < n; ++t) REQUIRE(is_hajos(range_set(0, n), {t}, n));
    REQUIRE_FALSE(is_hajos({0, 1}, {0, 1}, 4));

    SECTION("the residue convention handles sets beyond {0..n-1}") {
        REQUIRE(is_hajos({7, 8}, {1, 3, 5}, 6));  // reduces to ({1,2},{1,3,5})
    }
}

TEST_CASE("krasner companions") {
    auto comp = krasner_companions({1, 2}, {1, 3, 5}, 6);
    REQUIRE(contains_pair(comp, {0, 1}, {0, 2, 4}));
    for (const auto& k : comp) {
        REQUIRE(is_krasner(k.left, k.right, 6));
        REQUIRE(is_factorization(k.left, {1, 3, 5}, 6));
        REQUIRE(is_factorization({1, 2}, k.right, 6));
    }

    SECTION("a Krasner pair is its own companion") {
        for (Nat n : {3u, 4u}) {
            auto comp2 = krasner_companions(range_set(0, n), {0}, n);
            REQUIRE(contains_pair(comp2, range_set(0, n), {0}));
        }
    }
    SECTION("the Z_12 pair") {
        auto comp3 = krasner_companions({1, 2, 7, 8}, {1, 3, 5}, 12);
        REQUIRE(contains_pair(comp3, {0, 1, 6, 7}, {0, 2, 4}));
    }
    SECTION("non-Hajos pairs have no companion") {
        REQUIRE(krasner_companions({0, 1}, {0, 1}, 4).empty());
    }
}

TEST_CASE("solve_eq_EF") {
    REQUIRE(solve_eq_EF({1, 2}, {0, 1}) == NatSet{0});
    REQUIRE(solve_eq_EF({0, 1}, {0, 1}) == NatSet{});
    REQUIRE(solve_eq_EF({1, 3, 5}, {0, 2, 4}) == NatSet{0});
    REQUIRE(solve_eq_EF({0, 2}, {0}) == std::nullopt);
}

TEST_CASE("three-way agreement of the Hajos characterizations, small n") {
    // enumeration membership == companion existence == coordinate equations,
    // exhaustively over subsets of {0..n-1}
    for (Nat n : {2u, 4u}) {
        auto hs = hajos_enumerate(n);
        std::set<std::pair<NatSet, NatSet>> members;
        for (const auto& p : hs) members.insert({p.left, p.right});
        for (uint32_t tm = 1; tm < (1u << n); ++tm)
            for (uint32_t rm = 1; rm < (1u << n); ++rm) {
                NatSet t = detail::set_of(tm), r = detail::set_of(rm);
                bool via_enum = members.count({t, r}) > 0;
                bool via_companion = !krasner_companions(t, r, n).empty();
                bool via_equations = is_hajos(t, r, n);
                bool via_definition = hajos_def_member(t, r, n);
                REQUIRE(via_enum == via_companion);
                REQUIRE(via_companion == via_equations);
                REQUIRE(via_equations == via_definition);
            }
    }
}

TEST_CASE("chain-extension structure of Krasner pairs") {
    // for every chain of length >= 2 with top step h | n = gh, exactly one of
    // the coordinates splits as K + {0, h, ..., (g-1)h}
    for (Nat n = 2; n <= 16; ++n)
        for (const auto& chain : divisor_chains(n)) {
            if (chain.length() < 2) continue;
            auto p = krasner_from_chain(chain);
            Nat h = chain.ks[chain.ks.size() - 2];
            Nat g = n / h;
            NatSet G;
            for (Nat k = 0; k < g; ++k) G.insert(k * h);
            auto splits = [&](const NatSet& s) {
                NatSet base;
                for (Nat x : s)
                    if (x < h) base.insert(x);
                return base.size() * g == s.size() && sumset(base, G) == s;
            };
            REQUIRE(splits(p.left) != splits(p.right));
        }
}

TEST_CASE("lemma L72 decomposition") {
    SECTION("worked instance with a lifted element") {
        auto d = lemma_L72_decompose({0, 1}, {0}, {0, 3}, {1}, 2);
        REQUIRE(d.m_prime == NatSet{});
        REQUIRE(d.m_second == NatSet{1});
        REQUIRE(d.h == NatMultiset{1});
        REQUIRE(d.bound_check_skipped);
    }
    SECTION("already-reduced sets decompose trivially") {
        auto d = lemma_L72_decompose({0, 1}, {0, 2, 4}, {1, 2}, {0}, 6);
        REQUIRE(d.m_prime == NatSet{0});
        REQUIRE(d.m_second == NatSet{});
        REQUIRE(d.h.empty());
        REQUIRE_FALSE(d.bound_check_skipped);
    }
    SECTION("instance with I a singleton") {
        auto d = lemma_L72_decompose({0}, {0, 1}, {2}, {0, 1}, 2);
        REQUIRE(d.m_prime == NatSet{});
        REQUIRE(d.m_second == NatSet{0, 1});
        REQUIRE(d.h == NatMultiset{0});
    }
    SECTION("violated equation is a contract error") {
        REQUIRE_THROWS_AS(lemma_L72_decompose({0}, {0, 1}, {0, 2}, {0, 1}, 2),
                          PreconditionError);
        REQUIRE_THROWS_AS(lemma_L72_decompose({1, 2}, {0}, {0, 3}, {1}, 2), PreconditionError);
    }
    SECTION("the identities hold on constructed instances") {
        std::mt19937_64 gen(31);
        int done = 0;
        while (done < 100) {
            Nat n = 2 + gen() % 11;
            auto ks = krasner_pairs_oriented(n);
            auto k = ks[gen() % ks.size()];
            NatSet m;
            for (Nat i = 0, cnt = gen() % 5; i < cnt; ++i) m.insert(gen() % 14);
            IntPoly rp = char_poly(k.left) *
                         (IntPoly::one() + char_poly(m) * IntPoly::power_minus_one(1));
            if (!rp.is_characteristic()) continue;
            NatSet r = *ExpPoly(rp).to_set();
            auto d = lemma_L72_decompose(k.left, k.right, r, m, n);
            // disjoint union
            for (Nat x : d.m_prime) REQUIRE(d.m_second.count(x) == 0);
            NatSet unioned = d.m_prime;
            unioned.insert(d.m_second.begin(), d.m_second.end());
            REQUIRE(unioned == m);
            ++done;
        }
    }
}
