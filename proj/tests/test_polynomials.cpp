#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hajos/intpoly.hpp"
#include "hajos/polynomial.hpp"

using namespace hajos;

namespace {

// independent convolution oracle: (PQ, w) = sum over uv = w of (P,u)(Q,v)
Int convolution_coeff(const Polynomial& p, const Polynomial& q, const Word& w) {
    Int total = 0;
    for (size_t cut = 0; cut <= w.size(); ++cut)
        total += p.coeff(w.substr(0, cut)) * q.coeff(w.substr(cut));
    return total;
}

Polynomial random_poly(std::mt19937_64& gen, const std::string& alphabet, Nat max_terms,
                       Nat max_len) {
    Polynomial p(alphabet);
    Nat terms = gen() % (max_terms + 1);
    for (Nat t = 0; t < terms; ++t) {
        Word w;
        Nat len = gen() % (max_len + 1);
        for (Nat i = 0; i < len; ++i) w += alphabet[gen() % alphabet.size()];
        p.add_term(w, static_cast<int>(gen() % 9) - 4);
    }
    return p;
}

IntPoly random_intpoly(std::mt19937_64& gen, Nat max_deg) {
    std::vector<Int> c(gen() % (max_deg + 1) + 1);
    for (auto& x : c) x = static_cast<int>(gen() % 21) - 10;
    return IntPoly(std::move(c));
}

}  // namespace

TEST_CASE("polynomial arithmetic on the worked products") {
    const std::string ab = "ab";
    Polynomial one_plus_a = Polynomial::constant(ab, 1) + Polynomial::word(ab, "a");
    Polynomial a_plus_b_minus_1 =
        Polynomial::word(ab, "a") + Polynomial::word(ab, "b") - Polynomial::constant(ab, 1);

    SECTION("(1+a)(a+b-1) expands term by term") {
        Polynomial got = one_plus_a * a_plus_b_minus_1;
        // oracle: expand the four products by hand
        Polynomial expected = Polynomial::word(ab, "b") - Polynomial::constant(ab, 1) +
                              Polynomial::word(ab, "aa") + Polynomial::word(ab, "ab");
        REQUIRE(got == expected);
        REQUIRE(got.coeff("a") == 0);
        REQUIRE(got.to_string() == "-1 + b + aa + ab");
    }

    SECTION("multiplication by 1 is the identity") {
        Polynomial p = a_plus_b_minus_1 * one_plus_a;
        REQUIRE(p * Polynomial::constant(ab, 1) == p);
        REQUIRE(Polynomial::constant(ab, 1) * p == p);
    }

    SECTION("(1+a)(1+a^2+a^4) is the geometric sum of order 6") {
        Polynomial right = Polynomial::constant(ab, 1) + Polynomial::word(ab, "aa") +
                           Polynomial::word(ab, "aaaa");
        Polynomial got = one_plus_a * right;
        Polynomial expected(ab);
        for (Nat e = 0; e < 6; ++e) expected.add_term(Word(e, 'a'), 1);
        REQUIRE(got == expected);
    }

    SECTION("alphabet mismatch is rejected") {
        Polynomial other = Polynomial::word("abc", "c");
        REQUIRE_THROWS_AS(one_plus_a * other, AlphabetMismatchError);
        REQUIRE_THROWS_AS(one_plus_a + other, AlphabetMismatchError);
    }
}

TEST_CASE("product coefficients match the naive convolution oracle") {
    std::mt19937_64 gen(2024);
    for (int trial = 0; trial < 200; ++trial) {
        Polynomial p = random_poly(gen, "ab", 20, 4);
        Polynomial q = random_poly(gen, "ab", 20, 4);
        Polynomial prod = p * q;
        // every word in either support region
        std::set<Word> probes = prod.support();
        for (const auto& u : p.support())
            for (const auto& v : q.support()) probes.insert(u + v);
        probes.insert("");
        probes.insert("ab");
        for (const auto& w : probes) REQUIRE(prod.coeff(w) == convolution_coeff(p, q, w));
        // supp(P+Q) inside supp(P) u supp(Q)
        Polynomial sum = p + q;
        for (const auto& w : sum.support())
            REQUIRE((p.coeff(w) != 0 || q.coeff(w) != 0));
    }
}

TEST_CASE("exponent polynomial bijection") {
    SECTION("the multiset {0,0,1,1,1,3,4}") {
        ExpPoly e = exp_poly(NatMultiset{0, 0, 1, 1, 1, 3, 4});
        REQUIRE(e.poly().coeff(0) == 2);
        REQUIRE(e.poly().coeff(1) == 3);
        REQUIRE(e.poly().coeff(2) == 0);
        REQUIRE(e.poly().coeff(3) == 1);
        REQUIRE(e.poly().coeff(4) == 1);
    }
    SECTION("empty multiset is the null polynomial, {0} is 1") {
        REQUIRE(exp_poly(NatMultiset{}).is_zero());
        REQUIRE(exp_poly(NatMultiset{0}).poly() == IntPoly::one());
    }
    SECTION("roundtrip is the identity on 1000 random multisets") {
        std::mt19937_64 gen(7);
        for (int trial = 0; trial < 1000; ++trial) {
            NatMultiset h;
            Nat size = gen() % 12;
            for (Nat i = 0; i < size; ++i) h.insert(gen() % 20);
            REQUIRE(exp_poly(h).to_multiset() == h);
        }
    }
    SECTION("computation rules") {
        std::mt19937_64 gen(8);
        for (int trial = 0; trial < 100; ++trial) {
            NatMultiset m, l;
            for (Nat i = 0, k = gen() % 6; i < k; ++i) m.insert(gen() % 10);
            for (Nat i = 0, k = gen() % 6; i < k; ++i) l.insert(gen() % 10);
            // a^{M u L} = a^M + a^L
            NatMultiset unioned = m;
            for (Nat x : l) unioned.insert(x);
            REQUIRE(exp_poly(unioned) == exp_poly(m) + exp_poly(l));
            // a^{M + L} = a^M a^L (elementwise sums, all pairs)
            NatMultiset sums;
            for (Nat x : m)
                for (Nat y : l) sums.insert(x + y);
            if (!m.empty() && !l.empty()) REQUIRE(exp_poly(sums) == exp_poly(m) * exp_poly(l));
        }
    }
}

TEST_CASE("restrict_degree filters by letter count") {
    const std::string ab = "ab";
    Polynomial p = Polynomial::word(ab, "b") + Polynomial::word(ab, "aa") +
                   Polynomial::word(ab, "ab");
    REQUIRE(p.restrict_degree('b', 0) == Polynomial::word(ab, "aa"));
    REQUIRE(p.restrict_degree('b', 1) ==
            Polynomial::word(ab, "b") + Polynomial::word(ab, "ab"));
    REQUIRE(Polynomial::zero(ab).restrict_degree('b', 3).is_zero());
    REQUIRE_THROWS_AS(p.restrict_degree('c', 0), PreconditionError);

    SECTION("the slices sum back to the polynomial") {
        std::mt19937_64 gen(99);
        for (int trial = 0; trial < 100; ++trial) {
            Polynomial q = random_poly(gen, "ab", 15, 5);
            Polynomial total = Polynomial::zero("ab");
            for (Nat gdeg : q.letter_degrees('b')) total = total + q.restrict_degree('b', gdeg);
            REQUIRE(total == q);
        }
    }
}

TEST_CASE("exact division over Z[a]") {
    SECTION("worked quotients") {
        auto q = exact_divide(IntPoly::power_minus_one(6), IntPoly::power_minus_one(2));
        REQUIRE(q.has_value());
        REQUIRE(*q == char_poly(NatSet{0, 2, 4}));
        REQUIRE(exact_divide(IntPoly::power_minus_one(3), IntPoly::power_minus_one(2)) ==
                std::nullopt);
        std::mt19937_64 gen(1);
        IntPoly p = random_intpoly(gen, 8);
        REQUIRE(*exact_divide(p, IntPoly::one()) == p);
        REQUIRE_THROWS_AS(exact_divide(p, IntPoly::zero()), PreconditionError);
    }
    SECTION("divide(D*Q, D) = Q for random degree <= 30") {
        std::mt19937_64 gen(11);
        int done = 0;
        while (done < 300) {
            IntPoly d = random_intpoly(gen, 30);
            IntPoly q = random_intpoly(gen, 30);
            if (d.is_zero()) continue;
            auto got = exact_divide(d * q, d);
            REQUIRE(got.has_value());
            REQUIRE(*got == q);
            ++done;
        }
    }
}

TEST_CASE("text rendering and parsing") {
    const std::string ab = "ab";
    SECTION("empty word renders as 1, negatives carry the sign") {
        Polynomial p = Polynomial::constant(ab, -1) + Polynomial::word(ab, "b") +
                       Polynomial::word(ab, "aa", 2);
        REQUIRE(p.to_string() == "-1 + b + 2·aa");
        REQUIRE(Polynomial::zero(ab).to_string() == "0");
    }
    SECTION("parse accepts the rendered grammar") {
        std::mt19937_64 gen(123);
        for (int trial = 0; trial < 200; ++trial) {
            Polynomial p = random_poly(gen, "ab", 10, 4);
            REQUIRE(Polynomial::parse("ab", p.to_string()) == p);
        }
        REQUIRE(Polynomial::parse(ab, "b - 1 + aa + ab") ==
                Polynomial::parse(ab, "-1 + b + aa + ab"));
        REQUIRE(Polynomial::parse(ab, "3*a + -2") ==
                Polynomial::word(ab, "a", 3) - Polynomial::constant(ab, 2));
        REQUIRE_THROWS_AS(Polynomial::parse(ab, "a + "), ParseError);
        REQUIRE_THROWS_AS(Polynomial::parse(ab, "xyz"), ParseError);
    }
}
