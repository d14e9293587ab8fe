#pragma once

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "hajos/base.hpp"
#include "hajos/errors.hpp"
#include "hajos/intpoly.hpp"

namespace hajos {

/// Canonical term order: length first, then lexicographic.
struct ShortLex {
    bool operator()(const Word& u, const Word& v) const {
        if (u.size() != v.size()) return u.size() < v.size();
        return u < v;
    }
};

inline std::string normalize_alphabet(std::string letters) {
    std::sort(letters.begin(), letters.end());
    letters.erase(std::unique(letters.begin(), letters.end()), letters.end());
    if (letters.empty()) throw PreconditionError("empty alphabet");
    for (char c : letters)
        if (!std::islower(static_cast<unsigned char>(c)))
            throw PreconditionError("alphabet letters must be lowercase ascii");
    return letters;
}

inline bool word_over(const Word& w, const std::string& alphabet) {
    return std::all_of(w.begin(), w.end(),
                       [&](char c) { return alphabet.find(c) != std::string::npos; });
}

/// Number of occurrences of letter b in w.
inline Nat count_letter(const Word& w, char b) {
    return static_cast<Nat>(std::count(w.begin(), w.end(), b));
}

/// Polynomial with noncommutative variables and integer coefficients.
/// Invariants: no stored coefficient is zero, and every supported word is
/// over the declared alphabet. Values are immutable in spirit: all operations
/// return fresh polynomials.
class Polynomial {
  public:
    using TermMap = std::map<Word, Int, ShortLex>;

    explicit Polynomial(std::string alphabet) : alpha_(normalize_alphabet(std::move(alphabet))) {}

    static Polynomial zero(const std::string& alphabet) { return Polynomial(alphabet); }
    static Polynomial constant(const std::string& alphabet, Int k) {
        Polynomial p(alphabet);
        p.add_term("", std::move(k));
        return p;
    }
    static Polynomial word(const std::string& alphabet, const Word& w, Int k = 1) {
        Polynomial p(alphabet);
        p.add_term(w, std::move(k));
        return p;
    }
    /// Characteristic polynomial of a finite language.
    template <typename WordRange>
    static Polynomial characteristic(const std::string& alphabet, const WordRange& words) {
        Polynomial p(alphabet);
        for (const Word& w : words) p.add_term(w, 1);
        return p;
    }
    /// The alphabet polynomial, sum of all letters.
    static Polynomial letters(const std::string& alphabet) {
        Polynomial p(alphabet);
        for (char c : normalize_alphabet(alphabet)) p.add_term(Word(1, c), 1);
        return p;
    }

    const std::string& alphabet() const { return alpha_; }
    const TermMap& terms() const { return t_; }
    bool is_zero() const { return t_.empty(); }

    /// (P, w), the coefficient of w in P.
    Int coeff(const Word& w) const {
        auto it = t_.find(w);
        return it == t_.end() ? Int(0) : it->second;
    }

    std::set<Word> support() const {
        std::set<Word> s;
        for (const auto& [w, k] : t_) s.insert(w);
        return s;
    }

    void add_term(const Word& w, Int k) {
        if (!word_over(w, alpha_)) throw PreconditionError("word not over the alphabet: " + w);
        if (k == 0) return;
        auto [it, fresh] = t_.emplace(w, k);
        if (!fresh) {
            it->second += k;
            if (it->second == 0) t_.erase(it);
        }
    }

    bool is_nonnegative() const {
        return std::all_of(t_.begin(), t_.end(), [](const auto& e) { return e.second >= 0; });
    }
    bool is_characteristic() const {
        return std::all_of(t_.begin(), t_.end(), [](const auto& e) { return e.second == 1; });
    }

    friend Polynomial operator+(const Polynomial& p, const Polynomial& q) {
        p.check_alphabet(q);
        Polynomial r = p;
        for (const auto& [w, k] : q.t_) r.add_term(w, k);
        return r;
    }
    friend Polynomial operator-(const Polynomial& p, const Polynomial& q) {
        p.check_alphabet(q);
        Polynomial r = p;
        for (const auto& [w, k] : q.t_) r.add_term(w, -k);
        return r;
    }
    /// Noncommutative product: words concatenate.
    friend Polynomial operator*(const Polynomial& p, const Polynomial& q) {
        p.check_alphabet(q);
        Polynomial r(p.alpha_);
        for (const auto& [u, cu] : p.t_)
            for (const auto& [v, cv] : q.t_) r.add_term(u + v, cu * cv);
        return r;
    }
    friend bool operator==(const Polynomial& p, const Polynomial& q) {
        return p.alpha_ == q.alpha_ && p.t_ == q.t_;
    }
    friend bool operator!=(const Polynomial& p, const Polynomial& q) { return !(p == q); }

    /// P_g: the terms whose words contain exactly g occurrences of b.
    Polynomial restrict_degree(char b, Nat g) const {
        if (alpha_.find(b) == std::string::npos)
            throw PreconditionError("restrict_degree: letter not in alphabet");
        Polynomial r(alpha_);
        for (const auto& [w, k] : t_)
            if (count_letter(w, b) == g) r.add_term(w, k);
        return r;
    }

    /// Distinct b-degrees that occur in the support.
    NatSet letter_degrees(char b) const {
        NatSet out;
        for (const auto& [w, k] : t_) out.insert(count_letter(w, b));
        return out;
    }

    /// Terms joined by " + " / " - "; empty word rendered "1", coefficient
    /// magnitudes > 1 rendered "k·w".
    std::string to_string() const {
        if (t_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [w, k] : t_) {
            if (first) {
                if (k < 0) os << "-";
                first = false;
            } else {
                os << (k < 0 ? " - " : " + ");
            }
            Int mag = abs(k);
            if (w.empty()) {
                os << mag;
            } else {
                if (mag != 1) os << mag << "·";
                os << w;
            }
        }
        return os.str();
    }

    /// Parses the to_string grammar (also accepts '*' for the middle dot and
    /// '+ -k' forms). Throws ParseError on malformed input.
    static Polynomial parse(const std::string& alphabet, const std::string& text);

  private:
    void check_alphabet(const Polynomial& other) const {
        if (alpha_ != other.alpha_)
            throw AlphabetMismatchError("polynomials over distinct alphabets: '" + alpha_ +
                                        "' vs '" + other.alpha_ + "'");
    }

    std::string alpha_;
    TermMap t_;
};

inline Polynomial Polynomial::parse(const std::string& alphabet, const std::string& text) {
    Polynomial out(alphabet);
    std::istringstream is(text);
    std::vector<std::string> tokens;
    for (std::string tok; is >> tok;) tokens.push_back(tok);
    if (tokens.empty()) throw ParseError("empty polynomial text");
    if (tokens.size() == 1 && tokens[0] == "0") return out;

    auto parse_term = [&](std::string tok, bool negate) {
        bool neg = negate;
        size_t pos = 0;
        if (pos < tok.size() && tok[pos] == '-') {
            neg = !neg;
            ++pos;
        }
        std::string digits;
        while (pos < tok.size() && std::isdigit(static_cast<unsigned char>(tok[pos])))
            digits += tok[pos++];
        // optional separator: '*' or UTF-8 middle dot
        if (pos < tok.size() && tok[pos] == '*') ++pos;
        else if (pos + 1 < tok.size() && static_cast<unsigned char>(tok[pos]) == 0xc2 &&
                 static_cast<unsigned char>(tok[pos + 1]) == 0xb7)
            pos += 2;
        std::string rest = tok.substr(pos);
        Int k = digits.empty() ? Int(1) : Int(digits);
        Word w;
        if (rest.empty()) {
            if (digits.empty()) throw ParseError("bad term: " + tok);
            w = "";  // pure constant
        } else if (rest == "1") {
            w = "";
        } else {
            if (!word_over(rest, out.alphabet()))
                throw ParseError("word not over alphabet: " + rest);
            w = rest;
        }
        out.add_term(w, neg ? -k : k);
    };

    parse_term(tokens[0], false);
    size_t i = 1;
    while (i < tokens.size()) {
        if (tokens[i] == "+" || tokens[i] == "-") {
            bool neg = tokens[i] == "-";
            if (i + 1 >= tokens.size()) throw ParseError("dangling operator");
            parse_term(tokens[i + 1], neg);
            i += 2;
        } else {
            throw ParseError("expected '+' or '-', got: " + tokens[i]);
        }
    }
    return out;
}

/// Arithmetic dispatch used by callers that take the operation by name.
enum class PolyOp { Add, Sub, Mul };

inline Polynomial poly_arith(PolyOp op, const Polynomial& p, const Polynomial& q) {
    switch (op) {
        case PolyOp::Add: return p + q;
        case PolyOp::Sub: return p - q;
        case PolyOp::Mul: return p * q;
    }
    throw PreconditionError("unknown polynomial operation");
}

/// Projection of a one-letter polynomial onto Z[a]; words must be powers of
/// the given letter.
inline IntPoly project_to_intpoly(const Polynomial& p, char a) {
    std::vector<Int> c;
    for (const auto& [w, k] : p.terms()) {
        if (count_letter(w, a) != w.size())
            throw PreconditionError("polynomial has a word outside a^*: " + w);
        if (w.size() >= c.size()) c.resize(w.size() + 1);
        c[w.size()] = k;
    }
    return IntPoly(std::move(c));
}

/// Embedding of Z[a] into the noncommutative polynomials.
inline Polynomial embed_intpoly(const std::string& alphabet, const IntPoly& p, char a) {
    Polynomial out(alphabet);
    const auto& c = p.coefficients();
    for (Nat e = 0; e < c.size(); ++e)
        if (c[e] != 0) out.add_term(Word(e, a), c[e]);
    return out;
}

}  // namespace hajos
