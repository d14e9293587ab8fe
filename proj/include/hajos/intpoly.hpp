#pragma once

#include <algorithm>
#include <optional>
#include <sstream>
#include <vector>

#include "hajos/base.hpp"
#include "hajos/errors.hpp"

namespace hajos {

/// Univariate polynomial over the integers in the single letter `a`,
/// dense representation, normalized (no trailing zero coefficients).
class IntPoly {
  public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static IntPoly zero() { return IntPoly(); }
    static IntPoly one() { return monomial(0); }
    static IntPoly monomial(Nat exponent, Int coeff = 1) {
        std::vector<Int> c(exponent + 1);
        c[exponent] = std::move(coeff);
        return IntPoly(std::move(c));
    }
    /// 1 + a + ... + a^{n-1}, the characteristic polynomial of {0..n-1}.
    static IntPoly geometric(Nat n) {
        std::vector<Int> c(n, Int(1));
        return IntPoly(std::move(c));
    }
    /// a^n - 1.
    static IntPoly power_minus_one(Nat n) {
        std::vector<Int> c(n + 1);
        c[0] = -1;
        c[n] = 1;
        return IntPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the null polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    Int coeff(Nat e) const { return e < c_.size() ? c_[e] : Int(0); }
    const std::vector<Int>& coefficients() const { return c_; }

    Int eval_at_one() const {
        Int s = 0;
        for (const Int& x : c_) s += x;
        return s;
    }

    bool is_nonnegative() const {
        return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x >= 0; });
    }
    bool is_characteristic() const {
        return std::all_of(c_.begin(), c_.end(), [](const Int& x) { return x == 0 || x == 1; });
    }

    friend IntPoly operator+(const IntPoly& p, const IntPoly& q) {
        std::vector<Int> c(std::max(p.c_.size(), q.c_.size()));
        for (size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
        for (size_t i = 0; i < q.c_.size(); ++i) c[i] += q.c_[i];
        return IntPoly(std::move(c));
    }
    friend IntPoly operator-(const IntPoly& p, const IntPoly& q) {
        std::vector<Int> c(std::max(p.c_.size(), q.c_.size()));
        for (size_t i = 0; i < p.c_.size(); ++i) c[i] += p.c_[i];
        for (size_t i = 0; i < q.c_.size(); ++i) c[i] -= q.c_[i];
        return IntPoly(std::move(c));
    }
    friend IntPoly operator*(const IntPoly& p, const IntPoly& q) {
        if (p.is_zero() || q.is_zero()) return IntPoly();
        std::vector<Int> c(p.c_.size() + q.c_.size() - 1);
        for (size_t i = 0; i < p.c_.size(); ++i) {
            if (p.c_[i] == 0) continue;
            for (size_t j = 0; j < q.c_.size(); ++j) c[i + j] += p.c_[i] * q.c_[j];
        }
        return IntPoly(std::move(c));
    }
    friend bool operator==(const IntPoly& p, const IntPoly& q) { return p.c_ == q.c_; }
    friend bool operator!=(const IntPoly& p, const IntPoly& q) { return !(p == q); }

    std::string to_string() const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (size_t e = 0; e < c_.size(); ++e) {
            if (c_[e] == 0) continue;
            Int k = c_[e];
            if (first) {
                if (k < 0) os << "-";
                first = false;
            } else {
                os << (k < 0 ? " - " : " + ");
            }
            Int mag = abs(k);
            if (e == 0) {
                os << mag;
            } else {
                if (mag != 1) os << mag << "*";
                os << "a";
                if (e > 1) os << "^" << e;
            }
        }
        return os.str();
    }

  private:
    void normalize() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

/// Exact quotient N / D over Z[a]: returns Q with N = D*Q when such an integer
/// polynomial exists, nothing otherwise. Long division; a non-divisible
/// leading coefficient or nonzero remainder means no exact quotient.
inline std::optional<IntPoly> exact_divide(const IntPoly& numerator, const IntPoly& divisor) {
    if (divisor.is_zero()) throw PreconditionError("exact_divide: division by the null polynomial");
    if (numerator.is_zero()) return IntPoly::zero();
    if (numerator.degree() < divisor.degree()) return std::nullopt;

    std::vector<Int> rem(numerator.coefficients());
    const auto& d = divisor.coefficients();
    const Int lead = d.back();
    std::vector<Int> quot(numerator.degree() - divisor.degree() + 1);

    for (int k = static_cast<int>(rem.size()) - 1; k >= divisor.degree(); --k) {
        if (rem[k] == 0) continue;
        if (rem[k] % lead != 0) return std::nullopt;
        Int q = rem[k] / lead;
        int shift = k - divisor.degree();
        quot[shift] = q;
        for (size_t i = 0; i < d.size(); ++i) rem[shift + i] -= q * d[i];
    }
    if (std::any_of(rem.begin(), rem.end(), [](const Int& x) { return x != 0; }))
        return std::nullopt;
    return IntPoly(std::move(quot));
}

/// Polynomial of N[a] identified with a finite multiset of naturals via
/// a^H = sum over n of (H,n) a^n. Coefficients are multiplicities, so they
/// are always nonnegative; a characteristic one has coefficients in {0,1}.
class ExpPoly {
  public:
    ExpPoly() = default;
    explicit ExpPoly(IntPoly p) : p_(std::move(p)) {
        if (!p_.is_nonnegative())
            throw PreconditionError("ExpPoly: negative coefficient");
    }

    /// a^H for a multiset H. a^{} = 0  and a^{0} = 1.
    static ExpPoly from_multiset(const NatMultiset& h) {
        if (h.empty()) return ExpPoly();
        std::vector<Int> c(*h.rbegin() + 1);
        for (Nat x : h) c[x] += 1;
        return ExpPoly(IntPoly(std::move(c)));
    }
    static ExpPoly from_set(const NatSet& h) {
        return from_multiset(NatMultiset(h.begin(), h.end()));
    }

    /// Inverse of the bijection: recovers the multiset of exponents.
    NatMultiset to_multiset() const {
        NatMultiset h;
        const auto& c = p_.coefficients();
        for (Nat e = 0; e < c.size(); ++e)
            for (Int k = 0; k < c[e]; ++k) h.insert(e);
        return h;
    }
    /// The exponent set when the polynomial is characteristic, else nothing.
    std::optional<NatSet> to_set() const {
        if (!p_.is_characteristic()) return std::nullopt;
        NatSet h;
        const auto& c = p_.coefficients();
        for (Nat e = 0; e < c.size(); ++e)
            if (c[e] == 1) h.insert(e);
        return h;
    }

    bool is_characteristic() const { return p_.is_characteristic(); }
    bool is_zero() const { return p_.is_zero(); }
    const IntPoly& poly() const { return p_; }

    /// a^{M+L} = a^M a^L.
    friend ExpPoly operator*(const ExpPoly& x, const ExpPoly& y) {
        return ExpPoly(x.p_ * y.p_);
    }
    /// a^{M u L} = a^M + a^L (multiset union).
    friend ExpPoly operator+(const ExpPoly& x, const ExpPoly& y) {
        return ExpPoly(x.p_ + y.p_);
    }
    friend bool operator==(const ExpPoly& x, const ExpPoly& y) { return x.p_ == y.p_; }
    friend bool operator!=(const ExpPoly& x, const ExpPoly& y) { return !(x == y); }

    std::string to_string() const { return p_.to_string(); }

  private:
    IntPoly p_;
};

/// a^H for a multiset of naturals (operation-level convenience).
inline ExpPoly exp_poly(const NatMultiset& h) { return ExpPoly::from_multiset(h); }
inline ExpPoly exp_poly(const NatSet& h) { return ExpPoly::from_set(h); }

/// Characteristic polynomial of a set, as a plain integer polynomial.
inline IntPoly char_poly(const NatSet& s) { return ExpPoly::from_set(s).poly(); }

}  // namespace hajos
