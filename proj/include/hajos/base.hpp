#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hajos {

/// Exact signed integer; every coefficient and measure in this library is
/// arbitrary precision, there is no floating point anywhere.
using Int = boost::multiprecision::cpp_int;

using Nat = unsigned int;
using NatSet = std::set<Nat>;
using NatMultiset = std::multiset<Nat>;
using Word = std::string;

inline NatSet nat_set(std::initializer_list<Nat> xs) { return NatSet(xs); }

/// Residues mod n of a set of naturals.
inline NatSet residues(const NatSet& xs, Nat n) {
    NatSet out;
    for (Nat x : xs) out.insert(x % n);
    return out;
}

inline NatSet shifted(const NatSet& xs, Nat offset) {
    NatSet out;
    for (Nat x : xs) out.insert(x + offset);
    return out;
}

/// Sumset {x + y : x in A, y in B}.
inline NatSet sumset(const NatSet& a, const NatSet& b) {
    NatSet out;
    for (Nat x : a)
        for (Nat y : b) out.insert(x + y);
    return out;
}

inline NatSet range_set(Nat lo, Nat hi_exclusive) {
    NatSet out;
    for (Nat x = lo; x < hi_exclusive; ++x) out.insert(x);
    return out;
}

/// Number of prime factors of n counted with multiplicity.
inline Nat omega(Nat n) {
    Nat count = 0;
    for (Nat p = 2; p * p <= n; ++p)
        while (n % p == 0) {
            n /= p;
            ++count;
        }
    if (n > 1) ++count;
    return count;
}

inline std::vector<Nat> divisors_of(Nat n) {
    std::vector<Nat> ds;
    for (Nat d = 1; d <= n; ++d)
        if (n % d == 0) ds.push_back(d);
    return ds;
}

}  // namespace hajos
