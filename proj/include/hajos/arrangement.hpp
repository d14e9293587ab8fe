#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "hajos/base.hpp"
#include "hajos/errors.hpp"
#include "hajos/factorization.hpp"
#include "hajos/polynomial.hpp"

namespace hajos {

/// Rectangular matrix of naturals.
struct NatMatrix {
    std::vector<std::vector<Nat>> entries;

    Nat rows() const { return static_cast<Nat>(entries.size()); }
    Nat cols() const { return entries.empty() ? 0 : static_cast<Nat>(entries[0].size()); }
    bool rectangular() const {
        return rows() >= 1 && cols() >= 1 &&
               std::all_of(entries.begin(), entries.end(),
                           [&](const auto& r) { return r.size() == entries[0].size(); });
    }

    NatSet row_set(Nat p) const { return NatSet(entries[p].begin(), entries[p].end()); }
    NatSet col_set(Nat q) const {
        NatSet s;
        for (const auto& r : entries) s.insert(r[q]);
        return s;
    }

    NatMatrix transpose() const {
        NatMatrix t;
        t.entries.assign(cols(), std::vector<Nat>(rows()));
        for (Nat p = 0; p < rows(); ++p)
            for (Nat q = 0; q < cols(); ++q) t.entries[q][p] = entries[p][q];
        return t;
    }
    NatMatrix reduced(Nat n) const {
        NatMatrix r = *this;
        for (auto& row : r.entries)
            for (auto& x : row) x %= n;
        return r;
    }
    friend bool operator==(const NatMatrix& a, const NatMatrix& b) {
        return a.entries == b.entries;
    }
};

/// Bayonet pair (i, j) standing for the word a^i w a^j.
using Bayonet = std::pair<Nat, Nat>;
using BayonetSet = std::set<Bayonet>;

inline Word bayonet_word(const Bayonet& b, const Word& sep, char a = 'a') {
    return Word(b.first, a) + sep + Word(b.second, a);
}

/// Matrix of bayonet words a^i w a^j over a common separator w.
struct WordMatrix {
    Word sep = "b";
    std::vector<std::vector<Bayonet>> entries;

    Nat rows() const { return static_cast<Nat>(entries.size()); }
    Nat cols() const { return entries.empty() ? 0 : static_cast<Nat>(entries[0].size()); }

    BayonetSet element_set() const {
        BayonetSet s;
        for (const auto& r : entries) s.insert(r.begin(), r.end());
        return s;
    }
    WordMatrix transpose() const {
        WordMatrix t;
        t.sep = sep;
        t.entries.assign(cols(), std::vector<Bayonet>(rows()));
        for (Nat p = 0; p < rows(); ++p)
            for (Nat q = 0; q < cols(); ++q) t.entries[q][p] = entries[p][q];
        return t;
    }
    friend bool operator==(const WordMatrix& a, const WordMatrix& b) {
        return a.sep == b.sep && a.entries == b.entries;
    }
};

/// Positional extraction of the left-exponent and right-exponent matrices.
inline std::pair<NatMatrix, NatMatrix> induced_arrangements(const WordMatrix& w) {
    NatMatrix rows, cols;
    rows.entries.assign(w.rows(), std::vector<Nat>(w.cols()));
    cols.entries.assign(w.rows(), std::vector<Nat>(w.cols()));
    for (Nat p = 0; p < w.rows(); ++p)
        for (Nat q = 0; q < w.cols(); ++q) {
            rows.entries[p][q] = w.entries[p][q].first;
            cols.entries[p][q] = w.entries[p][q].second;
        }
    return {rows, cols};
}

namespace detail {

/// True when big = small + {0, h, ..., (g-1)h} with small inside {0..h-1}.
inline bool plus_decomposes(const NatSet& big, Nat h, Nat g, NatSet& small) {
    small.clear();
    for (Nat x : big)
        if (x < h) small.insert(x);
    if (small.size() * g != big.size()) return false;
    NatSet G;
    for (Nat k = 0; k < g; ++k) G.insert(k * h);
    return sumset(small, G) == big;
}

}  // namespace detail

/// Recursive construction of the unique good arrangement of a family of
/// Hajos sets R_1..R_m (all reduced into {0..n-1}) with respect to the rows,
/// against a companion Krasner pair (I, J) (rows are factorization partners
/// of J) and a defining chain. Rules, per step:
///   base (one-step chain): J = {0} lays each full row out ascending;
///   I = {0} stacks the singletons as one column;
///   step: when I = I1 + {0,h,..,(g-1)h} the matrix is the column-wise union
///   of the shifted sub-arrangement; when J = J1 + {..} each entry of the
///   sub-arrangement of the residue family is substituted by its lift.
inline NatMatrix good_rows_construct(const std::vector<NatSet>& rows, const NatSet& I,
                                     const NatSet& J, const DivisorChain& chain) {
    const Nat n = chain.modulus();
    if (chain.length() == 0) {
        // n = 1: every row is {0}
        NatMatrix d;
        for (const auto& r : rows) {
            if (r != NatSet{0}) throw PreconditionError("good_rows: bad base family");
            d.entries.push_back({0});
        }
        return d;
    }
    if (chain.length() == 1) {
        NatMatrix d;
        if (J == NatSet{0}) {
            for (Nat p = 0; p < rows.size(); ++p) {
                if (rows[p] != range_set(0, n))
                    throw PreconditionError("good_rows: row " + std::to_string(p) +
                                            " is not the full base row");
                std::vector<Nat> row;
                for (Nat i = 0; i < n; ++i) row.push_back(i);
                d.entries.push_back(std::move(row));
            }
        } else if (I == NatSet{0}) {
            for (Nat p = 0; p < rows.size(); ++p) {
                if (rows[p].size() != 1)
                    throw PreconditionError("good_rows: row " + std::to_string(p) +
                                            " is not a singleton");
                d.entries.push_back({*rows[p].begin()});
            }
        } else {
            throw PreconditionError("good_rows: base companion is not ({0}, full) shaped");
        }
        return d;
    }

    const Nat h = chain.ks[chain.ks.size() - 2];
    const Nat g = n / h;
    NatSet I1, J1;
    if (detail::plus_decomposes(I, h, g, I1)) {
        // rows decompose with the sumset on the same side as I
        std::vector<NatSet> sub;
        for (Nat p = 0; p < rows.size(); ++p) {
            NatSet rp1;
            if (!detail::plus_decomposes(rows[p], h, g, rp1))
                throw PreconditionError("good_rows: row " + std::to_string(p) +
                                        " does not split over the chain step");
            sub.push_back(std::move(rp1));
        }
        NatMatrix d1 = good_rows_construct(sub, I1, J, chain.dropped_top());
        NatMatrix d;
        d.entries.assign(d1.rows(), {});
        for (Nat k = 0; k < g; ++k)
            for (Nat p = 0; p < d1.rows(); ++p)
                for (Nat x : d1.entries[p]) d.entries[p].push_back(k * h + x);
        return d;
    }
    if (detail::plus_decomposes(J, h, g, J1)) {
        // rows are o-members over the step: substitute residues by lifts
        std::vector<NatSet> sub;
        for (Nat p = 0; p < rows.size(); ++p) {
            NatSet rp1 = residues(rows[p], h);
            if (rp1.size() != rows[p].size())
                throw PreconditionError("good_rows: row " + std::to_string(p) +
                                        " has colliding residues over the chain step");
            sub.push_back(std::move(rp1));
        }
        NatMatrix d1 = good_rows_construct(sub, I, J1, chain.dropped_top());
        NatMatrix d = d1;
        for (Nat p = 0; p < d.rows(); ++p)
            for (auto& x : d.entries[p]) {
                // smallest lift in the row with this residue (unique here)
                std::optional<Nat> lift;
                for (Nat y : rows[p])
                    if (y % h == x && (!lift || y < *lift)) lift = y;
                if (!lift) throw PreconditionError("good_rows: missing lift in row");
                x = *lift;
            }
        return d;
    }
    throw PreconditionError("good_rows: neither companion coordinate splits over the chain step");
}

/// Re-derivation check: true iff D can be produced by the recursive rules
/// for some family with companion (I, J) over the chain. Independent of the
/// constructor above in that it never builds the arrangement, it only checks
/// block structure level by level.
inline bool replay_good_rows(const NatMatrix& d, const NatSet& I, const NatSet& J,
                             const DivisorChain& chain) {
    const Nat n = chain.modulus();
    if (!d.rectangular()) return false;
    if (chain.length() == 0) {
        for (const auto& row : d.entries)
            if (row != std::vector<Nat>{0}) return false;
        return true;
    }
    if (chain.length() == 1) {
        if (J == NatSet{0}) {
            if (d.cols() != n) return false;
            for (const auto& row : d.entries)
                for (Nat i = 0; i < n; ++i)
                    if (row[i] != i) return false;
            return true;
        }
        if (I == NatSet{0}) {
            if (d.cols() != 1) return false;
            for (const auto& row : d.entries)
                if (row[0] >= n) return false;
            return true;
        }
        return false;
    }
    const Nat h = chain.ks[chain.ks.size() - 2];
    const Nat g = n / h;
    NatSet I1, J1;
    if (detail::plus_decomposes(I, h, g, I1)) {
        if (d.cols() % g != 0) return false;
        Nat w = d.cols() / g;
        NatMatrix block0;
        block0.entries.assign(d.rows(), std::vector<Nat>(w));
        for (Nat p = 0; p < d.rows(); ++p)
            for (Nat q = 0; q < w; ++q) block0.entries[p][q] = d.entries[p][q];
        for (Nat k = 0; k < g; ++k)
            for (Nat p = 0; p < d.rows(); ++p)
                for (Nat q = 0; q < w; ++q)
                    if (d.entries[p][k * w + q] != k * h + block0.entries[p][q]) return false;
        return replay_good_rows(block0, I1, J, chain.dropped_top());
    }
    if (detail::plus_decomposes(J, h, g, J1)) {
        NatMatrix reduced;
        reduced.entries.assign(d.rows(), std::vector<Nat>(d.cols()));
        for (Nat p = 0; p < d.rows(); ++p) {
            NatSet seen;
            for (Nat q = 0; q < d.cols(); ++q) {
                if (d.entries[p][q] >= n) return false;
                reduced.entries[p][q] = d.entries[p][q] % h;
                seen.insert(reduced.entries[p][q]);
            }
            if (seen.size() != d.cols()) return false;
        }
        return replay_good_rows(reduced, I, J1, chain.dropped_top());
    }
    return false;
}

namespace detail {

inline void check_family(const std::vector<FactorizationPair>& family,
                         const FactorizationPair& companion, const DivisorChain& chain) {
    const Nat n = chain.modulus();
    const NatSet& I = companion.left;
    const NatSet& J = companion.right;
    if (!is_krasner(I, J, n))
        throw PreconditionError("good_arrangement: companion is not Krasner of order n");
    FactorizationPair from_chain = krasner_from_chain(chain);
    if (!((from_chain.left == I && from_chain.right == J) ||
          (from_chain.left == J && from_chain.right == I)))
        throw PreconditionError("good_arrangement: chain does not define the companion");
    if (family.empty()) throw PreconditionError("good_arrangement: empty family");
    size_t card = residues(family[0].left, n).size();
    for (size_t p = 0; p < family.size(); ++p) {
        const auto& f = family[p];
        NatSet r = residues(f.left, n);
        NatSet t = residues(f.right, n);
        if (r.size() != card)
            throw PreconditionError("good_arrangement: rows of unequal cardinality");
        if (!is_factorization(I, t, n) || !is_factorization(r, J, n))
            throw PreconditionError("good_arrangement: family member " + std::to_string(p) +
                                    " is not jointly Hajos with the companion");
    }
}

}  // namespace detail

/// The unique good arrangement of the family rows. Inputs are reduced mod n
/// first (rule 1); the normalization is unconditional.
inline NatMatrix good_arrangement_rows(const std::vector<FactorizationPair>& family,
                                       const FactorizationPair& companion,
                                       const DivisorChain& chain) {
    detail::check_family(family, companion, chain);
    std::vector<NatSet> rows;
    for (const auto& f : family) rows.push_back(residues(f.left, chain.modulus()));
    return good_rows_construct(rows, companion.left, companion.right, chain);
}

/// Dual notion: the transpose of the rows construction.
inline NatMatrix good_arrangement_columns(const std::vector<FactorizationPair>& family,
                                          const FactorizationPair& companion,
                                          const DivisorChain& chain) {
    return good_arrangement_rows(family, companion, chain).transpose();
}

/// Certificate of the column property: per column an ordered sequence from J
/// and the common value n_q; the n_q are pairwise distinct.
struct GapColumn {
    std::vector<Nat> js;
    Nat n_q = 0;
};
struct GapResult {
    bool ok = false;
    std::vector<GapColumn> columns;
    Nat failed_column = 0;  // 1-based, meaningful when !ok
};

/// For each column of D finds j's in J making all r_{p,q} + j_{p,q} equal
/// (mod n when strict is false; exact sums when strict is true, which
/// requires entries < n), with pairwise distinct column values. Deterministic:
/// the lexicographically smallest system of distinct values is returned.
inline GapResult verify_gap(const NatMatrix& d, const NatSet& J, Nat n, bool strict) {
    GapResult res;
    if (!d.rectangular()) {
        res.failed_column = 1;
        return res;
    }
    const Nat m = d.rows();
    const Nat l = d.cols();
    std::vector<std::vector<Nat>> feasible(l);
    for (Nat q = 0; q < l; ++q) {
        std::set<Nat> common;
        bool first = true;
        for (Nat p = 0; p < m; ++p) {
            Nat r = d.entries[p][q];
            if (strict && r >= n) {
                res.failed_column = q + 1;
                return res;
            }
            std::set<Nat> mine;
            for (Nat j : J) mine.insert(strict ? r + j : (r % n + j % n) % n);
            if (first) {
                common = mine;
                first = false;
            } else {
                std::set<Nat> inter;
                std::set_intersection(common.begin(), common.end(), mine.begin(), mine.end(),
                                      std::inserter(inter, inter.begin()));
                common = inter;
            }
        }
        if (common.empty()) {
            res.failed_column = q + 1;
            return res;
        }
        feasible[q].assign(common.begin(), common.end());
    }
    // lexicographically smallest system of distinct representatives
    std::vector<Nat> chosen(l, 0);
    std::set<Nat> used;
    Nat deepest_fail = 0;
    auto assign = [&](auto&& self, Nat q) -> bool {
        if (q == l) return true;
        for (Nat v : feasible[q]) {
            if (used.count(v)) continue;
            used.insert(v);
            chosen[q] = v;
            if (self(self, q + 1)) return true;
            used.erase(v);
        }
        deepest_fail = std::max(deepest_fail, q + 1);
        return false;
    };
    if (!assign(assign, 0)) {
        res.failed_column = deepest_fail;
        return res;
    }
    res.ok = true;
    for (Nat q = 0; q < l; ++q) {
        GapColumn col;
        col.n_q = chosen[q];
        for (Nat p = 0; p < m; ++p) {
            Nat r = d.entries[p][q];
            col.js.push_back(strict ? chosen[q] - r : (chosen[q] + n - r % n) % n);
        }
        res.columns.push_back(std::move(col));
    }
    return res;
}

/// Divisor chains whose Krasner pair is (I, J) in either orientation.
inline std::vector<DivisorChain> chains_of_pair(const NatSet& I, const NatSet& J, Nat n) {
    std::vector<DivisorChain> out;
    for (const auto& c : divisor_chains(n)) {
        FactorizationPair k = krasner_from_chain(c);
        if ((k.left == I && k.right == J) || (k.left == J && k.right == I)) out.push_back(c);
    }
    return out;
}

struct GoodArrangementCheck {
    bool good = false;
    /// Orientation actually used: rows are factorization partners of
    /// `assoc_right`, columns of `assoc_left`.
    NatSet assoc_left, assoc_right;
    std::optional<DivisorChain> chain;
    std::string reason;
};

/// Checks the three conditions of a good arrangement of a bayonet-word
/// matrix with (I, J) as associated Krasner pair: row/column sets are
/// jointly Hajos with the companion, and the induced arrangements are the
/// good arrangements of their families. The pair is auto-oriented against
/// the matrix dimensions (the literature lists Krasner pairs in either
/// order).
inline GoodArrangementCheck is_good_arrangement(const WordMatrix& w, const NatSet& I,
                                                const NatSet& J) {
    GoodArrangementCheck out;
    const Nat m = w.rows();
    const Nat l = w.cols();
    if (m == 0 || l == 0) {
        out.reason = "empty matrix";
        return out;
    }
    const Nat n = m * l;
    if (w.element_set().size() != n) {
        out.reason = "entries are not pairwise distinct words";
        return out;
    }
    if (!is_krasner(I, J, n)) {
        out.reason = "pair is not Krasner of order Card";
        return out;
    }

    std::vector<std::pair<NatSet, NatSet>> orientations;
    if (l == I.size() && m == J.size()) orientations.push_back({I, J});
    if (l == J.size() && m == I.size() && !(I == J)) orientations.push_back({J, I});
    if (orientations.empty()) {
        out.reason = "matrix shape matches neither orientation of the pair";
        return out;
    }

    auto [rows_mat, cols_mat] = induced_arrangements(w);
    NatMatrix rows_red = rows_mat.reduced(n);
    NatMatrix cols_red = cols_mat.reduced(n);

    for (const auto& [ci, cj] : orientations) {
        std::vector<NatSet> row_sets, col_sets;
        bool sizes_ok = true;
        for (Nat p = 0; p < m && sizes_ok; ++p) {
            NatSet s = rows_red.row_set(p);
            if (s.size() != l) sizes_ok = false;
            row_sets.push_back(std::move(s));
        }
        for (Nat q = 0; q < l && sizes_ok; ++q) {
            NatSet s = cols_red.col_set(q);
            if (s.size() != m) sizes_ok = false;
            col_sets.push_back(std::move(s));
        }
        if (!sizes_ok) continue;

        bool cond1 = true;
        for (Nat p = 0; p < m && cond1; ++p)
            if (!is_factorization(row_sets[p], cj, n)) cond1 = false;
        for (Nat q = 0; q < l && cond1; ++q)
            if (!is_factorization(ci, col_sets[q], n)) cond1 = false;
        for (Nat p = 0; p < m && cond1; ++p)
            for (Nat q = 0; q < l && cond1; ++q)
                if (!is_factorization(row_sets[p], col_sets[q], n)) cond1 = false;
        if (!cond1) continue;

        for (const auto& chain : chains_of_pair(ci, cj, n)) {
            NatMatrix good_rows, good_cols;
            try {
                good_rows = good_rows_construct(row_sets, ci, cj, chain);
                // columns are factorization partners of ci: their companion
                // coordinate order is (cj, ci)
                good_cols =
                    good_rows_construct(col_sets, cj, ci, chain).transpose();
            } catch (const PreconditionError&) {
                continue;
            }
            if (rows_red == good_rows && cols_red == good_cols) {
                out.good = true;
                out.assoc_left = ci;
                out.assoc_right = cj;
                out.chain = chain;
                return out;
            }
        }
    }
    out.reason = "induced arrangements do not replay as good arrangements";
    return out;
}

/// Structured search for a good arrangement of a bayonet set witnessing
/// membership in G(I, J): the unique candidate is built recursively along a
/// compatible chain (blocks of left- or right-exponent residues, ascending
/// base rows). Returns nothing when no arrangement exists; throws when the
/// node budget is exhausted.
inline std::optional<WordMatrix> find_good_arrangement(const BayonetSet& c1, const Word& sep,
                                                       const NatSet& I, const NatSet& J,
                                                       Nat budget = 1'000'000) {
    const Nat n = static_cast<Nat>(c1.size());
    if (n == 0) return std::nullopt;
    if (!is_krasner(I, J, n)) return std::nullopt;
    Nat nodes = 0;

    // rows pair with assoc_right; columns with assoc_left
    auto attempt = [&](const NatSet& ai, const NatSet& aj,
                       const DivisorChain& chain) -> std::optional<WordMatrix> {
        auto rec = [&](auto&& self, const std::vector<Bayonet>& words, const NatSet& ci,
                       const NatSet& cj,
                       const DivisorChain& ch) -> std::optional<std::vector<std::vector<Bayonet>>> {
            if (++nodes > budget) throw ResourceLimitError("find_good_arrangement: budget");
            const Nat nn = ch.modulus();
            if (ch.length() == 0) {
                if (words.size() != 1) return std::nullopt;
                return std::vector<std::vector<Bayonet>>{{words[0]}};
            }
            if (ch.length() == 1) {
                if (cj == NatSet{0}) {
                    // one full row sorted by left residue
                    if (words.size() != nn) return std::nullopt;
                    std::vector<Bayonet> row(nn);
                    std::vector<bool> seen(nn, false);
                    for (const auto& wd : words) {
                        Nat r = wd.first % nn;
                        if (seen[r]) return std::nullopt;
                        seen[r] = true;
                        row[r] = wd;
                    }
                    return std::vector<std::vector<Bayonet>>{row};
                }
                if (ci == NatSet{0}) {
                    if (words.size() != nn) return std::nullopt;
                    std::vector<std::vector<Bayonet>> colmat(nn);
                    std::vector<bool> seen(nn, false);
                    for (const auto& wd : words) {
                        Nat r = wd.second % nn;
                        if (seen[r]) return std::nullopt;
                        seen[r] = true;
                        colmat[r] = {wd};
                    }
                    return colmat;
                }
                return std::nullopt;
            }
            const Nat h = ch.ks[ch.ks.size() - 2];
            const Nat g = nn / h;
            NatSet i1, j1;
            if (detail::plus_decomposes(ci, h, g, i1)) {
                // split by left-exponent residue block, concatenate columns
                std::vector<std::vector<Bayonet>> blocks(g);
                for (const auto& wd : words) blocks[(wd.first % nn) / h].push_back(wd);
                std::vector<std::vector<std::vector<Bayonet>>> subs;
                for (Nat t = 0; t < g; ++t) {
                    if (blocks[t].size() * g != words.size()) return std::nullopt;
                    // reduce the block's left exponents into Z_h for recursion
                    std::vector<Bayonet> reducedw;
                    std::map<Bayonet, std::vector<Bayonet>> back;
                    for (const auto& wd : blocks[t]) {
                        Bayonet r{wd.first % nn % h, wd.second};
                        back[r].push_back(wd);
                        reducedw.push_back(r);
                    }
                    auto sub = self(self, reducedw, i1, cj, ch.dropped_top());
                    if (!sub) return std::nullopt;
                    // map back to the originals
                    for (auto& row : *sub)
                        for (auto& cell : row) {
                            auto& cands = back[cell];
                            if (cands.empty()) return std::nullopt;
                            cell = cands.back();
                            cands.pop_back();
                        }
                    subs.push_back(std::move(*sub));
                }
                Nat rcount = static_cast<Nat>(subs[0].size());
                for (const auto& s : subs)
                    if (s.size() != rcount) return std::nullopt;
                std::vector<std::vector<Bayonet>> out(rcount);
                for (Nat t = 0; t < g; ++t)
                    for (Nat p = 0; p < rcount; ++p)
                        out[p].insert(out[p].end(), subs[t][p].begin(), subs[t][p].end());
                return out;
            }
            if (detail::plus_decomposes(cj, h, g, j1)) {
                // split by right-exponent residue block, stack rows
                std::vector<std::vector<Bayonet>> blocks(g);
                for (const auto& wd : words) blocks[(wd.second % nn) / h].push_back(wd);
                std::vector<std::vector<Bayonet>> out;
                std::optional<Nat> ccount;
                for (Nat t = 0; t < g; ++t) {
                    if (blocks[t].size() * g != words.size()) return std::nullopt;
                    std::vector<Bayonet> reducedw;
                    std::map<Bayonet, std::vector<Bayonet>> back;
                    for (const auto& wd : blocks[t]) {
                        Bayonet r{wd.first, wd.second % nn % h};
                        back[r].push_back(wd);
                        reducedw.push_back(r);
                    }
                    auto sub = self(self, reducedw, ci, j1, ch.dropped_top());
                    if (!sub) return std::nullopt;
                    for (auto& row : *sub)
                        for (auto& cell : row) {
                            auto& cands = back[cell];
                            if (cands.empty()) return std::nullopt;
                            cell = cands.back();
                            cands.pop_back();
                        }
                    if (!ccount) ccount = static_cast<Nat>((*sub)[0].size());
                    for (const auto& row : *sub) {
                        if (row.size() != *ccount) return std::nullopt;
                        out.push_back(row);
                    }
                }
                return out;
            }
            return std::nullopt;
        };

        std::vector<Bayonet> words(c1.begin(), c1.end());
        auto entries = rec(rec, words, ai, aj, chain);
        if (!entries) return std::nullopt;
        WordMatrix m;
        m.sep = sep;
        m.entries = std::move(*entries);
        return m;
    };

    for (const auto& chain : chains_of_pair(I, J, n)) {
        for (auto [ai, aj] : {std::pair{I, J}, std::pair{J, I}}) {
            auto m = attempt(ai, aj, chain);
            if (m && is_good_arrangement(*m, I, J).good) return m;
            if (I == J) break;
        }
    }
    return std::nullopt;
}

/// Parameters of the normal form for bayonet sets over the two-step chain
/// 1 | h | hg = n with I = {0..h-1} and J = {0, h, ..., (g-1)h}:
/// C1 mod n = sum over k < g, i < h of a^{i + lambda_{i,k} h} b a^{t_i + k h}.
struct E1Params {
    std::vector<Nat> t;                   // t[i] < h
    std::vector<std::vector<Nat>> lambda;  // lambda[i][k] < g
};

inline std::optional<E1Params> eq_E1_form(const BayonetSet& c1, Nat h, Nat g) {
    const Nat n = h * g;
    if (n == 0 || c1.size() != n) return std::nullopt;
    // decompose each reduced word: right exponent fixes (t, k), left fixes (i, lambda)
    std::vector<std::vector<std::optional<Nat>>> lambda(h, std::vector<std::optional<Nat>>(g));
    std::vector<std::optional<Nat>> t(h);
    BayonetSet reduced;
    for (const auto& wd : c1) reduced.insert({wd.first % n, wd.second % n});
    if (reduced.size() != n) return std::nullopt;
    for (const auto& [li, ri] : reduced) {
        Nat i = li % h, lam = li / h;
        Nat tt = ri % h, k = ri / h;
        if (t[i] && *t[i] != tt) return std::nullopt;
        t[i] = tt;
        if (lambda[i][k]) return std::nullopt;  // (i, k) cell already used
        lambda[i][k] = lam;
    }
    E1Params out;
    for (Nat i = 0; i < h; ++i) {
        if (!t[i]) return std::nullopt;
        out.t.push_back(*t[i]);
        std::vector<Nat> row;
        for (Nat k = 0; k < g; ++k) {
            if (!lambda[i][k]) return std::nullopt;
            row.push_back(*lambda[i][k]);
        }
        out.lambda.push_back(std::move(row));
    }
    return out;
}

/// Evaluates C1 = a^I b a^J + sum_{i in I'} a^i b a^{L_i} (a-1) a^J
///              + sum_{j in J'} a^I (a-1) a^{M_j} b a^j
/// exactly over Z<a,b> and returns its support. A negative coefficient is a
/// not-a-language error, a coefficient >= 2 a multiplicity error, both
/// carrying the offending word.
inline BayonetSet eq_EC2_build(const NatSet& I, const NatSet& J,
                               const std::map<Nat, NatSet>& L, const std::map<Nat, NatSet>& M) {
    const Nat n = static_cast<Nat>(I.size() * J.size());
    if (!is_krasner(I, J, n))
        throw PreconditionError("eq_EC2_build: (I, J) is not a Krasner pair");
    const std::string ab = "ab";
    auto apow = [&](const NatSet& s) { return embed_intpoly(ab, char_poly(s), 'a'); };
    const Polynomial b = Polynomial::word(ab, "b");
    const Polynomial a_minus_1 =
        Polynomial::word(ab, "a") - Polynomial::constant(ab, 1);

    Polynomial c1 = apow(I) * b * apow(J);
    for (const auto& [i, Li] : L)
        c1 = c1 + Polynomial::word(ab, Word(i, 'a')) * b * apow(Li) * a_minus_1 * apow(J);
    for (const auto& [j, Mj] : M)
        c1 = c1 + apow(I) * a_minus_1 * apow(Mj) * b * Polynomial::word(ab, Word(j, 'a'));

    BayonetSet out;
    for (const auto& [w, k] : c1.terms()) {
        if (k < 0) throw NotALanguageError("eq_EC2_build: negative coefficient at " + w, w);
        if (k > 1) throw MultiplicityError("eq_EC2_build: coefficient >= 2 at " + w, w);
        size_t bpos = w.find('b');
        if (bpos == std::string::npos || count_letter(w, 'b') != 1)
            throw TheoremViolation("eq_EC2_build: support escaped a*ba*", "{}");
        out.insert({static_cast<Nat>(bpos), static_cast<Nat>(w.size() - bpos - 1)});
    }
    return out;
}

}  // namespace hajos
