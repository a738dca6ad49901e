#pragma once

#include <sn/polynomial.hpp>

#include <utility>
#include <vector>

namespace sn {

// Strictly increasing index tuple (1-based chart indices); the basis labels
// of alternating tensors.
using IndexTuple = std::vector<int>;

/// All strictly increasing tuples of length k with entries in 1..dim, in
/// lexicographic order.
inline std::vector<IndexTuple> increasing_tuples(int dim, int k) {
    std::vector<IndexTuple> out;
    if (k < 0 || k > dim) return out;
    IndexTuple cur;
    cur.reserve(static_cast<std::size_t>(k));
    auto rec = [&](auto&& self, int start) -> void {
        if (static_cast<int>(cur.size()) == k) {
            out.push_back(cur);
            return;
        }
        for (int i = start; i <= dim; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 1);
    return out;
}

/// Sorts a tuple into increasing order, returning the permutation sign, or
/// sign 0 if an index repeats.
inline std::pair<int, IndexTuple> sort_with_sign(IndexTuple t) {
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i) {
        for (std::size_t j = i; j > 0 && t[j - 1] >= t[j]; --j) {
            if (t[j - 1] == t[j]) return {0, {}};
            std::swap(t[j - 1], t[j]);
            sign = -sign;
        }
    }
    return {sign, std::move(t)};
}

/// Sign of merging disjoint increasing tuples (a, b) into one increasing
/// tuple with block a first: (-1)^{inversions between the blocks}.
inline int shuffle_sign(const IndexTuple& a, const IndexTuple& b) {
    int inversions = 0;
    for (int x : a)
        for (int y : b)
            if (y < x) ++inversions;
    return parity_sign(inversions);
}

/// True iff `sub` (increasing) is a subset of `sup` (increasing).
inline bool tuple_subset(const IndexTuple& sub, const IndexTuple& sup) {
    std::size_t j = 0;
    for (int x : sub) {
        while (j < sup.size() && sup[j] < x) ++j;
        if (j == sup.size() || sup[j] != x) return false;
        ++j;
    }
    return true;
}

inline IndexTuple tuple_minus(const IndexTuple& sup, const IndexTuple& sub) {
    IndexTuple out;
    out.reserve(sup.size() - sub.size());
    std::size_t j = 0;
    for (int x : sup) {
        if (j < sub.size() && sub[j] == x) {
            ++j;
            continue;
        }
        out.push_back(x);
    }
    return out;
}

/// All exponent vectors in `dim` variables with total degree <= maxdeg,
/// in canonical (graded-lex descending) order.
inline std::vector<Monomial> monomials_up_to(int dim, int maxdeg) {
    std::vector<Monomial> out;
    Monomial cur(static_cast<std::size_t>(dim), 0u);
    auto rec = [&](auto&& self, int var, int remaining) -> void {
        if (var == dim) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[static_cast<std::size_t>(var)] = static_cast<unsigned>(e);
            self(self, var + 1, remaining - e);
        }
        cur[static_cast<std::size_t>(var)] = 0;
    };
    rec(rec, 0, maxdeg);
    std::sort(out.begin(), out.end(), GrlexDescending{});
    return out;
}

}  // namespace sn
