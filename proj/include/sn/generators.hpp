#pragma once

#include <sn/geometry.hpp>

#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

namespace sn {

/// Deterministic splittable random stream (splitmix64). Streams are derived
/// per (seed, suite, dim, trial), so trials can run in any order or in
/// parallel without changing the values drawn.
class Rng {
public:
    explicit Rng(std::uint64_t state) : state_(state) {}

    static Rng derive(std::uint64_t seed, std::string_view label, std::uint64_t dim,
                      std::uint64_t trial) {
        // FNV-1a over the label, then splitmix steps folding in the rest.
        std::uint64_t h = 14695981039346656037ull;
        for (char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ull;
        }
        Rng r(seed);
        r.state_ ^= h;
        r.next();
        r.state_ ^= dim * 0x9e3779b97f4a7c15ull;
        r.next();
        r.state_ ^= trial * 0xbf58476d1ce4e5b9ull;
        r.next();
        return r;
    }

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, n).
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }

    /// Uniform in [lo, hi], inclusive.
    int int_in(int lo, int hi) {
        return lo + static_cast<int>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

    bool coin() { return (next() & 1u) != 0; }

private:
    std::uint64_t state_;
};

/// Nonzero integer coefficient in [-3, 3]; small values keep exact
/// arithmetic fast while exercising all sign paths.
inline Rational random_coefficient(Rng& rng) {
    int c = rng.int_in(-3, 3);
    if (c == 0) c = rng.coin() ? 1 : -1;
    return Rational(c);
}

inline Monomial random_monomial(Rng& rng, int dim, int max_degree) {
    Monomial m(static_cast<std::size_t>(dim), 0u);
    const int d = rng.int_in(0, max_degree);
    for (int k = 0; k < d; ++k) m[static_cast<std::size_t>(rng.int_in(0, dim - 1))] += 1;
    return m;
}

inline Polynomial random_polynomial(Rng& rng, int dim, int max_degree, bool allow_zero = false) {
    Polynomial p(dim);
    const int terms = allow_zero ? rng.int_in(0, 3) : rng.int_in(1, 3);
    for (int k = 0; k < terms; ++k)
        p.add_term(random_monomial(rng, dim, max_degree), random_coefficient(rng));
    if (!allow_zero && p.is_zero())
        p.add_term(random_monomial(rng, dim, max_degree), Rational(1));
    return p;
}

template <typename V>
Alternating<V> random_alternating(Rng& rng, int dim, int degree, int coeff_degree) {
    Alternating<V> a(dim, degree);
    for (const auto& idx : increasing_tuples(dim, degree)) {
        if (!rng.coin()) continue;
        a.add_term(idx, random_polynomial(rng, dim, coeff_degree));
    }
    return a;
}

inline Multivector random_multivector(Rng& rng, int dim, int degree, int coeff_degree) {
    return random_alternating<Contravariant>(rng, dim, degree, coeff_degree);
}

inline Form random_form(Rng& rng, int dim, int degree, int coeff_degree) {
    return random_alternating<Covariant>(rng, dim, degree, coeff_degree);
}

inline Multivector random_vector_field(Rng& rng, int dim, int coeff_degree) {
    Multivector x = random_multivector(rng, dim, 1, coeff_degree);
    if (x.is_zero()) x.add_term({rng.int_in(1, dim)}, random_polynomial(rng, dim, coeff_degree));
    return x;
}

/// Linear vector field with nilpotent coefficient matrix: strictly
/// triangular in a randomly permuted variable order.
inline Multivector random_nilpotent_field(Rng& rng, int dim) {
    std::vector<int> order;
    for (int i = 1; i <= dim; ++i) order.push_back(i);
    for (int i = dim - 1; i > 0; --i)
        std::swap(order[static_cast<std::size_t>(i)],
                  order[static_cast<std::size_t>(rng.int_in(0, i))]);
    Multivector x(dim, 1);
    for (int i = 0; i < dim; ++i) {
        Polynomial c(dim);
        for (int j = i + 1; j < dim; ++j) {
            const int entry = rng.int_in(-2, 2);
            if (entry == 0) continue;
            c += Rational(entry) *
                 Polynomial::variable(dim, order[static_cast<std::size_t>(j)]);
        }
        if (!c.is_zero()) x.add_term({order[static_cast<std::size_t>(i)]}, std::move(c));
    }
    return x;
}

namespace detail {

// Exact inverse by Gauss-Jordan elimination; empty result if singular.
inline RationalMatrix rational_inverse(RationalMatrix m) {
    const std::size_t n = m.size();
    RationalMatrix inv = rational_identity(static_cast<int>(n));
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) return {};
        std::swap(m[pivot], m[col]);
        std::swap(inv[pivot], inv[col]);
        const Rational p = m[col][col];
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] /= p;
            inv[col][j] /= p;
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0) continue;
            const Rational f = m[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[row][j] -= f * m[col][j];
                inv[row][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline PolyMap linear_map(const RationalMatrix& m, int dim) {
    std::vector<Polynomial> comps;
    for (int i = 0; i < dim; ++i) {
        Polynomial c(dim);
        for (int j = 0; j < dim; ++j) {
            const Rational& entry = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (entry != 0) c += entry * Polynomial::variable(dim, j + 1);
        }
        comps.push_back(std::move(c));
    }
    return PolyMap(dim, dim, std::move(comps));
}

}  // namespace detail

/// Random invertible linear chart map together with its exact inverse.
inline std::pair<PolyMap, PolyMap> random_linear_invertible(Rng& rng, int dim) {
    for (;;) {
        RationalMatrix m(static_cast<std::size_t>(dim),
                         std::vector<Rational>(static_cast<std::size_t>(dim), Rational(0)));
        for (auto& row : m)
            for (auto& entry : row) entry = rng.int_in(-3, 3);
        RationalMatrix inv = detail::rational_inverse(m);
        if (inv.empty()) continue;
        return {detail::linear_map(m, dim), detail::linear_map(inv, dim)};
    }
}

/// Random polynomial shear x_i := x_i + p(other variables) with its exact
/// inverse; the identity in dimension 1.
inline std::pair<PolyMap, PolyMap> random_shear(Rng& rng, int dim) {
    if (dim == 1) return {PolyMap::identity(1), PolyMap::identity(1)};
    const int target = rng.int_in(1, dim);
    Polynomial p(dim);
    const int terms = rng.int_in(1, 2);
    for (int k = 0; k < terms; ++k) {
        Monomial m(static_cast<std::size_t>(dim), 0u);
        const int d = rng.int_in(1, 2);
        for (int e = 0; e < d; ++e) {
            int var = rng.int_in(1, dim - 1);
            if (var >= target) ++var;  // skip the sheared variable
            m[static_cast<std::size_t>(var - 1)] += 1;
        }
        p.add_term(std::move(m), random_coefficient(rng));
    }
    std::vector<Polynomial> fwd, bwd;
    for (int i = 1; i <= dim; ++i) {
        Polynomial xi = Polynomial::variable(dim, i);
        fwd.push_back(i == target ? xi + p : xi);
        bwd.push_back(i == target ? xi - p : xi);
    }
    return {PolyMap(dim, dim, std::move(fwd)), PolyMap(dim, dim, std::move(bwd))};
}

}  // namespace sn
