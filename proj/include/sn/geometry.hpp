#pragma once

#include <sn/schouten.hpp>

#include <algorithm>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sn {

/// Polynomial map between chart domains; component i is the i-th target
/// coordinate as a polynomial in the source coordinates.
struct PolyMap {
    PolyMap(int src_dim, int dst_dim, std::vector<Polynomial> comps)
        : src(src_dim), dst(dst_dim), components(std::move(comps)) {
        if (static_cast<int>(components.size()) != dst)
            throw DimensionError("component count must equal target dimension");
        for (const auto& c : components)
            if (c.dim() != src) throw DimensionError("component dimension must equal source dimension");
    }

    static PolyMap identity(int dim) {
        std::vector<Polynomial> comps;
        comps.reserve(static_cast<std::size_t>(dim));
        for (int i = 1; i <= dim; ++i) comps.push_back(Polynomial::variable(dim, i));
        return PolyMap(dim, dim, std::move(comps));
    }

    bool is_identity() const {
        if (src != dst) return false;
        for (int i = 1; i <= dst; ++i)
            if (components[static_cast<std::size_t>(i - 1)] != Polynomial::variable(src, i))
                return false;
        return true;
    }

    friend bool operator==(const PolyMap& a, const PolyMap& b) {
        return a.src == b.src && a.dst == b.dst && a.components == b.components;
    }

    int src;
    int dst;
    std::vector<Polynomial> components;
};

/// outer after inner, (outer . inner)(x) = outer(inner(x)).
inline PolyMap compose(const PolyMap& outer, const PolyMap& inner) {
    if (outer.src != inner.dst) throw DimensionError("map composition dimension mismatch");
    std::vector<Polynomial> comps;
    comps.reserve(outer.components.size());
    for (const auto& c : outer.components) comps.push_back(c.substitute(inner.components));
    return PolyMap(inner.src, outer.dst, std::move(comps));
}

/// Jacobian entry d(phi_b)/dx_a, rows indexed by target coordinates.
inline std::vector<std::vector<Polynomial>> jacobian(const PolyMap& phi) {
    std::vector<std::vector<Polynomial>> j;
    j.reserve(static_cast<std::size_t>(phi.dst));
    for (int b = 0; b < phi.dst; ++b) {
        std::vector<Polynomial> row;
        row.reserve(static_cast<std::size_t>(phi.src));
        for (int a = 1; a <= phi.src; ++a)
            row.push_back(phi.components[static_cast<std::size_t>(b)].partial(a));
        j.push_back(std::move(row));
    }
    return j;
}

namespace detail {

// Determinant of the submatrix with rows `rows` and columns `cols`
// (1-based tuples) by permutation expansion; fine at chart scale.
inline Polynomial minor_det(const std::vector<std::vector<Polynomial>>& m, const IndexTuple& rows,
                            const IndexTuple& cols, int dim) {
    const std::size_t k = rows.size();
    Polynomial det = Polynomial::zero(dim);
    if (k == 0) return Polynomial::constant(dim, Rational(1));
    std::vector<std::size_t> perm(k);
    for (std::size_t i = 0; i < k; ++i) perm[i] = i;
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j]) ++inversions;
        Polynomial prod = Polynomial::constant(dim, Rational(1));
        for (std::size_t i = 0; i < k; ++i)
            prod = prod * m[static_cast<std::size_t>(rows[i] - 1)]
                          [static_cast<std::size_t>(cols[perm[i]] - 1)];
        det += parity_sign(inversions) < 0 ? -prod : prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return det;
}

}  // namespace detail

/// Pullback of a form along a polynomial map: coefficients are composed with
/// the map and each dx_{i} is replaced by the differential of the i-th
/// component.
inline Form pullback(const PolyMap& phi, const Form& w) {
    if (w.dim() != phi.dst) throw DimensionError("pullback of a form on the wrong chart");
    const auto jac = jacobian(phi);
    Form r(phi.src, w.degree());
    for (const auto& [idx, c] : w.terms()) {
        const Polynomial composed = c.substitute(phi.components);
        if (composed.is_zero()) continue;
        for (const auto& a : increasing_tuples(phi.src, static_cast<int>(idx.size()))) {
            Polynomial d = detail::minor_det(jac, idx, a, phi.src);
            if (d.is_zero()) continue;
            r.add_term(a, composed * std::move(d));
        }
    }
    return r;
}

namespace detail {

// Components of (wedge-power of the tangent map applied to U), expressed in
// source coordinates and indexed by target tuples.
inline std::map<IndexTuple, Polynomial> pushforward_components(const PolyMap& phi,
                                                               const Multivector& u) {
    const auto jac = jacobian(phi);
    std::map<IndexTuple, Polynomial> out;
    for (const auto& b : increasing_tuples(phi.dst, u.degree())) {
        Polynomial q = Polynomial::zero(phi.src);
        for (const auto& [a, c] : u.terms()) q += c * minor_det(jac, b, a, phi.src);
        if (!q.is_zero()) out.emplace(b, std::move(q));
    }
    return out;
}

}  // namespace detail

/// True iff U on the source and U' on the target correspond under phi, i.e.
/// the tangent-map power of U equals U' composed with phi, exactly. The
/// equivalent characterization through insertion operators,
/// i(U) o pullback = pullback o i(U'), is cross-checked on a spanning form
/// family.
inline bool related(const PolyMap& phi, const Multivector& u, const Multivector& uprime,
                    int cross_check_coeff_degree = 2) {
    if (u.degree() != uprime.degree()) throw DegreeError("related fields must have equal degree");
    if (u.dim() != phi.src || uprime.dim() != phi.dst)
        throw DimensionError("related fields on the wrong charts");
    const auto pushed = detail::pushforward_components(phi, u);
    for (const auto& b : increasing_tuples(phi.dst, u.degree())) {
        auto it = pushed.find(b);
        const Polynomial lhs = it == pushed.end() ? Polynomial::zero(phi.src) : it->second;
        if (lhs != uprime.coefficient(b).substitute(phi.components)) return false;
    }
    for (const Form& w : spanning_forms(phi.dst, cross_check_coeff_degree, phi.dst))
        if (insert_mv(u, pullback(phi, w)) != pullback(phi, insert_mv(uprime, w))) return false;
    return true;
}

/// For an invertible polynomial map (inverse checked exactly), the unique
/// field on the target that is phi-related to U.
inline Multivector pushforward_invertible(const PolyMap& phi, const PolyMap& inverse,
                                          const Multivector& u) {
    if (u.dim() != phi.src) throw DimensionError("field on the wrong chart");
    if (!compose(phi, inverse).is_identity() || !compose(inverse, phi).is_identity())
        throw Error("maps are not mutually inverse");
    Multivector r(phi.dst, u.degree());
    for (auto& [b, q] : detail::pushforward_components(phi, u))
        r.add_term(b, q.substitute(inverse.components));
    return r;
}

/// Brackets of related fields are related. Preconditions (the given pairs
/// are themselves related) are verified and violations throw.
inline bool naturality_check(const PolyMap& phi, const Multivector& u1, const Multivector& u2,
                             const Multivector& u1prime, const Multivector& u2prime) {
    if (!related(phi, u1, u1prime) || !related(phi, u2, u2prime))
        throw Error("naturality_check preconditions: inputs are not related pairs");
    return related(phi, bracket(u1, u2, BracketMethod::both),
                   bracket(u1prime, u2prime, BracketMethod::both));
}

// ---- exact flows of nilpotent linear vector fields ----

/// Rational matrix helpers at chart scale.
using RationalMatrix = std::vector<std::vector<Rational>>;

inline RationalMatrix rational_identity(int n) {
    RationalMatrix m(static_cast<std::size_t>(n),
                     std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 1;
    return m;
}

inline RationalMatrix rational_mul(const RationalMatrix& a, const RationalMatrix& b) {
    const std::size_t n = a.size();
    RationalMatrix r(n, std::vector<Rational>(n, Rational(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            if (a[i][k] == 0) continue;
            for (std::size_t j = 0; j < n; ++j) r[i][j] += a[i][k] * b[k][j];
        }
    return r;
}

inline bool rational_is_zero(const RationalMatrix& m) {
    for (const auto& row : m)
        for (const auto& x : row)
            if (x != 0) return false;
    return true;
}

/// Coefficient matrix of a linear vector field X^i = sum_j A_ij x_j; throws
/// if any coefficient is not homogeneous linear.
inline RationalMatrix linear_coefficients(const Multivector& x) {
    if (x.degree() != 1) throw DegreeError("flow generator must be a vector field");
    const int n = x.dim();
    RationalMatrix a(static_cast<std::size_t>(n),
                     std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    for (const auto& [idx, c] : x.terms()) {
        const int i = idx[0];
        for (const auto& [m, coeff] : c.terms()) {
            if (total_degree(m) != 1)
                throw Error("flow generator must have homogeneous linear coefficients");
            for (int j = 0; j < n; ++j)
                if (m[static_cast<std::size_t>(j)] == 1)
                    a[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] = coeff;
        }
    }
    return a;
}

/// Exact polynomial flow of a nilpotent linear vector field. Components are
/// polynomials in dim+1 variables: x1..x_dim and the flow time as the last
/// variable. At time 0 the family is the identity, and the time derivative
/// satisfies the flow equation exactly.
struct FlowFamily {
    int dim;                             // chart dimension (time variable is dim+1)
    Multivector generator;               // the vector field X
    std::vector<Polynomial> components;  // dim polynomials in dim+1 variables
};

namespace detail {

// exp(tA) as a matrix of polynomials in one formal variable placed at index
// `time_var` of a ring of dimension `ring_dim`; finite by nilpotency.
inline std::vector<std::vector<Polynomial>> exponential_series(const RationalMatrix& a, int n,
                                                               int ring_dim, int time_var,
                                                               bool negate_time) {
    std::vector<std::vector<Polynomial>> e(
        static_cast<std::size_t>(n),
        std::vector<Polynomial>(static_cast<std::size_t>(n), Polynomial::zero(ring_dim)));
    RationalMatrix power = rational_identity(n);
    Rational factorial(1);
    for (int k = 0; k < n; ++k) {
        if (k > 0) factorial *= k;
        Monomial tk(static_cast<std::size_t>(ring_dim), 0u);
        tk[static_cast<std::size_t>(time_var - 1)] = static_cast<unsigned>(k);
        const int sign = negate_time ? parity_sign(k) : 1;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const Rational& c = power[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (c == 0) continue;
                e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                    Polynomial::monomial(ring_dim, tk, Rational(sign) * c / factorial);
            }
        power = rational_mul(power, a);
        if (rational_is_zero(power)) break;
    }
    return e;
}

}  // namespace detail

/// Builds the flow family of X; throws unless X is linear with nilpotent
/// coefficient matrix (so the flow is polynomial in time).
inline FlowFamily make_flow(const Multivector& x) {
    const int n = x.dim();
    RationalMatrix a = linear_coefficients(x);
    RationalMatrix power = a;
    for (int k = 1; k < n; ++k) power = rational_mul(power, a);
    if (!rational_is_zero(power)) throw Error("flow generator is not nilpotent");

    const int ring = n + 1;
    const auto e = detail::exponential_series(a, n, ring, ring, false);
    std::vector<Polynomial> comps;
    comps.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        Polynomial c = Polynomial::zero(ring);
        for (int j = 0; j < n; ++j)
            c += e[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                 Polynomial::variable(ring, j + 1);
        comps.push_back(std::move(c));
    }
    return FlowFamily{n, x, std::move(comps)};
}

/// The family at time 0, as a map of the chart.
inline PolyMap flow_at_zero(const FlowFamily& flow) {
    std::vector<Polynomial> comps;
    std::vector<Polynomial> values;
    for (int i = 1; i <= flow.dim; ++i) values.push_back(Polynomial::variable(flow.dim, i));
    values.push_back(Polynomial::zero(flow.dim));  // time := 0
    for (const auto& c : flow.components) comps.push_back(c.substitute(values));
    return PolyMap(flow.dim, flow.dim, std::move(comps));
}

/// Exact check of the flow equation d_t F = X(F), as polynomial identities
/// in (x, t).
inline bool flow_ode_holds(const FlowFamily& flow) {
    const int ring = flow.dim + 1;
    std::vector<Polynomial> embedded = flow.components;  // already in (x, t)
    for (int i = 0; i < flow.dim; ++i) {
        const Polynomial lhs = flow.components[static_cast<std::size_t>(i)].partial(ring);
        Polynomial xi = flow.generator.coefficient({i + 1});
        if (lhs != xi.substitute(embedded)) return false;
    }
    return true;
}

/// Exact check of the group law F_s(F_t(x)) = F_{s+t}(x) as polynomial
/// identities in (x, s, t).
inline bool flow_group_law_holds(const FlowFamily& flow) {
    const int n = flow.dim;
    const int ring = n + 2;  // x1..xn, s, t
    const Polynomial s = Polynomial::variable(ring, n + 1);
    const Polynomial t = Polynomial::variable(ring, n + 2);

    // F_t(x) with the time slot mapped to t
    std::vector<Polynomial> at_t;
    {
        std::vector<Polynomial> values;
        for (int i = 1; i <= n; ++i) values.push_back(Polynomial::variable(ring, i));
        values.push_back(t);
        for (const auto& c : flow.components) at_t.push_back(c.substitute(values));
    }
    for (int i = 0; i < n; ++i) {
        // F_i(F_t(x), s)
        std::vector<Polynomial> values = at_t;
        values.push_back(s);
        const Polynomial lhs = flow.components[static_cast<std::size_t>(i)].substitute(values);
        // F_i(x, s + t)
        std::vector<Polynomial> direct;
        for (int j = 1; j <= n; ++j) direct.push_back(Polynomial::variable(ring, j));
        direct.push_back(s + t);
        const Polynomial rhs = flow.components[static_cast<std::size_t>(i)].substitute(direct);
        if (lhs != rhs) return false;
    }
    return true;
}

/// Lie derivative of U along a nilpotent linear field X, computed by
/// transporting U through the flow and extracting the first-order time
/// coefficient. Agreement with bracket(X, U) is the flow formula.
inline Multivector flow_lie_derivative(const Multivector& x, const Multivector& u) {
    if (x.dim() != u.dim()) throw DimensionError("fields on different charts");
    const int n = x.dim();
    const FlowFamily flow = make_flow(x);
    const int ring = n + 1;

    RationalMatrix a = linear_coefficients(x);
    const auto back = detail::exponential_series(a, n, ring, ring, true);  // exp(-tA)

    Multivector r(n, u.degree());
    for (const auto& b : increasing_tuples(n, u.degree())) {
        Polynomial transported = Polynomial::zero(ring);
        for (const auto& [aidx, c] : u.terms()) {
            Polynomial d = detail::minor_det(back, b, aidx, ring);
            if (d.is_zero()) continue;
            transported += c.substitute(flow.components) * d;
        }
        // coefficient of t^1
        Polynomial lin = Polynomial::zero(n);
        for (const auto& [m, c] : transported.terms()) {
            if (m[static_cast<std::size_t>(n)] != 1) continue;
            Monomial reduced(m.begin(), m.end() - 1);
            lin.add_term(std::move(reduced), c);
        }
        if (!lin.is_zero()) r.add_term(b, std::move(lin));
    }
    return r;
}

}  // namespace sn
