#pragma once

#include <sn/calculus.hpp>

#include <string>

namespace sn {

enum class BracketMethod { direct, tulczyjew, both };

// Sign conventions for the Schouten-Nijenhuis bracket. The Koszul convention
// is the internal normal form; the others are output scalings:
//   tulczyjew(U,V)    = -(-1)^{(u-1)(v-1)} koszul(U,V)
//   lichnerowicz(U,V) = (-1)^{u-1} koszul(U,V)
enum class BracketConvention { koszul, tulczyjew, lichnerowicz };

inline int convention_factor(BracketConvention conv, int u, int v) {
    switch (conv) {
        case BracketConvention::koszul:
            return 1;
        case BracketConvention::tulczyjew:
            return -parity_sign(static_cast<long long>(u - 1) * (v - 1));
        case BracketConvention::lichnerowicz:
            return parity_sign(u - 1);
    }
    return 1;
}

/// Rescales a bracket value between conventions; u, v are the degrees of the
/// original operands.
inline Multivector convert_convention(const Multivector& b, int u, int v,
                                      BracketConvention from, BracketConvention to) {
    const int f = convention_factor(from, u, v) * convention_factor(to, u, v);
    return f < 0 ? -b : b;
}

namespace detail {

// Bracket of one basis term f*e_A against one basis term g*e_B, both of
// degree >= 1. The term is decomposed as (f e_{a1}) ^ e_{a2} ^ ... and the
// double sum over factor pairs is expanded; only pairs touching a first
// factor contribute, since coordinate fields commute.
inline void bracket_basis_terms(Multivector& acc, const Polynomial& f, const IndexTuple& a,
                                const Polynomial& g, const IndexTuple& b) {
    const int u = static_cast<int>(a.size());
    const int v = static_cast<int>(b.size());
    // pieces of [X_i, Y_j] as (coefficient, basis index)
    struct Piece {
        Polynomial c;
        int index;
    };
    for (int i = 1; i <= u; ++i) {
        for (int j = 1; j <= v; ++j) {
            if (i > 1 && j > 1) continue;
            std::vector<Piece> pieces;
            if (i == 1 && j == 1) {
                Polynomial c1 = f * g.partial(a[0]);
                if (!c1.is_zero()) pieces.push_back({std::move(c1), b[0]});
                Polynomial c2 = -(g * f.partial(b[0]));
                if (!c2.is_zero()) pieces.push_back({std::move(c2), a[0]});
            } else if (i == 1) {
                // [f e_{a1}, e_{bj}] = -(d_{bj} f) e_{a1}; the omitted block
                // still carries g through Y_1.
                Polynomial c = -(f.partial(b[static_cast<std::size_t>(j - 1)]) * g);
                if (!c.is_zero()) pieces.push_back({std::move(c), a[0]});
            } else {
                // [e_{ai}, g e_{b1}] = (d_{ai} g) e_{b1}; f rides along on X_1.
                Polynomial c = g.partial(a[static_cast<std::size_t>(i - 1)]) * f;
                if (!c.is_zero()) pieces.push_back({std::move(c), b[0]});
            }
            if (pieces.empty()) continue;
            IndexTuple rest;
            rest.reserve(static_cast<std::size_t>(u + v - 1));
            rest.push_back(0);  // placeholder for the bracket factor
            for (int k = 0; k < u; ++k)
                if (k != i - 1) rest.push_back(a[static_cast<std::size_t>(k)]);
            for (int k = 0; k < v; ++k)
                if (k != j - 1) rest.push_back(b[static_cast<std::size_t>(k)]);
            const int outer = parity_sign(i + j);
            for (auto& piece : pieces) {
                rest[0] = piece.index;
                auto [sign, sorted] = sort_with_sign(rest);
                if (sign == 0) continue;
                Polynomial c = std::move(piece.c);
                if (outer * sign < 0) c = -c;
                acc.add_term(std::move(sorted), std::move(c));
            }
        }
    }
}

}  // namespace detail

/// Schouten-Nijenhuis bracket by direct expansion (Koszul convention):
/// [f,U] = -insert_form(df, U) on functions, and on decomposables
/// [X_1^...^X_u, Y_1^...^Y_v] =
///   sum_{i,j} (-1)^{i+j} [X_i,Y_j] ^ X_1^..^X_u ^ Y_1^..^Y_v with X_i, Y_j
/// omitted. Degenerate degrees (u+v = 0, or u+v-1 > dim) give zero.
inline Multivector bracket_direct(const Multivector& u, const Multivector& v) {
    if (u.dim() != v.dim()) throw DimensionError("bracket of fields on different charts");
    const int du = u.degree(), dv = v.degree();
    if (du == 0 && dv == 0) return Multivector::zero(u.dim(), 0);
    if (du == 0) {
        Multivector r = insert_form(differential(u.scalar_part()), v);
        return -r;
    }
    if (dv == 0) {
        Multivector r = bracket_direct(v, u);
        return parity_sign(static_cast<long long>(du - 1) * (dv - 1)) < 0 ? r : -r;
    }
    Multivector acc(u.dim(), du + dv - 1);
    for (const auto& [a, f] : u.terms())
        for (const auto& [b, g] : v.terms()) detail::bracket_basis_terms(acc, f, a, g, b);
    return acc;
}

/// Schouten-Nijenhuis bracket through the duality with exact forms
/// (Tulczyjew's formula, Koszul convention): the component of [U,V] on the
/// basis tuple J is read off by testing against the exact form dx_J,
///   <[U,V], dx_J> = -<V, d i(U) dx_J> + (-1)^{(u-1)(v-1)} <U, d i(V) dx_J>.
inline Multivector bracket_tulczyjew(const Multivector& u, const Multivector& v) {
    if (u.dim() != v.dim()) throw DimensionError("bracket of fields on different charts");
    const int n = u.dim();
    const int du = u.degree(), dv = v.degree();
    if (du == 0 && dv == 0) return Multivector::zero(n, 0);
    const int w = du + dv - 1;
    if (w > n) return Multivector::zero(n, w);
    const int sign = parity_sign(static_cast<long long>(du - 1) * (dv - 1));
    Multivector r(n, w);
    for (const auto& j : increasing_tuples(n, w)) {
        const Form dxj = Form::basis(n, j);
        Polynomial c = -pair(ext_deriv(insert_mv(u, dxj)), v);
        Polynomial c2 = pair(ext_deriv(insert_mv(v, dxj)), u);
        if (sign < 0) c2 = -c2;
        c += c2;
        if (!c.is_zero()) r.add_term(j, std::move(c));
    }
    return r;
}

/// Bracket dispatch with convention scaling. With method `both`, computes
/// both formulations and throws MethodDisagreement if they differ; that
/// cross-check is the library's central self-test.
inline Multivector bracket(const Multivector& u, const Multivector& v,
                           BracketMethod method = BracketMethod::both,
                           BracketConvention conv = BracketConvention::koszul) {
    Multivector r = Multivector::zero(u.dim(), 0);
    switch (method) {
        case BracketMethod::direct:
            r = bracket_direct(u, v);
            break;
        case BracketMethod::tulczyjew:
            r = bracket_tulczyjew(u, v);
            break;
        case BracketMethod::both: {
            r = bracket_direct(u, v);
            const Multivector t = bracket_tulczyjew(u, v);
            if (r != t)
                throw MethodDisagreement("bracket formulations disagree on [" + u.to_string() +
                                         ", " + v.to_string() + "]: direct " + r.to_string() +
                                         ", dual " + t.to_string());
            break;
        }
    }
    if (convention_factor(conv, u.degree(), v.degree()) < 0) r = -r;
    return r;
}

/// Operator identities tying the Lie differential to the bracket:
///   [L(U), i(V)] = (-1)^{(u-1)(v-1)} i([U,V]) = -i([V,U])
///   [L(U), L(V)] = (-1)^{(u-1)(v-1)} L([U,V]) = -L([V,U])
/// checked exactly on the scope's spanning family, with [U,V] computed by
/// both formulations.
inline bool lie_derivative_identity_check(const Multivector& u, const Multivector& v,
                                          const TestScope& scope) {
    if (u.dim() != v.dim()) throw DimensionError("fields on different charts");
    const int s =
        parity_sign(static_cast<long long>(u.degree() - 1) * (v.degree() - 1));
    const int bracket_degree = u.degree() + v.degree() - 1;
    const Multivector uv = bracket(u, v, BracketMethod::both);
    const Multivector vu = bracket(v, u, BracketMethod::both);
    const FormOperator lu = FormOperator::lie(u);
    const FormOperator iv = FormOperator::insertion(v);
    const FormOperator lv = FormOperator::lie(v);
    if (!operator_equal(graded_commutator(lu, iv),
                        s * FormOperator::insertion_of_degree(uv, bracket_degree), scope))
        return false;
    if (!operator_equal(graded_commutator(lu, iv),
                        -1 * FormOperator::insertion_of_degree(vu, bracket_degree), scope))
        return false;
    if (!operator_equal(graded_commutator(lu, lv),
                        s * FormOperator::lie_of_degree(uv, bracket_degree), scope))
        return false;
    if (!operator_equal(graded_commutator(lu, lv),
                        -1 * FormOperator::lie_of_degree(vu, bracket_degree), scope))
        return false;
    return true;
}

// Prefactor exponents of the graded Jacobi identity
//   [U,[V,W]] = [[U,V],W] + (-1)^e [V,[U,W]]
// and the wedge Leibniz rule
//   [U, V^W] = [U,V]^W + (-1)^e V^[U,W].
// The shifted grading (degree u-1) gives e = (u-1)(v-1) resp. (u-1)v; the
// alternate exponents are refuted by recorded counterexamples in the
// identity suite.
enum class JacobiSign { shifted_both, shifted_right };
enum class LeibnizSign { shifted_left, shifted_both };

inline int jacobi_exponent_sign(JacobiSign rule, int u, int v) {
    const long long uu = u, vv = v;
    return rule == JacobiSign::shifted_both ? parity_sign((uu - 1) * (vv - 1))
                                            : parity_sign(uu * (vv - 1));
}

inline int leibniz_exponent_sign(LeibnizSign rule, int u, int v) {
    const long long uu = u, vv = v;
    return rule == LeibnizSign::shifted_left ? parity_sign((uu - 1) * vv)
                                             : parity_sign((uu - 1) * (vv - 1));
}

/// Jacobi identity residual under a chosen prefactor rule; zero iff the
/// identity holds on (U, V, W).
inline Multivector jacobi_residual(const Multivector& u, const Multivector& v,
                                   const Multivector& w, JacobiSign rule,
                                   BracketMethod method = BracketMethod::direct) {
    const int s = jacobi_exponent_sign(rule, u.degree(), v.degree());
    Multivector lhs = bracket(u, bracket(v, w, method), method);
    Multivector rhs = bracket(bracket(u, v, method), w, method);
    Multivector t = bracket(v, bracket(u, w, method), method);
    rhs += s < 0 ? -t : t;
    return lhs - rhs;
}

/// Leibniz-rule residual under a chosen prefactor rule.
inline Multivector leibniz_residual(const Multivector& u, const Multivector& v,
                                    const Multivector& w, LeibnizSign rule,
                                    BracketMethod method = BracketMethod::direct) {
    const int s = leibniz_exponent_sign(rule, u.degree(), v.degree());
    Multivector lhs = bracket(u, wedge(v, w), method);
    Multivector rhs = wedge(bracket(u, v, method), w);
    Multivector t = wedge(v, bracket(u, w, method));
    rhs += s < 0 ? -t : t;
    return lhs - rhs;
}

}  // namespace sn
