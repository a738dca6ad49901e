#pragma once

#include <sn/multivector.hpp>

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sn {

/// Exterior derivative in chart coordinates:
/// d(f dx_I) = sum_j (d_j f) dx_j ^ dx_I.
inline Form ext_deriv(const Form& w) {
    Form r(w.dim(), w.degree() + 1);
    for (const auto& [idx, c] : w.terms()) {
        for (int j = 1; j <= w.dim(); ++j) {
            Polynomial dc = c.partial(j);
            if (dc.is_zero()) continue;
            IndexTuple merged{j};
            merged.insert(merged.end(), idx.begin(), idx.end());
            auto [sign, sorted] = sort_with_sign(std::move(merged));
            if (sign == 0) continue;
            if (sign < 0) dc = -dc;
            r.add_term(std::move(sorted), std::move(dc));
        }
    }
    return r;
}

/// df as a 1-form.
inline Form differential(const Polynomial& f) {
    return ext_deriv(Form::scalar(f));
}

/// Lie bracket of vector fields, componentwise:
/// [X,Y]^i = sum_j (X^j d_j Y^i - Y^j d_j X^i).
inline Multivector lie_bracket_vf(const Multivector& x, const Multivector& y) {
    if (x.dim() != y.dim()) throw DimensionError("bracket of fields on different charts");
    if (x.degree() != 1 || y.degree() != 1)
        throw DegreeError("lie_bracket_vf needs two degree-1 fields");
    const int n = x.dim();
    Multivector r(n, 1);
    for (int i = 1; i <= n; ++i) {
        Polynomial c = Polynomial::zero(n);
        const Polynomial xi = x.coefficient({i});
        const Polynomial yi = y.coefficient({i});
        for (int j = 1; j <= n; ++j) {
            const Polynomial xj = x.coefficient({j});
            const Polynomial yj = y.coefficient({j});
            if (!xj.is_zero()) c += xj * yi.partial(j);
            if (!yj.is_zero()) c -= yj * xi.partial(j);
        }
        r.add_term({i}, std::move(c));
    }
    return r;
}

/// Lie differential L(U)w = i(U) dw - (-1)^{deg U} d i(U) w, homogeneous of
/// degree 1 - deg U. For vector fields this is the ordinary Lie derivative.
inline Form lie_diff(const Multivector& u, const Form& w) {
    if (u.dim() != w.dim()) throw DimensionError("Lie differential on different charts");
    Form a = insert_mv(u, ext_deriv(w));
    Form b = ext_deriv(insert_mv(u, w));
    if (parity_sign(u.degree()) < 0) return a + b;
    return a - b;
}

/// R-linear operator on forms with a fixed homogeneity (degree shift),
/// represented by its action rule. Values capture only immutable data, so
/// applying an operator is pure.
struct FormOperator {
    int dim;
    int homogeneity;
    std::function<Form(const Form&)> action;

    Form operator()(const Form& w) const { return action(w); }

    static FormOperator zero(int dim, int homogeneity) {
        return {dim, homogeneity, [dim](const Form&) { return Form::zero(dim, 0); }};
    }

    static FormOperator exterior_derivative(int dim) {
        return {dim, +1, [](const Form& w) { return ext_deriv(w); }};
    }

    // i(U)
    static FormOperator insertion(Multivector u) {
        const int d = u.dim(), h = -u.degree();
        return {d, h, [u = std::move(u)](const Form& w) { return insert_mv(u, w); }};
    }

    // i(U) with an explicit formal degree for U. Needed when U came out of a
    // degree-lowering operation that clamps the degree of zero values: a zero
    // U acts as the zero operator, which is consistent with any homogeneity.
    static FormOperator insertion_of_degree(Multivector u, int degree) {
        if (!u.is_zero() && u.degree() != degree)
            throw DegreeError("nonzero multivector degree does not match the declared degree");
        const int d = u.dim();
        return {d, -degree, [u = std::move(u)](const Form& w) { return insert_mv(u, w); }};
    }

    // mu(w): left wedge multiplication
    static FormOperator left_multiplication(Form w) {
        const int d = w.dim(), h = w.degree();
        return {d, h, [w = std::move(w)](const Form& psi) { return wedge(w, psi); }};
    }

    // L(U)
    static FormOperator lie(Multivector u) {
        const int d = u.dim(), h = 1 - u.degree();
        return {d, h, [u = std::move(u)](const Form& w) { return lie_diff(u, w); }};
    }

    // L(U) with an explicit formal degree for U; see insertion_of_degree.
    static FormOperator lie_of_degree(Multivector u, int degree) {
        if (!u.is_zero() && u.degree() != degree)
            throw DegreeError("nonzero multivector degree does not match the declared degree");
        const int d = u.dim();
        return {d, 1 - degree, [u = std::move(u)](const Form& w) { return lie_diff(u, w); }};
    }
};

inline FormOperator compose(const FormOperator& a, const FormOperator& b) {
    if (a.dim != b.dim) throw DimensionError("composition of operators on different charts");
    return {a.dim, a.homogeneity + b.homogeneity,
            [a, b](const Form& w) { return a(b(w)); }};
}

inline FormOperator operator+(const FormOperator& a, const FormOperator& b) {
    if (a.dim != b.dim) throw DimensionError("sum of operators on different charts");
    if (a.homogeneity != b.homogeneity)
        throw DegreeError("sum of operators of different homogeneity");
    return {a.dim, a.homogeneity, [a, b](const Form& w) { return a(w) + b(w); }};
}

inline FormOperator operator*(int s, const FormOperator& a) {
    return {a.dim, a.homogeneity,
            [s, a](const Form& w) { return Rational(s) * a(w); }};
}

inline FormOperator operator-(const FormOperator& a) { return -1 * a; }
inline FormOperator operator-(const FormOperator& a, const FormOperator& b) {
    return a + (-1 * b);
}

/// [A,B] = A o B - (-1)^{hom A * hom B} B o A.
inline FormOperator graded_commutator(const FormOperator& a, const FormOperator& b) {
    const int s = parity_sign(static_cast<long long>(a.homogeneity) * b.homogeneity);
    return compose(a, b) - s * compose(b, a);
}

/// Scope of an exhaustive operator-equality check and of randomized identity
/// suites. A seed of 0 is a valid stream.
struct TestScope {
    int dim = 2;
    int max_multivector_degree = 2;
    int coeff_degree = 3;
    int form_degree = 2;
    int trials = 100;
    std::uint64_t seed = 0;

    static TestScope for_dim(int dim, int coeff_degree = 3, int trials = 100,
                             std::uint64_t seed = 0) {
        return {dim, dim, coeff_degree, dim, trials, seed};
    }
};

/// The spanning family {m * dx_I : deg(m) <= coeff_degree, |I| <= form_degree}.
/// By R-linearity, operator equality on this family is equality on the whole
/// spanned subspace.
inline std::vector<Form> spanning_forms(int dim, int coeff_degree, int form_degree) {
    std::vector<Form> out;
    const auto monos = monomials_up_to(dim, coeff_degree);
    for (int k = 0; k <= std::min(form_degree, dim); ++k) {
        for (const auto& idx : increasing_tuples(dim, k)) {
            for (const auto& m : monos) {
                Form w(dim, k);
                w.add_term(idx, Polynomial::monomial(dim, m, Rational(1)));
                out.push_back(std::move(w));
            }
        }
    }
    return out;
}

/// First spanning form on which A and B disagree, if any.
inline std::optional<Form> operator_counterexample(const FormOperator& a, const FormOperator& b,
                                                   const TestScope& scope) {
    if (a.dim != b.dim) throw DimensionError("comparing operators on different charts");
    if (a.homogeneity != b.homogeneity)
        throw DegreeError("comparing operators of different homogeneity");
    for (const Form& w : spanning_forms(a.dim, scope.coeff_degree, scope.form_degree))
        if (a(w) != b(w)) return w;
    return std::nullopt;
}

/// Exact equality of two operators on the scope's spanning family.
inline bool operator_equal(const FormOperator& a, const FormOperator& b, const TestScope& scope) {
    return !operator_counterexample(a, b, scope).has_value();
}

}  // namespace sn
