#pragma once

#include <sn/combinatorics.hpp>
#include <sn/errors.hpp>
#include <sn/polynomial.hpp>

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sn {

struct Contravariant {
    static constexpr const char* basis_prefix = "e";
    static constexpr const char* kind_name = "multivector";
};
struct Covariant {
    static constexpr const char* basis_prefix = "dx";
    static constexpr const char* kind_name = "form";
};

/// Homogeneous alternating tensor field: a map from strictly increasing index
/// tuples to nonzero polynomial coefficients. The variance tag keeps
/// multivectors and forms apart at the type level; degree 0 wraps a bare
/// polynomial under the empty tuple.
///
/// A zero value compares equal to the zero of any other degree: identities
/// frequently produce zeros whose nominal degree is ambient.
template <typename Variance>
class Alternating {
public:
    using TermMap = std::map<IndexTuple, Polynomial>;

    Alternating(int dim, int degree) : dim_(dim), degree_(degree) {
        if (dim < 1) throw DimensionError("chart dimension must be positive");
        if (degree < 0) throw DegreeError("degree must be non-negative");
    }

    static Alternating zero(int dim, int degree) { return Alternating(dim, degree); }

    static Alternating scalar(Polynomial p) {
        Alternating a(p.dim(), 0);
        a.add_term({}, std::move(p));
        return a;
    }

    // Coordinate basis element with coefficient 1; indices must be strictly
    // increasing.
    static Alternating basis(int dim, IndexTuple idx) {
        Alternating a(dim, static_cast<int>(idx.size()));
        a.add_term(std::move(idx), Polynomial::constant(dim, Rational(1)));
        return a;
    }

    int dim() const { return dim_; }
    int degree() const { return degree_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    Polynomial coefficient(const IndexTuple& idx) const {
        auto it = terms_.find(idx);
        return it == terms_.end() ? Polynomial::zero(dim_) : it->second;
    }

    /// Degree-0 content as a polynomial (zero for the zero value).
    Polynomial scalar_part() const {
        if (degree_ != 0 && !terms_.empty()) throw DegreeError("value has positive degree");
        auto it = terms_.find(IndexTuple{});
        return it == terms_.end() ? Polynomial::zero(dim_) : it->second;
    }

    void add_term(IndexTuple idx, Polynomial c) {
        if (static_cast<int>(idx.size()) != degree_)
            throw DegreeError("index tuple length does not match degree");
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] < 1 || idx[i] > dim_) throw DimensionError("basis index out of range");
            if (i > 0 && idx[i - 1] >= idx[i]) throw Error("index tuple is not strictly increasing");
        }
        if (c.is_zero()) return;
        auto it = terms_.find(idx);
        if (it == terms_.end()) {
            terms_.emplace(std::move(idx), std::move(c));
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    Alternating& operator+=(const Alternating& other) {
        require_same_dim(other);
        if (other.is_zero()) return *this;
        if (is_zero()) return *this = other;
        if (degree_ != other.degree_) throw DegreeError("cannot add values of different degree");
        for (const auto& [idx, c] : other.terms_) add_term(idx, c);
        return *this;
    }
    Alternating& operator-=(const Alternating& other) { return *this += -other; }

    friend Alternating operator+(Alternating a, const Alternating& b) { return a += b; }
    friend Alternating operator-(Alternating a, const Alternating& b) { return a -= b; }

    friend Alternating operator-(const Alternating& a) {
        Alternating r(a.dim_, a.degree_);
        for (const auto& [idx, c] : a.terms_) r.terms_.emplace(idx, -c);
        return r;
    }

    friend Alternating operator*(const Polynomial& f, const Alternating& a) {
        Alternating r(a.dim_, a.degree_);
        for (const auto& [idx, c] : a.terms_) {
            Polynomial p = f * c;
            if (!p.is_zero()) r.terms_.emplace(idx, std::move(p));
        }
        return r;
    }
    friend Alternating operator*(const Alternating& a, const Polynomial& f) { return f * a; }

    friend Alternating operator*(const Rational& s, const Alternating& a) {
        return Polynomial::constant(a.dim_, s) * a;
    }

    friend bool operator==(const Alternating& a, const Alternating& b) {
        if (a.dim_ != b.dim_) return false;
        if (a.is_zero() && b.is_zero()) return true;
        return a.degree_ == b.degree_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Alternating& a, const Alternating& b) { return !(a == b); }

    std::string to_string() const;

private:
    void require_same_dim(const Alternating& other) const {
        if (dim_ != other.dim_) throw DimensionError("chart dimension mismatch");
    }

    int dim_;
    int degree_;
    TermMap terms_;
};

using Multivector = Alternating<Contravariant>;
using Form = Alternating<Covariant>;

/// Wedge product of two values of the same variance. Degree adds; terms with
/// a repeated index vanish, and merging basis tuples contributes the shuffle
/// sign.
template <typename V>
Alternating<V> wedge(const Alternating<V>& a, const Alternating<V>& b) {
    if (a.dim() != b.dim()) throw DimensionError("wedge of values on different charts");
    Alternating<V> r(a.dim(), a.degree() + b.degree());
    for (const auto& [ia, ca] : a.terms()) {
        for (const auto& [ib, cb] : b.terms()) {
            IndexTuple merged(ia);
            merged.insert(merged.end(), ib.begin(), ib.end());
            auto [sign, sorted] = sort_with_sign(std::move(merged));
            if (sign == 0) continue;
            Polynomial c = ca * cb;
            if (sign < 0) c = -c;
            r.add_term(std::move(sorted), std::move(c));
        }
    }
    return r;
}

/// Fiberwise duality pairing <w, U>. Basis covectors pair with basis vectors
/// by the determinant convention, which on increasing tuples reads
/// <dx_I, e_J> = [I = J]. Mismatched degrees pair to zero; degree 0 pairs by
/// multiplication.
inline Polynomial pair(const Form& w, const Multivector& u) {
    if (w.dim() != u.dim()) throw DimensionError("pairing values on different charts");
    Polynomial r = Polynomial::zero(w.dim());
    if (w.degree() != u.degree() && !w.is_zero() && !u.is_zero()) return r;
    for (const auto& [idx, cw] : w.terms()) {
        auto it = u.terms().find(idx);
        if (it != u.terms().end()) r += cw * it->second;
    }
    return r;
}

/// Insertion operator i(U)w: contraction of a form by a multivector, the
/// fiberwise dual of V -> U ^ V, so that pair(insert_mv(U, w), V) =
/// pair(w, wedge(U, V)). On basis terms it removes U's tuple from w's with
/// the block-merge sign; i(f)w = f*w for degree 0.
inline Form insert_mv(const Multivector& u, const Form& w) {
    if (u.dim() != w.dim()) throw DimensionError("insertion on different charts");
    if (w.degree() < u.degree()) return Form::zero(w.dim(), 0);
    Form r(w.dim(), w.degree() - u.degree());
    for (const auto& [a, cu] : u.terms()) {
        for (const auto& [b, cw] : w.terms()) {
            if (!tuple_subset(a, b)) continue;
            IndexTuple rest = tuple_minus(b, a);
            const int sign = shuffle_sign(a, rest);
            Polynomial c = cu * cw;
            if (sign < 0) c = -c;
            r.add_term(std::move(rest), std::move(c));
        }
    }
    return r;
}

/// Insertion the other way around: contraction of a multivector by a form,
/// dual to wedging forms on the left, pair(phi, insert_form(w, U)) =
/// pair(wedge(w, phi), U).
inline Multivector insert_form(const Form& w, const Multivector& u) {
    if (u.dim() != w.dim()) throw DimensionError("insertion on different charts");
    if (u.degree() < w.degree()) return Multivector::zero(u.dim(), 0);
    Multivector r(u.dim(), u.degree() - w.degree());
    for (const auto& [a, cw] : w.terms()) {
        for (const auto& [b, cu] : u.terms()) {
            if (!tuple_subset(a, b)) continue;
            IndexTuple rest = tuple_minus(b, a);
            const int sign = shuffle_sign(a, rest);
            Polynomial c = cw * cu;
            if (sign < 0) c = -c;
            r.add_term(std::move(rest), std::move(c));
        }
    }
    return r;
}

namespace detail {

template <typename V>
std::string basis_string(const IndexTuple& idx) {
    std::string out;
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (i > 0) out += "^";
        out += V::basis_prefix + std::to_string(idx[i]);
    }
    return out;
}

}  // namespace detail

template <typename V>
std::string Alternating<V>::to_string() const {
    if (terms_.empty()) return "0";
    if (degree_ == 0) return terms_.begin()->second.to_string();
    std::string out;
    bool first = true;
    for (const auto& [idx, c] : terms_) {
        const std::string basis = detail::basis_string<V>(idx);
        bool neg = false;
        std::string body;
        if (c.terms().size() == 1) {
            const auto& [m, coeff] = *c.terms().begin();
            neg = coeff < 0;
            const std::string mono = detail::monomial_body(neg ? Rational(-coeff) : coeff, m);
            body = (mono == "1" && !neg) ? basis : mono + "*" + basis;
        } else {
            body = "(" + c.to_string() + ")*" + basis;
        }
        if (first) {
            out += neg ? "-" : "";
            out += body;
            first = false;
        } else {
            out += neg ? " - " : " + ";
            out += body;
        }
    }
    return out;
}

}  // namespace sn
