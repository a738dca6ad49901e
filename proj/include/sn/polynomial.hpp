#pragma once

#include <sn/errors.hpp>
#include <sn/rational.hpp>

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace sn {

// Exponent vector of a monomial; length = chart dimension.
using Monomial = std::vector<unsigned>;

inline unsigned total_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0u);
}

// Graded-lexicographic order, largest term first, so map iteration is the
// canonical printing order (higher total degree first, ties broken by
// lexicographically larger exponent vector).
struct GrlexDescending {
    bool operator()(const Monomial& a, const Monomial& b) const {
        const unsigned da = total_degree(a), db = total_degree(b);
        if (da != db) return da > db;
        return a > b;
    }
};

/// Exact multivariate polynomial over the rationals in variables x1..x_dim.
/// No stored coefficient is zero, so equality of term maps is equality of
/// polynomials.
class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GrlexDescending>;

    explicit Polynomial(int dim) : dim_(dim) {
        if (dim < 1) throw DimensionError("polynomial dimension must be positive");
    }

    static Polynomial constant(int dim, Rational c) {
        Polynomial p(dim);
        p.add_term(Monomial(static_cast<std::size_t>(dim), 0u), std::move(c));
        return p;
    }

    static Polynomial zero(int dim) { return Polynomial(dim); }

    // 1-based variable index.
    static Polynomial variable(int dim, int i) {
        Polynomial p(dim);
        if (i < 1 || i > dim) throw DimensionError("variable index out of range");
        Monomial m(static_cast<std::size_t>(dim), 0u);
        m[static_cast<std::size_t>(i - 1)] = 1;
        p.add_term(std::move(m), Rational(1));
        return p;
    }

    static Polynomial monomial(int dim, Monomial m, Rational c) {
        Polynomial p(dim);
        if (static_cast<int>(m.size()) != dim) throw DimensionError("monomial length mismatch");
        p.add_term(std::move(m), std::move(c));
        return p;
    }

    int dim() const { return dim_; }
    bool is_zero() const { return terms_.empty(); }
    const TermMap& terms() const { return terms_; }

    unsigned degree() const {
        unsigned d = 0;
        for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
        return d;
    }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        auto it = terms_.find(Monomial(static_cast<std::size_t>(dim_), 0u));
        return it == terms_.end() ? Rational(0) : it->second;
    }

    void add_term(Monomial m, Rational c) {
        if (c == 0) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), std::move(c));
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    Polynomial& operator+=(const Polynomial& other) {
        require_same_dim(other);
        for (const auto& [m, c] : other.terms_) add_term(m, c);
        return *this;
    }

    Polynomial& operator-=(const Polynomial& other) {
        require_same_dim(other);
        for (const auto& [m, c] : other.terms_) add_term(m, -c);
        return *this;
    }

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

    friend Polynomial operator-(const Polynomial& a) {
        Polynomial r(a.dim_);
        for (const auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        a.require_same_dim(b);
        Polynomial r(a.dim_);
        for (const auto& [ma, ca] : a.terms_) {
            for (const auto& [mb, cb] : b.terms_) {
                Monomial m(ma);
                for (std::size_t k = 0; k < m.size(); ++k) m[k] += mb[k];
                r.add_term(std::move(m), ca * cb);
            }
        }
        return r;
    }

    friend Polynomial operator*(const Polynomial& a, const Rational& c) {
        Polynomial r(a.dim_);
        if (c == 0) return r;
        for (const auto& [m, cc] : a.terms_) r.terms_.emplace(m, cc * c);
        return r;
    }
    friend Polynomial operator*(const Rational& c, const Polynomial& a) { return a * c; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) {
        return a.dim_ == b.dim_ && a.terms_ == b.terms_;
    }
    friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

    /// Formal partial derivative with respect to x_i (1-based).
    Polynomial partial(int i) const {
        if (i < 1 || i > dim_) throw DimensionError("derivative index out of range");
        const std::size_t k = static_cast<std::size_t>(i - 1);
        Polynomial r(dim_);
        for (const auto& [m, c] : terms_) {
            if (m[k] == 0) continue;
            Monomial d(m);
            d[k] -= 1;
            r.add_term(std::move(d), c * Rational(m[k]));
        }
        return r;
    }

    /// Substitute x_i := values[i-1]; all values must share one dimension,
    /// which becomes the dimension of the result.
    Polynomial substitute(const std::vector<Polynomial>& values) const {
        if (static_cast<int>(values.size()) != dim_)
            throw DimensionError("substitution arity does not match polynomial dimension");
        int target = values.empty() ? dim_ : values.front().dim();
        for (const auto& v : values)
            if (v.dim() != target) throw DimensionError("substitution values have mixed dimensions");

        // Power cache per variable, grown on demand.
        std::vector<std::vector<Polynomial>> powers(values.size());
        auto power = [&](std::size_t i, unsigned e) -> const Polynomial& {
            auto& cache = powers[i];
            if (cache.empty()) cache.push_back(Polynomial::constant(target, Rational(1)));
            while (cache.size() <= e) cache.push_back(cache.back() * values[i]);
            return cache[e];
        };

        Polynomial r(target);
        for (const auto& [m, c] : terms_) {
            Polynomial t = Polynomial::constant(target, c);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] > 0) t = t * power(i, m[i]);
            r += t;
        }
        return r;
    }

    Polynomial pow(unsigned e) const {
        Polynomial r = Polynomial::constant(dim_, Rational(1));
        for (unsigned k = 0; k < e; ++k) r = r * (*this);
        return r;
    }

    std::string to_string() const;

private:
    void require_same_dim(const Polynomial& other) const {
        if (dim_ != other.dim_) throw DimensionError("polynomial dimension mismatch");
    }

    int dim_;
    TermMap terms_;
};

namespace detail {

// "3/2*x1**2*x2" for coefficient magnitude |c| and exponents m; |c| = 1 with
// variables present renders without the leading numeral.
inline std::string monomial_body(const Rational& abs_coeff, const Monomial& m) {
    std::string vars;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += "x" + std::to_string(i + 1);
        if (m[i] > 1) vars += "**" + std::to_string(m[i]);
    }
    if (vars.empty()) return to_string(abs_coeff);
    if (abs_coeff == 1) return vars;
    return to_string(abs_coeff) + "*" + vars;
}

}  // namespace detail

inline std::string Polynomial::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        const bool neg = c < 0;
        const std::string body = detail::monomial_body(neg ? Rational(-c) : c, m);
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
