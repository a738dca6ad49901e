#pragma once

#include <sn/multivector.hpp>

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

namespace sn {

/// Result of parsing an expression: a polynomial (scalar), a multivector, or
/// a form. Scalars stay polynomials; degree-0 wrapped values and zeros of any
/// degree are identified by semantic_equal.
class Value {
public:
    Value(Polynomial p) : v_(std::move(p)) {}
    Value(Multivector m) : v_(std::move(m)) {}
    Value(Form f) : v_(std::move(f)) {}

    bool is_scalar() const { return std::holds_alternative<Polynomial>(v_); }
    bool is_multivector() const { return std::holds_alternative<Multivector>(v_); }
    bool is_form() const { return std::holds_alternative<Form>(v_); }

    const Polynomial& scalar() const { return std::get<Polynomial>(v_); }
    const Multivector& multivector() const { return std::get<Multivector>(v_); }
    const Form& form() const { return std::get<Form>(v_); }

    int dim() const {
        if (is_scalar()) return scalar().dim();
        if (is_multivector()) return multivector().dim();
        return form().dim();
    }

    bool is_zero() const {
        if (is_scalar()) return scalar().is_zero();
        if (is_multivector()) return multivector().is_zero();
        return form().is_zero();
    }

    /// The value as a multivector, wrapping scalars in degree 0.
    Multivector as_multivector() const {
        if (is_multivector()) return multivector();
        if (is_scalar()) return scalar().is_zero() ? Multivector::zero(dim(), 0)
                                                   : Multivector::scalar(scalar());
        if (form().is_zero()) return Multivector::zero(dim(), 0);
        if (form().degree() == 0) return Multivector::scalar(form().scalar_part());
        throw Error("expected a multivector, got a form");
    }

    /// The value as a form, wrapping scalars in degree 0.
    Form as_form() const {
        if (is_form()) return form();
        if (is_scalar()) return scalar().is_zero() ? Form::zero(dim(), 0)
                                                   : Form::scalar(scalar());
        if (multivector().is_zero()) return Form::zero(dim(), 0);
        if (multivector().degree() == 0) return Form::scalar(multivector().scalar_part());
        throw Error("expected a form, got a multivector");
    }

    std::string to_string() const {
        if (is_scalar()) return scalar().to_string();
        if (is_multivector()) return multivector().to_string();
        return form().to_string();
    }

    /// Equality up to the identifications a canonical printer cannot see:
    /// zeros of every degree coincide, and degree-0 wrapped values equal
    /// their polynomial content.
    friend bool semantic_equal(const Value& a, const Value& b) {
        if (a.dim() != b.dim()) return false;
        if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
        auto deg = [](const Value& x) {
            return x.is_scalar() ? 0 : (x.is_multivector() ? x.multivector().degree() : x.form().degree());
        };
        if (deg(a) == 0 && deg(b) == 0) {
            auto poly = [](const Value& x) {
                return x.is_scalar() ? x.scalar()
                                     : (x.is_multivector() ? x.multivector().scalar_part()
                                                           : x.form().scalar_part());
            };
            return poly(a) == poly(b);
        }
        if (a.is_multivector() && b.is_multivector()) return a.multivector() == b.multivector();
        if (a.is_form() && b.is_form()) return a.form() == b.form();
        return false;
    }

private:
    std::variant<Polynomial, Multivector, Form> v_;
};

inline std::string print_canonical(const Value& v) { return v.to_string(); }

namespace detail {

// Recursive-descent evaluator for the expression grammar
//   expr  := sum ; sum := prod (('+'|'-') prod)* ; prod := wedge ('*' wedge)* ;
//   wedge := unary ('^' unary)* ; unary := '-' unary | atom ;
//   atom  := RATIONAL | 'x'INT | 'e'INT | 'dx'INT | atom '**' INT | '(' expr ')'
// Values are evaluated on the fly; positions are 1-based character offsets.
class ExpressionParser {
public:
    ExpressionParser(std::string_view text, int dim) : text_(text), dim_(dim) {
        if (dim < 1) throw DimensionError("chart dimension must be positive");
    }

    Value parse() {
        skip_space();
        if (at_end()) throw ParseError(pos() + 1, "empty expression");
        Value v = parse_sum();
        skip_space();
        if (!at_end()) throw ParseError(pos() + 1, "unexpected trailing input");
        return v;
    }

private:
    std::size_t pos() const { return i_; }
    bool at_end() const { return i_ >= text_.size(); }
    char peek() const { return text_[i_]; }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++i_;
    }

    bool consume(char c) {
        skip_space();
        if (!at_end() && peek() == c) {
            ++i_;
            return true;
        }
        return false;
    }

    // '**' without consuming a lone '*'
    bool consume_power() {
        skip_space();
        if (i_ + 1 < text_.size() && text_[i_] == '*' && text_[i_ + 1] == '*') {
            i_ += 2;
            return true;
        }
        return false;
    }

    bool consume_star() {
        skip_space();
        if (!at_end() && peek() == '*' && !(i_ + 1 < text_.size() && text_[i_ + 1] == '*')) {
            ++i_;
            return true;
        }
        return false;
    }

    Integer read_integer() {
        skip_space();
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError(pos() + 1, "expected an integer");
        std::string digits;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) digits += text_[i_++];
        return Integer(digits);
    }

    int read_index(const char* what) {
        const std::size_t at = pos() + 1;
        if (at_end() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError(at, std::string("expected an index after '") + what + "'");
        Integer idx = read_integer();
        if (idx < 1 || idx > dim_)
            throw ParseError(at, std::string(what) + idx.str() + " is out of range for dimension " +
                                     std::to_string(dim_));
        return static_cast<int>(idx);
    }

    Value parse_sum() {
        Value v = parse_prod();
        for (;;) {
            skip_space();
            const std::size_t at = pos() + 1;
            if (consume('+')) {
                v = apply_add(std::move(v), parse_prod(), at, false);
            } else if (consume('-')) {
                v = apply_add(std::move(v), parse_prod(), at, true);
            } else {
                return v;
            }
        }
    }

    Value parse_prod() {
        Value v = parse_wedge();
        for (;;) {
            skip_space();
            const std::size_t at = pos() + 1;
            if (!consume_star()) return v;
            v = apply_mul(std::move(v), parse_wedge(), at);
        }
    }

    Value parse_wedge() {
        Value v = parse_unary();
        for (;;) {
            skip_space();
            const std::size_t at = pos() + 1;
            if (!consume('^')) return v;
            v = apply_wedge(std::move(v), parse_unary(), at);
        }
    }

    Value parse_unary() {
        skip_space();
        if (consume('-')) return negate(parse_unary());
        return parse_atom();
    }

    Value parse_atom() {
        skip_space();
        const std::size_t at = pos() + 1;
        if (at_end()) throw ParseError(at, "expected an expression");
        Value v = [&]() -> Value {
            const char c = peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                Integer num = read_integer();
                if (consume('/')) {
                    const std::size_t den_at = pos() + 1;
                    Integer den = read_integer();
                    if (den == 0) throw ParseError(den_at, "zero denominator");
                    return Value(Polynomial::constant(dim_, Rational(num, den)));
                }
                return Value(Polynomial::constant(dim_, Rational(num)));
            }
            if (c == '(') {
                ++i_;
                Value inner = parse_sum();
                if (!consume(')')) throw ParseError(pos() + 1, "expected ')'");
                return inner;
            }
            if (c == 'x') {
                ++i_;
                return Value(Polynomial::variable(dim_, read_index("x")));
            }
            if (c == 'e') {
                ++i_;
                return Value(Multivector::basis(dim_, {read_index("e")}));
            }
            if (c == 'd') {
                ++i_;
                if (at_end() || peek() != 'x') throw ParseError(pos() + 1, "expected 'dx'");
                ++i_;
                return Value(Form::basis(dim_, {read_index("dx")}));
            }
            throw ParseError(at, std::string("unexpected character '") + c + "'");
        }();
        while (true) {
            skip_space();
            const std::size_t pow_at = pos() + 1;
            if (!consume_power()) break;
            if (!v.is_scalar())
                throw TypeError(pow_at, "'**' applies only to scalar expressions");
            Integer e = read_integer();
            if (e > 65536) throw ParseError(pow_at, "exponent too large");
            v = Value(v.scalar().pow(static_cast<unsigned>(e)));
        }
        return v;
    }

    static Value negate(Value v) {
        if (v.is_scalar()) return Value(-v.scalar());
        if (v.is_multivector()) return Value(-v.multivector());
        return Value(-v.form());
    }

    Value apply_add(Value a, Value b, std::size_t at, bool subtract) {
        if (subtract) b = negate(std::move(b));
        if (a.is_zero()) return b;
        if (b.is_zero()) return a;
        if (a.is_scalar() && b.is_scalar()) return Value(a.scalar() + b.scalar());
        if (a.is_multivector() && b.is_multivector()) {
            if (a.multivector().degree() != b.multivector().degree())
                throw TypeError(at, "cannot add multivectors of different degree");
            return Value(a.multivector() + b.multivector());
        }
        if (a.is_form() && b.is_form()) {
            if (a.form().degree() != b.form().degree())
                throw TypeError(at, "cannot add forms of different degree");
            return Value(a.form() + b.form());
        }
        throw TypeError(at, "cannot add values of different kinds");
    }

    Value apply_mul(Value a, Value b, std::size_t at) {
        if (a.is_scalar() && b.is_scalar()) return Value(a.scalar() * b.scalar());
        if (a.is_scalar()) {
            if (b.is_multivector()) return Value(a.scalar() * b.multivector());
            return Value(a.scalar() * b.form());
        }
        if (b.is_scalar()) {
            if (a.is_multivector()) return Value(b.scalar() * a.multivector());
            return Value(b.scalar() * a.form());
        }
        throw TypeError(at, "'*' requires a scalar operand; use '^' for wedge products");
    }

    Value apply_wedge(Value a, Value b, std::size_t at) {
        // scalars promote to degree 0 of the other operand's variance
        if (a.is_scalar() && b.is_scalar()) return Value(a.scalar() * b.scalar());
        if (a.is_scalar() || b.is_scalar()) return apply_mul(std::move(a), std::move(b), at);
        if (a.is_multivector() && b.is_multivector())
            return Value(wedge(a.multivector(), b.multivector()));
        if (a.is_form() && b.is_form()) return Value(wedge(a.form(), b.form()));
        throw TypeError(at, "cannot wedge a multivector with a form");
    }

    std::string_view text_;
    int dim_;
    std::size_t i_ = 0;
};

}  // namespace detail

/// Parses an expression over chart dimension `dim`. Throws ParseError with a
/// 1-based position on syntax errors and TypeError on variance or degree
/// mixes; every input either parses or throws one of those.
inline Value parse(std::string_view text, int dim) {
    return detail::ExpressionParser(text, dim).parse();
}

inline Polynomial parse_polynomial(std::string_view text, int dim) {
    Value v = parse(text, dim);
    if (!v.is_scalar()) throw TypeError(1, "expected a scalar expression");
    return v.scalar();
}

inline Multivector parse_multivector(std::string_view text, int dim) {
    return parse(text, dim).as_multivector();
}

inline Form parse_form(std::string_view text, int dim) {
    return parse(text, dim).as_form();
}

}  // namespace sn
