#pragma once

#include <sn/generators.hpp>
#include <sn/parser.hpp>
#include <sn/poisson.hpp>

#include <algorithm>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace sn {

/// Configuration of the seeded identity suites. Zero values for the degree
/// knobs mean "use the chart dimension". Identical configurations produce
/// identical reports; streams are split per (identity, dim, trial).
struct SuiteConfig {
    std::vector<int> dims{1, 2, 3, 4};
    int max_multivector_degree = 0;  // 0 -> dim
    int coeff_degree = 3;
    int form_degree = 0;  // 0 -> dim
    int trials = 100;
    std::uint64_t seed = 0;
    std::vector<std::string> suites{"exterior", "cartan",     "schouten",   "poisson",
                                    "naturality", "flow",     "conventions"};
};

/// Prefactor rules used by the graded Jacobi and Leibniz identities. The
/// defaults are the ones that hold; the alternates exist so the suite can
/// demonstrate, on recorded counterexamples, that they fail.
struct SignRules {
    JacobiSign jacobi = JacobiSign::shifted_both;
    LeibnizSign leibniz = LeibnizSign::shifted_left;
};

struct IdentityOutcome {
    std::string name;
    long passed = 0;
    long failed = 0;
    std::string counterexample;  // first failure, canonical text
};

struct SuiteReport {
    std::vector<IdentityOutcome> identities;
    bool vacuous = false;  // trials == 0

    bool all_passed() const {
        return std::all_of(identities.begin(), identities.end(),
                           [](const IdentityOutcome& o) { return o.failed == 0; });
    }

    std::string to_text() const {
        std::ostringstream out;
        if (vacuous) out << "warning: trials=0, randomized identities pass vacuously\n";
        long passed = 0, failed = 0;
        for (const auto& o : identities) {
            out << (o.failed == 0 ? "PASS " : "FAIL ") << o.name << " (" << o.passed + o.failed
                << " checks";
            if (o.failed != 0) out << ", " << o.failed << " failed";
            out << ")\n";
            if (o.failed != 0) out << "  counterexample: " << o.counterexample << "\n";
            o.failed == 0 ? ++passed : ++failed;
        }
        out << "identities: " << passed << " passed, " << failed << " failed\n";
        return out.str();
    }
};

namespace detail {

inline std::string quoted(const std::string& s) { return "\"" + s + "\""; }

template <typename T>
std::string named(const char* name, const T& value) {
    return std::string(" ") + name + "=" + quoted(value.to_string());
}

// Recorded counterexamples refuting the alternate prefactor exponents. Under
// the correct rules both identities hold on these inputs; under the
// alternate Jacobi exponent u(v-1) resp. the alternate Leibniz exponent
// (u-1)(v-1) they fail.
struct RecordedCounterexamples {
    static constexpr int jacobi_dim = 2;
    static constexpr const char* jacobi_u = "x1*e1";
    static constexpr const char* jacobi_v = "x1*e1^e2";
    static constexpr const char* jacobi_w = "e1";

    static constexpr int leibniz_dim = 3;
    static constexpr const char* leibniz_u = "x1*e1^e2";
    static constexpr const char* leibniz_v = "e2";
    static constexpr const char* leibniz_w = "x2*e3";
};

class SuiteContext {
public:
    SuiteContext(const SuiteConfig& cfg, const SignRules& rules, SuiteReport& report)
        : cfg_(cfg), rules_(rules), report_(report) {}

    const SuiteConfig& cfg() const { return cfg_; }
    const SignRules& rules() const { return rules_; }

    int max_degree(int dim) const {
        const int m = cfg_.max_multivector_degree;
        return m > 0 ? std::min(m, dim) : dim;
    }

    TestScope scope(int dim) const {
        const int f = cfg_.form_degree;
        return TestScope{dim,        max_degree(dim), cfg_.coeff_degree,
                         f > 0 ? std::min(f, dim) : dim, cfg_.trials, cfg_.seed};
    }

    // Randomized identity: one stream per (name, dim, trial), dims capped.
    template <typename Fn>
    void identity(const std::string& name, int dim_cap, Fn&& fn) {
        IdentityOutcome out{name, 0, 0, {}};
        for (int dim : cfg_.dims) {
            if (dim > dim_cap) continue;
            for (int t = 0; t < cfg_.trials; ++t) {
                Rng rng = Rng::derive(cfg_.seed, name, static_cast<std::uint64_t>(dim),
                                      static_cast<std::uint64_t>(t));
                record(out, dim, t, fn(rng, dim, t));
            }
        }
        report_.identities.push_back(std::move(out));
    }

    // Deterministic identity, evaluated once per configured dim.
    template <typename Fn>
    void fixed_identity_per_dim(const std::string& name, int dim_cap, Fn&& fn) {
        IdentityOutcome out{name, 0, 0, {}};
        for (int dim : cfg_.dims) {
            if (dim > dim_cap) continue;
            record(out, dim, 0, fn(dim));
        }
        report_.identities.push_back(std::move(out));
    }

    // Deterministic identity with its own fixed inputs, evaluated once.
    template <typename Fn>
    void fixed_identity(const std::string& name, Fn&& fn) {
        IdentityOutcome out{name, 0, 0, {}};
        std::optional<std::string> failure = fn();
        if (failure) {
            out.failed = 1;
            out.counterexample = *failure;
        } else {
            out.passed = 1;
        }
        report_.identities.push_back(std::move(out));
    }

private:
    void record(IdentityOutcome& out, int dim, int trial, std::optional<std::string> failure) {
        if (failure) {
            if (out.failed == 0)
                out.counterexample = "dim=" + std::to_string(dim) +
                                     " trial=" + std::to_string(trial) + *failure;
            ++out.failed;
        } else {
            ++out.passed;
        }
    }

    const SuiteConfig& cfg_;
    const SignRules& rules_;
    SuiteReport& report_;
};

// ---- exterior suite ----

// Literal insertion of U into a decomposable form: the normalized sum over
// the full symmetric group,
//   i(U)(p1^...^pk) = 1/(u! l!) sum_s sign(s) <p_{s(1)}^..^p_{s(u)}, U>
//                                  p_{s(u+1)} ^ ... ^ p_{s(k)}.
// This is the brute-force reference the shuffle implementation is checked
// against; it is built from wedge and pair only.
inline Form permutation_insert_oracle(const Multivector& u, const std::vector<Form>& ones) {
    const int dim = u.dim();
    const int k = static_cast<int>(ones.size());
    const int deg = u.degree();
    const int rest = k - deg;
    if (rest < 0) return Form::zero(dim, 0);
    Form acc(dim, rest);
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        int inversions = 0;
        for (std::size_t i = 0; i < perm.size(); ++i)
            for (std::size_t j = i + 1; j < perm.size(); ++j)
                if (perm[i] > perm[j]) ++inversions;
        Form head = Form::scalar(Polynomial::constant(dim, Rational(1)));
        for (int i = 0; i < deg; ++i) head = wedge(head, ones[static_cast<std::size_t>(perm[i])]);
        Polynomial scalar = pair(head, u);
        if (scalar.is_zero()) continue;
        Form tail = Form::scalar(Polynomial::constant(dim, Rational(1)));
        for (int i = deg; i < k; ++i) tail = wedge(tail, ones[static_cast<std::size_t>(perm[i])]);
        Form contribution = scalar * tail;
        acc += parity_sign(inversions) < 0 ? -contribution : contribution;
    } while (std::next_permutation(perm.begin(), perm.end()));
    Rational factorials(1);
    for (int i = 2; i <= deg; ++i) factorials *= i;
    for (int i = 2; i <= rest; ++i) factorials *= i;
    return Rational(Rational(1) / factorials) * acc;
}

inline std::optional<std::string> check_shuffle_vs_permutation(const Multivector& u,
                                                               const std::vector<Form>& ones) {
    Form product = Form::scalar(Polynomial::constant(u.dim(), Rational(1)));
    for (const auto& w : ones) product = wedge(product, w);
    const Form by_shuffles = insert_mv(u, product);
    const Form by_permutations = permutation_insert_oracle(u, ones);
    if (by_shuffles == by_permutations) return std::nullopt;
    std::string msg = named("U", u);
    for (std::size_t i = 0; i < ones.size(); ++i)
        msg += named(("phi" + std::to_string(i + 1)).c_str(), ones[i]);
    return msg;
}

inline void add_exterior_suite(SuiteContext& ctx) {
    ctx.identity("exterior/wedge_graded_commutativity", 4,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int maxdeg = ctx.max_degree(dim);
                     const int cu = ctx.cfg().coeff_degree;
                     const int du = rng.int_in(0, maxdeg), dv = rng.int_in(0, maxdeg);
                     const Multivector a = random_multivector(rng, dim, du, cu);
                     const Multivector b = random_multivector(rng, dim, dv, cu);
                     const int s = parity_sign(static_cast<long long>(du) * dv);
                     Multivector flipped = wedge(b, a);
                     if (s < 0) flipped = -flipped;
                     if (wedge(a, b) != flipped) return named("A", a) + named("B", b);
                     const Form fa = random_form(rng, dim, du, cu);
                     const Form fb = random_form(rng, dim, dv, cu);
                     Form fflipped = wedge(fb, fa);
                     if (s < 0) fflipped = -fflipped;
                     if (wedge(fa, fb) != fflipped) return named("A", fa) + named("B", fb);
                     return std::nullopt;
                 });

    ctx.identity("exterior/wedge_associativity", 4,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int maxdeg = ctx.max_degree(dim);
                     const int cu = ctx.cfg().coeff_degree;
                     const Multivector a = random_multivector(rng, dim, rng.int_in(0, maxdeg), cu);
                     const Multivector b = random_multivector(rng, dim, rng.int_in(0, maxdeg), cu);
                     const Multivector c = random_multivector(rng, dim, rng.int_in(0, maxdeg), cu);
                     if (wedge(wedge(a, b), c) != wedge(a, wedge(b, c)))
                         return named("A", a) + named("B", b) + named("C", c);
                     return std::nullopt;
                 });

    ctx.identity("exterior/duality_adjunctions", 4,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const int du = rng.int_in(0, dim);
                     const int dv = rng.int_in(0, dim - du);
                     const Multivector u = random_multivector(rng, dim, du, cu);
                     const Multivector v = random_multivector(rng, dim, dv, cu);
                     const Form w = random_form(rng, dim, du + dv, cu);
                     if (pair(insert_mv(u, w), v) != pair(w, wedge(u, v)))
                         return named("U", u) + named("V", v) + named("w", w);
                     const int dw = rng.int_in(0, dim);
                     const int dsub = rng.int_in(0, dw);
                     const Multivector big = random_multivector(rng, dim, dw, cu);
                     const Form small = random_form(rng, dim, dsub, cu);
                     const Form rest = random_form(rng, dim, dw - dsub, cu);
                     if (pair(rest, insert_form(small, big)) != pair(wedge(small, rest), big))
                         return named("w", small) + named("phi", rest) + named("U", big);
                     // mismatched degrees pair to zero
                     if (du != dv && !pair(random_form(rng, dim, du, cu),
                                           random_multivector(rng, dim, dv, cu))
                                          .is_zero())
                         return std::string(" mismatched-degree pairing was nonzero");
                     return std::nullopt;
                 });

    ctx.identity("exterior/insertion_composition", 4,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const int du = rng.int_in(0, dim);
                     const int dv = rng.int_in(0, dim - du);
                     const Multivector u = random_multivector(rng, dim, du, cu);
                     const Multivector v = random_multivector(rng, dim, dv, cu);
                     const Form w = random_form(rng, dim, rng.int_in(0, dim), cu);
                     if (insert_mv(wedge(u, v), w) != insert_mv(v, insert_mv(u, w)))
                         return named("U", u) + named("V", v) + named("w", w);
                     return std::nullopt;
                 });

    ctx.identity("exterior/insertion_by_function", 4,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const Polynomial f = random_polynomial(rng, dim, cu, true);
                     const Form w = random_form(rng, dim, rng.int_in(0, dim), cu);
                     if (insert_mv(Multivector::scalar(f), w) != f * w)
                         return named("f", f) + named("w", w);
                     if (pair(Form::scalar(f), Multivector::scalar(f)) != f * f)
                         return named("f", f);
                     return std::nullopt;
                 });

    ctx.identity("exterior/insertion_derivation_degree1", 4,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const int du = rng.int_in(0, ctx.max_degree(dim));
                     const Multivector u = random_multivector(rng, dim, du, cu);
                     const Form w = random_form(rng, dim, 1, cu);
                     const Form psi = random_form(rng, dim, rng.int_in(0, dim), cu);
                     Form lhs = insert_mv(u, wedge(w, psi));
                     Form rhs = insert_mv(insert_form(w, u), psi);
                     Form tail = wedge(w, insert_mv(u, psi));
                     rhs += parity_sign(du) < 0 ? -tail : tail;
                     if (lhs != rhs) return named("U", u) + named("w", w) + named("psi", psi);
                     return std::nullopt;
                 });

    ctx.identity("exterior/shuffle_vs_permutation_oracle", 4,
                 [&](Rng& rng, int dim, int trial) -> std::optional<std::string> {
                     if (trial == 0) {
                         // exhaustive over basis data: every covector tuple
                         // (with repeats and orders) against every basis
                         // multivector of every fitting degree
                         for (int k = 0; k <= dim; ++k) {
                             std::vector<int> pick(static_cast<std::size_t>(k), 1);
                             for (;;) {
                                 std::vector<Form> ones;
                                 for (int index : pick) ones.push_back(Form::basis(dim, {index}));
                                 for (int u = 0; u <= k; ++u) {
                                     for (const auto& a : increasing_tuples(dim, u)) {
                                         auto failure = check_shuffle_vs_permutation(
                                             Multivector::basis(dim, a), ones);
                                         if (failure) return failure;
                                     }
                                 }
                                 int pos = k - 1;
                                 while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == dim) {
                                     pick[static_cast<std::size_t>(pos)] = 1;
                                     --pos;
                                 }
                                 if (pos < 0) break;
                                 ++pick[static_cast<std::size_t>(pos)];
                             }
                         }
                         return std::nullopt;
                     }
                     const int k = rng.int_in(0, dim);
                     const int du = rng.int_in(0, k);
                     std::vector<Form> ones;
                     for (int i = 0; i < k; ++i) ones.push_back(random_form(rng, dim, 1, 2));
                     return check_shuffle_vs_permutation(random_multivector(rng, dim, du, 2), ones);
                 });
}

// ---- cartan suite ----

inline void add_cartan_suite(SuiteContext& ctx) {
    constexpr int cap = 3;

    ctx.fixed_identity_per_dim("cartan/exterior_derivative_squares_to_zero", cap,
                               [&](int dim) -> std::optional<std::string> {
                                   const FormOperator d = FormOperator::exterior_derivative(dim);
                                   if (operator_equal(compose(d, d), FormOperator::zero(dim, 2),
                                                      ctx.scope(dim)))
                                       return std::nullopt;
                                   return std::string(" d(d(w)) != 0 on the spanning family");
                               });

    ctx.identity("cartan/insertion_commutator_vanishes", cap,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const Multivector u =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const Multivector v =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const FormOperator lhs = graded_commutator(FormOperator::insertion(u),
                                                                FormOperator::insertion(v));
                     if (operator_equal(lhs,
                                        FormOperator::zero(dim, -u.degree() - v.degree()),
                                        ctx.scope(dim)))
                         return std::nullopt;
                     return named("U", u) + named("V", v);
                 });

    ctx.identity("cartan/insertion_multiplication_commutator", cap,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const Multivector u =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const Form w = random_form(rng, dim, 1, cu);
                     const FormOperator lhs = graded_commutator(FormOperator::insertion(u),
                                                                FormOperator::left_multiplication(w));
                     const FormOperator rhs =
                         FormOperator::insertion_of_degree(insert_form(w, u), u.degree() - 1);
                     if (operator_equal(lhs, rhs, ctx.scope(dim))) return std::nullopt;
                     return named("U", u) + named("w", w);
                 });

    ctx.identity("cartan/lie_of_wedge", cap,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const int du = rng.int_in(0, ctx.max_degree(dim));
                     const int dv = rng.int_in(0, ctx.max_degree(dim));
                     const Multivector u = random_multivector(rng, dim, du, cu);
                     const Multivector v = random_multivector(rng, dim, dv, cu);
                     const FormOperator lhs = FormOperator::lie(wedge(u, v));
                     const FormOperator rhs =
                         compose(FormOperator::insertion(v), FormOperator::lie(u)) +
                         parity_sign(du) *
                             compose(FormOperator::lie(v), FormOperator::insertion(u));
                     if (operator_equal(lhs, rhs, ctx.scope(dim))) return std::nullopt;
                     return named("U", u) + named("V", v);
                 });

    ctx.identity("cartan/lie_of_decomposable", cap,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const int u = rng.int_in(1, std::max(1, ctx.max_degree(dim)));
                     std::vector<Multivector> fields;
                     Multivector product = Multivector::scalar(
                         Polynomial::constant(dim, Rational(1)));
                     for (int i = 0; i < u; ++i) {
                         fields.push_back(random_vector_field(rng, dim, cu));
                         product = wedge(product, fields.back());
                     }
                     const FormOperator lhs = FormOperator::lie(product);
                     FormOperator rhs = FormOperator::zero(dim, 1 - u);
                     for (int j = 0; j < u; ++j) {
                         FormOperator piece = FormOperator::lie(fields[static_cast<std::size_t>(j)]);
                         for (int i = j - 1; i >= 0; --i)
                             piece = compose(piece,
                                             FormOperator::insertion(
                                                 fields[static_cast<std::size_t>(i)]));
                         for (int i = j + 1; i < u; ++i)
                             piece = compose(FormOperator::insertion(
                                                 fields[static_cast<std::size_t>(i)]),
                                             piece);
                         rhs = rhs + parity_sign(j) * piece;
                     }
                     if (operator_equal(lhs, rhs, ctx.scope(dim))) return std::nullopt;
                     std::string msg;
                     for (std::size_t i = 0; i < fields.size(); ++i)
                         msg += named(("X" + std::to_string(i + 1)).c_str(), fields[i]);
                     return msg;
                 });

    ctx.identity("cartan/lie_of_function", cap,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const Polynomial f = random_polynomial(rng, dim, ctx.cfg().coeff_degree, true);
                     const FormOperator lhs = FormOperator::lie(Multivector::scalar(f));
                     const FormOperator rhs =
                         -FormOperator::left_multiplication(differential(f));
                     if (operator_equal(lhs, rhs, ctx.scope(dim))) return std::nullopt;
                     return named("f", f);
                 });

    ctx.identity("cartan/lie_commutes_with_d", cap,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const Multivector u =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const FormOperator lhs = graded_commutator(
                         FormOperator::lie(u), FormOperator::exterior_derivative(dim));
                     if (operator_equal(lhs, FormOperator::zero(dim, 2 - u.degree()),
                                        ctx.scope(dim)))
                         return std::nullopt;
                     return named("U", u);
                 });

    auto bracket_pair = [&](Rng& rng, int dim) {
        const int cu = ctx.cfg().coeff_degree;
        const Multivector u = random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
        const Multivector v = random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
        return std::make_pair(u, v);
    };

    ctx.identity("cartan/lie_insertion_commutator", cap,
                 [&, bracket_pair](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const auto [u, v] = bracket_pair(rng, dim);
                     const int s = parity_sign(static_cast<long long>(u.degree() - 1) *
                                               (v.degree() - 1));
                     const int bdeg = u.degree() + v.degree() - 1;
                     const FormOperator lhs =
                         graded_commutator(FormOperator::lie(u), FormOperator::insertion(v));
                     const FormOperator rhs = s * FormOperator::insertion_of_degree(
                                                      bracket(u, v, BracketMethod::both), bdeg);
                     const FormOperator rhs2 = -FormOperator::insertion_of_degree(
                         bracket(v, u, BracketMethod::both), bdeg);
                     if (operator_equal(lhs, rhs, ctx.scope(dim)) &&
                         operator_equal(lhs, rhs2, ctx.scope(dim)))
                         return std::nullopt;
                     return named("U", u) + named("V", v);
                 });

    ctx.identity("cartan/lie_lie_commutator", cap,
                 [&, bracket_pair](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const auto [u, v] = bracket_pair(rng, dim);
                     const int s = parity_sign(static_cast<long long>(u.degree() - 1) *
                                               (v.degree() - 1));
                     const FormOperator lhs =
                         graded_commutator(FormOperator::lie(u), FormOperator::lie(v));
                     const FormOperator rhs = s * FormOperator::lie_of_degree(
                                                      bracket(u, v, BracketMethod::both),
                                                      u.degree() + v.degree() - 1);
                     if (operator_equal(lhs, rhs, ctx.scope(dim))) return std::nullopt;
                     return named("U", u) + named("V", v);
                 });

    ctx.identity("cartan/insertion_of_bracket_formula", cap,
                 [&, bracket_pair](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const auto [u, v] = bracket_pair(rng, dim);
                     const int du = u.degree(), dv = v.degree();
                     const int s = parity_sign(static_cast<long long>(du - 1) * (dv - 1));
                     const FormOperator d = FormOperator::exterior_derivative(dim);
                     const FormOperator iu = FormOperator::insertion(u);
                     const FormOperator iv = FormOperator::insertion(v);
                     const FormOperator iuv = FormOperator::insertion(wedge(u, v));
                     const FormOperator lhs = FormOperator::insertion_of_degree(
                         bracket(u, v, BracketMethod::both), du + dv - 1);
                     const FormOperator rhs = -compose(iv, compose(d, iu)) +
                                              s * compose(iu, compose(d, iv)) +
                                              parity_sign(dv) * compose(d, iuv) +
                                              parity_sign(du) * compose(iuv, d);
                     if (operator_equal(lhs, rhs, ctx.scope(dim))) return std::nullopt;
                     return named("U", u) + named("V", v);
                 });

    ctx.identity("cartan/lie_of_exact_multiplication", cap,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const Multivector u =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const Polynomial f = random_polynomial(rng, dim, cu);
                     const Form df = differential(f);
                     const FormOperator lhs = graded_commutator(
                         FormOperator::lie(u), FormOperator::left_multiplication(df));
                     const FormOperator rhs =
                         -FormOperator::lie_of_degree(insert_form(df, u), u.degree() - 1);
                     if (operator_equal(lhs, rhs, ctx.scope(dim))) return std::nullopt;
                     return named("U", u) + named("f", f);
                 });

    ctx.identity("cartan/lie_diff_is_graded_commutator", cap,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const Multivector u =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const FormOperator direct = FormOperator::lie(u);
                     const FormOperator via_commutator = graded_commutator(
                         FormOperator::insertion(u), FormOperator::exterior_derivative(dim));
                     if (operator_equal(direct, via_commutator, ctx.scope(dim)))
                         return std::nullopt;
                     return named("U", u);
                 });
}

// ---- schouten suite ----

inline void add_schouten_suite(SuiteContext& ctx) {
    ctx.identity("schouten/cross_method_agreement", 4,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     for (int du = 0; du <= ctx.max_degree(dim); ++du) {
                         for (int dv = 0; dv <= ctx.max_degree(dim); ++dv) {
                             const Multivector u = random_multivector(rng, dim, du, cu);
                             const Multivector v = random_multivector(rng, dim, dv, cu);
                             if (bracket_direct(u, v) != bracket_tulczyjew(u, v))
                                 return " u=" + std::to_string(du) + " v=" + std::to_string(dv) +
                                        named("U", u) + named("V", v);
                         }
                     }
                     return std::nullopt;
                 });

    ctx.identity("schouten/graded_antisymmetry", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const Multivector u =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const Multivector v =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const int s = parity_sign(static_cast<long long>(u.degree() - 1) *
                                               (v.degree() - 1));
                     Multivector rhs = bracket_direct(v, u);
                     rhs = s < 0 ? rhs : -rhs;
                     if (bracket_direct(u, v) != rhs) return named("U", u) + named("V", v);
                     return std::nullopt;
                 });

    ctx.identity(
        "schouten/graded_jacobi", 3,
        [&](Rng& rng, int dim, int trial) -> std::optional<std::string> {
            using CE = RecordedCounterexamples;
            Multivector u = Multivector::zero(dim, 0), v = u, w = u;
            if (trial == 0 && dim == CE::jacobi_dim) {
                u = parse_multivector(CE::jacobi_u, dim);
                v = parse_multivector(CE::jacobi_v, dim);
                w = parse_multivector(CE::jacobi_w, dim);
            } else {
                const int cu = ctx.cfg().coeff_degree;
                u = random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                v = random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                w = random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
            }
            if (jacobi_residual(u, v, w, ctx.rules().jacobi).is_zero()) return std::nullopt;
            return named("U", u) + named("V", v) + named("W", w);
        });

    ctx.identity(
        "schouten/wedge_leibniz", 3,
        [&](Rng& rng, int dim, int trial) -> std::optional<std::string> {
            using CE = RecordedCounterexamples;
            Multivector u = Multivector::zero(dim, 0), v = u, w = u;
            if (trial == 0 && dim == CE::leibniz_dim) {
                u = parse_multivector(CE::leibniz_u, dim);
                v = parse_multivector(CE::leibniz_v, dim);
                w = parse_multivector(CE::leibniz_w, dim);
            } else {
                const int cu = ctx.cfg().coeff_degree;
                u = random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                v = random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                w = random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
            }
            if (leibniz_residual(u, v, w, ctx.rules().leibniz).is_zero()) return std::nullopt;
            return named("U", u) + named("V", v) + named("W", w);
        });

    ctx.fixed_identity("schouten/sign_variant_refutation", [&]() -> std::optional<std::string> {
        using CE = RecordedCounterexamples;
        const Multivector ju = parse_multivector(CE::jacobi_u, CE::jacobi_dim);
        const Multivector jv = parse_multivector(CE::jacobi_v, CE::jacobi_dim);
        const Multivector jw = parse_multivector(CE::jacobi_w, CE::jacobi_dim);
        if (!jacobi_residual(ju, jv, jw, JacobiSign::shifted_both).is_zero())
            return std::string(" graded Jacobi failed on the recorded inputs") + named("U", ju) +
                   named("V", jv) + named("W", jw);
        if (jacobi_residual(ju, jv, jw, JacobiSign::shifted_right).is_zero())
            return std::string(" alternate Jacobi exponent was not refuted") + named("U", ju) +
                   named("V", jv) + named("W", jw);
        const Multivector lu = parse_multivector(CE::leibniz_u, CE::leibniz_dim);
        const Multivector lv = parse_multivector(CE::leibniz_v, CE::leibniz_dim);
        const Multivector lw = parse_multivector(CE::leibniz_w, CE::leibniz_dim);
        if (!leibniz_residual(lu, lv, lw, LeibnizSign::shifted_left).is_zero())
            return std::string(" Leibniz rule failed on the recorded inputs") + named("U", lu) +
                   named("V", lv) + named("W", lw);
        if (leibniz_residual(lu, lv, lw, LeibnizSign::shifted_both).is_zero())
            return std::string(" alternate Leibniz exponent was not refuted") + named("U", lu) +
                   named("V", lv) + named("W", lw);
        return std::nullopt;
    });

    ctx.identity("schouten/differential_insertion_derivation", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const Polynomial f = random_polynomial(rng, dim, cu);
                     const Form df = differential(f);
                     const Multivector u =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const Multivector v =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const Multivector lhs = insert_form(df, bracket_direct(u, v));
                     Multivector rhs = bracket_direct(insert_form(df, u), v);
                     Multivector tail = bracket_direct(u, insert_form(df, v));
                     rhs += parity_sign(u.degree() - 1) < 0 ? -tail : tail;
                     if (lhs != rhs) return named("f", f) + named("U", u) + named("V", v);
                     return std::nullopt;
                 });

    ctx.identity("schouten/vector_field_bracket", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const Multivector x = random_vector_field(rng, dim, cu);
                     const Multivector y = random_vector_field(rng, dim, cu);
                     if (bracket(x, y, BracketMethod::both) != lie_bracket_vf(x, y))
                         return named("X", x) + named("Y", y);
                     return std::nullopt;
                 });

    ctx.identity("schouten/function_clauses", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const Polynomial f = random_polynomial(rng, dim, cu);
                     const Polynomial g = random_polynomial(rng, dim, cu);
                     const Multivector u =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const Multivector one =
                         Multivector::scalar(Polynomial::constant(dim, Rational(1)));
                     if (!bracket(one, u, BracketMethod::both).is_zero())
                         return std::string(" [1,U] != 0") + named("U", u);
                     const Multivector fs = Multivector::scalar(f);
                     if (bracket(fs, u, BracketMethod::both) != -insert_form(differential(f), u))
                         return named("f", f) + named("U", u);
                     if (!bracket(fs, Multivector::scalar(g), BracketMethod::both).is_zero())
                         return named("f", f) + named("g", g);
                     return std::nullopt;
                 });

    ctx.identity("schouten/lie_operator_check", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const Multivector u =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const Multivector v =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     if (lie_derivative_identity_check(u, v, ctx.scope(dim))) return std::nullopt;
                     return named("U", u) + named("V", v);
                 });
}

// ---- poisson suite ----

inline void add_poisson_suite(SuiteContext& ctx) {
    ctx.identity("poisson/triple_bracket_identity", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const PoissonCandidate p(random_multivector(rng, dim, 2, 2));
                     const Polynomial f = random_polynomial(rng, dim, 2);
                     const Polynomial g = random_polynomial(rng, dim, 2);
                     const Polynomial h = random_polynomial(rng, dim, 2);
                     if (triple_identity_check(p, f, g, h)) return std::nullopt;
                     return named("P", p.bivector) + named("f", f) + named("g", g) + named("h", h);
                 });

    ctx.identity("poisson/bracket_via_nested_brackets", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const PoissonCandidate p(random_multivector(rng, dim, 2, 2));
                     const Polynomial f = random_polynomial(rng, dim, 2);
                     const Polynomial g = random_polynomial(rng, dim, 2);
                     const Multivector nested =
                         function_bracket(g, function_bracket(f, p.bivector));
                     if (poisson_bracket(p, f, g) == nested.scalar_part()) return std::nullopt;
                     return named("P", p.bivector) + named("f", f) + named("g", g);
                 });

    ctx.identity(
        "poisson/criterion_equivalence", 3,
        [&](Rng& rng, int dim, int) -> std::optional<std::string> {
            const PoissonCandidate p(random_multivector(rng, dim, 2, 2));
            const Multivector square = schouten_square(p);
            if (square.is_zero()) {
                // no obstruction: the Jacobiator must vanish on coordinate
                // triples and sampled monomial triples
                for (const auto& idx : increasing_tuples(dim, 3)) {
                    const Polynomial j =
                        jacobiator(p, Polynomial::variable(dim, idx[0]),
                                   Polynomial::variable(dim, idx[1]),
                                   Polynomial::variable(dim, idx[2]));
                    if (!j.is_zero()) return named("P", p.bivector);
                }
                for (int k = 0; k < 5; ++k) {
                    const Polynomial f = Polynomial::monomial(
                        dim, random_monomial(rng, dim, ctx.cfg().coeff_degree), Rational(1));
                    const Polynomial g = Polynomial::monomial(
                        dim, random_monomial(rng, dim, ctx.cfg().coeff_degree), Rational(1));
                    const Polynomial h = Polynomial::monomial(
                        dim, random_monomial(rng, dim, ctx.cfg().coeff_degree), Rational(1));
                    if (!jacobiator(p, f, g, h).is_zero())
                        return named("P", p.bivector) + named("f", f) + named("g", g) +
                               named("h", h);
                }
            } else {
                // a nonzero component of [P,P] must show up as a nonzero
                // Jacobiator of the matching coordinate triple
                const auto& [idx, c] = *square.terms().begin();
                const Polynomial j = jacobiator(p, Polynomial::variable(dim, idx[0]),
                                                Polynomial::variable(dim, idx[1]),
                                                Polynomial::variable(dim, idx[2]));
                if (Rational(2) * j != c) return named("P", p.bivector);
            }
            return std::nullopt;
        });

    ctx.fixed_identity("poisson/known_structures", [&]() -> std::optional<std::string> {
        const TestScope scope{3, 3, 3, 3, 3, 0};
        {
            const PoissonCandidate canonical(parse_multivector("e1^e2", 2));
            if (!is_poisson(canonical, scope).poisson)
                return std::string(" canonical symplectic bivector not recognized");
        }
        {
            const PoissonCandidate so3(
                parse_multivector("x3*e1^e2 + x1*e2^e3 + x2*e3^e1", 3));
            if (!is_poisson(so3, scope).poisson)
                return std::string(" so(3) linear bivector not recognized");
        }
        for (const char* text : {"x1*e1^e2 + e2^e3", "x2*e1^e2 + e1^e3"}) {
            const PoissonCandidate p(parse_multivector(text, 3));
            if (!schouten_square(p).is_zero())
                return std::string(" stored zero square was nonzero for P=") + quoted(text);
        }
        {
            const PoissonCandidate bad(parse_multivector("x1*e1^e2 + e1^e3", 3));
            const Multivector expected = -(Rational(2) * parse_multivector("e1^e2^e3", 3));
            if (schouten_square(bad) != expected)
                return std::string(" stored nonzero square mismatch for the non-Poisson bivector");
            const PoissonReport report = is_poisson(bad, scope);
            if (report.poisson) return std::string(" non-Poisson bivector passed the criterion");
            const bool witnessed =
                std::any_of(report.jacobiator_samples.begin(), report.jacobiator_samples.end(),
                            [](const PoissonReport::Sample& s) { return !s.value.is_zero(); });
            if (!witnessed) return std::string(" non-Poisson bivector had no nonzero Jacobiator sample");
        }
        return std::nullopt;
    });
}

// ---- naturality suite ----

inline std::pair<PolyMap, PolyMap> random_chart_map(Rng& rng, int dim) {
    return rng.coin() ? random_linear_invertible(rng, dim) : random_shear(rng, dim);
}

inline void add_naturality_suite(SuiteContext& ctx) {
    ctx.identity("naturality/pullback_functoriality", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const auto [outer, outer_inv] = random_chart_map(rng, dim);
                     const auto [inner, inner_inv] = random_chart_map(rng, dim);
                     const Form w = random_form(rng, dim, rng.int_in(0, dim), 2);
                     if (pullback(compose(outer, inner), w) !=
                         pullback(inner, pullback(outer, w)))
                         return named("w", w);
                     return std::nullopt;
                 });

    ctx.identity("naturality/pullback_wedge_and_d", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const auto [phi, phi_inv] = random_chart_map(rng, dim);
                     const Form w = random_form(rng, dim, rng.int_in(0, dim), 2);
                     const Form psi = random_form(rng, dim, rng.int_in(0, dim), 2);
                     if (pullback(phi, wedge(w, psi)) != wedge(pullback(phi, w), pullback(phi, psi)))
                         return named("w", w) + named("psi", psi);
                     if (pullback(phi, ext_deriv(w)) != ext_deriv(pullback(phi, w)))
                         return named("w", w);
                     return std::nullopt;
                 });

    ctx.identity("naturality/pushforward_is_related", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const auto [phi, phi_inv] = random_chart_map(rng, dim);
                     const Multivector u =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), 2);
                     const Multivector pushed = pushforward_invertible(phi, phi_inv, u);
                     if (related(phi, u, pushed)) return std::nullopt;
                     return named("U", u);
                 });

    ctx.identity("naturality/relatedness_detects_mismatch", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const auto [phi, phi_inv] = random_chart_map(rng, dim);
                     const int deg = rng.int_in(0, ctx.max_degree(dim));
                     const Multivector u = random_multivector(rng, dim, deg, 2);
                     Multivector pushed = pushforward_invertible(phi, phi_inv, u);
                     Multivector bump(dim, deg);
                     const auto tuples = increasing_tuples(dim, deg);
                     bump.add_term(tuples[rng.below(tuples.size())],
                                   Polynomial::constant(dim, Rational(1)));
                     pushed += bump;
                     if (!related(phi, u, pushed)) return std::nullopt;
                     return named("U", u) + named("perturbed", pushed);
                 });

    ctx.identity("naturality/bracket_of_related_pairs", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const auto [phi, phi_inv] = random_chart_map(rng, dim);
                     const Multivector u1 =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), 2);
                     const Multivector u2 =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), 2);
                     const Multivector p1 = pushforward_invertible(phi, phi_inv, u1);
                     const Multivector p2 = pushforward_invertible(phi, phi_inv, u2);
                     if (naturality_check(phi, u1, u2, p1, p2)) return std::nullopt;
                     return named("U1", u1) + named("U2", u2);
                 });
}

// ---- flow suite ----

inline void add_flow_suite(SuiteContext& ctx) {
    ctx.identity("flow/lie_derivative_matches_bracket", 4,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const Multivector x = random_nilpotent_field(rng, dim);
                     const Multivector u =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)),
                                            ctx.cfg().coeff_degree);
                     if (flow_lie_derivative(x, u) == bracket(x, u, BracketMethod::both))
                         return std::nullopt;
                     return named("X", x) + named("U", u);
                 });

    ctx.identity("flow/time_zero_is_identity", 4,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const Multivector x = random_nilpotent_field(rng, dim);
                     if (flow_at_zero(make_flow(x)).is_identity()) return std::nullopt;
                     return named("X", x);
                 });

    ctx.identity("flow/flow_equation", 4,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const Multivector x = random_nilpotent_field(rng, dim);
                     if (flow_ode_holds(make_flow(x))) return std::nullopt;
                     return named("X", x);
                 });

    ctx.identity("flow/group_law", 4,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const Multivector x = random_nilpotent_field(rng, dim);
                     if (flow_group_law_holds(make_flow(x))) return std::nullopt;
                     return named("X", x);
                 });
}

// ---- conventions suite ----

inline void add_conventions_suite(SuiteContext& ctx) {
    ctx.identity("conventions/round_trip", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const int du = rng.int_in(0, ctx.max_degree(dim));
                     const int dv = rng.int_in(0, ctx.max_degree(dim));
                     const Multivector u = random_multivector(rng, dim, du, cu);
                     const Multivector v = random_multivector(rng, dim, dv, cu);
                     const Multivector b = bracket_direct(u, v);
                     for (BracketConvention conv :
                          {BracketConvention::tulczyjew, BracketConvention::lichnerowicz}) {
                         const Multivector there =
                             convert_convention(b, du, dv, BracketConvention::koszul, conv);
                         if (convert_convention(there, du, dv, conv, BracketConvention::koszul) !=
                             b)
                             return named("U", u) + named("V", v);
                     }
                     return std::nullopt;
                 });

    // The Tulczyjew scaling -(-1)^{(u-1)(v-1)} composed with graded
    // antisymmetry reverses the arguments: tulczyjew(U,V) = koszul(V,U).
    ctx.identity("conventions/tulczyjew_is_reversed_bracket", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const Multivector u =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const Multivector v =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     const Multivector lhs =
                         bracket(u, v, BracketMethod::direct, BracketConvention::tulczyjew);
                     const Multivector rhs =
                         bracket(v, u, BracketMethod::direct, BracketConvention::koszul);
                     if (lhs != rhs) return named("U", u) + named("V", v);
                     return std::nullopt;
                 });

    ctx.identity("conventions/lichnerowicz_scaling", 3,
                 [&](Rng& rng, int dim, int) -> std::optional<std::string> {
                     const int cu = ctx.cfg().coeff_degree;
                     const int du = rng.int_in(0, ctx.max_degree(dim));
                     const Multivector u = random_multivector(rng, dim, du, cu);
                     const Multivector v =
                         random_multivector(rng, dim, rng.int_in(0, ctx.max_degree(dim)), cu);
                     Multivector expected = bracket_direct(u, v);
                     if (parity_sign(du - 1) < 0) expected = -expected;
                     if (bracket(u, v, BracketMethod::direct, BracketConvention::lichnerowicz) !=
                         expected)
                         return named("U", u) + named("V", v);
                     return std::nullopt;
                 });
}

}  // namespace detail

/// Runs the selected identity suites; the report lists one line per named
/// identity with pass/fail counts and the first counterexample in canonical,
/// replayable text. Deterministic for a given configuration.
inline SuiteReport run_identity_suites(const SuiteConfig& cfg, const SignRules& rules = {}) {
    SuiteReport report;
    report.vacuous = cfg.trials == 0;
    detail::SuiteContext ctx(cfg, rules, report);
    for (const std::string& suite : cfg.suites) {
        if (suite == "exterior")
            detail::add_exterior_suite(ctx);
        else if (suite == "cartan")
            detail::add_cartan_suite(ctx);
        else if (suite == "schouten")
            detail::add_schouten_suite(ctx);
        else if (suite == "poisson")
            detail::add_poisson_suite(ctx);
        else if (suite == "naturality")
            detail::add_naturality_suite(ctx);
        else if (suite == "flow")
            detail::add_flow_suite(ctx);
        else if (suite == "conventions")
            detail::add_conventions_suite(ctx);
        else
            throw Error("unknown suite: " + suite);
    }
    return report;
}

}  // namespace sn
