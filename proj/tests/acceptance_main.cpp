// Acceptance suite: one line per criterion, exact (zero-tolerance) equality
// throughout. Exits nonzero if any criterion fails.

#include <sn/cli.hpp>
#include <sn/sn.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace sn;

namespace {

int failures = 0;

void report(int number, const std::string& label, bool ok, const std::string& detail) {
    std::cout << "[" << number << "] " << label << ": " << (ok ? "PASS" : "FAIL");
    if (!detail.empty()) std::cout << " (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++failures;
}

// 1. bracket_direct == bracket_tulczyjew on 100 seeded pairs per (dim, u, v),
//    dims 1..4, degrees 0..dim, in under 60 seconds.
void criterion_cross_method() {
    const auto start = std::chrono::steady_clock::now();
    long pairs = 0;
    bool ok = true;
    std::string detail;
    for (int dim = 1; dim <= 4 && ok; ++dim) {
        for (int du = 0; du <= dim && ok; ++du) {
            for (int dv = 0; dv <= dim && ok; ++dv) {
                for (int trial = 0; trial < 100; ++trial) {
                    Rng rng = Rng::derive(0, "acceptance.cross_method",
                                          static_cast<std::uint64_t>(dim),
                                          static_cast<std::uint64_t>(trial * 100 + du * 10 + dv));
                    const Multivector u = random_multivector(rng, dim, du, 3);
                    const Multivector v = random_multivector(rng, dim, dv, 3);
                    if (bracket_direct(u, v) != bracket_tulczyjew(u, v)) {
                        ok = false;
                        detail = "dim=" + std::to_string(dim) + " U=\"" + u.to_string() +
                                 "\" V=\"" + v.to_string() + "\"";
                        break;
                    }
                    ++pairs;
                }
            }
        }
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (ok && seconds >= 60.0) {
        ok = false;
        detail = "exceeded the 60 s budget";
    }
    if (ok) {
        std::ostringstream d;
        d << pairs << " pairs, " << static_cast<int>(seconds * 1000) << " ms";
        detail = d.str();
    }
    report(1, "cross-method bracket agreement", ok, detail);
}

// 2. graded antisymmetry, Jacobi (exponent (u-1)(v-1)), Leibniz (exponent
//    (u-1)v), 100 trials per dim <= 3; the recorded counterexamples must
//    defeat the alternate exponents.
void criterion_graded_axioms() {
    bool ok = true;
    std::string detail;
    for (int dim = 1; dim <= 3 && ok; ++dim) {
        for (int trial = 0; trial < 100 && ok; ++trial) {
            Rng rng = Rng::derive(0, "acceptance.axioms", static_cast<std::uint64_t>(dim),
                                  static_cast<std::uint64_t>(trial));
            const Multivector u = random_multivector(rng, dim, rng.int_in(0, dim), 3);
            const Multivector v = random_multivector(rng, dim, rng.int_in(0, dim), 3);
            const Multivector w = random_multivector(rng, dim, rng.int_in(0, dim), 3);
            const int s = parity_sign(static_cast<long long>(u.degree() - 1) *
                                      (v.degree() - 1));
            Multivector reversed = bracket_direct(v, u);
            if (s > 0) reversed = -reversed;
            if (bracket_direct(u, v) != reversed) {
                ok = false;
                detail = "antisymmetry failed";
            } else if (!jacobi_residual(u, v, w, JacobiSign::shifted_both).is_zero()) {
                ok = false;
                detail = "Jacobi failed";
            } else if (!leibniz_residual(u, v, w, LeibnizSign::shifted_left).is_zero()) {
                ok = false;
                detail = "Leibniz failed";
            }
        }
    }
    if (ok) {
        const Multivector ju = parse_multivector("x1*e1", 2);
        const Multivector jv = parse_multivector("x1*e1^e2", 2);
        const Multivector jw = parse_multivector("e1", 2);
        const Multivector lu = parse_multivector("x1*e1^e2", 3);
        const Multivector lv = parse_multivector("e2", 3);
        const Multivector lw = parse_multivector("x2*e3", 3);
        if (!jacobi_residual(ju, jv, jw, JacobiSign::shifted_both).is_zero() ||
            jacobi_residual(ju, jv, jw, JacobiSign::shifted_right).is_zero()) {
            ok = false;
            detail = "recorded Jacobi counterexample did not behave as stored";
        } else if (!leibniz_residual(lu, lv, lw, LeibnizSign::shifted_left).is_zero() ||
                   leibniz_residual(lu, lv, lw, LeibnizSign::shifted_both).is_zero()) {
            ok = false;
            detail = "recorded Leibniz counterexample did not behave as stored";
        } else {
            detail = "900 trials + recorded counterexamples refute the alternate exponents";
        }
    }
    report(2, "graded Lie axioms", ok, detail);
}

// 3. the Cartan operator identity suite at scope (formDegree = dim,
//    coeffDegree = 3), 100 trials, dims <= 3.
void criterion_cartan_suite() {
    SuiteConfig cfg;
    cfg.dims = {1, 2, 3};
    cfg.trials = 100;
    cfg.coeff_degree = 3;
    cfg.suites = {"exterior", "cartan"};
    const SuiteReport r = run_identity_suites(cfg);
    std::string detail;
    long checks = 0;
    for (const auto& o : r.identities) {
        checks += o.passed + o.failed;
        if (o.failed != 0 && detail.empty()) detail = o.name + ":" + o.counterexample;
    }
    if (r.all_passed()) detail = std::to_string(checks) + " operator checks";
    report(3, "Cartan calculus suite", r.all_passed(), detail);
}

// 4. duality adjunctions and the shuffle vs full-permutation reference on
//    all basis decomposables up to dim 4 plus random polynomial ones.
void criterion_duality() {
    bool ok = true;
    std::string detail;
    for (int dim = 1; dim <= 4 && ok; ++dim) {
        for (int trial = 0; trial < 100 && ok; ++trial) {
            Rng rng = Rng::derive(0, "acceptance.duality", static_cast<std::uint64_t>(dim),
                                  static_cast<std::uint64_t>(trial));
            const int du = rng.int_in(0, dim);
            const int dv = rng.int_in(0, dim - du);
            const Multivector u = random_multivector(rng, dim, du, 3);
            const Multivector v = random_multivector(rng, dim, dv, 3);
            const Form w = random_form(rng, dim, du + dv, 3);
            if (pair(insert_mv(u, w), v) != pair(w, wedge(u, v))) {
                ok = false;
                detail = "insertion adjunction failed";
            }
            const Form small = random_form(rng, dim, du, 3);
            const Form rest = random_form(rng, dim, dv, 3);
            const Multivector big = random_multivector(rng, dim, du + dv, 3);
            if (ok && pair(rest, insert_form(small, big)) != pair(wedge(small, rest), big)) {
                ok = false;
                detail = "dual insertion adjunction failed";
            }
        }
    }
    long decomposables = 0;
    for (int dim = 1; dim <= 4 && ok; ++dim) {
        for (int k = 0; k <= dim && ok; ++k) {
            std::vector<int> pick(static_cast<std::size_t>(k), 1);
            for (;;) {
                std::vector<Form> ones;
                for (int index : pick) ones.push_back(Form::basis(dim, {index}));
                for (int u = 0; u <= k && ok; ++u) {
                    for (const auto& a : increasing_tuples(dim, u)) {
                        if (sn::detail::check_shuffle_vs_permutation(Multivector::basis(dim, a),
                                                                     ones)) {
                            ok = false;
                            detail = "permutation reference mismatch on basis data";
                            break;
                        }
                        ++decomposables;
                    }
                }
                int pos = k - 1;
                while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == dim) {
                    pick[static_cast<std::size_t>(pos)] = 1;
                    --pos;
                }
                if (pos < 0 || !ok) break;
                ++pick[static_cast<std::size_t>(pos)];
            }
        }
        for (int trial = 0; trial < 50 && ok; ++trial) {
            Rng rng = Rng::derive(0, "acceptance.permutation", static_cast<std::uint64_t>(dim),
                                  static_cast<std::uint64_t>(trial));
            const int k = rng.int_in(0, dim);
            std::vector<Form> ones;
            for (int i = 0; i < k; ++i) ones.push_back(random_form(rng, dim, 1, 2));
            const Multivector u = random_multivector(rng, dim, rng.int_in(0, k), 2);
            if (sn::detail::check_shuffle_vs_permutation(u, ones)) {
                ok = false;
                detail = "permutation reference mismatch on random data";
            }
            ++decomposables;
        }
    }
    if (ok) detail = std::to_string(decomposables) + " decomposables checked";
    report(4, "duality suite", ok, detail);
}

// 5. Poisson criterion: canonical and so(3) bivectors verify, the stored
//    non-Poisson bivector is rejected with nonzero [P,P] and a nonzero
//    Jacobiator sample, and the triple identity passes on 100 random inputs.
void criterion_poisson() {
    bool ok = true;
    std::string detail;
    const TestScope scope{3, 3, 3, 3, 5, 0};
    try {
        const PoissonCandidate canonical(parse_multivector("e1^e2", 2));
        const PoissonReport canonical_report = is_poisson(canonical, scope);
        if (!canonical_report.poisson) {
            ok = false;
            detail = "canonical bivector rejected";
        }
        for (const auto& s : canonical_report.jacobiator_samples)
            if (!s.value.is_zero()) {
                ok = false;
                detail = "canonical bivector had a nonzero Jacobiator";
            }
        const auto monos = monomials_up_to(2, 3);
        for (std::size_t i = 0; i < monos.size() && ok; ++i)
            for (std::size_t j = 0; j < monos.size() && ok; ++j)
                for (std::size_t k = 0; k < monos.size() && ok; ++k) {
                    const Polynomial f = Polynomial::monomial(2, monos[i], Rational(1));
                    const Polynomial g = Polynomial::monomial(2, monos[j], Rational(1));
                    const Polynomial h = Polynomial::monomial(2, monos[k], Rational(1));
                    if (!jacobiator(canonical, f, g, h).is_zero()) {
                        ok = false;
                        detail = "canonical Jacobiator nonzero on the monomial family";
                    }
                }

        const PoissonCandidate so3(parse_multivector("x3*e1^e2 + x1*e2^e3 + x2*e3^e1", 3));
        if (ok && !is_poisson(so3, scope).poisson) {
            ok = false;
            detail = "so(3) bivector rejected";
        }
        const auto monos3 = monomials_up_to(3, 3);
        for (std::size_t i = 0; i < monos3.size() && ok; i += 3)
            for (std::size_t j = 1; j < monos3.size() && ok; j += 3)
                for (std::size_t k = 2; k < monos3.size() && ok; k += 3) {
                    const Polynomial f = Polynomial::monomial(3, monos3[i], Rational(1));
                    const Polynomial g = Polynomial::monomial(3, monos3[j], Rational(1));
                    const Polynomial h = Polynomial::monomial(3, monos3[k], Rational(1));
                    if (!jacobiator(so3, f, g, h).is_zero()) {
                        ok = false;
                        detail = "so(3) Jacobiator nonzero on the monomial family";
                    }
                }

        const PoissonCandidate bad(parse_multivector("x1*e1^e2 + e1^e3", 3));
        const PoissonReport bad_report = is_poisson(bad, scope);
        if (ok && bad_report.poisson) {
            ok = false;
            detail = "stored non-Poisson bivector accepted";
        }
        if (ok && bad_report.schouten_square !=
                      -(Rational(2) * parse_multivector("e1^e2^e3", 3))) {
            ok = false;
            detail = "stored golden square mismatch";
        }
        if (ok) {
            bool witnessed = false;
            for (const auto& s : bad_report.jacobiator_samples)
                if (!s.value.is_zero()) witnessed = true;
            if (!witnessed) {
                ok = false;
                detail = "no nonzero Jacobiator sample for the non-Poisson bivector";
            }
        }
        long triples = 0;
        for (int dim : {2, 3}) {
            for (int trial = 0; trial < 50 && ok; ++trial) {
                Rng rng = Rng::derive(0, "acceptance.poisson", static_cast<std::uint64_t>(dim),
                                      static_cast<std::uint64_t>(trial));
                const PoissonCandidate p(random_multivector(rng, dim, 2, 2));
                if (!triple_identity_check(p, random_polynomial(rng, dim, 2),
                                           random_polynomial(rng, dim, 2),
                                           random_polynomial(rng, dim, 2))) {
                    ok = false;
                    detail = "triple identity failed";
                }
                ++triples;
            }
        }
        if (ok)
            detail = "canonical + so(3) + stored non-Poisson, " + std::to_string(triples) +
                     " random triple-identity checks";
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    report(5, "Poisson criterion", ok, detail);
}

// 6. bracket naturality on 100 seeded (map, U1, U2) per dim <= 3 with the
//    maps drawn from linear-invertible and shear families.
void criterion_naturality() {
    bool ok = true;
    std::string detail;
    long checks = 0;
    for (int dim = 1; dim <= 3 && ok; ++dim) {
        for (int trial = 0; trial < 100 && ok; ++trial) {
            Rng rng = Rng::derive(0, "acceptance.naturality", static_cast<std::uint64_t>(dim),
                                  static_cast<std::uint64_t>(trial));
            const auto [phi, inv] =
                rng.coin() ? random_linear_invertible(rng, dim) : random_shear(rng, dim);
            const Multivector u1 = random_multivector(rng, dim, rng.int_in(0, dim), 2);
            const Multivector u2 = random_multivector(rng, dim, rng.int_in(0, dim), 2);
            if (!naturality_check(phi, u1, u2, pushforward_invertible(phi, inv, u1),
                                  pushforward_invertible(phi, inv, u2))) {
                ok = false;
                detail = "dim=" + std::to_string(dim) + " U1=\"" + u1.to_string() + "\" U2=\"" +
                         u2.to_string() + "\"";
            }
            ++checks;
        }
    }
    if (ok) detail = std::to_string(checks) + " related pairs";
    report(6, "bracket naturality", ok, detail);
}

// 7. the flow formula: transport along the exact flow equals the bracket,
//    100 seeded (X, U) per dim <= 4.
void criterion_flow() {
    bool ok = true;
    std::string detail;
    long checks = 0;
    for (int dim = 1; dim <= 4 && ok; ++dim) {
        for (int trial = 0; trial < 100 && ok; ++trial) {
            Rng rng = Rng::derive(0, "acceptance.flow", static_cast<std::uint64_t>(dim),
                                  static_cast<std::uint64_t>(trial));
            const Multivector x = random_nilpotent_field(rng, dim);
            const Multivector u = random_multivector(rng, dim, rng.int_in(0, dim), 3);
            if (flow_lie_derivative(x, u) != bracket(x, u, BracketMethod::both)) {
                ok = false;
                detail = "dim=" + std::to_string(dim) + " X=\"" + x.to_string() + "\" U=\"" +
                         u.to_string() + "\"";
            }
            ++checks;
        }
    }
    if (ok) detail = std::to_string(checks) + " flows";
    report(7, "flow formula", ok, detail);
}

// 8. convention adapters: conversions round-trip, and the Tulczyjew-scaled
//    bracket is the argument-reversed Koszul bracket.
void criterion_conventions() {
    bool ok = true;
    std::string detail;
    long checks = 0;
    for (int dim = 1; dim <= 3 && ok; ++dim) {
        for (int trial = 0; trial < 100 && ok; ++trial) {
            Rng rng = Rng::derive(0, "acceptance.conventions", static_cast<std::uint64_t>(dim),
                                  static_cast<std::uint64_t>(trial));
            const int du = rng.int_in(0, dim), dv = rng.int_in(0, dim);
            const Multivector u = random_multivector(rng, dim, du, 3);
            const Multivector v = random_multivector(rng, dim, dv, 3);
            const Multivector base = bracket_direct(u, v);
            for (BracketConvention conv :
                 {BracketConvention::tulczyjew, BracketConvention::lichnerowicz}) {
                const Multivector converted =
                    convert_convention(base, du, dv, BracketConvention::koszul, conv);
                if (convert_convention(converted, du, dv, conv, BracketConvention::koszul) !=
                    base) {
                    ok = false;
                    detail = "round trip failed";
                }
            }
            if (ok && bracket(u, v, BracketMethod::direct, BracketConvention::tulczyjew) !=
                          bracket(v, u, BracketMethod::direct, BracketConvention::koszul)) {
                ok = false;
                detail = "Tulczyjew scaling is not the reversed bracket";
            }
            ++checks;
        }
    }
    if (ok) detail = std::to_string(checks) + " conversions";
    report(8, "convention adapters", ok, detail);
}

// 9. CLI golden files byte-identical, plus the parser round trip on 1000
//    fuzzed values and a byte-determinism double run.
void criterion_cli_and_parser() {
    bool ok = true;
    std::string detail;

    const struct {
        const char* file;
        std::vector<std::string> args;
        int exit_code;
    } cases[] = {
        {"bracket_function_bivector.txt", {"bracket", "--dim", "2", "x1", "e1^e2"}, 0},
        {"bracket_constant_fields.txt", {"bracket", "--dim", "2", "e1", "e2"}, 0},
        {"bracket_convention_tulczyjew.txt",
         {"bracket", "--dim", "2", "--convention", "tulczyjew", "x2*e1", "e2"},
         0},
        {"bracket_json.txt", {"bracket", "--dim", "2", "--json", "x1", "e1^e2"}, 0},
        {"d_coordinate.txt", {"d", "--dim", "2", "x1*dx2"}, 0},
        {"pair_top.txt", {"pair", "--dim", "2", "dx1^dx2", "e1^e2"}, 0},
        {"lie_vector_field.txt", {"lie", "--dim", "2", "e1", "x1*dx2"}, 0},
        {"insert_basis.txt", {"insert", "--dim", "2", "e1", "dx1^dx2"}, 0},
        {"iota_basis.txt", {"iota", "--dim", "2", "dx1", "e1^e2"}, 0},
        {"wedge_basis.txt", {"wedge", "--dim", "2", "e1", "e2"}, 0},
        {"pullback_curve.txt",
         {"pullback", "--src", "1", "--dst", "2", "--map", "x1, x1**2", "dx2"},
         0},
        {"related_true.txt",
         {"related", "--src", "2", "--dst", "2", "--map", "2*x1, x2", "e1^e2", "2*e1^e2"},
         0},
        {"poisson_canonical.txt", {"poisson", "--dim", "2", "e1^e2"}, 0},
        {"poisson_so3.txt", {"poisson", "--dim", "3", "x3*e1^e2 + x1*e2^e3 + x2*e3^e1"}, 0},
        {"poisson_golden_nonpoisson.txt", {"poisson", "--dim", "3", "x1*e1^e2 + e1^e3"}, 1},
        {"poisson_json.txt", {"poisson", "--dim", "2", "--json", "--trials", "1", "e1^e2"}, 0},
    };
    int golden_count = 0;
    for (const auto& c : cases) {
        std::ifstream in(std::string(SN_GOLDEN_DIR) + "/" + c.file, std::ios::binary);
        std::ostringstream want;
        want << in.rdbuf();
        std::ostringstream out, err;
        const int code = run_cli(c.args, out, err);
        if (!in.good() || code != c.exit_code || out.str() != want.str()) {
            ok = false;
            detail = std::string("golden mismatch: ") + c.file;
            break;
        }
        ++golden_count;
    }

    long round_trips = 0;
    if (ok) {
        for (int dim : {1, 2, 3, 4}) {
            for (int trial = 0; trial < 250 && ok; ++trial) {
                Rng rng = Rng::derive(0, "acceptance.roundtrip", static_cast<std::uint64_t>(dim),
                                      static_cast<std::uint64_t>(trial));
                const int kind = rng.int_in(0, 2);
                const Value v = [&]() -> Value {
                    if (kind == 0) return Value(random_polynomial(rng, dim, 3, true));
                    if (kind == 1)
                        return Value(random_multivector(rng, dim, rng.int_in(0, dim + 1), 3));
                    return Value(random_form(rng, dim, rng.int_in(0, dim + 1), 3));
                }();
                if (!semantic_equal(v, parse(print_canonical(v), dim))) {
                    ok = false;
                    detail = "round trip failed on \"" + print_canonical(v) + "\"";
                }
                ++round_trips;
            }
        }
    }

    if (ok) {
        const std::vector<std::string> args = {"identities", "--dims",   "2", "--suites",
                                               "conventions", "--trials", "5"};
        std::ostringstream out1, out2, err1, err2;
        run_cli(args, out1, err1);
        run_cli(args, out2, err2);
        if (out1.str() != out2.str()) {
            ok = false;
            detail = "identities output is not deterministic";
        }
    }

    if (ok)
        detail = std::to_string(golden_count) + " golden files, " + std::to_string(round_trips) +
                 " round trips";
    report(9, "CLI golden files and parser round trip", ok, detail);
}

}  // namespace

int main() {
    criterion_cross_method();
    criterion_graded_axioms();
    criterion_cartan_suite();
    criterion_duality();
    criterion_poisson();
    criterion_naturality();
    criterion_flow();
    criterion_conventions();
    criterion_cli_and_parser();
    if (failures == 0) {
        std::cout << "acceptance: 9/9 criteria passed\n";
        return 0;
    }
    std::cout << "acceptance: " << (9 - failures) << "/9 criteria passed\n";
    return 1;
}
