#include <sn/generators.hpp>
#include <sn/parser.hpp>
#include <sn/poisson.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace sn;

namespace {

PoissonCandidate PC(const std::string& text, int dim) {
    return PoissonCandidate(parse_multivector(text, dim));
}

Polynomial P(const std::string& text, int dim) { return parse_polynomial(text, dim); }

const char* so3 = "x3*e1^e2 + x1*e2^e3 + x2*e3^e1";

}  // namespace

TEST_CASE("Poisson bracket from a bivector", "[poisson]") {
    const PoissonCandidate canonical = PC("e1^e2", 2);
    REQUIRE(poisson_bracket(canonical, P("x1", 2), P("x2", 2)) == P("1", 2));

    const Polynomial f = P("x1**2*x2 - 3*x1", 2);
    REQUIRE(poisson_bracket(canonical, f, f).is_zero());

    REQUIRE(poisson_bracket(PC(so3, 3), P("x1", 3), P("x2", 3)) == P("x3", 3));
    REQUIRE_THROWS_AS(PoissonCandidate(parse_multivector("e1", 2)), DegreeError);
}

TEST_CASE("Jacobiator examples", "[poisson]") {
    const PoissonCandidate canonical = PC("e1^e2", 2);
    for (const char* f : {"x1", "x2", "x1*x2", "x1**2"})
        for (const char* g : {"x1", "x2", "x2**2"})
            for (const char* h : {"x1*x2", "x1 + x2"})
                REQUIRE(jacobiator(canonical, P(f, 2), P(g, 2), P(h, 2)).is_zero());

    REQUIRE(jacobiator(PC(so3, 3), P("x1", 3), P("x2", 3), P("x3", 3)).is_zero());

    // in dimension 2 every bivector is Poisson: 3-vectors vanish
    REQUIRE(jacobiator(PC("x1*e1^e2", 2), P("x1", 2), P("x2", 2), P("x1*x2", 2)).is_zero());
}

TEST_CASE("Schouten square of known bivectors", "[poisson]") {
    REQUIRE(schouten_square(PC("e1^e2", 2)).is_zero());
    REQUIRE(schouten_square(PC(so3, 3)).is_zero());

    // stored values, fixed by expanding the bracket by hand before the build
    REQUIRE(schouten_square(PC("x1*e1^e2 + e2^e3", 3)).is_zero());
    REQUIRE(schouten_square(PC("x2*e1^e2 + e1^e3", 3)).is_zero());
    REQUIRE(schouten_square(PC("x1*e1^e2 + e1^e3", 3)) ==
            -(Rational(2) * parse_multivector("e1^e2^e3", 3)));
}

TEST_CASE("triple bracket identity holds for arbitrary bivectors", "[poisson]") {
    REQUIRE(triple_identity_check(PC("e1^e2", 2), P("x1", 2), P("x2", 2), P("x1*x2", 2)));
    REQUIRE(triple_identity_check(PC(so3, 3), P("x1", 3), P("x2", 3), P("x3", 3)));

    // non-Poisson: both sides are nonzero and still agree
    const PoissonCandidate bad = PC("x1*e1^e2 + e1^e3", 3);
    REQUIRE(triple_identity_check(bad, P("x1", 3), P("x2", 3), P("x3", 3)));
    REQUIRE(jacobiator(bad, P("x1", 3), P("x2", 3), P("x3", 3)) == P("-1", 3));

    for (int dim : {2, 3}) {
        for (int trial = 0; trial < 40; ++trial) {
            Rng rng = Rng::derive(41, "poisson.triple", dim, trial);
            const PoissonCandidate p(random_multivector(rng, dim, 2, 2));
            REQUIRE(triple_identity_check(p, random_polynomial(rng, dim, 2),
                                          random_polynomial(rng, dim, 2),
                                          random_polynomial(rng, dim, 2)));
        }
    }
}

TEST_CASE("bracket of functions factors through nested Schouten brackets", "[poisson]") {
    for (int dim : {2, 3}) {
        for (int trial = 0; trial < 40; ++trial) {
            Rng rng = Rng::derive(42, "poisson.nested", dim, trial);
            const PoissonCandidate p(random_multivector(rng, dim, 2, 2));
            const Polynomial f = random_polynomial(rng, dim, 2);
            const Polynomial g = random_polynomial(rng, dim, 2);
            REQUIRE(poisson_bracket(p, f, g) ==
                    function_bracket(g, function_bracket(f, p.bivector)).scalar_part());
        }
    }
}

TEST_CASE("criterion reports", "[poisson]") {
    const TestScope scope{3, 3, 3, 3, 4, 0};

    const PoissonReport canonical = is_poisson(PC("e1^e2", 2), scope);
    REQUIRE(canonical.poisson);
    REQUIRE(canonical.schouten_square.is_zero());
    for (const auto& s : canonical.jacobiator_samples) REQUIRE(s.value.is_zero());

    const PoissonReport so3_report = is_poisson(PC(so3, 3), scope);
    REQUIRE(so3_report.poisson);
    for (const auto& s : so3_report.jacobiator_samples) REQUIRE(s.value.is_zero());

    // this one is Poisson even though it looks like a perturbation
    REQUIRE(is_poisson(PC("x2*e1^e2 + e1^e3", 3), scope).poisson);

    const PoissonReport bad = is_poisson(PC("x1*e1^e2 + e1^e3", 3), scope);
    REQUIRE_FALSE(bad.poisson);
    // the coordinate triple (first sample) witnesses the failure
    REQUIRE(bad.jacobiator_samples.front().value == P("-1", 3));
}

TEST_CASE("criterion equivalence on the monomial family", "[poisson]") {
    for (int dim : {2, 3}) {
        for (int trial = 0; trial < 25; ++trial) {
            Rng rng = Rng::derive(43, "poisson.equiv", dim, trial);
            const PoissonCandidate p(random_multivector(rng, dim, 2, 2));
            const Multivector square = schouten_square(p);
            if (square.is_zero()) {
                for (const auto& fm : monomials_up_to(dim, 2))
                    for (const auto& gm : monomials_up_to(dim, 2)) {
                        const Polynomial f = Polynomial::monomial(dim, fm, Rational(1));
                        const Polynomial g = Polynomial::monomial(dim, gm, Rational(1));
                        const auto coords = coordinate_triple(dim);
                        REQUIRE(jacobiator(p, f, g, coords[0]).is_zero());
                    }
            } else {
                const auto& [idx, c] = *square.terms().begin();
                const Polynomial j =
                    jacobiator(p, Polynomial::variable(dim, idx[0]),
                               Polynomial::variable(dim, idx[1]), Polynomial::variable(dim, idx[2]));
                REQUIRE(Rational(2) * j == c);
            }
        }
    }
}
