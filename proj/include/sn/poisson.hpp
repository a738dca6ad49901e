#pragma once

#include <sn/schouten.hpp>

#include <array>
#include <string>
#include <utility>
#include <vector>

namespace sn {

/// A bivector field considered as a Poisson-structure candidate.
struct PoissonCandidate {
    explicit PoissonCandidate(Multivector p) : bivector(std::move(p)) {
        if (bivector.degree() != 2) throw DegreeError("Poisson candidate must have degree 2");
    }
    Multivector bivector;
};

/// {f,g} = <P, df ^ dg>; bilinear and antisymmetric in (f, g).
inline Polynomial poisson_bracket(const PoissonCandidate& p, const Polynomial& f,
                                  const Polynomial& g) {
    if (f.dim() != p.bivector.dim() || g.dim() != p.bivector.dim())
        throw DimensionError("Poisson bracket arguments on different charts");
    return pair(wedge(differential(f), differential(g)), p.bivector);
}

/// Cyclic obstruction to the Jacobi identity:
/// {f,{g,h}} + {g,{h,f}} + {h,{f,g}}.
inline Polynomial jacobiator(const PoissonCandidate& p, const Polynomial& f, const Polynomial& g,
                             const Polynomial& h) {
    return poisson_bracket(p, f, poisson_bracket(p, g, h)) +
           poisson_bracket(p, g, poisson_bracket(p, h, f)) +
           poisson_bracket(p, h, poisson_bracket(p, f, g));
}

/// [P,P], computed by both bracket formulations (degree 3).
inline Multivector schouten_square(const PoissonCandidate& p) {
    return bracket(p.bivector, p.bivector, BracketMethod::both, BracketConvention::koszul);
}

/// Bracket of a function against a multivector, via the cross-checked
/// dispatch.
inline Multivector function_bracket(const Polynomial& f, const Multivector& u) {
    return bracket(Multivector::scalar(f), u, BracketMethod::both);
}

/// The identity behind the Poisson criterion, valid for every bivector P,
/// Poisson or not:
///   [h,[g,[f,[P,P]]]] = -2 ({f,{g,h}} + {g,{h,f}} + {h,{f,g}})
/// together with its pairing reformulation
///   <df ^ dg ^ dh, [P,P]> = -[h,[g,[f,[P,P]]]].
inline bool triple_identity_check(const PoissonCandidate& p, const Polynomial& f,
                                  const Polynomial& g, const Polynomial& h) {
    const Multivector square = schouten_square(p);
    const Multivector nested = function_bracket(h, function_bracket(g, function_bracket(f, square)));
    const Polynomial lhs = nested.scalar_part();
    const Polynomial rhs = Rational(-2) * jacobiator(p, f, g, h);
    if (lhs != rhs) return false;
    const Polynomial paired =
        pair(wedge(wedge(differential(f), differential(g)), differential(h)), square);
    return paired == -lhs;
}

struct PoissonReport {
    struct Sample {
        Polynomial f, g, h;
        Polynomial value;
    };

    Multivector schouten_square;
    bool poisson = false;
    std::vector<Sample> jacobiator_samples;  // first sample is the coordinate triple
};

/// Deterministic triple standing in for "the coordinates" on low-dimensional
/// charts: (x1, x2, x3) when dim >= 3, with products of x1, x2 filling in
/// below that.
inline std::array<Polynomial, 3> coordinate_triple(int dim) {
    const auto var = [dim](int i) { return Polynomial::variable(dim, i); };
    if (dim >= 3) return {var(1), var(2), var(3)};
    if (dim == 2) return {var(1), var(2), var(1) * var(2)};
    return {var(1), var(1) * var(1), var(1) * var(1) * var(1)};
}

}  // namespace sn

#include <sn/generators.hpp>

namespace sn {

/// Poisson criterion report: [P,P] exactly, the verdict ([P,P] = 0
/// identically), and Jacobiator values for the coordinate triple followed by
/// scope.trials seeded random triples.
inline PoissonReport is_poisson(const PoissonCandidate& p, const TestScope& scope) {
    const int dim = p.bivector.dim();
    PoissonReport r{schouten_square(p), false, {}};
    r.poisson = r.schouten_square.is_zero();
    const auto coords = coordinate_triple(dim);
    r.jacobiator_samples.push_back(
        {coords[0], coords[1], coords[2], jacobiator(p, coords[0], coords[1], coords[2])});
    for (int t = 0; t < scope.trials; ++t) {
        Rng rng = Rng::derive(scope.seed, "poisson.report", static_cast<std::uint64_t>(dim),
                              static_cast<std::uint64_t>(t));
        Polynomial f = random_polynomial(rng, dim, scope.coeff_degree);
        Polynomial g = random_polynomial(rng, dim, scope.coeff_degree);
        Polynomial h = random_polynomial(rng, dim, scope.coeff_degree);
        Polynomial value = jacobiator(p, f, g, h);
        r.jacobiator_samples.push_back(
            {std::move(f), std::move(g), std::move(h), std::move(value)});
    }
    return r;
}

}  // namespace sn
