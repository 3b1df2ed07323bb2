#pragma once

#include <random>
#include <string>
#include <vector>

#include "relchern/base_model.hpp"
#include "relchern/chow_poly.hpp"
#include "relchern/format.hpp"
#include "relchern/pushforward.hpp"

namespace relchern::testing {

using Rng = std::mt19937_64;

inline int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

/// Ring with divisor symbols L, M and Chern symbols c1..c_dim.
inline RingPtr test_ring(int dim, std::vector<std::string> divisors = {"L", "M"}) {
    return FormalBase(dim, std::move(divisors)).ring();
}

inline ChowPoly random_poly(Rng& rng, const RingPtr& ring, int max_terms = 5, int coeff = 4) {
    ChowPoly p(ring);
    const int terms = uniform(rng, 0, max_terms);
    for (int t = 0; t < terms; ++t) {
        std::vector<std::pair<std::string, std::uint32_t>> powers;
        for (const Symbol& s : ring->symbols()) {
            if (uniform(rng, 0, 2) == 0) powers.emplace_back(s.name, static_cast<std::uint32_t>(uniform(rng, 1, 2)));
        }
        int num = uniform(rng, -coeff, coeff);
        int den = uniform(rng, 1, 3);
        p += ChowPoly::monomial(ring, Rational(num, den), powers);
    }
    return p;
}

/// Random linear form in the degree-1 symbols with coefficients in [-range, range].
inline ChowPoly random_linear(Rng& rng, const RingPtr& ring, int range = 3) {
    ChowPoly p(ring);
    for (const Symbol& s : ring->symbols()) {
        if (s.degree == 1) p += scale(ChowPoly::generator(ring, s.name), Rational(uniform(rng, -range, range)));
    }
    return p;
}

/// Normalized bundle: one zero root plus random nonzero roots; sometimes repeats a root.
inline BundleSpec random_bundle(Rng& rng, const RingPtr& ring, int max_rank = 5) {
    const int rank = uniform(rng, 2, max_rank);
    // every linear form vanishes over a point
    if (ring->bound() == 0) return BundleSpec::make({{ChowPoly(ring), rank}});
    std::vector<BundleRoot> roots{{ChowPoly(ring), uniform(rng, 1, 2) == 1 ? 1 : uniform(rng, 1, rank - 1)}};
    int used = roots[0].multiplicity;
    while (used < rank) {
        ChowPoly r = random_linear(rng, ring);
        if (r.is_zero()) continue;
        const int mult = uniform(rng, 1, rank - used);
        roots.push_back({r, mult});
        used += mult;
    }
    return BundleSpec::make(std::move(roots));
}

inline ProjClass random_proj_class(Rng& rng, const BundleSpec& bundle, int max_terms = 3) {
    std::vector<ChowPoly> coeffs;
    const int len = bundle.base_dim() + bundle.rank();
    for (int j = 0; j < len; ++j) coeffs.push_back(random_poly(rng, bundle.ring(), max_terms));
    return ProjClass(bundle, std::move(coeffs));
}

inline ChowPoly sym(const RingPtr& ring, const std::string& name) { return ChowPoly::generator(ring, name); }
inline ChowPoly num(const RingPtr& ring, const Rational& q) { return ChowPoly::constant(ring, q); }

} // namespace relchern::testing

#ifdef DOCTEST_LIBRARY_INCLUDED
namespace doctest {
template <>
struct StringMaker<relchern::ChowPoly> {
    static String convert(const relchern::ChowPoly& p) { return relchern::render_text(p).c_str(); }
};
} // namespace doctest
#endif
