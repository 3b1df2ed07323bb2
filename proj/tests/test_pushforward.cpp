#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "relchern/errors.hpp"
#include "relchern/fibration.hpp"
#include "support.hpp"

using namespace relchern;
using namespace relchern::testing;

namespace {

BundleSpec bundle_of(const RingPtr& r, std::initializer_list<std::pair<long, int>> roots) {
    std::vector<BundleRoot> out;
    for (auto [k, mult] : roots) out.push_back({scale(sym(r, "L"), Rational(k)), mult});
    return BundleSpec::make(std::move(out));
}

ProjClass h_power(const BundleSpec& b, int power, const ChowPoly& coeff) {
    std::vector<ChowPoly> coeffs(static_cast<std::size_t>(power + 1), ChowPoly(b.ring()));
    coeffs.back() = coeff;
    return ProjClass(b, std::move(coeffs));
}

// All exponent vectors of length m summing to j.
void compositions(int m, int j, std::vector<std::uint32_t>& cur, std::vector<std::vector<std::uint32_t>>& out) {
    if (static_cast<int>(cur.size()) == m - 1) {
        cur.push_back(static_cast<std::uint32_t>(j));
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int i = 0; i <= j; ++i) {
        cur.push_back(static_cast<std::uint32_t>(i));
        compositions(m, j - i, cur, out);
        cur.pop_back();
    }
}

ChowPoly complete_homogeneous(const RingPtr& aux, const std::vector<std::string>& xs, int j) {
    std::vector<std::vector<std::uint32_t>> exps;
    std::vector<std::uint32_t> cur;
    compositions(static_cast<int>(xs.size()), j, cur, exps);
    ChowPoly h(aux);
    for (const auto& e : exps) {
        std::vector<std::pair<std::string, std::uint32_t>> powers;
        for (std::size_t i = 0; i < xs.size(); ++i) powers.emplace_back(xs[i], e[i]);
        h += ChowPoly::monomial(aux, 1, powers);
    }
    return h;
}

std::vector<ChowPoly> x_power(const RingPtr& base, int power) {
    std::vector<ChowPoly> c(static_cast<std::size_t>(power + 1), ChowPoly(base));
    c.back() = num(base, 1);
    return c;
}

} // namespace

TEST_CASE("bundle validation") {
    auto r = test_ring(3, {"L"});
    const ChowPoly L = sym(r, "L");
    CHECK_THROWS_AS(BundleSpec::make({{num(r, 0), 1}}), DomainError);
    CHECK_THROWS_AS(BundleSpec::make({{num(r, 0), 1}, {L * L, 1}}), DomainError);
    CHECK_THROWS_AS(BundleSpec::make({{num(r, 0), 0}, {L, 2}}), DomainError);
    const BundleSpec b = BundleSpec::make({{num(r, 0), 1}, {L, 1}, {L, 1}});
    CHECK(b.rank() == 3);
    REQUIRE(b.nontrivial_roots().size() == 1);
    CHECK(b.nontrivial_roots()[0].multiplicity == 2);
}

TEST_CASE("normalize_twist examples") {
    auto r = test_ring(3, {"L"});
    const ChowPoly L = sym(r, "L");
    {
        const ChowPoly coeffs[] = {num(r, 0), num(r, 1)};
        auto [b, cls] = normalize_twist({{L, 1}, {scale(L, 2), 1}}, coeffs);
        CHECK(b.zero_multiplicity() == 1);
        REQUIRE(b.nontrivial_roots().size() == 1);
        CHECK(b.nontrivial_roots()[0].root == L);
        CHECK(cls.coeff(0) == -L);
        CHECK(cls.coeff(1) == num(r, 1));
    }
    {
        const BundleSpec w = bundle_of(r, {{0, 1}, {2, 1}, {3, 1}});
        const ChowPoly coeffs[] = {L, num(r, 3), L * L};
        auto [b, cls] = normalize_twist(w.roots(), coeffs);
        CHECK(b.roots().size() == 3);
        CHECK(b.total_chern() == w.total_chern());
        CHECK(cls.coeffs() == std::vector<ChowPoly>(std::begin(coeffs), std::end(coeffs)));
    }
    {
        const ChowPoly coeffs[] = {num(r, 1)};
        auto [b, cls] = normalize_twist({{-L, 1}, {L, 1}}, coeffs);
        CHECK(b.nontrivial_roots()[0].root == scale(L, 2));
        CHECK(cls.coeff(0) == num(r, 1));
        CHECK(cls.length() == 1);
    }
}

TEST_CASE("inverse_total_chern examples") {
    auto r3 = test_ring(3, {"L"});
    const ChowPoly L = sym(r3, "L");
    CHECK(inverse_total_chern(bundle_of(r3, {{0, 1}, {2, 1}, {3, 1}})) ==
          num(r3, 1) - scale(L, 5) + scale(L * L, 19) - scale(pow(L, 3), 65));
    auto r2 = test_ring(2, {"L"});
    const ChowPoly L2 = sym(r2, "L");
    CHECK(inverse_total_chern(bundle_of(r2, {{0, 1}, {1, 2}})) == num(r2, 1) - scale(L2, 2) + scale(L2 * L2, 3));
    CHECK(inverse_total_chern(bundle_of(r3, {{0, 4}})) == num(r3, 1));
}

TEST_CASE("pushforward_power examples") {
    auto r = test_ring(3, {"L"});
    const ChowPoly L = sym(r, "L");
    const BundleSpec b = bundle_of(r, {{0, 1}, {1, 2}});
    CHECK(pushforward_power(b, 0).is_zero());
    CHECK(pushforward_power(b, 1).is_zero());
    CHECK(pushforward_power(b, 2) == num(r, 1));
    CHECK(pushforward_power(b, 3) == scale(L, -2));
    CHECK(pushforward_closed_form(h_power(b, 3, num(r, 1))) == scale(L, -2));
}

TEST_CASE("pushforward_series examples") {
    auto r = test_ring(3, {"L", "M"});
    const ChowPoly L = sym(r, "L");
    const ChowPoly M = sym(r, "M");
    const BundleSpec b = BundleSpec::make({{num(r, 0), 1}, {L, 1}, {M + L, 1}});
    CHECK(pushforward_series(h_power(b, 2, num(r, 1))) == num(r, 1));
    CHECK(pushforward_series(h_power(b, 2, M)) == M);
    auto r1 = test_ring(3, {"L"});
    const BundleSpec b2 = bundle_of(r1, {{0, 1}, {2, 1}});
    CHECK(pushforward_series(h_power(b2, 2, num(r1, 1))) == scale(sym(r1, "L"), -2));
}

TEST_CASE("closed form examples") {
    auto r = test_ring(4, {"L"});
    const ChowPoly L = sym(r, "L");
    const BundleSpec w = bundle_of(r, {{0, 1}, {2, 1}, {3, 1}});
    CHECK(pushforward_closed_form(h_power(w, 2, num(r, 1))) == num(r, 1));
    const HypersurfaceSpec hyp = HypersurfaceSpec::make(3, scale(L, 6), w);
    const ChowPoly expected = expand_ratio(scale(L, 12), num(r, 1) + scale(L, 6));
    CHECK(pushforward_closed_form(alpha_class(hyp)) == expected);
    CHECK_THROWS_AS(pushforward_closed_form(h_power(BundleSpec::make({{L, 1}, {scale(L, 2), 1}}), 1, num(r, 1))),
                    DomainError);
}

TEST_CASE("divided difference examples") {
    auto base = test_ring(2, {"L"});
    std::vector<std::string> xs;
    auto aux = formal_ring(base, 2, xs);
    const auto p = x_power(base, 2);
    CHECK(divided_difference(p, xs, aux) == sym(aux, xs[0]) + sym(aux, xs[1]));
}

TEST_CASE("complete homogeneous identity and low-power vanishing, m <= 4, j <= 4") {
    auto base = test_ring(2, {"L"});
    for (int m = 1; m <= 4; ++m) {
        std::vector<std::string> xs;
        auto aux = formal_ring(base, m, xs);
        for (int j = 0; j <= 4; ++j) {
            CAPTURE(m);
            CAPTURE(j);
            CHECK(divided_difference(x_power(base, m + j - 1), xs, aux) == complete_homogeneous(aux, xs, j));
        }
        for (int p = 0; p <= m - 2; ++p) CHECK(divided_difference(x_power(base, p), xs, aux).is_zero());
    }
}

TEST_CASE("property: divided difference is symmetric") {
    Rng rng(21);
    auto base = test_ring(2);
    for (int trial = 0; trial < 30; ++trial) {
        const int m = uniform(rng, 1, 4);
        std::vector<std::string> xs;
        auto aux = formal_ring(base, m, xs);
        std::vector<ChowPoly> coeffs;
        for (int k = 0; k < uniform(rng, 1, 6); ++k) coeffs.push_back(random_poly(rng, base, 2));
        const ChowPoly ref = divided_difference(coeffs, xs, aux);
        std::vector<std::string> perm = xs;
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(divided_difference(coeffs, perm, aux) == ref);
    }
}

TEST_CASE("property: D factor at k = 0 is the identity") {
    std::vector<std::string> xs;
    auto aux = formal_ring(test_ring(2), 1, xs);
    const ChowPoly x = sym(aux, xs[0]);
    const ChowPoly g = x * x + sym(aux, "L");
    CHECK(apply_d_factor(g, xs[0], 0) == g);
    // (1/2) d^2/dx^2 (x^2 * x) = 3x
    CHECK(apply_d_factor(x, xs[0], 2) == scale(x, 3));
}

TEST_CASE("property: route equivalence on random bundles") {
    Rng rng(22);
    int repeated = 0;
    for (int trial = 0; trial < 150; ++trial) {
        auto r = test_ring(uniform(rng, 0, 4));
        const BundleSpec b = random_bundle(rng, r);
        for (const auto& root : b.roots()) repeated += root.multiplicity > 1;
        const ProjClass cls = random_proj_class(rng, b);
        CHECK(pushforward_closed_form(cls) == pushforward_series(cls));
    }
    CHECK(repeated > 20);
}

TEST_CASE("property: structural laws") {
    Rng rng(23);
    for (int trial = 0; trial < 40; ++trial) {
        const int dim = uniform(rng, 0, 4);
        auto r = test_ring(dim);
        const BundleSpec b = random_bundle(rng, r);
        const int n = b.fiber_dim();
        for (int j = 0; j < n; ++j) CHECK(pushforward_series(h_power(b, j, num(r, 1))).is_zero());
        CHECK(pushforward_series(h_power(b, n, num(r, 1))) == num(r, 1));

        // projection formula
        const ProjClass a = random_proj_class(rng, b);
        const ChowPoly beta = random_linear(rng, r);
        std::vector<ChowPoly> scaled;
        for (const auto& c : a.coeffs()) scaled.push_back(beta * c);
        CHECK(pushforward_series(ProjClass(b, scaled)) == beta * pushforward_series(a));

        // dimension law: codim c in P(E) -> codim c - n
        const int c = uniform(rng, 0, dim + n);
        std::vector<ChowPoly> homog;
        for (int k = 0; k <= c; ++k) homog.push_back(component(random_poly(rng, r, 4), std::min(c - k, dim)));
        for (int k = 0; k <= c; ++k) {
            if (c - k > dim) homog[static_cast<std::size_t>(k)] = ChowPoly(r);
        }
        const ChowPoly pushed = pushforward_series(ProjClass(b, homog));
        if (c < n) CHECK(pushed.is_zero());
        else CHECK((pushed.is_zero() || pushed.is_homogeneous(c - n)));
    }
}

TEST_CASE("property: twist invariance") {
    Rng rng(24);
    for (int trial = 0; trial < 40; ++trial) {
        auto r = test_ring(uniform(rng, 0, 4));
        const BundleSpec b = random_bundle(rng, r);
        const ChowPoly shift = random_linear(rng, r);
        std::vector<BundleRoot> shifted;
        for (const auto& root : b.roots()) shifted.push_back({root.root + shift, root.multiplicity});
        std::rotate(shifted.begin(), shifted.begin() + uniform(rng, 0, static_cast<int>(shifted.size()) - 1), shifted.end());
        const ProjClass cls = random_proj_class(rng, BundleSpec::make(shifted));
        const ChowPoly direct = pushforward_series(cls);
        auto [nb, ncls] = normalize_twist(shifted, cls.coeffs());
        CHECK(nb.is_normalized());
        CHECK(pushforward_series(ncls) == direct);
        CHECK(pushforward_closed_form(ncls) == direct);
    }
}
