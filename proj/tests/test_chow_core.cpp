#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "relchern/errors.hpp"
#include "relchern/pushforward.hpp"
#include "support.hpp"

using namespace relchern;
using namespace relchern::testing;

namespace {

RingPtr l_ring(int bound) { return Ring::make({{"L", 1, SymbolKind::Class}}, bound); }

ChowPoly poly_l(const RingPtr& r, std::initializer_list<long> coeffs) {
    ChowPoly p(r);
    std::uint32_t e = 0;
    for (long c : coeffs) {
        const std::pair<std::string, std::uint32_t> pw{"L", e++};
        p += ChowPoly::monomial(r, Rational(c), std::span(&pw, 1));
    }
    return p;
}

} // namespace

TEST_CASE("ring construction") {
    CHECK_THROWS_AS(Ring::make({{"L", 1}, {"L", 2}}, 3), SymbolError);
    CHECK_THROWS_AS(Ring::make({{"L", 0}}, 3), Error);
    auto r = Ring::make({{"c2", 2}, {"L", 1}, {"c1", 1}}, 2);
    REQUIRE(r->size() == 3);
    CHECK(r->symbol(0).name == "L");
    CHECK(r->symbol(1).name == "c1");
    CHECK(r->symbol(2).name == "c2");
}

TEST_CASE("add examples") {
    auto r2 = l_ring(2);
    const ChowPoly L = sym(r2, "L");
    CHECK((scale(L, 3) + scale(L, -3)).is_zero());
    CHECK(add(num(r2, 1) + scale(L, 2), L * L) == poly_l(r2, {1, 2, 1}));
    auto r1 = l_ring(1);
    CHECK(pow(sym(r1, "L"), 2).is_zero());
    CHECK((pow(sym(r1, "L"), 2) + pow(sym(r1, "L"), 2)).is_zero());
    CHECK_THROWS_AS(add(sym(r1, "L"), L), ContextError);
}

TEST_CASE("mul examples") {
    auto r3 = l_ring(3);
    CHECK(mul(poly_l(r3, {1, 1}), poly_l(r3, {1, -1})) == poly_l(r3, {1, 0, -1}));
    auto rh = Ring::make({{"L", 1}, {"h", 1}}, 2);
    const ChowPoly L = sym(rh, "L");
    const ChowPoly h = sym(rh, "h");
    CHECK(mul(scale(L, 2) + scale(h, 3), h) == scale(L * h, 2) + scale(h * h, 3));
    CHECK(mul(poly_l(r3, {1, 6}), poly_l(r3, {1, -6, 36, -216})) == num(r3, 1));
}

TEST_CASE("expand_ratio examples") {
    auto r3 = l_ring(3);
    CHECK(expand_ratio(num(r3, 1), poly_l(r3, {1, 6})) == poly_l(r3, {1, -6, 36, -216}));
    CHECK(expand_ratio(poly_l(r3, {0, 12}), poly_l(r3, {1, 6})) == poly_l(r3, {0, 12, -72, 432}));
    auto r2 = l_ring(2);
    CHECK(expand_ratio(num(r2, 1), pow(poly_l(r2, {1, 1}), 2)) == poly_l(r2, {1, -2, 3}));
    CHECK_THROWS_AS(expand_ratio(num(r2, 1), poly_l(r2, {2, 1})), NonUnitError);
    CHECK_THROWS_AS(expand_ratio(num(r2, 1), poly_l(r2, {0, 1})), NonUnitError);
}

TEST_CASE("partial derivative examples") {
    std::vector<std::string> names;
    auto aux = formal_ring(l_ring(3), 1, names);
    const ChowPoly x = sym(aux, names[0]);
    const ChowPoly L = sym(aux, "L");
    CHECK(partial_derivative(pow(x, 3), names[0]) == scale(x * x, 3));
    CHECK(partial_derivative(L * x * x + x, names[0]) == scale(L * x, 2) + num(aux, 1));
    CHECK(scale(partial_derivative(x * x, names[0], 2), Rational(1, 2)) == num(aux, 1));
    CHECK_THROWS_AS(partial_derivative(L, "L"), SymbolError);
    // formal variables are never truncated
    CHECK(pow(x, 9).max_weight() == 0);
    CHECK_FALSE(pow(x, 9).is_zero());
}

TEST_CASE("substitute examples") {
    std::vector<std::string> names;
    auto base = l_ring(3);
    auto aux = formal_ring(base, 2, names);
    const ChowPoly x1 = sym(aux, names[0]);
    const ChowPoly x2 = sym(aux, names[1]);
    const ChowPoly L = sym(base, "L");
    auto eval1 = [&](const ChowPoly& p, const std::string& x, const ChowPoly& v) {
        return substitute(p, x, v.in_ring(aux));
    };
    CHECK(eval1(x1 * x1, names[0], -L) == (L * L).in_ring(aux));
    CHECK(eval1(num(aux, 1) + x1 + x1 * x1, names[0], num(base, 0)) == num(aux, 1));
    ChowPoly s = eval1(x1 + x2, names[0], scale(L, -2));
    s = eval1(s, names[1], scale(L, -3));
    CHECK(s.in_ring(base) == scale(L, -5));
    const std::map<std::string, ChowPoly> images{{names[0], scale(L, -2)}, {names[1], scale(L, -3)}};
    CHECK(substitute_all(x1 + x2, images, base) == scale(L, -5));
}

TEST_CASE("component examples") {
    auto r2 = l_ring(2);
    CHECK(component(poly_l(r2, {1, -6, 36}), 1) == scale(sym(r2, "L"), -6));
    CHECK(component(poly_l(r2, {0, 12, -72}), 0).is_zero());
    CHECK_THROWS_AS(component(poly_l(r2, {1}), 3), RangeError);
    CHECK_THROWS_AS(component(poly_l(r2, {1}), -1), RangeError);
    auto r = FormalBase(3).ring();
    const ChowPoly c1 = sym(r, "c1");
    const ChowPoly c2 = sym(r, "c2");
    const ChowPoly p = scale(pow(c1, 3), 360) + scale(c1 * c2, 12);
    CHECK(component(p, 3) == p);
}

TEST_CASE("property: ring axioms") {
    Rng rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        auto r = test_ring(uniform(rng, 0, 4));
        const ChowPoly a = random_poly(rng, r), b = random_poly(rng, r), c = random_poly(rng, r);
        CHECK((a + b) + c == a + (b + c));
        CHECK((a * b) * c == a * (b * c));
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a * (b + c) == a * b + a * c);
        CHECK((a - a).is_zero());
        CHECK(a * num(r, 1) == a);
        CHECK(pow(a, 3) == a * a * a);
    }
}

TEST_CASE("property: expand_ratio inverts units") {
    Rng rng(12);
    for (int trial = 0; trial < 60; ++trial) {
        auto r = test_ring(uniform(rng, 0, 4));
        ChowPoly q = random_poly(rng, r);
        q = q - num(r, q.constant_term()) + num(r, 1);
        const ChowPoly inv = expand_ratio(num(r, 1), q);
        CHECK(inv * q == num(r, 1));
        const ChowPoly a = random_poly(rng, r);
        CHECK(expand_ratio(a, q) * q == a);
    }
}

TEST_CASE("property: components partition a class") {
    Rng rng(13);
    for (int trial = 0; trial < 60; ++trial) {
        const int dim = uniform(rng, 0, 4);
        auto r = test_ring(dim);
        const ChowPoly p = random_poly(rng, r, 8);
        ChowPoly sum(r);
        for (int k = 0; k <= dim; ++k) {
            const ChowPoly ck = component(p, k);
            CHECK(component(ck, k) == ck);
            CHECK((ck.is_zero() || ck.is_homogeneous(k)));
            sum += ck;
        }
        CHECK(sum == p);
    }
}

TEST_CASE("property: truncation is a ring homomorphism") {
    Rng rng(14);
    for (int trial = 0; trial < 60; ++trial) {
        const int hi = uniform(rng, 1, 5);
        const int lo = uniform(rng, 0, hi);
        auto big = test_ring(hi);
        auto small = big->with_bound(lo);
        const ChowPoly a = random_poly(rng, big), b = random_poly(rng, big);
        CHECK((a * b).in_ring(small) == a.in_ring(small) * b.in_ring(small));
        CHECK((a + b).in_ring(small) == a.in_ring(small) + b.in_ring(small));
    }
}

TEST_CASE("property: Leibniz rule") {
    Rng rng(15);
    for (int trial = 0; trial < 40; ++trial) {
        std::vector<std::string> names;
        auto aux = formal_ring(test_ring(uniform(rng, 0, 3)), 2, names);
        const ChowPoly a = random_poly(rng, aux, 4), b = random_poly(rng, aux, 4);
        for (const auto& x : names) {
            CHECK(partial_derivative(a * b, x) == partial_derivative(a, x) * b + a * partial_derivative(b, x));
        }
    }
}

TEST_CASE("in_ring rejects missing symbols") {
    auto r = test_ring(2);
    auto only_l = test_ring(2, {"L"});
    CHECK_THROWS_AS(sym(r, "M").in_ring(only_l), ContextError);
    CHECK(sym(r, "L").in_ring(only_l) == sym(only_l, "L"));
}
