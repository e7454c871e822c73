#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nashcert/univariate.hpp"

using namespace nashcert;

namespace {
UniPoly P(std::initializer_list<long long> coeffs) {
    std::vector<Rat> c;
    for (long long v : coeffs) c.push_back(Rat(v));
    return UniPoly(c);
}
}  // namespace

TEST_CASE("arithmetic and division") {
    UniPoly a = P({-1, 0, 1});      // x^2 - 1
    UniPoly b = P({1, 1});          // x + 1
    auto [q, r] = uni_divmod(a, b);
    CHECK(q == P({-1, 1}));
    CHECK(r.is_zero());
    CHECK(uni_mul(q, b) == a);

    auto [q2, r2] = uni_divmod(P({1, 0, 0, 1}), P({1, 1}));  // x^3+1 by x+1
    CHECK(r2.is_zero());
    CHECK(q2 == P({1, -1, 1}));
}

TEST_CASE("gcd") {
    UniPoly a = uni_mul(P({-1, 1}), P({-2, 1}));  // (x-1)(x-2)
    UniPoly b = uni_mul(P({-1, 1}), P({3, 1}));   // (x-1)(x+3)
    CHECK(uni_gcd(a, b) == P({-1, 1}));
    CHECK(uni_gcd(a, UniPoly()) == uni_monic(a));
    CHECK(uni_gcd(UniPoly(), UniPoly()).is_zero());
}

TEST_CASE("square-free decomposition") {
    // 3*(x-1)^2*(x+2)^3
    UniPoly f = uni_scale(uni_mul(uni_mul(P({-1, 1}), P({-1, 1})),
                                  uni_mul(uni_mul(P({2, 1}), P({2, 1})), P({2, 1}))),
                          Rat(3));
    SquareFreeDecomposition sf = uni_squarefree(f);
    CHECK(sf.unit == 3);
    REQUIRE(sf.factors.size() == 2);
    CHECK(sf.factors[0].first == P({-1, 1}));
    CHECK(sf.factors[0].second == 2);
    CHECK(sf.factors[1].first == P({2, 1}));
    CHECK(sf.factors[1].second == 3);

    SquareFreeDecomposition sq = uni_squarefree(P({1, 0, 0, 0, 1}));  // x^4+1 square-free
    REQUIRE(sq.factors.size() == 1);
    CHECK(sq.factors[0].second == 1);
}

TEST_CASE("rational roots") {
    // (x - 1/2)(x + 3)(x^2 + 1), scaled by 2
    UniPoly f = uni_mul(uni_mul(P({-1, 2}), P({3, 1})), P({1, 0, 1}));
    RationalRoots rr = uni_rational_roots(f);
    REQUIRE(rr.roots.size() == 2);
    CHECK(rr.roots[0] == Rat(-3));
    CHECK(rr.roots[1] == Rat(1) / 2);
    CHECK(rr.cofactor == P({1, 0, 1}));

    RationalRoots none = uni_rational_roots(P({2, 0, 1}));  // x^2 + 2
    CHECK(none.roots.empty());
    CHECK(none.cofactor == P({2, 0, 1}));

    RationalRoots zero = uni_rational_roots(P({0, 0, 1}));  // x^2
    REQUIRE(zero.roots.size() == 1);
    CHECK(zero.roots[0] == 0);
    CHECK(zero.cofactor.degree() == 0);
}

TEST_CASE("multiple root divided out completely") {
    UniPoly f = uni_mul(uni_mul(P({-1, 1}), P({-1, 1})), P({5, 1}));  // (x-1)^2 (x+5)
    RationalRoots rr = uni_rational_roots(f);
    REQUIRE(rr.roots.size() == 2);
    CHECK(rr.cofactor.degree() == 0);
}

TEST_CASE("eval") {
    UniPoly f = P({1, -2, 1});  // (x-1)^2
    CHECK(f.eval(Rat(1)) == 0);
    CHECK(f.eval(Rat(3)) == 4);
    CHECK(f.eval(Rat(1) / 2) == Rat(1) / 4);
}
