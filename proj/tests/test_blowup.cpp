#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nashcert/blowup.hpp"
#include "nashcert/dsl.hpp"
#include "nashcert/error.hpp"

using namespace nashcert;

namespace {

Hyperquotient cax2_model(const std::string& f_text) {
    SparsePoly f = parse_polynomial(f_text);
    SparsePoly phi = poly_add(parse_polynomial("x^2 + y^2"), f);
    return Hyperquotient(phi, GroupAction(2, {0, 1, 1, 1}));
}

}  // namespace

TEST_CASE("hyperquotient construction") {
    CHECK_THROWS_AS(Hyperquotient(parse_polynomial("x + z"), GroupAction(2, {0, 1, 1, 1})),
                    NashError);  // mixed classes
    CHECK_THROWS_AS(Hyperquotient(parse_polynomial("x^2 + 1"), GroupAction(2, {0, 1, 1, 1})),
                    NashError);  // does not vanish at origin
    Hyperquotient ok = cax2_model("z^4 + u^4");
    CHECK(ok.phi_class == 0);
}

TEST_CASE("admissible weights") {
    GroupAction act(2, {0, 1, 1, 1});
    CHECK(admissible_weight(act, parse_weight("1/2(2,3,1,1)")));
    CHECK(admissible_weight(GroupAction(1, {0, 0, 0, 0}), parse_weight("1/1(1,1,1,1)")));
    CHECK_FALSE(admissible_weight(act, parse_weight("1/2(2,2,2,2)")));
    CHECK_THROWS_AS(admissible_weight(act, parse_weight("1/3(1,1,1,1)")), NashError);
}

TEST_CASE("chart models for the tau0=4 case-1 weight") {
    Hyperquotient hq = cax2_model("z^4 + u^4");
    WeightSigma sigma = parse_weight("1/2(2,3,1,1)");

    ChartModel u3 = chart(hq, sigma, 3);
    CHECK(u3.strict_phi == parse_polynomial("x^2 + y^2*z + 1 + u^4"));
    CHECK(u3.quotient_index == 1);
    CHECK_FALSE(u3.empty_chart);

    ChartModel u2 = chart(hq, sigma, 2);
    CHECK(u2.quotient == GroupAction(3, {1, 2, 2, 2}));
    CHECK(u2.quotient_index == 3);
    CHECK(u2.strict_phi == parse_polynomial("x^2 + y + z^4 + u^4"));

    // inadmissible weight is rejected
    CHECK_THROWS_AS(chart(hq, parse_weight("1/2(2,2,2,2)"), 1), NashError);
}

TEST_CASE("unit chart flagged") {
    Hyperquotient hq(parse_polynomial("x"), GroupAction(1, {0, 0, 0, 0}));
    ChartModel u1 = chart(hq, parse_weight("1/1(1,1,1,1)"), 1);
    CHECK(u1.strict_phi == SparsePoly::constant(1));
    CHECK(u1.empty_chart);
}

TEST_CASE("val_E") {
    WeightSigma sigma = parse_weight("1/2(2,3,1,1)");
    CHECK(val_E(parse_polynomial("x^2 + y^2 + z^2 + u^2"), sigma) == 1);
    CHECK(val_E(parse_polynomial("x^2 + y^2"), sigma) == 2);
    CHECK(val_E(parse_polynomial("z"), sigma) == Rat(1) / 2);
    CHECK_THROWS_AS(val_E(SparsePoly::zero(), sigma), NashError);
}

TEST_CASE("discrepancy of the blow-up weight") {
    CHECK(discrepancy_of_weight(cax2_model("z^4 + u^4"), parse_weight("1/2(2,3,1,1)")) ==
          Rat(1) / 2);
    // ordinary blow-up of the origin on a smooth 3-fold (phi = x in C^4)
    Hyperquotient smooth(parse_polynomial("x"), GroupAction(1, {0, 0, 0, 0}));
    CHECK(discrepancy_of_weight(smooth, parse_weight("1/1(1,1,1,1)")) == 2);
}

TEST_CASE("strict transform factorizations of the separating functions") {
    WeightSigma sigma = parse_weight("1/2(2,3,1,1)");
    StrictTransform u2 =
        strict_transform_factorization(parse_polynomial("x^2 + y^2 + z^2 + u^2"), sigma, 2);
    CHECK(u2.k == 1);
    CHECK(u2.g == parse_polynomial("x^2*y + y^2 + z^2 + u^2"));

    StrictTransform u3 =
        strict_transform_factorization(parse_polynomial("x^2 + y^2 - z^2 + u^2"), sigma, 3);
    CHECK(u3.k == 1);
    CHECK(u3.g == parse_polynomial("x^2*z + y^2*z^2 - 1 + u^2"));

    StrictTransform z2 = strict_transform_factorization(parse_polynomial("z^2"), sigma, 3);
    CHECK(z2.k == 1);
    CHECK(z2.g == SparsePoly::constant(1));
}

TEST_CASE("strict transform never divisible by the chart variable") {
    std::mt19937 rng(77);
    WeightSigma sigma = parse_weight("1/2(2,3,1,1)");
    for (int i = 0; i < 50; ++i) {
        // random invariant polynomial: a square
        PolyBuilder b;
        for (int t = 0; t < 3; ++t) {
            std::array<Rat, kNumVars> e;
            for (int v = 0; v < kNumVars; ++v) e[v] = Rat(static_cast<long long>(rng() % 3));
            b.add_term(Rat(1 + static_cast<long long>(rng() % 4)), e);
        }
        SparsePoly p = b.build();
        SparsePoly sq = poly_mul(p, p);
        if (sq.is_zero()) continue;
        for (int chartv = 1; chartv <= 4; ++chartv) {
            StrictTransform st = strict_transform_factorization(sq, sigma, chartv);
            CHECK(st.k == wt_sigma(sq, sigma));
            bool has_zero_exp = false;
            for (const auto& [e, c] : st.g.terms())
                if (e[chartv - 1] == 0) has_zero_exp = true;
            CHECK(has_zero_exp);
        }
    }
}

TEST_CASE("chart quotient actions match an independent table") {
    // Independent reimplementation: chart i of the sigma-blow-up of
    // C^4/(1/m)(alpha) is C^4/(1/abcd_i)(w) with w_j = -abcd_j off the
    // diagonal and w_i = m.
    std::mt19937 rng(1234);
    GroupAction act(2, {0, 1, 1, 1});
    Hyperquotient hq = cax2_model("z^4 + u^4");
    int tested = 0;
    while (tested < 20) {
        std::array<long long, 4> abcd;
        for (auto& v : abcd) v = 1 + static_cast<long long>(rng() % 6);
        WeightSigma sigma{2, abcd};
        if (!admissible_weight(act, sigma)) continue;
        ++tested;
        for (int i = 1; i <= 4; ++i) {
            ChartModel ch = chart(hq, sigma, i);
            std::array<long long, 4> expect;
            for (int j = 0; j < 4; ++j) expect[j] = -abcd[j];
            expect[i - 1] = 2;
            CHECK(ch.quotient == GroupAction(abcd[i - 1], expect));
        }
    }
}

TEST_CASE("strict transform is semi-invariant under the chart quotient") {
    Hyperquotient hq = cax2_model("z^4 + u^4");
    WeightSigma sigma = parse_weight("1/2(2,3,1,1)");
    for (int i = 1; i <= 4; ++i) {
        ChartModel ch = chart(hq, sigma, i);
        CHECK(is_semiinvariant(ch.strict_phi, ch.quotient));
    }
}

TEST_CASE("singular points: case 1, f = z^4 + u^4 has none on E") {
    Hyperquotient hq = cax2_model("z^4 + u^4");
    WeightSigma sigma = parse_weight("1/2(2,3,1,1)");
    for (int i = 1; i <= 4; ++i) {
        SingularPointReport rep = singular_points_on_E(chart(hq, sigma, i));
        CHECK(rep.points.empty());
        CHECK(rep.certificates.empty());
        CHECK_FALSE(rep.requires_elimination);
    }
}

TEST_CASE("singular points: repeated rational root") {
    Hyperquotient hq = cax2_model("z^3*u - 2*z^2*u^2 + z*u^3");
    WeightSigma sigma = parse_weight("1/2(2,3,1,1)");
    SingularPointReport rep = singular_points_on_E(chart(hq, sigma, 3));
    REQUIRE(rep.points.size() == 1);
    CHECK(rep.points[0] == std::array<Rat, 4>{Rat(0), Rat(0), Rat(0), Rat(1)});
    CHECK(verify_jacobian_point(chart(hq, sigma, 3), rep.points[0]));
}

TEST_CASE("singular points: algebraic certificate") {
    Hyperquotient hq = cax2_model("z^5*u - 4*z^3*u^3 + 4*z*u^5");
    WeightSigma sigma = parse_weight("1/2(4,3,1,1)");
    SingularPointReport rep = singular_points_on_E(chart(hq, sigma, 3));
    CHECK(rep.points.empty());
    REQUIRE(rep.certificates.size() == 1);
    CHECK(rep.certificates[0].primary_var == kVarU);
    CHECK(rep.certificates[0].fully_verified);
    // minimal polynomial u^2 - 1/2
    UniPoly q({Rat(-1) / 2, Rat(0), Rat(1)});
    CHECK(rep.certificates[0].primary_min_poly == q);
}

TEST_CASE("verify_jacobian_point") {
    Hyperquotient hq = cax2_model("z^4 + u^4");
    WeightSigma sigma = parse_weight("1/2(2,3,1,1)");
    ChartModel u3 = chart(hq, sigma, 3);
    // origin: strict_phi has a constant term, so it is not even on X-bar
    CHECK_FALSE(verify_jacobian_point(u3, {Rat(0), Rat(0), Rat(0), Rat(0)}));
    CHECK_THROWS_AS(verify_jacobian_point(u3, {Rat(0), Rat(0), Rat(1), Rat(0)}), NashError);
}

TEST_CASE("quotient point scan") {
    Hyperquotient hq = cax2_model("z^4 + u^4");
    WeightSigma sigma = parse_weight("1/2(2,3,1,1)");
    QuotientPointScan q2 = quotient_singular_points(chart(hq, sigma, 2));
    CHECK(q2.origin_singular);
    CHECK(q2.origin_index == 3);
    CHECK(q2.extra_points.empty());
    CHECK_FALSE(q2.requires_elimination);

    // U1: the origin is not on the strict transform (constant term 1)
    QuotientPointScan q1 = quotient_singular_points(chart(hq, sigma, 1));
    CHECK_FALSE(q1.origin_singular);
}

TEST_CASE("non-domination conclusions") {
    NonDominationConclusion c = conclude_non_domination(ValuationRelation{Rat(1)});
    CHECK(c.strict);
    CHECK(c.lower_bound == 1);

    ValuationRelation rel{Rat(1)};
    rel.a = Rat(1);
    rel.a1 = Rat(1);
    rel.c = Rat(1) / 2;
    rel.d = Rat(0);
    NonDominationConclusion c2 = conclude_non_domination(rel);
    CHECK_FALSE(c2.strict);
    CHECK(c2.lower_bound == Rat(3) / 2);

    CHECK_THROWS_AS(conclude_non_domination(ValuationRelation{Rat(2)}), NashError);
    ValuationRelation bad{Rat(1)};
    bad.c = Rat(-1);
    CHECK_THROWS_AS(conclude_non_domination(bad), NashError);
}
