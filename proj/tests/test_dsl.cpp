#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "nashcert/dsl.hpp"
#include "nashcert/error.hpp"

using namespace nashcert;

TEST_CASE("polynomial expressions") {
    CHECK(parse_polynomial("x^2 + y^2") ==
          poly_add(poly_pow(SparsePoly::variable(kVarX), 2),
                   poly_pow(SparsePoly::variable(kVarY), 2)));
    CHECK(parse_polynomial("(z + u)^2") ==
          parse_polynomial("z^2 + 2*z*u + u^2"));
    CHECK(parse_polynomial("-z + z") == SparsePoly::zero());
    CHECK(parse_polynomial("3/2*x").coefficient({Rat(1), Rat(0), Rat(0), Rat(0)}) ==
          Rat(3) / 2);
    CHECK(parse_polynomial("x - 2*y") == parse_polynomial("x - y - y"));
}

TEST_CASE("expression errors carry positions") {
    CHECK_THROWS_WITH_AS(parse_polynomial("x^2 +"), doctest::Contains("1:6"), NashError);
    CHECK_THROWS_WITH_AS(parse_polynomial("x + w"), doctest::Contains("unknown identifier"),
                         NashError);
    CHECK_THROWS_WITH_AS(parse_polynomial("x ^ y"), doctest::Contains("exponent"), NashError);
    CHECK_THROWS_WITH_AS(parse_polynomial("zu + 1"), doctest::Contains("unknown identifier"),
                         NashError);
    try {
        parse_polynomial("x^2 +");
        FAIL("expected a parse error");
    } catch (const NashError& e) {
        CHECK(e.kind() == ErrorKind::parse);
        CHECK(e.exit_code() == 2);
    }
}

TEST_CASE("singularity files") {
    std::string text =
        "# comment\n"
        "name: z4u4;\n"
        "equation: x^2 + y^2 + z^4 + u^4;\n"
        "action: 1/2 (0,1,1,1);\n";
    SingularityFile f = parse_singularity(text, "test.sing");
    CHECK(f.name == "z4u4");
    CHECK(f.action == GroupAction(2, {0, 1, 1, 1}));
    CHECK_FALSE(f.weight.has_value());

    std::string with_weight = text + "weight: 1/2 (2,3,1,1);\ncommands: certify;\n";
    SingularityFile g = parse_singularity(with_weight, "test.sing");
    REQUIRE(g.weight.has_value());
    CHECK(*g.weight == parse_weight("1/2(2,3,1,1)"));
    CHECK(g.commands == std::vector<std::string>{"certify"});
}

TEST_CASE("file errors") {
    // dangling operator -> syntax error with line and column
    CHECK_THROWS_WITH_AS(
        parse_singularity("equation: x^2 +;\naction: 1/2 (0,1,1,1);\n", "bad.sing"),
        doctest::Contains("bad.sing:1:16"), NashError);
    // semi-invariance failure -> semantic error listing witnesses
    try {
        parse_singularity("equation: x^2 + z;\naction: 1/2 (0,1,1,1);\n", "bad.sing");
        FAIL("expected a semantic error");
    } catch (const NashError& e) {
        CHECK(e.kind() == ErrorKind::semantic);
        CHECK(std::string(e.what()).find("class") != std::string::npos);
    }
    // missing clause
    CHECK_THROWS_AS(parse_singularity("equation: x^2 + y^2 + z^4;\n", "bad.sing"), NashError);
    // unknown clause
    CHECK_THROWS_WITH_AS(parse_singularity("foo: bar;\n", "bad.sing"),
                         doctest::Contains("unknown clause"), NashError);
}

TEST_CASE("round-trip: parse(print(s)) == s") {
    std::vector<std::string> corpus = {
        "name: a;\nequation: x^2 + y^2 + z^4 + u^4;\naction: 1/2 (0,1,1,1);\n",
        "name: b;\nequation: x^2 + y^2 + z^4 + 2*z^2*u^2 + u^4 + z^6;\n"
        "action: 1/2 (0,1,1,1);\nweight: 1/2 (4,3,1,1);\n",
        "equation: x*y + z^3 + u^3;\naction: 1/3 (1,2,1,0);\ncommands: chart,certify;\n",
        "equation: x^2 + y^2 - 3/2*z^4 + z^3*u - u^8;\naction: 1/2 (0,1,1,1);\n",
    };
    for (const std::string& text : corpus) {
        SingularityFile once = parse_singularity(text, "corpus.sing");
        SingularityFile twice = parse_singularity(print_singularity(once), "printed.sing");
        CHECK(once == twice);
        // printing is a fixed point
        CHECK(print_singularity(once) == print_singularity(twice));
    }
}

TEST_CASE("weight, lattice, and cone literals") {
    WeightSigma w = parse_weight("1/2(2,3,1,1)");
    CHECK(w.m == 2);
    CHECK(w.abcd == std::array<long long, 4>{2, 3, 1, 1});
    CHECK_THROWS_AS(parse_weight("1/2(2,3,1)"), NashError);
    CHECK_THROWS_AS(parse_weight("2/3(1,1,1,1)"), NashError);

    QuotientLattice L = parse_lattice("1/3(1,1,2)");
    CHECK(L.rank() == 3);
    CHECK(L.index_m() == 3);

    auto std_gens = parse_cone_generators("std", 3);
    CHECK(std_gens.size() == 3);
    CHECK(std_gens[0] == std::vector<Rat>{Rat(1), Rat(0), Rat(0)});

    auto gens = parse_cone_generators("(1,0);(1,2)", 2);
    REQUIRE(gens.size() == 2);
    CHECK(gens[1] == std::vector<Rat>{Rat(1), Rat(2)});
    CHECK_THROWS_AS(parse_cone_generators("(1,0);(1,2,3)", 2), NashError);

    auto frac = parse_cone_generators("(1/2,-1/2)", 2);
    CHECK(frac[0] == std::vector<Rat>{Rat(1) / 2, Rat(-1) / 2});
}
