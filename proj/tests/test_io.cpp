#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "charloc/selftest.hpp"
#include "charloc/sl2.hpp"
#include "charloc/weyl_kostant.hpp"

using namespace charloc;

TEST_CASE("rational char JSON round trip") {
    std::mt19937_64 rng(67);
    for (int t = 0; t < 20; ++t) {
        Weight a = selftest::random_weight(rng, 2, 3);
        if (a.is_zero()) a.x2[0] = 2;
        RationalChar x(selftest::random_poly(rng, 2, 5, 6, 9), {a});
        RationalChar back = rational_char_from_json(rational_char_to_json(x));
        CHECK(back.num() == x.num());
        CHECK(back.den_alphas() == x.den_alphas());
    }
}

TEST_CASE("rational char JSON rejects malformed denominators") {
    // a three-term denominator polynomial is not a factor
    std::string bad = R"({"num": {"rank":1, "terms":[{"w2":[0],"c":1}]},
                          "den": [{"rank":1, "terms":[{"w2":[0],"c":1},
                                                      {"w2":[2],"c":1},
                                                      {"w2":[4],"c":-1}]}]})";
    CHECK_THROWS_AS(rational_char_from_json(bad), std::invalid_argument);
}

TEST_CASE("root datum JSON errors") {
    CHECK_THROWS(root_datum_from_json(R"({"rank": 2, "gram": [[1]], "u_roots": []})"));
    CHECK_THROWS(root_datum_from_json(R"({"rank": 1, "gram": [[-1]], "u_roots": []})"));
    CHECK_THROWS(root_datum_from_file("/nonexistent/path.json"));
    // non-symmetric gram
    CHECK_THROWS(
        root_datum_from_json(R"({"rank": 2, "gram": [[1, 1], [0, 1]], "u_roots": []})"));
}

TEST_CASE("shipped data files parse and match the in-code data") {
    RootDatum a1 = root_datum_from_file(DATA_DIR "/a1.json");
    CHECK(a1.u_roots == selftest::datum_a1().u_roots);
    CHECK(a1.weyl_group.size() == 2);

    RootDatum a2 = root_datum_from_file(DATA_DIR "/a2.json");
    CHECK(a2.u_roots == selftest::datum_a2().u_roots);
    CHECK(a2.inner.gram == selftest::datum_a2().inner.gram);
    CHECK(a2.weyl_group.size() == 6);

    RootDatum aa = root_datum_from_file(DATA_DIR "/a1xa1.json");
    CHECK(aa.weyl_group.size() == 4);
}

TEST_CASE("bit-identical serialization across recomputation") {
    // fixed-seed determinism for the JSON surface of a full computation
    const RootDatum& a2 = selftest::datum_a2();
    auto run = [&] {
        std::ostringstream os;
        os << rational_char_to_json(euler_character(a2, Weight({2, 2})));
        os << laurent_to_json(restrict_finite(a2, Weight({2, 2})));
        return os.str();
    };
    CHECK(run() == run());
}

TEST_CASE("frozen golden serialization") {
    LaurentPoly p(1);
    p.add_term(Weight({2}), 1);
    p.add_term(Weight({-2}), -3);
    CHECK(laurent_to_json(p) ==
          R"({"rank":1,"terms":[{"c":-3,"w2":[-2]},{"c":1,"w2":[2]}]})");
}

TEST_CASE("series dump headers") {
    TruncatedSeries s(1, Box{{3}});
    std::stringstream ss;
    s.dump(ss);
    std::string line;
    std::getline(ss, line);
    CHECK(line == "rank 1");
    std::getline(ss, line);
    CHECK(line == "box 3");
    std::getline(ss, line);
    CHECK(line == "valid 3");
}
