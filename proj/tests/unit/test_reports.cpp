#include <gtest/gtest.h>

#include "sievelab/reports.hpp"

using namespace sievelab;

TEST(JsonText, FormatDouble) {
    EXPECT_EQ(format_double(1.0), "1.0");
    EXPECT_EQ(format_double(0.5), "0.5");
    EXPECT_EQ(format_double(1e300), "1.0000000000000001e+300");
    EXPECT_EQ(format_double(std::nan("")), "null");
    EXPECT_EQ(format_double(INFINITY), "null");
    EXPECT_EQ(std::stod(format_double(0.1)), 0.1);
}

TEST(JsonText, LayoutAndKeyOrder) {
    Json j;
    j["b"] = 1;
    j["a"] = Json::array({1, 2});
    j["c"] = {{"x", 2.0}};
    EXPECT_EQ(to_text(j), "{\n  \"b\": 1,\n  \"a\": [1, 2],\n  \"c\": {\n    \"x\": 2.0\n  }\n}\n");
    EXPECT_EQ(Json::parse(to_text(j)), j);
}

TEST(Parsing, Tuples) {
    EXPECT_EQ(parse_int_tuple("0, 2,6"), (std::vector<i64>{0, 2, 6}));
    EXPECT_THROW(parse_int_tuple("0,x"), precondition_error);
    PrimeField F(3);
    const auto polys = parse_poly_tuple(F, "0;1;0,1");
    ASSERT_EQ(polys.size(), 3u);
    EXPECT_EQ(polys[2], Poly(F, {0, 1}));
    EXPECT_EQ(parse_quad_tuple("3,1;5,1"), (std::vector<QuadInt>{{3, 1}, {5, 1}}));
}

TEST(Reports, TupleCheck) {
    const auto j = tuples_check_report(RingDescriptor::integers(), "0,2,6");
    EXPECT_TRUE(j["admissible"].get<bool>());
    EXPECT_EQ(j["diameter"], 6);
    const auto bad = tuples_check_report(RingDescriptor::integers(), "0,1");
    EXPECT_FALSE(bad["admissible"].get<bool>());
    EXPECT_EQ(bad["witness"]["prime"], 2);
}

TEST(Reports, MkOne) {
    const auto j = mk_report({1, 0, 0}, {});
    EXPECT_EQ(j["lower_bound"].get<double>(), 1.0);
    EXPECT_TRUE(j["exact_check"].get<bool>());
    EXPECT_EQ(j["r_k"].size(), 4u);
}

TEST(Reports, ThreadCountDoesNotChangeText) {
    RunOptions one, eight;
    eight.threads = 8;
    EXPECT_EQ(to_text(mk_report({5, 5, 100'000}, one)), to_text(mk_report({5, 5, 100'000}, eight)));
    EXPECT_EQ(to_text(lod_report(3, 6, 2, one)), to_text(lod_report(3, 6, 2, eight)));
    SieveDemoConfig cfg;
    cfg.N = 20'000;
    EXPECT_EQ(to_text(sieve_demo_report(RingDescriptor::integers(), cfg, one)),
              to_text(sieve_demo_report(RingDescriptor::integers(), cfg, eight)));
    EXPECT_EQ(to_text(census_json(gap_census(5, 3, 1, 1))), to_text(census_json(gap_census(5, 3, 1, 8))));
    EXPECT_EQ(to_text(zcheck_json(check_Z(5, 3, 1, 3, 1))), to_text(zcheck_json(check_Z(5, 3, 1, 3, 8))));
    EXPECT_EQ(to_text(tuples_find_report(RingDescriptor::integers(), 12, {}, one)),
              to_text(tuples_find_report(RingDescriptor::integers(), 12, {}, eight)));
}

TEST(Reports, CensusCsv) {
    const auto csv = census_csv(gap_census(2, 1, 0));
    EXPECT_EQ(csv, "gap_poly,count\n\"1\",2\n");
}

TEST(Reports, BoundAndTwist) {
    EXPECT_EQ(bound_report(105, 107)["bound"], "1/5512");
    const auto t = twist_report(3, "1,2,0,1", "2,2,0,1", 1);
    EXPECT_EQ(t["omega"], 2);
    EXPECT_EQ(t["difference"], Json::array({1}));
    EXPECT_TRUE(t["irreducible"].get<bool>());
}

TEST(Reports, NumberField) {
    const auto j = nf_prime_test_report(2, "3,1");
    EXPECT_EQ(j["norm"], 7);
    EXPECT_TRUE(j["prime"].get<bool>());
}
