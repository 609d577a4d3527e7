#include <gtest/gtest.h>

#include <fstream>

#include "json.hpp"
#include "sievelab/mk.hpp"

using namespace sievelab;

namespace {

nlohmann::json load_forms_table() {
    std::ifstream in(std::string(SIEVELAB_TEST_DATA) + "/forms_table.json");
    return nlohmann::json::parse(in);
}

}  // namespace

TEST(SimplexIntegral, Examples) {
    EXPECT_EQ(monomial_simplex_integral(2, {0, 0}, 0), Rational(1, 2));
    EXPECT_EQ(monomial_simplex_integral(2, {1, 1}, 0), Rational(1, 24));
    EXPECT_EQ(monomial_simplex_integral(1, {0}, 1), Rational(1, 2));
    EXPECT_THROW(monomial_simplex_integral(2, {0}, 0), precondition_error);
}

TEST(SimplexIntegral, AgreesWithRiemannSum) {
    // midpoint rule on R_2 for x^a y^b (1 - x - y)^c
    const int n = 800;
    for (auto [a, b, c] : std::vector<std::tuple<unsigned, unsigned, unsigned>>{{0, 0, 0}, {1, 1, 0}, {2, 0, 1}, {1, 2, 2}}) {
        double s = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double x = (i + 0.5) / n, y = (j + 0.5) / n;
                if (x + y < 1.0) s += std::pow(x, a) * std::pow(y, b) * std::pow(1 - x - y, c);
            }
        s /= double(n) * n;
        EXPECT_NEAR(s, monomial_simplex_integral(2, {a, b}, c).convert_to<double>(), 2e-3);
    }
}

TEST(Forms, MatchComputerAlgebraTable) {
    const auto table = load_forms_table();
    ASSERT_FALSE(table.empty());
    for (const auto& block : table) {
        const unsigned k = block["k"], D = block["degree_bound"];
        const auto basis = SymmetricBasis::standard(k, D);
        ASSERT_EQ(basis.generators.size(), block["generators"].size());
        for (std::size_t i = 0; i < basis.generators.size(); ++i) {
            EXPECT_EQ(basis.generators[i].a, block["generators"][i][0].get<unsigned>());
            EXPECT_EQ(basis.generators[i].b, block["generators"][i][1].get<unsigned>());
        }
        const auto forms = build_forms(basis);
        for (const auto& e : block["entries"]) {
            const std::size_t i = e["i"], j = e["j"];
            EXPECT_EQ(forms.M1[i][j], Rational(e["M1"].get<std::string>())) << k << " " << i << " " << j;
            EXPECT_EQ(forms.M2[i][j], Rational(e["M2"].get<std::string>())) << k << " " << i << " " << j;
            EXPECT_EQ(forms.M1[i][j], forms.M1[j][i]);
            EXPECT_EQ(forms.M2[i][j], forms.M2[j][i]);
        }
    }
}

TEST(Forms, ConstantFunction) {
    const auto f1 = build_forms(SymmetricBasis::standard(1, 0));
    EXPECT_EQ(f1.M1[0][0], Rational(1));
    EXPECT_EQ(f1.M2[0][0], Rational(1));
    const auto f2 = build_forms(SymmetricBasis::standard(2, 0));
    EXPECT_EQ(f2.M1[0][0], Rational(1, 2));
    EXPECT_EQ(f2.M2[0][0], Rational(2, 3));
    EXPECT_DOUBLE_EQ(mk_lower_bound(2, 0).lower_bound, 4.0 / 3.0);
}

TEST(Forms, ThreadCountDoesNotMatter) {
    const auto a = build_forms(SymmetricBasis::standard(7, 5), 1);
    const auto b = build_forms(SymmetricBasis::standard(7, 5), 4);
    EXPECT_EQ(a.M1, b.M1);
    EXPECT_EQ(a.M2, b.M2);
}

TEST(Mk, KOneIsExactlyOne) {
    for (unsigned D : {0u, 1u, 3u, 7u}) {
        const auto r = mk_lower_bound(1, D);
        EXPECT_EQ(r.rayleigh_exact, Rational(1));
        EXPECT_EQ(r.lower_bound, 1.0);
    }
}

TEST(Mk, MonotoneInDegree) {
    for (unsigned k : {2u, 3u, 5u, 10u}) {
        double prev = 0.0;
        for (unsigned D = 0; D <= 7; ++D) {
            const auto r = mk_lower_bound(k, D);
            EXPECT_GE(r.lower_bound + 1e-12, prev) << k << " " << D;
            EXPECT_LE(r.lower_bound, r.eigenvalue + 1e-12);
            EXPECT_LE(r.residual, 1e-9);
            EXPECT_LE(r.lower_bound, static_cast<double>(k));
            prev = r.lower_bound;
        }
    }
}

TEST(Mk, ExactRayleighReproducesFromCoefficients) {
    const auto r = mk_lower_bound(5, 3);
    const auto forms = build_forms(SymmetricBasis::standard(5, 3));
    std::vector<Rational> c;
    for (double v : r.coefficients) c.emplace_back(v);
    const Rational q = quadratic_value(forms.M2, c) / quadratic_value(forms.M1, c);
    EXPECT_NEAR(q.convert_to<double>(), r.rayleigh_exact.convert_to<double>(), 1e-12);
    EXPECT_LE(Rational(r.lower_bound), r.rayleigh_exact);
}

TEST(Mk, PositiveDefinitePivots) {
    for (unsigned k : {2u, 5u, 20u}) {
        const auto forms = build_forms(SymmetricBasis::standard(k, 7));
        const auto red = reduce_basis(forms.M1);
        for (const auto& p : red.pivots) EXPECT_GT(p, 0);
        EXPECT_EQ(red.kept.size() + red.dropped.size(), forms.M1.size());
    }
}

TEST(Mk, RkExamples) {
    EXPECT_EQ(r_k(0.5, 4.0000001), 2);
    EXPECT_EQ(r_k(0.9, 2), 1);
    EXPECT_EQ(r_k(0.5, 4), 1);
    EXPECT_THROW(r_k(0.0, 2), precondition_error);
}

TEST(Mk, DefaultDegrees) {
    EXPECT_EQ(default_degree_bound(5), 7u);
    EXPECT_EQ(default_degree_bound(105), 11u);
    EXPECT_EQ(SymmetricBasis::standard(105, 11).size(), 42u);
}
