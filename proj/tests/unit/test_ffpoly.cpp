#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "sievelab/ffpoly.hpp"

using namespace sievelab;

namespace {

Poly P(u64 q, std::vector<u64> c) { return Poly(PrimeField(q), std::move(c)); }

// Irreducible iff no monic polynomial of degree 1..n/2 divides f.
bool irreducible_by_trial_division(const Poly& f) {
    const int n = f.degree();
    if (n < 1) return false;
    for (int d = 1; 2 * d <= n; ++d)
        for (const auto& g : enumerate_monic(f.field().q(), d, false))
            if (rem(f, g).is_zero()) return false;
    return true;
}

Poly random_poly(std::mt19937_64& rng, u64 q, int deg, bool monic) {
    std::vector<u64> c(deg + 1);
    for (auto& x : c) x = rng() % q;
    c[deg] = monic ? 1 : 1 + rng() % (q - 1);
    return Poly(PrimeField(q), c);
}

}  // namespace

TEST(Poly, Arithmetic) {
    EXPECT_EQ(P(2, {1, 1}) * P(2, {1, 1}), P(2, {1, 0, 1}));
    EXPECT_EQ(rem(P(3, {1, 0, 1}), P(3, {0, 1})), P(3, {1}));
    EXPECT_EQ(P(5, {1, 2}) + P(5, {4, 3}), Poly(PrimeField(5)));
    EXPECT_EQ(P(5, {1, 2}) - P(5, {1, 2}), Poly(PrimeField(5)));
    EXPECT_TRUE(Poly(PrimeField(5)).is_zero());
}

TEST(Poly, PowmodMatchesSchoolbook) {
    const Poly m = P(3, {1, 0, 1});
    const Poly t = P(3, {0, 1});
    Poly naive = P(3, {1});
    for (int i = 0; i < 9; ++i) naive = naive * t;
    EXPECT_EQ(powmod(t, 9, m), rem(naive, m));

    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const u64 q = std::vector<u64>{2, 3, 5, 7}[trial % 4];
        const Poly base = random_poly(rng, q, 3, false);
        const Poly mod = random_poly(rng, q, 4, true);
        const u64 e = rng() % 40;
        Poly slow = P(q, {1});
        for (u64 i = 0; i < e; ++i) slow = rem(slow * base, mod);
        EXPECT_EQ(powmod(base, e, mod), slow);
    }
}

TEST(Poly, DivmodIdentity) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const u64 q = std::vector<u64>{2, 3, 7, 101}[trial % 4];
        const Poly a = random_poly(rng, q, 2 + trial % 7, false);
        const Poly b = random_poly(rng, q, 1 + trial % 3, false);
        const auto [quo, r] = divmod(a, b);
        EXPECT_EQ(quo * b + r, a);
        EXPECT_LT(r.degree(), b.degree());
    }
}

TEST(Poly, Errors) {
    EXPECT_THROW(P(3, {1}) + P(5, {1}), precondition_error);
    EXPECT_THROW(rem(P(3, {1, 1}), Poly(PrimeField(3))), precondition_error);
    EXPECT_THROW(is_irreducible(Poly(PrimeField(3))), precondition_error);
    EXPECT_THROW(PrimeField(4), precondition_error);
    EXPECT_THROW(count_irreducibles(3, 0), precondition_error);
}

TEST(Irreducible, Examples) {
    EXPECT_TRUE(is_irreducible(P(3, {1, 0, 1})));
    EXPECT_FALSE(is_irreducible(P(5, {1, 0, 1})));
    for (u64 q : {2, 3, 5, 7}) EXPECT_TRUE(is_irreducible(P(q, {0, 1})));
    EXPECT_FALSE(is_irreducible(P(3, {2})));
}

TEST(Irreducible, AgreesWithTrialDivision) {
    for (u64 q : {2, 3, 5})
        for (unsigned n = 1; checked_pow(q, n) <= 3125 && n <= 6; ++n)
            for (const auto& f : enumerate_monic(q, n, false))
                ASSERT_EQ(is_irreducible(f), irreducible_by_trial_division(f)) << format_poly(f);
}

TEST(Irreducible, ProductsAreReducible) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const u64 q = std::vector<u64>{2, 3, 5, 7, 11}[trial % 5];
        const Poly f = random_poly(rng, q, 1 + trial % 4, false);
        const Poly g = random_poly(rng, q, 1 + trial % 3, false);
        EXPECT_FALSE(is_irreducible(f * g));
    }
}

TEST(Irreducible, Counts) {
    EXPECT_EQ(count_irreducibles(3, 1), 3u);
    EXPECT_EQ(count_irreducibles(2, 3), 2u);
    EXPECT_EQ(count_irreducibles(2, 4), 3u);
    const auto quads = enumerate_monic(3, 2, true);
    ASSERT_EQ(quads.size(), 3u);
    EXPECT_EQ(quads[0], P(3, {1, 0, 1}));
    EXPECT_EQ(quads[1], P(3, {2, 1, 1}));
    EXPECT_EQ(quads[2], P(3, {2, 2, 1}));
}

TEST(Irreducible, CountWithinExplicitBounds) {
    for (u64 q : {2, 3, 5, 7})
        for (unsigned n = 2; checked_pow(q, n) <= 1'000'000; ++n) {
            const double c = static_cast<double>(count_irreducibles(q, n));
            const double main = std::pow(double(q), n) / n, err = 2.0 * std::pow(double(q), n / 2.0) / n;
            EXPECT_GE(c, main - err);
            EXPECT_LE(c, main + err);
        }
}

TEST(Enumeration, OrderAndSize) {
    const auto all = enumerate_monic(3, 2, false);
    ASSERT_EQ(all.size(), 9u);
    for (std::size_t i = 0; i < all.size(); ++i) EXPECT_EQ(monic_index(all[i]), i);
    EXPECT_TRUE(std::is_sorted(all.begin(), all.end(), [](const Poly& a, const Poly& b) {
        return std::lexicographical_compare(a.coeffs().begin(), a.coeffs().end(), b.coeffs().begin(),
                                            b.coeffs().end());
    }));
    const auto one = enumerate_monic(2, 0, false);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0], P(2, {1}));
    EXPECT_THROW(enumerate_monic(3, 10, false, Budget{100}), budget_exceeded);
}

TEST(Twist, PreservesIrreducibilityAndMonicity) {
    for (const auto& f : enumerate_monic(5, 3, true))
        for (u64 w = 1; w < 5; ++w) {
            const Poly g = twist(f, w);
            EXPECT_TRUE(g.is_monic());
            EXPECT_TRUE(is_irreducible(g));
        }
}

TEST(Text, RoundTrip) {
    const PrimeField F(7);
    EXPECT_EQ(format_poly(parse_poly(F, "1,0,1")), "1,0,1");
    EXPECT_EQ(parse_poly(F, "-1,8"), P(7, {6, 1}));
    EXPECT_EQ(pretty_poly(P(3, {1, 2, 1})), "t^2 + 2t + 1");
    EXPECT_THROW(parse_poly(F, "1,x"), precondition_error);
}
