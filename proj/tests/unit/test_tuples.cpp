#include <gtest/gtest.h>

#include <random>

#include "sievelab/tuples.hpp"

using namespace sievelab;

namespace {

// Brute force: some prime p <= k has every class hit.
bool admissible_oracle(const std::vector<i64>& t) {
    for (u64 p = 2; p <= t.size(); ++p) {
        bool prime = true;
        for (u64 d = 2; d * d <= p; ++d) prime = prime && p % d;
        if (!prime) continue;
        std::set<u64> classes;
        for (i64 h : t) classes.insert(mod_floor(h, p));
        if (classes.size() == p) return false;
    }
    return true;
}

bool poly_admissible_oracle(const PolyRing& R, const std::vector<Poly>& t) {
    for (unsigned d = 1; checked_pow(R.q(), d) <= t.size(); ++d)
        for (const auto& P : enumerate_monic(R.q(), d, true)) {
            std::set<Poly> classes;
            for (const auto& h : t) classes.insert(rem(h, P));
            if (classes.size() == R.norm(P)) return false;
        }
    return true;
}

std::vector<i64> random_tuple(std::mt19937_64& rng, std::size_t k, i64 width) {
    std::set<i64> s;
    while (s.size() < k) s.insert(static_cast<i64>(rng() % width));
    return {s.begin(), s.end()};
}

}  // namespace

TEST(Admissible, Examples) {
    IntegerRing Z;
    EXPECT_TRUE(is_admissible(Z, std::vector<i64>{0, 2, 6}).admissible);
    const auto r = is_admissible(Z, std::vector<i64>{0, 1});
    EXPECT_FALSE(r.admissible);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(r.witness->prime, 2u);
    EXPECT_THROW(is_admissible(Z, std::vector<i64>{1, 1}), precondition_error);

    for (u64 q : {3, 5, 7})
        for (unsigned d : {0u, 1u, 2u}) {
            PolyRing R(q);
            std::vector<Poly> t;
            for (u64 a = 1; a < q; ++a) t.push_back(Poly::monomial(R.field(), a, d));
            EXPECT_TRUE(is_admissible(R, t).admissible) << q << " " << d;
        }
}

TEST(Admissible, AgreesWithOracleOverZ) {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto t = random_tuple(rng, 2 + trial % 9, 40);
        EXPECT_EQ(is_admissible(IntegerRing{}, t).admissible, admissible_oracle(t));
    }
}

TEST(Admissible, AgreesWithOracleOverPolys) {
    std::mt19937_64 rng(2);
    for (u64 q : {2, 3}) {
        PolyRing R(q);
        const auto pool = [&] {
            std::vector<Poly> v{Poly(R.field())};
            for (unsigned d = 0; d <= 2; ++d)
                for (const auto& m : enumerate_monic(q, d, false))
                    for (u64 a = 1; a < q; ++a) v.push_back(m.scaled(a));
            return v;
        }();
        for (int trial = 0; trial < 300; ++trial) {
            std::set<Poly> s;
            while (s.size() < 2 + static_cast<std::size_t>(trial % 7)) s.insert(pool[rng() % pool.size()]);
            std::vector<Poly> t(s.begin(), s.end());
            EXPECT_EQ(is_admissible(R, t).admissible, poly_admissible_oracle(R, t));
        }
    }
}

TEST(Admissible, TranslationAndSubsets) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        auto t = random_tuple(rng, 2 + trial % 7, 30);
        const bool a = is_admissible(IntegerRing{}, t).admissible;
        auto shifted = t;
        const i64 c = static_cast<i64>(rng() % 1000) - 500;
        for (auto& x : shifted) x += c;
        EXPECT_EQ(is_admissible(IntegerRing{}, shifted).admissible, a);
        if (a && t.size() > 1) {
            t.erase(t.begin() + static_cast<long>(rng() % t.size()));
            EXPECT_TRUE(is_admissible(IntegerRing{}, t).admissible);
        }
    }
}

TEST(Lift, AlwaysAdmissible) {
    EXPECT_TRUE(lift_admissible_check(std::vector<i64>{0, 2, 6}, QuadraticRing(2)).admissible);
    EXPECT_TRUE(lift_admissible_check(std::vector<i64>{0, 4, 6}, QuadraticRing(5)).admissible);
    EXPECT_THROW(lift_admissible_check(std::vector<i64>{0, 1}, QuadraticRing(3)), precondition_error);
    std::mt19937_64 rng(4);
    int tested = 0;
    while (tested < 200) {
        const auto t = random_tuple(rng, 2 + rng() % 7, 60);
        if (!admissible_oracle(t)) continue;
        ++tested;
        for (i64 d : {2, 3, 5, 13}) EXPECT_TRUE(lift_admissible_check(t, QuadraticRing(d)).admissible);
    }
}

TEST(NarrowSearch, Integers) {
    EXPECT_EQ(find_narrow_tuple(IntegerRing{}, 2), (std::vector<i64>{0, 2}));
    // minimal diameters for k = 2..10 by exhaustive search elsewhere
    const std::vector<i64> minimal = {0, 0, 2, 6, 8, 12, 16, 20, 26, 30, 32};
    for (std::size_t k = 2; k <= 10; ++k) {
        const auto t = find_narrow_tuple(IntegerRing{}, k);
        EXPECT_EQ(t.size(), k);
        EXPECT_TRUE(admissible_oracle(t));
        EXPECT_GE(diameter(t), minimal[k]);
    }
    EXPECT_LE(diameter(find_narrow_tuple(IntegerRing{}, 5)), 16);
}

TEST(NarrowSearch, ExhaustiveMinimumSmallK) {
    // exhaustive oracle: smallest diameter of an admissible k-tuple containing 0
    auto exhaustive = [](std::size_t k) {
        for (i64 D = static_cast<i64>(k) - 1;; ++D) {
            std::vector<i64> t{0};
            std::function<bool(i64)> rec = [&](i64 next) -> bool {
                if (t.size() == k - 1) {
                    t.push_back(D);
                    const bool ok = admissible_oracle(t);
                    t.pop_back();
                    return ok;
                }
                for (i64 x = next; x < D; ++x) {
                    t.push_back(x);
                    if (rec(x + 1)) return true;
                    t.pop_back();
                }
                return false;
            };
            if (rec(1)) return D;
        }
    };
    for (std::size_t k = 2; k <= 6; ++k) EXPECT_EQ(diameter(find_narrow_tuple(IntegerRing{}, k)), exhaustive(k));
}

TEST(NarrowSearch, DeterministicAcrossThreads) {
    NarrowSearchOptions one, many;
    many.threads = 8;
    for (std::size_t k : {7, 12, 20}) EXPECT_EQ(find_narrow_tuple(IntegerRing{}, k, one), find_narrow_tuple(IntegerRing{}, k, many));
}

TEST(NarrowSearch, Polynomials) {
    PolyRing R(3);
    const auto t = find_narrow_tuple(R, 4);
    EXPECT_EQ(t.size(), 4u);
    EXPECT_TRUE(poly_admissible_oracle(R, t));
    NarrowSearchOptions cap;
    cap.budget = 1;
    EXPECT_THROW(find_narrow_tuple(PolyRing(2), 3, cap), budget_exceeded);
}

TEST(Diameter, Examples) {
    EXPECT_EQ(diameter(std::vector<i64>{0, 2}), 2);
    EXPECT_EQ(diameter(std::vector<i64>{5}), 0);
}
