#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <map>

#include "sievelab/rings.hpp"

using namespace sievelab;

namespace {

Poly P(u64 q, std::vector<u64> c) { return Poly(PrimeField(q), std::move(c)); }

// |(F_q[t]/m)^x| by counting residues of degree < deg m coprime to m.
u64 phi_by_count(const Poly& m) {
    const u64 q = m.field().q();
    u64 count = 0;
    const u64 total = checked_pow(q, static_cast<unsigned>(m.degree()));
    for (u64 code = 0; code < total; ++code) {
        std::vector<u64> c(m.degree());
        u64 v = code;
        for (auto& x : c) {
            x = v % q;
            v /= q;
        }
        const Poly a(m.field(), c);
        if (m.degree() == 0 || (!a.is_zero() && gcd(a, m).degree() == 0)) ++count;
    }
    return count;
}

u64 phi_int_by_count(u64 n) {
    u64 c = 0;
    for (u64 a = 1; a <= n; ++a) c += std::gcd(a, n) == 1;
    return c;
}

}  // namespace

TEST(Dictionary, NormPhiMoebiusExamples) {
    IntegerRing Z;
    EXPECT_EQ(Z.norm(6), 6u);
    EXPECT_EQ(Z.euler_phi(6), 2u);
    EXPECT_EQ(Z.moebius(6), 1);
    PolyRing F3(3), F2(2);
    EXPECT_EQ(F3.norm(P(3, {1, 0, 1})), 9u);
    EXPECT_EQ(F2.euler_phi(P(2, {0, 1, 1})), 1u);
    EXPECT_EQ(F3.euler_phi(P(3, {0, 0, 1})), 6u);
    EXPECT_EQ(F3.moebius(P(3, {0, 0, 1})), 0);
    EXPECT_EQ(F2.moebius(P(2, {0, 1}) * P(2, {1, 1}) * P(2, {1, 1, 1})), -1);
    QuadraticRing O(2);
    const auto above7 = O.field().primes_above(7);
    ASSERT_EQ(above7.size(), 2u);
    for (const auto& P7 : above7) EXPECT_EQ(O.prime_norm(P7), 7u);
}

TEST(Dictionary, PhiAgreesWithCounting) {
    for (u64 n = 1; n <= 300; ++n) EXPECT_EQ(euler_phi_int(n), phi_int_by_count(n)) << n;
    for (u64 q : {2, 3, 5})
        for (unsigned d = 0; checked_pow(q, d) <= 125; ++d)
            for (const auto& m : enumerate_monic(q, d, false)) EXPECT_EQ(PolyRing(q).euler_phi(m), phi_by_count(m));
}

TEST(Dictionary, Multiplicativity) {
    PolyRing R(3);
    std::vector<Poly> small;
    for (unsigned d = 0; d <= 2; ++d)
        for (auto& m : enumerate_monic(3, d, false)) small.push_back(m);
    for (const auto& a : small)
        for (const auto& b : small) {
            if (!R.coprime(a, b)) continue;
            EXPECT_EQ(R.norm(a * b), R.norm(a) * R.norm(b));
            EXPECT_EQ(R.euler_phi(a * b), R.euler_phi(a) * R.euler_phi(b));
            EXPECT_EQ(R.moebius(a * b), R.moebius(a) * R.moebius(b));
        }
    IntegerRing Z;
    for (u64 a = 1; a < 60; ++a)
        for (u64 b = 1; b < 60; ++b) {
            if (std::gcd(a, b) != 1) continue;
            EXPECT_EQ(Z.euler_phi(a * b), Z.euler_phi(a) * Z.euler_phi(b));
            EXPECT_EQ(Z.moebius(a * b), Z.moebius(a) * Z.moebius(b));
        }
}

TEST(Dictionary, ZetaResidue) {
    EXPECT_DOUBLE_EQ(zeta_residue(RingDescriptor::integers()), 1.0);
    EXPECT_NEAR(zeta_residue(RingDescriptor::poly(3)), 0.9102, 1e-4);
    EXPECT_THROW(zeta_residue(RingDescriptor::real_quadratic(2)), precondition_error);
}

TEST(Dictionary, Boxes) {
    EXPECT_EQ(IntegerRing{}.box(4), (std::vector<i64>{5, 6, 7, 8}));
    EXPECT_EQ(PolyRing(3).box(9).size(), 9u);
    EXPECT_EQ(IntegerRing{}.box(1000).size(), 1000u);
    EXPECT_EQ(PolyRing(5).box(625).size(), 625u);
    EXPECT_THROW(PolyRing(3).box(10), precondition_error);
    EXPECT_EQ(QuadraticField(2).box0(2), (std::vector<QuadInt>{{1, 0}, {2, 0}}));
}

TEST(Dictionary, QuadraticBoxAgreesWithFilter) {
    for (i64 d : {2, 3, 5, 13}) {
        QuadraticField K(d);
        const i64 N = 25;
        std::vector<QuadInt> expect;
        // superset scan on coordinates, filtered by the floating embeddings with a margin check
        for (i64 x = -4 * N; x <= 4 * N; ++x)
            for (i64 y = -4 * N; y <= 4 * N; ++y) {
                const auto [s1, s2] = K.embeddings({x, y});
                const double e1 = K.embedding_value(s1), e2 = K.embedding_value(s2);
                if (e1 > 0 && e1 <= N && e2 > 0 && e2 <= N) expect.push_back({x, y});
            }
        auto got = K.box0(N);
        std::sort(got.begin(), got.end());
        std::sort(expect.begin(), expect.end());
        EXPECT_EQ(got, expect) << d;
    }
}

TEST(Dictionary, ResidueClassCounts) {
    PolyRing R(3);
    const auto box = R.box(729);
    for (unsigned d = 1; d <= 3; ++d)
        for (const auto& m : enumerate_monic(3, d, false)) {
            std::map<Poly, u64> counts;
            for (const auto& a : box) ++counts[rem(a, m)];
            ASSERT_EQ(counts.size(), R.norm(m));
            for (const auto& [_, c] : counts) EXPECT_EQ(c, 729 / R.norm(m));
        }
    IntegerRing Z;
    const auto zbox = Z.box(1000);
    for (u64 m = 1; m <= 60; ++m) {
        std::vector<u64> counts(m, 0);
        for (i64 a : zbox) ++counts[mod_floor(a, m)];
        for (u64 c : counts) EXPECT_LE(std::fabs(double(c) - 1000.0 / m), 1.0);
    }
}

TEST(Dictionary, SquarefreeModuli) {
    IntegerRing Z;
    std::vector<u64> got;
    for (const auto& m : enumerate_squarefree_moduli(Z, 10, 6)) got.push_back(m.value);
    EXPECT_EQ(got, (std::vector<u64>{1, 5, 7}));

    // t^2 + t + 1 is squarefree of norm 4 as well
    PolyRing F2(2);
    std::vector<Poly> polys;
    for (const auto& m : enumerate_squarefree_moduli(F2, 4, P(2, {1}))) polys.push_back(m.value);
    EXPECT_EQ(polys, (std::vector<Poly>{P(2, {1}), P(2, {0, 1}), P(2, {1, 1}), P(2, {0, 1, 1}), P(2, {1, 1, 1})}));

    // oracle: squarefree monic polynomials of degree <= 3 coprime to t, by trial gcd with squares
    PolyRing F3(3);
    std::vector<Poly> expect;
    for (unsigned d = 0; d <= 3; ++d)
        for (const auto& f : enumerate_monic(3, d, false)) {
            if (f.coeff(0) == 0 && d > 0) continue;
            bool squarefree = true;
            for (unsigned e = 1; 2 * e <= d; ++e)
                for (const auto& g : enumerate_monic(3, e, false)) squarefree = squarefree && !rem(f, g * g).is_zero();
            if (squarefree) expect.push_back(f);
        }
    std::vector<Poly> got3;
    for (const auto& m : enumerate_squarefree_moduli(F3, 27, P(3, {0, 1}))) got3.push_back(m.value);
    std::sort(expect.begin(), expect.end());
    EXPECT_EQ(got3, expect);

    EXPECT_EQ(enumerate_squarefree_moduli(Z, 0, 1).size(), 1u);
    // every enumerated modulus is squarefree and factors as recorded
    for (const auto& m : enumerate_squarefree_moduli(Z, 500, 1)) {
        EXPECT_NE(Z.moebius(m.value), 0);
        EXPECT_EQ(Z.modulus_from_primes(m.primes), m.value);
    }
}

TEST(Dictionary, Primorial) {
    IntegerRing Z;
    EXPECT_EQ(primorial_w(Z, 5).value, 6u);
    EXPECT_EQ(primorial_w(Z, 2).value, 1u);
    PolyRing F3(3);
    EXPECT_EQ(primorial_w(F3, 4).value, P(3, {0, 1}) * P(3, {1, 1}) * P(3, {2, 1}));
}

TEST(Dictionary, DescriptorText) {
    for (const char* s : {"Z", "Fq[t]:q=3", "Q(sqrt:2)"}) EXPECT_EQ(RingDescriptor::parse(s).to_string(), s);
    EXPECT_THROW(RingDescriptor::parse("Q(sqrt:7)"), precondition_error);
    EXPECT_THROW(RingDescriptor::parse("Fq[t]:q=4"), precondition_error);
    EXPECT_THROW(RingDescriptor::parse("R"), precondition_error);
}
