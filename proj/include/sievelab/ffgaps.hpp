#pragma once

/// @file ffgaps.hpp
/// @brief Gaps between monic irreducibles of equal degree over F_q: exact gap
/// censuses, the omega-twist for monomial gaps, a brute-force checker for the
/// two-translates assertion Z(k, d, n), and the resulting proportion bound.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

#include "sievelab/budget.hpp"
#include "sievelab/error.hpp"
#include "sievelab/ffpoly.hpp"
#include "sievelab/parallel.hpp"
#include "sievelab/rings.hpp"
#include "sievelab/tuples.hpp"

namespace sievelab {

struct GapCensus {
    u64 q = 0;
    unsigned n = 0;
    unsigned d = 0;
    /// (gap, number of ordered pairs (f1, f2) with f1 - f2 = gap), sorted by gap.
    std::vector<std::pair<Poly, u64>> occurrences;
    u64 total_degree_d = 0;  ///< (q - 1) q^d polynomials of degree exactly d
    u64 irreducibles = 0;

    u64 occurring() const noexcept { return occurrences.size(); }

    u64 count(const Poly& g) const {
        auto it = std::lower_bound(occurrences.begin(), occurrences.end(), g,
                                   [](const auto& e, const Poly& key) { return e.first < key; });
        return it != occurrences.end() && it->first == g ? it->second : 0;
    }

    /// occurring / total as an exact fraction.
    boost::multiprecision::mpq_rational proportion() const {
        return boost::multiprecision::mpq_rational(occurring(), total_degree_d);
    }
};

struct MonomialCensus {
    GapCensus census;   ///< keys restricted to a * t^d
    bool gcd_condition = false;  ///< gcd(n - d, q - 1) == 1
    bool all_occur = false;      ///< all q - 1 monomials occur
    /// Occurring coefficients are closed under a -> a * u^(n-d) for every unit u.
    bool orbit_closed = false;
};

namespace detail {

/// Index of a degree <= d polynomial as sum c_i q^i.
inline u64 small_code(const Poly& g) {
    u64 code = 0;
    for (int i = g.degree(); i >= 0; --i) code = code * g.field().q() + g.coeff(i);
    return code;
}

inline Poly from_small_code(PrimeField F, u64 code, unsigned d) {
    std::vector<u64> c(d + 1);
    for (unsigned i = 0; i <= d; ++i) {
        c[i] = code % F.q();
        code /= F.q();
    }
    return Poly(F, std::move(c));
}

/// monic_index of f + g for f of degree n given by its monic_index and
/// deg g < n, computed on base-q digits.
inline u64 shifted_index(u64 f_index, const std::vector<u64>& g, u64 q, unsigned n) {
    u64 out = 0, place = 1;
    for (unsigned j = 0; j < n; ++j) {
        // digit j from the right is the coefficient of t^(n-1-j)
        const u64 digit = f_index % q;
        f_index /= q;
        const unsigned i = n - 1 - j;
        const u64 gi = i < g.size() ? g[i] : 0;
        out += ((digit + gi) % q) * place;
        place *= q;
    }
    return out;
}

inline std::vector<u64> dense(const Poly& g, unsigned n) {
    std::vector<u64> c(n, 0);
    for (int i = 0; i <= g.degree(); ++i) c[i] = g.coeff(i);
    return c;
}

inline void check_census_args(u64 q, unsigned n, unsigned d) {
    require(n >= 1, "census needs n >= 1");
    require(d < n, "gap degree d must satisfy 0 <= d < n");
    PrimeField check(q);
    (void)check;
}

/// Census over the given candidate gaps: for each irreducible f1 and each
/// candidate g, f2 = f1 - g is looked up in the irreducibility table.
inline GapCensus census_over(u64 q, unsigned n, unsigned d, const std::vector<Poly>& candidates,
                             unsigned threads, Budget budget) {
    PrimeField F(q);
    GapCensus out;
    out.q = q;
    out.n = n;
    out.d = d;
    out.total_degree_d = (q - 1) * checked_pow(q, d);
    const auto table = irreducible_table(q, n, budget);
    std::vector<u64> irr;
    for (u64 i = 0; i < table.size(); ++i)
        if (table[i]) irr.push_back(i);
    out.irreducibles = irr.size();
    budget.check(irr.size() * std::max<u64>(candidates.size(), 1), "gap census pair checks");

    std::vector<std::vector<u64>> negated;
    for (const auto& g : candidates) negated.push_back(dense(-g, n));
    auto partial = parallel_map<std::vector<u64>>(kShards, threads, [&](u64 s) {
        std::vector<u64> counts(candidates.size(), 0);
        const auto [begin, end] = shard_range(irr.size(), kShards, s);
        for (u64 i = begin; i < end; ++i)
            for (std::size_t c = 0; c < candidates.size(); ++c)
                if (table[shifted_index(irr[i], negated[c], q, n)]) ++counts[c];
        return counts;
    });
    std::vector<u64> counts(candidates.size(), 0);
    for (const auto& p : partial)
        for (std::size_t c = 0; c < counts.size(); ++c) counts[c] += p[c];
    for (std::size_t c = 0; c < candidates.size(); ++c)
        if (counts[c]) out.occurrences.emplace_back(candidates[c], counts[c]);
    std::sort(out.occurrences.begin(), out.occurrences.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

/// All polynomials of degree exactly d, ascending.
inline std::vector<Poly> polys_of_degree(PrimeField F, unsigned d, Budget budget) {
    const u64 total = (F.q() - 1) * checked_pow(F.q(), d);
    budget.check(total, "polynomials of degree d");
    std::vector<Poly> out;
    out.reserve(total);
    const u64 base = checked_pow(F.q(), d);
    for (u64 code = base; code < base * F.q(); ++code) out.push_back(from_small_code(F, code, d));
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Ordered-pair counts of every degree-d difference between monic
/// irreducibles of degree n.
inline GapCensus gap_census(u64 q, unsigned n, unsigned d, unsigned threads = 1, Budget budget = default_budget()) {
    detail::check_census_args(q, n, d);
    PrimeField F(q);
    return detail::census_over(q, n, d, detail::polys_of_degree(F, d, budget), threads, budget);
}

inline MonomialCensus monomial_census(u64 q, unsigned n, unsigned d, unsigned threads = 1,
                                      Budget budget = default_budget()) {
    detail::check_census_args(q, n, d);
    PrimeField F(q);
    std::vector<Poly> monomials;
    for (u64 a = 1; a < q; ++a) monomials.push_back(Poly::monomial(F, a, d));
    MonomialCensus out;
    out.census = detail::census_over(q, n, d, monomials, threads, budget);
    out.census.total_degree_d = q - 1;
    out.gcd_condition = std::gcd(static_cast<u64>(n - d), q - 1) == 1;
    out.all_occur = out.census.occurring() == q - 1;
    std::vector<bool> seen(q, false);
    for (const auto& [g, c] : out.census.occurrences) seen[g.leading()] = true;
    out.orbit_closed = true;
    for (u64 a = 1; a < q && out.orbit_closed; ++a) {
        if (!seen[a]) continue;
        for (u64 u = 1; u < q; ++u)
            if (!seen[F.mul(a, F.pow(u, n - d))]) {
                out.orbit_closed = false;
                break;
            }
    }
    return out;
}

struct TwistResult {
    u64 omega = 0;
    Poly g1, g2;
};

/// Twists a pair with monomial difference c t^d to one with difference a t^d:
/// g_i = f_i(omega t) / omega^n where omega^(n-d) = c / a.
inline TwistResult twist_gap(const Poly& f1, const Poly& f2, u64 a) {
    f1.same_field(f2);
    const PrimeField& F = f1.field();
    const u64 q = F.q();
    require(f1.is_monic() && f2.is_monic(), "twist needs monic polynomials");
    require(f1.degree() == f2.degree() && f1.degree() >= 1, "twist needs polynomials of equal positive degree");
    require(is_irreducible(f1) && is_irreducible(f2), "twist needs irreducible polynomials");
    require(a % q != 0, "target leading coefficient must be nonzero");
    const Poly diff = f1 - f2;
    require(!diff.is_zero(), "polynomials are equal");
    const int d = diff.degree();
    for (int i = 0; i < d; ++i) require(diff.coeff(i) == 0, "difference is not a monomial");
    const u64 n = static_cast<u64>(f1.degree());
    const u64 e = n - static_cast<u64>(d);
    require(std::gcd(e, q - 1) == 1,
            "gcd(n - d, q - 1) = " + std::to_string(std::gcd(e, q - 1)) + " != 1, omega need not exist");
    const u64 c = diff.leading();
    const u64 target = F.mul(c, F.inv(a % q));
    // x -> x^e is a bijection on F_q^x; its inverse is x -> x^(e^-1 mod q-1)
    u64 omega = 1;
    if (q > 2) {
        const u64 einv = invmod(e % (q - 1), q - 1);
        omega = F.pow(target, einv);
    }
    if (F.pow(omega, e) != target) throw std::logic_error("twist: omega root computation failed");
    return {omega, twist(f1, omega), twist(f2, omega)};
}

enum class ZStatus { holds, fails, inconclusive };

inline const char* to_string(ZStatus s) {
    switch (s) {
        case ZStatus::holds: return "holds";
        case ZStatus::fails: return "fails";
        case ZStatus::inconclusive: return "inconclusive";
    }
    return "?";
}

struct ZAssertionResult {
    u64 q = 0;
    unsigned k = 0, d = 0, n = 0;
    ZStatus status = ZStatus::holds;
    std::optional<std::vector<Poly>> counterexample;
    u64 tuples_examined = 0;

    bool holds() const noexcept { return status == ZStatus::holds; }
};

/// Brute-force Z(k, d, n): every admissible tuple (0, h_2, ..., h_k) with each
/// h_i and each difference of degree exactly d has a monic f of degree n with
/// at least two of f + h_i irreducible. Tuples are ascending sets, scanned in
/// lexicographic order; the first failure in that order is the counterexample.
inline ZAssertionResult check_Z(u64 q, unsigned k, unsigned d, unsigned n, unsigned threads = 1,
                                Budget budget = default_budget()) {
    require(k >= 2, "Z(k, d, n) needs k >= 2");
    require(n >= 1 && d < n, "Z(k, d, n) needs 0 <= d < n");
    PolyRing ring(q);
    const PrimeField& F = ring.field();
    ZAssertionResult res;
    res.q = q;
    res.k = k;
    res.d = d;
    res.n = n;

    // pairwise differences of degree d force distinct nonzero leading coefficients
    // any budget overrun leaves the universal statement undecided
    std::vector<Poly> pool;
    try {
        pool = detail::polys_of_degree(F, d, budget);
    } catch (const budget_exceeded&) {
        res.status = ZStatus::inconclusive;
        return res;
    }
    std::vector<std::vector<u64>> tuples;  // indices into pool
    std::vector<u64> idx;
    const u64 fcount = checked_pow(q, n);
    bool over = false;
    auto extend = [&](auto&& self, std::size_t start) -> void {
        if (over) return;
        if (idx.size() + 1 == k) {
            tuples.push_back(idx);
            if (tuples.size() * fcount > budget.limit) over = true;
            return;
        }
        for (std::size_t i = start; i < pool.size(); ++i) {
            bool clash = false;
            for (u64 j : idx)
                if (pool[j].leading() == pool[i].leading()) clash = true;
            if (clash) continue;
            idx.push_back(i);
            self(self, i + 1);
            idx.pop_back();
            if (over) return;
        }
    };
    extend(extend, 0);
    if (over) {
        res.status = ZStatus::inconclusive;
        return res;
    }

    std::vector<bool> table;
    try {
        table = irreducible_table(q, n, budget);
    } catch (const budget_exceeded&) {
        res.status = ZStatus::inconclusive;
        return res;
    }
    struct ShardOut {
        u64 admissible = 0;
        std::optional<u64> first_failure;
    };
    auto parts = parallel_map<ShardOut>(kShards, threads, [&](u64 s) {
        ShardOut out;
        const auto [begin, end] = shard_range(tuples.size(), kShards, s);
        for (u64 t = begin; t < end; ++t) {
            std::vector<Poly> h{Poly(F)};
            for (u64 i : tuples[t]) h.push_back(pool[i]);
            if (!is_admissible(ring, h).admissible) continue;
            ++out.admissible;
            if (out.first_failure) continue;
            std::vector<std::vector<u64>> dh;
            for (const auto& x : h) dh.push_back(detail::dense(x, n));
            bool found = false;
            for (u64 f = 0; f < fcount && !found; ++f) {
                unsigned hits = 0;
                for (const auto& g : dh)
                    if (table[detail::shifted_index(f, g, q, n)] && ++hits >= 2) break;
                found = hits >= 2;
            }
            if (!found) out.first_failure = t;
        }
        return out;
    });
    std::optional<u64> failure;
    for (const auto& p : parts) {
        res.tuples_examined += p.admissible;
        if (p.first_failure && !failure) failure = p.first_failure;
    }
    if (failure) {
        res.status = ZStatus::fails;
        std::vector<Poly> h{Poly(F)};
        for (u64 i : tuples[*failure]) h.push_back(pool[i]);
        res.counterexample = std::move(h);
    }
    return res;
}

/// 1/(k0 - 1) - 1/(q - 1), the lower bound on the proportion of degree-d
/// polynomials that occur as gaps.
inline boost::multiprecision::mpq_rational proportion_bound(u64 k0, u64 q) {
    require(k0 >= 2, "k0 must be at least 2");
    require(q >= k0 + 1, "the proportion bound needs q >= k0 + 1");
    using boost::multiprecision::mpq_rational;
    return mpq_rational(1, k0 - 1) - mpq_rational(1, q - 1);
}

}  // namespace sievelab
