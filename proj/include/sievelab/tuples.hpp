#pragma once

/// @file tuples.hpp
/// @brief Admissibility of k-tuples over Z, F_q[t] and O_K, the Z -> O_K lift
/// check, and greedy residue-sieving search for narrow admissible tuples.

#include <algorithm>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sievelab/budget.hpp"
#include "sievelab/error.hpp"
#include "sievelab/parallel.hpp"
#include "sievelab/rings.hpp"

namespace sievelab {

template <class Prime>
struct AdmissibilityWitness {
    Prime prime;
    std::vector<u64> covered_residues;
};

template <class Prime>
struct AdmissibilityReport {
    bool admissible = true;
    std::optional<AdmissibilityWitness<Prime>> witness;
    std::vector<Prime> primes_checked;
};

template <class T>
void require_distinct(std::span<const T> tuple) {
    require(!tuple.empty(), "a tuple needs at least one element");
    std::vector<T> sorted(tuple.begin(), tuple.end());
    std::sort(sorted.begin(), sorted.end());
    require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
            "tuple elements must be pairwise distinct");
}

/// Checks every prime of norm at most k; a k-element set cannot cover a
/// residue ring with more than k classes.
template <class Ring>
AdmissibilityReport<typename Ring::prime_type> is_admissible(
    const Ring& ring, std::span<const typename Ring::element_type> tuple) {
    require_distinct(tuple);
    AdmissibilityReport<typename Ring::prime_type> report;
    report.primes_checked = ring.primes_up_to_norm(tuple.size());
    for (const auto& P : report.primes_checked) {
        const u64 classes = ring.prime_norm(P);
        std::vector<bool> hit(classes, false);
        u64 covered = 0;
        for (const auto& h : tuple) {
            const u64 r = ring.residue_index(h, P);
            if (!hit[r]) {
                hit[r] = true;
                ++covered;
            }
        }
        if (covered == classes) {
            report.admissible = false;
            std::vector<u64> residues(classes);
            std::iota(residues.begin(), residues.end(), 0);
            report.witness = AdmissibilityWitness<typename Ring::prime_type>{P, std::move(residues)};
            return report;
        }
    }
    return report;
}

template <class Ring>
AdmissibilityReport<typename Ring::prime_type> is_admissible(
    const Ring& ring, const std::vector<typename Ring::element_type>& tuple) {
    return is_admissible(ring, std::span<const typename Ring::element_type>(tuple));
}

/// Runs the O_K admissibility check on a Z-admissible tuple of rational
/// integers. Rational integers only reach the prime subfield of O_K/P, so the
/// result should always be admissible; this checks rather than assumes it.
inline AdmissibilityReport<QuadPrimeIdeal> lift_admissible_check(std::span<const i64> tuple,
                                                                 const QuadraticRing& target) {
    require(is_admissible(IntegerRing{}, tuple).admissible,
            "lift requires a tuple that is admissible over Z");
    std::vector<QuadInt> lifted;
    for (i64 h : tuple) lifted.push_back(target.element_from_int(h));
    return is_admissible(target, lifted);
}

inline i64 diameter(std::span<const i64> tuple) {
    require(!tuple.empty(), "diameter of an empty tuple");
    const auto [lo, hi] = std::minmax_element(tuple.begin(), tuple.end());
    return *hi - *lo;
}

// ---------------------------------------------------------------------------
// Narrow tuple search

struct NarrowSearchOptions {
    /// Z: number of (width, offset) sieve attempts. F_q[t]: maximum degree.
    u64 budget = 100'000;
    /// Offsets tried per interval width (Z only).
    u64 offsets_per_width = 32;
    unsigned threads = 1;
};

namespace detail {

inline bool admissible_int(const std::vector<i64>& t) {
    return is_admissible(IntegerRing{}, std::span<const i64>(t)).admissible;
}

/// Drop an endpoint and refill from the interior while admissibility allows.
inline std::vector<i64> shrink_tuple(std::vector<i64> t) {
    std::sort(t.begin(), t.end());
    for (bool improved = true; improved;) {
        improved = false;
        for (int side = 0; side < 2 && !improved; ++side) {
            std::vector<i64> u = t;
            if (side == 0) u.pop_back();
            else u.erase(u.begin());
            for (i64 x = u.front() + 1; x < u.back(); ++x) {
                if (std::binary_search(u.begin(), u.end(), x)) continue;
                std::vector<i64> w = u;
                w.insert(std::upper_bound(w.begin(), w.end(), x), x);
                if (admissible_int(w)) {
                    t = std::move(w);
                    improved = true;
                    break;
                }
            }
        }
    }
    const i64 base = t.front();
    for (auto& x : t) x -= base;
    return t;
}

/// Greedy sieve of [offset, offset + width]: for each prime p <= k remove the
/// residue class containing the fewest survivors (smallest class on ties).
inline std::optional<std::vector<i64>> sieve_interval(std::size_t k, i64 offset, i64 width,
                                                      const std::vector<u64>& primes) {
    std::vector<i64> survivors(width + 1);
    std::iota(survivors.begin(), survivors.end(), offset);
    for (u64 p : primes) {
        std::vector<std::size_t> count(p, 0);
        for (i64 x : survivors) ++count[mod_floor(x, p)];
        const u64 cls = static_cast<u64>(std::min_element(count.begin(), count.end()) - count.begin());
        std::erase_if(survivors, [&](i64 x) { return mod_floor(x, p) == cls; });
        if (survivors.size() < k) return std::nullopt;
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i + k <= survivors.size(); ++i)
        if (survivors[i + k - 1] - survivors[i] < survivors[best + k - 1] - survivors[best]) best = i;
    return shrink_tuple(std::vector<i64>(survivors.begin() + best, survivors.begin() + best + k));
}

}  // namespace detail

/// Narrow admissible k-tuple over Z, normalized to start at 0.
///
/// Interval widths are tried in increasing order; for each width a fixed set of
/// offsets is sieved (in parallel shards). The first width that yields a tuple
/// ends the search and the smallest diameter wins, ties broken by the
/// lexicographically smallest tuple, so the result does not depend on threads.
inline std::vector<i64> find_narrow_tuple(const IntegerRing&, std::size_t k, NarrowSearchOptions opts = {}) {
    require(k >= 2, "narrow tuple search needs k >= 2");
    const auto primes = primes_up_to(k);
    u64 attempts = 0;
    for (i64 width = static_cast<i64>(k) - 1;; ++width) {
        const u64 offsets = opts.offsets_per_width;
        if (attempts + offsets > opts.budget)
            throw budget_exceeded("narrow tuple search exhausted its budget");
        attempts += offsets;
        auto results = parallel_map<std::optional<std::vector<i64>>>(
            offsets, opts.threads,
            [&](u64 s) { return detail::sieve_interval(k, static_cast<i64>(s), width, primes); });
        std::optional<std::vector<i64>> best;
        for (auto& r : results) {
            if (!r) continue;
            if (!best || diameter(*r) < diameter(*best) ||
                (diameter(*r) == diameter(*best) && *r < *best))
                best = std::move(r);
        }
        if (best) return *best;
    }
}

/// Admissible k-tuple over F_q[t] of minimal maximum degree found by greedy
/// sieving of the polynomials of degree <= D, D = 0, 1, ..., opts.budget.
inline std::vector<Poly> find_narrow_tuple(const PolyRing& ring, std::size_t k, NarrowSearchOptions opts = {},
                                           Budget budget = default_budget()) {
    require(k >= 2, "narrow tuple search needs k >= 2");
    const auto primes = ring.primes_up_to_norm(k);
    for (u64 D = 0; D <= opts.budget; ++D) {
        const u64 count = checked_pow(ring.q(), static_cast<unsigned>(D + 1));
        budget.check(count, "narrow polynomial tuple candidates");
        std::vector<Poly> survivors;
        survivors.push_back(Poly(ring.field()));
        for (unsigned deg = 0; deg <= D; ++deg)
            for (u64 lead = 1; lead < ring.q(); ++lead)
                for (auto& f : enumerate_monic(ring.q(), deg, false, budget))
                    survivors.push_back(f.scaled(lead));
        std::stable_sort(survivors.begin(), survivors.end());
        for (const auto& P : primes) {
            std::vector<std::size_t> hits(ring.prime_norm(P), 0);
            for (const auto& f : survivors) ++hits[ring.residue_index(f, P)];
            const u64 cls = static_cast<u64>(std::min_element(hits.begin(), hits.end()) - hits.begin());
            std::erase_if(survivors, [&](const Poly& f) { return ring.residue_index(f, P) == cls; });
        }
        if (survivors.size() >= k) {
            survivors.erase(survivors.begin() + static_cast<std::ptrdiff_t>(k), survivors.end());
            return survivors;
        }
    }
    throw budget_exceeded("no admissible " + std::to_string(k) + "-tuple of degree <= " +
                          std::to_string(opts.budget) + " over F_" + std::to_string(ring.q()) + "[t]");
}

}  // namespace sievelab
