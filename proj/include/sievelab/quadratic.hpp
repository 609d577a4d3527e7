#pragma once

/// @file quadratic.hpp
/// @brief Rings of integers of the class-number-one real quadratic fields
/// Q(sqrt d), d in {2, 3, 5, 13}.
///
/// Elements are x + y*w over the integral basis (1, w) with w = sqrt(d) when
/// d = 2, 3 (mod 4) and w = (1 + sqrt(d)) / 2 when d = 1 (mod 4). All
/// comparisons of real embeddings are exact: an embedding value is carried as
/// (a + b*sqrt(d)) / 2 with integers a, b.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "sievelab/arith.hpp"
#include "sievelab/budget.hpp"
#include "sievelab/error.hpp"

namespace sievelab {

/// (a + b*sqrt(d)) / 2 for a fixed squarefree d > 0.
struct HalfSurd {
    i64 a;
    i64 b;
};

/// Sign of a + b*sqrt(d), computed without floating point.
inline int surd_sign(i64 a, i64 b, i64 d) {
    const int sa = (a > 0) - (a < 0);
    const int sb = (b > 0) - (b < 0);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    // opposite signs: compare a^2 with b^2 d
    const __int128 lhs = static_cast<__int128>(a) * a;
    const __int128 rhs = static_cast<__int128>(b) * b * d;
    if (lhs == rhs) return 0;
    return lhs > rhs ? sa : sb;
}

/// Exact three-way comparison of two half-surds over the same d.
inline std::strong_ordering compare(const HalfSurd& x, const HalfSurd& y, i64 d) {
    const int s = surd_sign(x.a - y.a, x.b - y.b, d);
    return s < 0 ? std::strong_ordering::less
                 : (s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

struct QuadInt {
    i64 x = 0;
    i64 y = 0;

    friend bool operator==(const QuadInt&, const QuadInt&) = default;
    friend auto operator<=>(const QuadInt&, const QuadInt&) = default;
};

enum class PrimeIdealType { split, inert, ramified };

/// A prime ideal of O_K lying over the rational prime p. For degree-one
/// primes, `root` is a root of the minimal polynomial of w modulo p and the
/// residue map is x + y*w -> x + y*root (mod p).
struct QuadPrimeIdeal {
    u64 p;
    PrimeIdealType type;
    u64 root = 0;

    u64 norm() const { return type == PrimeIdealType::inert ? p * p : p; }
    friend bool operator==(const QuadPrimeIdeal&, const QuadPrimeIdeal&) = default;
    friend auto operator<=>(const QuadPrimeIdeal&, const QuadPrimeIdeal&) = default;
};

class QuadraticField {
public:
    static constexpr std::array<i64, 4> whitelist{2, 3, 5, 13};

    explicit QuadraticField(i64 d) : d_(d) {
        require(std::find(whitelist.begin(), whitelist.end(), d) != whitelist.end(),
                "real quadratic field must be Q(sqrt d) with d in {2,3,5,13}, got d=" +
                    std::to_string(d));
        half_ = (d % 4 == 1);
    }

    i64 d() const noexcept { return d_; }
    /// True when the integral basis is (1, (1+sqrt d)/2).
    bool half_basis() const noexcept { return half_; }

    /// w^2 = trace_w * w + norm_shift.
    i64 w_trace() const noexcept { return half_ ? 1 : 0; }
    i64 w_square_const() const noexcept { return half_ ? (d_ - 1) / 4 : d_; }

    QuadInt add(QuadInt a, QuadInt b) const { return {a.x + b.x, a.y + b.y}; }
    QuadInt sub(QuadInt a, QuadInt b) const { return {a.x - b.x, a.y - b.y}; }
    QuadInt mul(QuadInt a, QuadInt b) const {
        const i64 yy = a.y * b.y;
        return {a.x * b.x + yy * w_square_const(), a.x * b.y + a.y * b.x + yy * w_trace()};
    }

    /// Field norm sigma1(a) * sigma2(a).
    i64 norm(QuadInt a) const {
        return a.x * a.x + w_trace() * a.x * a.y - w_square_const() * a.y * a.y;
    }

    /// The two real embeddings as exact half-surds, sigma1 with +sqrt(d).
    std::pair<HalfSurd, HalfSurd> embeddings(QuadInt a) const {
        if (half_) return {{2 * a.x + a.y, a.y}, {2 * a.x + a.y, -a.y}};
        return {{2 * a.x, 2 * a.y}, {2 * a.x, -2 * a.y}};
    }

    double embedding_value(const HalfSurd& s) const {
        return (static_cast<double>(s.a) + static_cast<double>(s.b) * std::sqrt(static_cast<double>(d_))) / 2.0;
    }

    /// Embedding-wise comparison 0 < sigma(a) <= bound at both embeddings.
    bool in_box0(QuadInt a, i64 bound) const {
        const auto [s1, s2] = embeddings(a);
        const HalfSurd zero{0, 0};
        const HalfSurd top{2 * bound, 0};
        for (const auto& s : {s1, s2})
            if (compare(s, zero, d_) != std::strong_ordering::greater ||
                compare(s, top, d_) == std::strong_ordering::greater)
                return false;
        return true;
    }

    /// |sigma(a)| <= bound at both embeddings.
    bool embeddings_bounded(QuadInt a, i64 bound) const {
        const auto [s1, s2] = embeddings(a);
        for (const auto& s : {s1, s2}) {
            if (surd_sign(s.a - 2 * bound, s.b, d_) > 0) return false;
            if (surd_sign(s.a + 2 * bound, s.b, d_) < 0) return false;
        }
        return true;
    }

    /// max(sigma1, sigma2), exact.
    HalfSurd height(QuadInt a) const {
        const auto [s1, s2] = embeddings(a);
        return compare(s1, s2, d_) == std::strong_ordering::less ? s2 : s1;
    }

    bool is_unit(QuadInt a) const {
        const i64 n = norm(a);
        return n == 1 || n == -1;
    }

    /// The fundamental unit: 1+sqrt2, 2+sqrt3, (1+sqrt5)/2, (3+sqrt13)/2.
    QuadInt fundamental_unit() const {
        switch (d_) {
            case 2: return {1, 1};
            case 3: return {2, 1};
            case 5: return {0, 1};
            default: return {1, 1};
        }
    }

    /// Inverse of a unit (the conjugate times the norm sign).
    QuadInt unit_inverse(QuadInt u) const {
        const i64 n = norm(u);
        require(n == 1 || n == -1, "unit_inverse of a non-unit");
        const QuadInt conj = half_ ? QuadInt{u.x + u.y, -u.y} : QuadInt{u.x, -u.y};
        return {conj.x * n, conj.y * n};
    }

    /// Roots of the minimal polynomial of w modulo p (brute force; p is small here).
    std::vector<u64> min_poly_roots(u64 p) const {
        std::vector<u64> roots;
        const u64 c = mod_floor(w_square_const(), p);
        const u64 tr = mod_floor(w_trace(), p);
        for (u64 r = 0; r < p; ++r) {
            const u64 val = (mulmod(r, r, p) + p - mulmod(tr, r, p) + p - c) % p;
            if (val == 0) roots.push_back(r);
        }
        return roots;
    }

    /// True when the rational prime p stays prime in O_K.
    bool is_inert(u64 p) const {
        if (p == 2 || p < 1000) return min_poly_roots(p).empty();
        // discriminant of the minimal polynomial is d or 4d
        const u64 disc = mod_floor(half_ ? d_ : 4 * d_, p);
        if (disc == 0) return false;
        return powmod(disc, (p - 1) / 2, p) == p - 1;
    }

    /// Prime ideals above p.
    std::vector<QuadPrimeIdeal> primes_above(u64 p) const {
        const auto roots = min_poly_roots(p);
        if (roots.empty()) return {{p, PrimeIdealType::inert, 0}};
        if (roots.size() == 1) return {{p, PrimeIdealType::ramified, roots[0]}};
        return {{p, PrimeIdealType::split, roots[0]}, {p, PrimeIdealType::split, roots[1]}};
    }

    /// All prime ideals of norm at most `bound`, ordered by (norm, p, root).
    std::vector<QuadPrimeIdeal> prime_ideals_up_to_norm(u64 bound) const {
        std::vector<QuadPrimeIdeal> out;
        for (u64 p : primes_up_to(bound))
            for (const auto& P : primes_above(p))
                if (P.norm() <= bound) out.push_back(P);
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
            return std::tuple(a.norm(), a.p, a.root) < std::tuple(b.norm(), b.p, b.root);
        });
        return out;
    }

    /// Residue of a modulo P as an index in [0, |P|).
    u64 residue_index(QuadInt a, const QuadPrimeIdeal& P) const {
        const u64 p = P.p;
        if (P.type == PrimeIdealType::inert) return mod_floor(a.x, p) * p + mod_floor(a.y, p);
        return (mod_floor(a.x, p) + mulmod(mod_floor(a.y, p), P.root, p)) % p;
    }

    bool ideal_divides(const QuadPrimeIdeal& P, QuadInt a) const { return residue_index(a, P) == 0; }

    /// Generator of a principal prime ideal: |N(a)| prime, or a = p * unit with
    /// p an inert rational prime.
    bool is_prime_element(QuadInt a) const {
        require(!(a.x == 0 && a.y == 0), "is_prime_element: zero");
        require(!is_unit(a), "is_prime_element: unit");
        const u64 n = static_cast<u64>(std::llabs(norm(a)));
        if (is_prime_trial(n)) return true;
        const u64 r = static_cast<u64>(std::llround(std::sqrt(static_cast<double>(n))));
        for (u64 p = (r > 2 ? r - 2 : 1); p <= r + 2; ++p) {
            if (p * p != n || !is_prime_trial(p)) continue;
            return is_inert(p) && a.x % static_cast<i64>(p) == 0 && a.y % static_cast<i64>(p) == 0;
        }
        return false;
    }

    /// Coordinate bounds that contain every element of A_0(bound).
    i64 scan_radius(i64 bound) const { return 2 * bound + 2; }

    /// Elements of A_0(N) = {a : 0 < sigma(a) <= N at both embeddings}, sorted
    /// by (x, y). The scan covers the lattice points with |trace|, |y| bounded
    /// by the box and filters exactly.
    std::vector<QuadInt> box0(i64 N, Budget budget = default_budget()) const {
        require(N >= 1, "box size must be positive");
        // sigma1 + sigma2 = 2x + tr*y in (0, 2N]; |sigma1 - sigma2| = |y| sqrt(disc) < 2N
        const double sq = std::sqrt(static_cast<double>(d_)) * (half_ ? 1.0 : 2.0);
        const i64 ymax = static_cast<i64>(2.0 * static_cast<double>(N) / sq) + 1;
        budget.check(static_cast<u64>(2 * ymax + 1) * static_cast<u64>(N + 1), "quadratic box scan");
        std::vector<QuadInt> out;
        for (i64 y = -ymax; y <= ymax; ++y) {
            // 0 < 2x + tr*y <= 2N
            const i64 tr = w_trace() * y;
            const i64 xlo = (-tr) / 2 - 1, xhi = (2 * N - tr) / 2 + 1;
            for (i64 x = xlo; x <= xhi; ++x)
                if (in_box0({x, y}, N)) out.push_back({x, y});
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    /// A(N) = A_0(2N) \ A_0(N).
    std::vector<QuadInt> box(i64 N, Budget budget = default_budget()) const {
        std::vector<QuadInt> out;
        for (const auto& a : box0(2 * N, budget))
            if (!in_box0(a, N)) out.push_back(a);
        return out;
    }

    std::string element_string(QuadInt a) const {
        const std::string w = half_ ? "w" : "sqrt" + std::to_string(d_);
        return std::to_string(a.x) + (a.y < 0 ? " - " : " + ") + std::to_string(std::llabs(a.y)) + "*" + w;
    }

private:
    i64 d_;
    bool half_;
};

struct PrimePair {
    QuadInt first;
    QuadInt second;
};

struct PrimePairSearchResult {
    std::vector<PrimePair> pairs;
    bool truncated = false;
    u64 primes_in_box = 0;
};

/// Pairs of distinct prime elements of A_0(N) whose difference has both
/// embeddings bounded by B in absolute value.
///
/// Pairs are reported in order of the larger height max(sigma) of the two
/// elements, so the pairs among the smallest elements come first; at most
/// `cap` pairs are returned.
inline PrimePairSearchResult prime_pair_search(const QuadraticField& K, i64 gap_bound, i64 N,
                                               std::size_t cap, Budget budget = default_budget()) {
    require(gap_bound >= 0, "gap bound must be non-negative");
    PrimePairSearchResult res;
    std::vector<QuadInt> primes;
    for (const auto& a : K.box0(N, budget))
        if (!K.is_unit(a) && K.is_prime_element(a)) primes.push_back(a);
    res.primes_in_box = primes.size();
    const i64 d = K.d();
    std::stable_sort(primes.begin(), primes.end(), [&](const QuadInt& a, const QuadInt& b) {
        const auto c = compare(K.height(a), K.height(b), d);
        if (c != 0) return c < 0;
        return a < b;
    });
    if (gap_bound == 0) return res;
    std::vector<double> heights(primes.size());
    for (std::size_t i = 0; i < primes.size(); ++i) heights[i] = K.embedding_value(K.height(primes[i]));
    std::size_t lo = 0;
    for (std::size_t j = 0; j < primes.size(); ++j) {
        // |height difference| <= B is necessary; the float window is widened and
        // every candidate is re-checked exactly
        while (lo < j && heights[lo] < heights[j] - static_cast<double>(gap_bound) - 1.0) ++lo;
        for (std::size_t i = lo; i < j; ++i) {
            if (!K.embeddings_bounded(K.sub(primes[j], primes[i]), gap_bound)) continue;
            if (res.pairs.size() == cap) {
                res.truncated = true;
                return res;
            }
            res.pairs.push_back({primes[i], primes[j]});
        }
    }
    return res;
}

}  // namespace sievelab
