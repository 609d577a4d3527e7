#pragma once

/// @file arith.hpp
/// @brief Machine-word number theory used across the rings: primality,
/// factorization, sieves and modular powers.

#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "sievelab/error.hpp"

namespace sievelab {

using u64 = std::uint64_t;
using i64 = std::int64_t;

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

inline u64 powmod(u64 base, u64 exp, u64 m) {
    u64 result = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Non-negative residue of a signed value.
inline u64 mod_floor(i64 a, u64 m) {
    const i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

inline bool is_prime_trial(u64 n) {
    if (n < 2) return false;
    if (n < 4) return true;
    if (n % 2 == 0 || n % 3 == 0) return false;
    for (u64 f = 5; f * f <= n; f += 6)
        if (n % f == 0 || n % (f + 2) == 0) return false;
    return true;
}

/// Checked integer power; throws when the result leaves 63 bits.
inline u64 checked_pow(u64 base, unsigned exp) {
    u64 r = 1;
    for (unsigned i = 0; i < exp; ++i) {
        if (base != 0 && r > (static_cast<u64>(INT64_MAX) / base))
            throw precondition_error("integer power overflows 63 bits");
        r *= base;
    }
    return r;
}

/// Prime factorization by trial division, ascending primes with exponents.
inline std::vector<std::pair<u64, unsigned>> factorize(u64 n) {
    std::vector<std::pair<u64, unsigned>> out;
    for (u64 p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
        if (n % p) continue;
        unsigned e = 0;
        while (n % p == 0) { n /= p; ++e; }
        out.emplace_back(p, e);
    }
    if (n > 1) out.emplace_back(n, 1);
    return out;
}

inline int moebius_int(u64 n) {
    int sign = 1;
    for (auto [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

inline u64 euler_phi_int(u64 n) {
    u64 phi = 1;
    for (auto [p, e] : factorize(n)) {
        phi *= p - 1;
        for (unsigned i = 1; i < e; ++i) phi *= p;
    }
    return phi;
}

/// Sieve of Eratosthenes: flags[i] is true iff i is prime, for i <= limit.
inline std::vector<bool> prime_flags(u64 limit) {
    std::vector<bool> flags(limit + 1, true);
    flags[0] = false;
    if (limit >= 1) flags[1] = false;
    for (u64 p = 2; p * p <= limit; ++p)
        if (flags[p])
            for (u64 m = p * p; m <= limit; m += p) flags[m] = false;
    return flags;
}

inline std::vector<u64> primes_up_to(u64 limit) {
    std::vector<u64> out;
    const auto flags = prime_flags(limit);
    for (u64 i = 2; i <= limit; ++i)
        if (flags[i]) out.push_back(i);
    return out;
}

/// Modular inverse of a modulo m (gcd(a, m) = 1 required).
inline u64 invmod(u64 a, u64 m) {
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
    while (new_r != 0) {
        const i64 q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    require(r == 1, "invmod: argument not invertible");
    return mod_floor(t, m);
}

}  // namespace sievelab
