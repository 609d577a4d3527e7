#pragma once

/// @file rings.hpp
/// @brief One arithmetic vocabulary for Z, F_q[t] and the real quadratic rings.
///
/// Each ring is a small value type exposing the same members: the prime
/// elements up to a norm bound, the norm of a prime, divisibility and residue
/// maps modulo a prime, and the box A(N). Generic code (admissibility, the sieve)
/// is written once against that surface.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sievelab/arith.hpp"
#include "sievelab/budget.hpp"
#include "sievelab/error.hpp"
#include "sievelab/ffpoly.hpp"
#include "sievelab/quadratic.hpp"

namespace sievelab {

enum class RingKind { integers, poly, real_quadratic };

/// Runtime ring selector, text form "Z", "Fq[t]:q=3" or "Q(sqrt:2)".
struct RingDescriptor {
    RingKind kind = RingKind::integers;
    u64 q = 0;
    i64 d = 0;

    static RingDescriptor integers() { return {}; }
    static RingDescriptor poly(u64 q) {
        PrimeField{q};
        return {RingKind::poly, q, 0};
    }
    static RingDescriptor real_quadratic(i64 d) {
        QuadraticField{d};
        return {RingKind::real_quadratic, 0, d};
    }

    /// Power saving exponent of the box boundary error.
    double boundary_exponent() const { return kind == RingKind::real_quadratic ? 0.5 : 1.0; }

    std::string to_string() const {
        switch (kind) {
            case RingKind::integers: return "Z";
            case RingKind::poly: return "Fq[t]:q=" + std::to_string(q);
            default: return "Q(sqrt:" + std::to_string(d) + ")";
        }
    }

    static RingDescriptor parse(const std::string& s) {
        auto number_after = [&](const std::string& prefix, const std::string& suffix) -> i64 {
            if (s.rfind(prefix, 0) != 0 || s.size() < prefix.size() + suffix.size() ||
                s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0)
                throw precondition_error("unrecognized ring selector '" + s + "'");
            const std::string body = s.substr(prefix.size(), s.size() - prefix.size() - suffix.size());
            try {
                std::size_t used = 0;
                const i64 v = std::stoll(body, &used);
                if (used != body.size()) throw std::invalid_argument(body);
                return v;
            } catch (const std::logic_error&) {
                throw precondition_error("unrecognized ring selector '" + s + "'");
            }
        };
        if (s == "Z") return integers();
        if (s.rfind("Fq[t]:q=", 0) == 0) {
            const i64 q = number_after("Fq[t]:q=", "");
            require(q >= 2, "field size must be a prime");
            return poly(static_cast<u64>(q));
        }
        if (s.rfind("Q(sqrt:", 0) == 0) return real_quadratic(number_after("Q(sqrt:", ")"));
        throw precondition_error("unrecognized ring selector '" + s + "'");
    }

    friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;
};

/// Residue at s = 1 of zeta_A: 1 for Z and 1/log q for F_q[t].
inline double zeta_residue(const RingDescriptor& ring) {
    switch (ring.kind) {
        case RingKind::integers: return 1.0;
        case RingKind::poly: return 1.0 / std::log(static_cast<double>(ring.q));
        default:
            throw precondition_error("zeta residue of a number field ring is not supported");
    }
}

/// A squarefree modulus with its prime factorization, as produced by the
/// enumerators below.
template <class Value, class Prime>
struct SquarefreeModulus {
    Value value;
    u64 norm;
    std::vector<Prime> primes;
};

// ---------------------------------------------------------------------------
// Z

class IntegerRing {
public:
    using element_type = i64;
    using prime_type = u64;
    using modulus_type = u64;

    RingDescriptor descriptor() const { return RingDescriptor::integers(); }

    u64 norm(u64 m) const {
        require(m >= 1, "modulus must be positive");
        return m;
    }
    u64 euler_phi(u64 m) const { return euler_phi_int(norm(m)); }
    int moebius(u64 m) const { return moebius_int(norm(m)); }

    u64 prime_norm(u64 p) const { return p; }
    std::vector<u64> primes_up_to_norm(u64 bound) const { return primes_up_to(bound); }
    u64 residue_index(i64 a, u64 p) const { return mod_floor(a, p); }
    bool prime_divides(u64 p, i64 a) const { return mod_floor(a, p) == 0; }
    bool divides(u64 m, i64 a) const { return mod_floor(a, m) == 0; }
    u64 modulus_from_primes(const std::vector<u64>& ps) const {
        u64 m = 1;
        for (u64 p : ps) m *= p;
        return m;
    }
    bool coprime(u64 a, u64 b) const { return std::gcd(a, b) == 1; }
    i64 element_from_int(i64 v) const { return v; }

    /// |A(N)| = N.
    u64 box_size(u64 N) const { return N; }

    /// The interval (N, 2N].
    std::vector<i64> box(u64 N, Budget budget = default_budget()) const {
        budget.check(N, "integer box");
        std::vector<i64> out(N);
        std::iota(out.begin(), out.end(), static_cast<i64>(N) + 1);
        return out;
    }

    /// Smallest non-negative representative of the class of v modulo m.
    i64 reduce(i64 v, u64 m) const { return static_cast<i64>(mod_floor(v, m)); }

    /// x = a (mod m1), x = b (mod m2) for coprime moduli; result modulo m1*m2.
    i64 crt(i64 a, u64 m1, i64 b, u64 m2) const {
        const u64 m = m1 * m2;
        const u64 t = mulmod(mod_floor(b - a, m2), invmod(m1 % m2, m2), m2);
        return static_cast<i64>((mod_floor(a, m) + mulmod(m1, t, m)) % m);
    }

    /// Residue classes modulo p in order of their smallest representative.
    std::vector<i64> residues(u64 p) const {
        std::vector<i64> r(p);
        std::iota(r.begin(), r.end(), 0);
        return r;
    }

    std::string prime_string(u64 p) const { return std::to_string(p); }
    std::string element_string(i64 a) const { return std::to_string(a); }
};

// ---------------------------------------------------------------------------
// F_q[t]

class PolyRing {
public:
    using element_type = Poly;
    using prime_type = Poly;
    using modulus_type = Poly;

    explicit PolyRing(u64 q) : field_(q) {}

    const PrimeField& field() const noexcept { return field_; }
    u64 q() const noexcept { return field_.q(); }
    RingDescriptor descriptor() const { return RingDescriptor::poly(q()); }

    u64 norm(const Poly& m) const {
        require(m.is_monic(), "modulus must be a monic polynomial");
        return checked_pow(q(), static_cast<unsigned>(m.degree()));
    }

    /// Monic irreducible factors with multiplicity, by trial division.
    std::vector<std::pair<Poly, unsigned>> factor(const Poly& m) const {
        require(m.is_monic(), "modulus must be a monic polynomial");
        std::vector<std::pair<Poly, unsigned>> out;
        Poly rest = m;
        for (int e = 1; 2 * e <= rest.degree(); ++e) {
            MonicEnumerator it(q(), static_cast<unsigned>(e), true);
            while (auto P = it.next()) {
                unsigned mult = 0;
                while (rest.degree() >= e) {
                    auto [quo, r] = divmod(rest, *P);
                    if (!r.is_zero()) break;
                    rest = std::move(quo);
                    ++mult;
                }
                if (mult) out.emplace_back(*P, mult);
                if (2 * e > rest.degree()) break;
            }
        }
        if (rest.degree() >= 1) {
            auto hit = std::find_if(out.begin(), out.end(), [&](const auto& f) { return f.first == rest; });
            if (hit != out.end()) ++hit->second;
            else out.emplace_back(rest, 1);
        }
        std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
        return out;
    }

    u64 euler_phi(const Poly& m) const {
        u64 phi = 1;
        for (const auto& [P, e] : factor(m)) {
            const u64 np = prime_norm(P);
            phi *= np - 1;
            for (unsigned i = 1; i < e; ++i) phi *= np;
        }
        return phi;
    }

    int moebius(const Poly& m) const {
        int sign = 1;
        for (const auto& [P, e] : factor(m)) {
            if (e > 1) return 0;
            sign = -sign;
        }
        return sign;
    }

    u64 prime_norm(const Poly& P) const { return checked_pow(q(), static_cast<unsigned>(P.degree())); }

    /// Monic irreducibles of norm at most `bound`, by degree then lexicographically.
    std::vector<Poly> primes_up_to_norm(u64 bound) const {
        std::vector<Poly> out;
        u64 norm = q();
        for (unsigned e = 1; norm <= bound; ++e) {
            auto batch = enumerate_monic(q(), e, true);
            out.insert(out.end(), batch.begin(), batch.end());
            if (norm > bound / q()) break;
            norm *= q();
        }
        return out;
    }

    /// Index of (a mod P) among the q^deg(P) residues, lexicographic on coefficients.
    u64 residue_index(const Poly& a, const Poly& P) const {
        const Poly r = rem(a, P);
        u64 idx = 0;
        for (int i = 0; i < P.degree(); ++i) idx = idx * q() + r.coeff(i);
        return idx;
    }

    bool prime_divides(const Poly& P, const Poly& a) const { return rem(a, P).is_zero(); }
    bool divides(const Poly& m, const Poly& a) const { return rem(a, m).is_zero(); }
    Poly modulus_from_primes(const std::vector<Poly>& ps) const {
        Poly m = Poly::constant(field_, 1);
        for (const auto& P : ps) m = m * P;
        return m;
    }
    bool coprime(const Poly& a, const Poly& b) const { return gcd(a, b).degree() == 0; }
    Poly element_from_int(i64 v) const { return Poly::from_signed(field_, {v}); }

    /// |A(N)| = N; N must be q^n.
    u64 box_size(u64 N) const {
        degree_of_box(N);
        return N;
    }

    unsigned degree_of_box(u64 N) const {
        unsigned n = 0;
        u64 v = 1;
        while (v < N) {
            v *= q();
            ++n;
        }
        require(v == N, "polynomial box size must be an exact power of q");
        return n;
    }

    /// The monic polynomials of degree n where N = q^n.
    std::vector<Poly> box(u64 N, Budget budget = default_budget()) const {
        return enumerate_monic(q(), degree_of_box(N), false, budget);
    }

    Poly reduce(const Poly& v, const Poly& m) const { return rem(v, m); }

    Poly crt(const Poly& a, const Poly& m1, const Poly& b, const Poly& m2) const {
        const Poly m = m1 * m2;
        const Poly t = mulmod(b - a, invmod(m1, m2), m2);
        return rem(a + m1 * t, m);
    }

    /// Residues modulo P (degree < deg P) in residue_index order.
    std::vector<Poly> residues(const Poly& P) const {
        const u64 count = prime_norm(P);
        const int e = P.degree();
        std::vector<Poly> out;
        out.reserve(count);
        for (u64 idx = 0; idx < count; ++idx) {
            std::vector<u64> c(e, 0);
            u64 v = idx;
            for (int i = e - 1; i >= 0; --i) {
                c[i] = v % q();
                v /= q();
            }
            out.emplace_back(field_, std::move(c));
        }
        return out;
    }

    std::string prime_string(const Poly& P) const { return format_poly(P); }
    std::string element_string(const Poly& a) const { return format_poly(a); }

private:
    PrimeField field_;
};

// ---------------------------------------------------------------------------
// O_K for K = Q(sqrt d)

/// Squarefree product of distinct prime ideals.
using QuadModulus = std::vector<QuadPrimeIdeal>;

class QuadraticRing {
public:
    using element_type = QuadInt;
    using prime_type = QuadPrimeIdeal;
    using modulus_type = QuadModulus;

    explicit QuadraticRing(i64 d) : field_(d) {}

    const QuadraticField& field() const noexcept { return field_; }
    RingDescriptor descriptor() const { return RingDescriptor::real_quadratic(field_.d()); }

    void validate(const QuadModulus& m) const {
        for (std::size_t i = 0; i < m.size(); ++i) {
            const auto above = field_.primes_above(m[i].p);
            require(std::find(above.begin(), above.end(), m[i]) != above.end(),
                    "not a prime ideal of this ring");
            for (std::size_t j = 0; j < i; ++j)
                require(!(m[i] == m[j]), "only squarefree products of prime ideals are representable");
        }
    }

    u64 norm(const QuadModulus& m) const {
        validate(m);
        u64 n = 1;
        for (const auto& P : m) n *= P.norm();
        return n;
    }
    u64 euler_phi(const QuadModulus& m) const {
        validate(m);
        u64 phi = 1;
        for (const auto& P : m) phi *= P.norm() - 1;
        return phi;
    }
    int moebius(const QuadModulus& m) const {
        validate(m);
        return (m.size() % 2) ? -1 : 1;
    }

    u64 prime_norm(const QuadPrimeIdeal& P) const { return P.norm(); }
    std::vector<QuadPrimeIdeal> primes_up_to_norm(u64 bound) const {
        return field_.prime_ideals_up_to_norm(bound);
    }
    u64 residue_index(const QuadInt& a, const QuadPrimeIdeal& P) const { return field_.residue_index(a, P); }
    bool prime_divides(const QuadPrimeIdeal& P, const QuadInt& a) const { return field_.ideal_divides(P, a); }
    QuadInt element_from_int(i64 v) const { return {v, 0}; }

    std::vector<QuadInt> box(u64 N, Budget budget = default_budget()) const {
        return field_.box(static_cast<i64>(N), budget);
    }

    std::string prime_string(const QuadPrimeIdeal& P) const {
        const char* kind = P.type == PrimeIdealType::split ? "split"
                           : P.type == PrimeIdealType::inert ? "inert" : "ramified";
        std::string s = "(" + std::to_string(P.p) + "," + kind;
        if (P.type != PrimeIdealType::inert) s += ",root=" + std::to_string(P.root);
        return s + ")";
    }
    std::string element_string(const QuadInt& a) const { return field_.element_string(a); }

private:
    QuadraticField field_;
};

// ---------------------------------------------------------------------------
// Squarefree moduli and the primorial

/// All squarefree moduli of norm at most R coprime to `coprime_to`, ordered by
/// (norm, value). Built as products of primes, so factorizations are exact.
template <class Ring>
std::vector<SquarefreeModulus<typename Ring::modulus_type, typename Ring::prime_type>>
enumerate_squarefree_moduli(const Ring& ring, u64 R, const typename Ring::modulus_type& coprime_to,
                            Budget budget = default_budget()) {
    using Prime = typename Ring::prime_type;
    using Mod = SquarefreeModulus<typename Ring::modulus_type, Prime>;
    std::vector<Prime> primes;
    for (auto& P : ring.primes_up_to_norm(R))
        if (ring.coprime(ring.modulus_from_primes({P}), coprime_to)) primes.push_back(std::move(P));
    std::vector<Mod> out;
    std::vector<Prime> chosen;
    std::function<void(std::size_t, u64)> dfs = [&](std::size_t start, u64 norm) {
        budget.check(out.size() + 1, "squarefree modulus enumeration");
        out.push_back(Mod{ring.modulus_from_primes(chosen), norm, chosen});
        for (std::size_t i = start; i < primes.size(); ++i) {
            const u64 np = ring.prime_norm(primes[i]);
            if (np > R / norm) continue;
            chosen.push_back(primes[i]);
            dfs(i + 1, norm * np);
            chosen.pop_back();
        }
    };
    dfs(0, 1);
    std::sort(out.begin(), out.end(), [](const Mod& a, const Mod& b) {
        if (a.norm != b.norm) return a.norm < b.norm;
        return a.value < b.value;
    });
    return out;
}

/// Product of all primes of norm below D0.
template <class Ring>
SquarefreeModulus<typename Ring::modulus_type, typename Ring::prime_type>
primorial_w(const Ring& ring, u64 D0) {
    require(D0 >= 2, "primorial threshold D0 must be at least 2");
    auto primes = ring.primes_up_to_norm(D0 - 1);
    u64 norm = 1;
    for (const auto& P : primes) norm *= ring.prime_norm(P);
    return {ring.modulus_from_primes(primes), norm, std::move(primes)};
}

}  // namespace sievelab
