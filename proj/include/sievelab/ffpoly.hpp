#pragma once

/// @file ffpoly.hpp
/// @brief Dense univariate polynomials over a prime field F_q.
///
/// Coefficients are stored ascending by degree with no trailing zeros, so the
/// zero polynomial is the empty sequence. Monic polynomials of a fixed degree n
/// are enumerated in lexicographic order of their coefficient sequence
/// (c_0, c_1, ..., c_{n-1}, 1); `monic_index` is the position in that order.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "sievelab/arith.hpp"
#include "sievelab/budget.hpp"
#include "sievelab/error.hpp"

namespace sievelab {

class PrimeField {
public:
    explicit PrimeField(u64 q) : q_(q) {
        require(q >= 2 && q < (1ULL << 31) && is_prime_trial(q),
                "field modulus must be a prime below 2^31, got " + std::to_string(q));
    }

    u64 q() const noexcept { return q_; }
    u64 reduce(i64 v) const noexcept { return mod_floor(v, q_); }
    u64 add(u64 a, u64 b) const noexcept { return (a + b) % q_; }
    u64 sub(u64 a, u64 b) const noexcept { return (a + q_ - b) % q_; }
    u64 mul(u64 a, u64 b) const noexcept { return (a * b) % q_; }
    u64 neg(u64 a) const noexcept { return a == 0 ? 0 : q_ - a; }
    u64 pow(u64 a, u64 e) const noexcept { return powmod(a, e, q_); }
    u64 inv(u64 a) const {
        require(a % q_ != 0, "inverse of zero in F_q");
        return pow(a, q_ - 2);
    }

    friend bool operator==(const PrimeField&, const PrimeField&) = default;

private:
    u64 q_;
};

class Poly {
public:
    explicit Poly(PrimeField field) : field_(field) {}

    Poly(PrimeField field, std::vector<u64> coeffs) : field_(field), coeffs_(std::move(coeffs)) {
        for (auto& c : coeffs_) c %= field_.q();
        trim();
    }

    static Poly from_signed(PrimeField field, const std::vector<i64>& coeffs) {
        std::vector<u64> c(coeffs.size());
        std::transform(coeffs.begin(), coeffs.end(), c.begin(),
                       [&](i64 v) { return field.reduce(v); });
        return Poly(field, std::move(c));
    }

    static Poly constant(PrimeField field, u64 c) { return Poly(field, std::vector<u64>{c}); }

    static Poly monomial(PrimeField field, u64 coeff, unsigned degree) {
        std::vector<u64> c(degree + 1, 0);
        c[degree] = coeff;
        return Poly(field, std::move(c));
    }

    const PrimeField& field() const noexcept { return field_; }
    std::span<const u64> coeffs() const noexcept { return coeffs_; }
    u64 coeff(std::size_t i) const noexcept { return i < coeffs_.size() ? coeffs_[i] : 0; }

    /// Degree, with -1 for the zero polynomial.
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const noexcept { return coeffs_.empty(); }
    bool is_monic() const noexcept { return !coeffs_.empty() && coeffs_.back() == 1; }
    u64 leading() const noexcept { return coeffs_.empty() ? 0 : coeffs_.back(); }

    Poly& operator+=(const Poly& o) {
        same_field(o);
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_.add(coeffs_[i], o.coeffs_[i]);
        trim();
        return *this;
    }
    Poly& operator-=(const Poly& o) {
        same_field(o);
        if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size(), 0);
        for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] = field_.sub(coeffs_[i], o.coeffs_[i]);
        trim();
        return *this;
    }
    friend Poly operator+(Poly a, const Poly& b) { return a += b; }
    friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
    friend Poly operator-(Poly a) {
        for (auto& c : a.coeffs_) c = a.field_.neg(c);
        return a;
    }

    friend Poly operator*(const Poly& a, const Poly& b) {
        a.same_field(b);
        if (a.is_zero() || b.is_zero()) return Poly(a.field_);
        const u64 q = a.field_.q();
        std::vector<u64> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
        for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
            if (a.coeffs_[i] == 0) continue;
            for (std::size_t j = 0; j < b.coeffs_.size(); ++j)
                out[i + j] = (out[i + j] + a.coeffs_[i] * b.coeffs_[j]) % q;
        }
        return Poly(a.field_, std::move(out));
    }

    Poly scaled(u64 s) const {
        Poly r = *this;
        for (auto& c : r.coeffs_) c = field_.mul(c, s % field_.q());
        r.trim();
        return r;
    }

    Poly monic() const {
        require(!is_zero(), "zero polynomial has no monic associate");
        return scaled(field_.inv(leading()));
    }

    u64 evaluate(u64 x) const {
        u64 acc = 0;
        for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
        return acc;
    }

    Poly derivative() const {
        if (coeffs_.size() <= 1) return Poly(field_);
        std::vector<u64> d(coeffs_.size() - 1);
        for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = field_.mul(coeffs_[i], i % field_.q());
        return Poly(field_, std::move(d));
    }

    friend bool operator==(const Poly& a, const Poly& b) {
        return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
    }

    /// Degree first, then lexicographic on the ascending coefficient sequence.
    friend std::strong_ordering operator<=>(const Poly& a, const Poly& b) {
        if (auto c = a.degree() <=> b.degree(); c != 0) return c;
        return std::lexicographical_compare_three_way(a.coeffs_.begin(), a.coeffs_.end(),
                                                      b.coeffs_.begin(), b.coeffs_.end());
    }

    void same_field(const Poly& o) const {
        require(field_ == o.field_, "polynomials over different fields");
    }

private:
    void trim() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }

    PrimeField field_;
    std::vector<u64> coeffs_;
};

/// Quotient and remainder of a by b.
inline std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    a.same_field(b);
    if (b.is_zero()) throw precondition_error("division by the zero polynomial");
    const PrimeField& F = a.field();
    if (a.degree() < b.degree()) return {Poly(F), a};
    std::vector<u64> r(a.coeffs().begin(), a.coeffs().end());
    const int db = b.degree();
    std::vector<u64> quot(a.degree() - db + 1, 0);
    const u64 inv_lead = F.inv(b.leading());
    for (int i = a.degree(); i >= db; --i) {
        const u64 c = F.mul(r[i], inv_lead);
        quot[i - db] = c;
        if (c == 0) continue;
        for (int j = 0; j <= db; ++j) r[i - db + j] = F.sub(r[i - db + j], F.mul(c, b.coeff(j)));
    }
    r.resize(db);
    return {Poly(F, std::move(quot)), Poly(F, std::move(r))};
}

inline Poly rem(const Poly& a, const Poly& b) { return divmod(a, b).second; }

inline Poly mulmod(const Poly& a, const Poly& b, const Poly& m) { return rem(a * b, m); }

/// base^exp mod m by repeated squaring.
inline Poly powmod(Poly base, u64 exp, const Poly& m) {
    if (m.is_zero()) throw precondition_error("powmod by the zero polynomial");
    Poly result = rem(Poly::constant(base.field(), 1), m);
    base = rem(base, m);
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Monic gcd (zero when both inputs are zero).
inline Poly gcd(Poly a, Poly b) {
    a.same_field(b);
    while (!b.is_zero()) {
        Poly r = rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

/// Inverse of a modulo m; requires gcd(a, m) = 1.
inline Poly invmod(const Poly& a, const Poly& m) {
    const PrimeField& F = a.field();
    Poly r0 = m, r1 = rem(a, m);
    Poly t0(F), t1 = Poly::constant(F, 1);
    while (!r1.is_zero()) {
        auto [quot, r2] = divmod(r0, r1);
        Poly t2 = t0 - quot * t1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        t0 = std::move(t1);
        t1 = std::move(t2);
    }
    require(r0.degree() == 0, "polynomial not invertible modulo the given modulus");
    return rem(t0.scaled(F.inv(r0.leading())), m);
}

/// f(omega * t) / omega^deg(f) for omega a unit: the monic-preserving twist.
inline Poly twist(const Poly& f, u64 omega) {
    const PrimeField& F = f.field();
    require(omega % F.q() != 0, "twist by zero");
    const int n = f.degree();
    std::vector<u64> c(f.coeffs().begin(), f.coeffs().end());
    const u64 winv = F.inv(omega);
    for (int j = 0; j <= n; ++j) c[j] = F.mul(c[j], F.pow(winv, static_cast<u64>(n - j)));
    return Poly(F, std::move(c));
}

/// Distinct-degree irreducibility test: f of degree n is irreducible iff
/// gcd(t^(q^i) - t, f) = 1 for every 1 <= i <= n/2.
inline bool is_irreducible(const Poly& f) {
    if (f.is_zero()) throw precondition_error("irreducibility of the zero polynomial");
    const int n = f.degree();
    if (n <= 0) return false;
    if (n == 1) return true;
    const PrimeField& F = f.field();
    const Poly g = f.monic();
    const Poly t = Poly::monomial(F, 1, 1);
    Poly h = t;
    for (int i = 1; i <= n / 2; ++i) {
        h = powmod(h, F.q(), g);
        if (gcd(h - t, g).degree() != 0) return false;
    }
    return true;
}

/// Exact number of monic irreducibles of degree n over F_q (necklace formula).
inline u64 count_irreducibles(u64 q, unsigned n) {
    require(n >= 1, "count_irreducibles requires n >= 1");
    PrimeField field(q);
    i64 total = 0;
    for (unsigned d = 1; d <= n; ++d) {
        if (n % d) continue;
        const int mu = moebius_int(d);
        if (mu != 0) total += mu * static_cast<i64>(checked_pow(field.q(), n / d));
    }
    return static_cast<u64>(total) / n;
}

/// Position of a monic degree-n polynomial in lexicographic enumeration order.
inline u64 monic_index(const Poly& f) {
    require(f.is_monic(), "monic_index requires a monic polynomial");
    const u64 q = f.field().q();
    u64 idx = 0;
    for (int i = 0; i < f.degree(); ++i) idx = idx * q + f.coeff(i);
    return idx;
}

inline Poly monic_from_index(PrimeField field, unsigned n, u64 idx) {
    std::vector<u64> c(n + 1, 0);
    c[n] = 1;
    for (int i = static_cast<int>(n) - 1; i >= 0; --i) {
        c[i] = idx % field.q();
        idx /= field.q();
    }
    return Poly(field, std::move(c));
}

/// Single-consumer stream over the monic polynomials of degree n, optionally
/// restricted to irreducibles, in lexicographic coefficient order.
class MonicEnumerator {
public:
    MonicEnumerator(u64 q, unsigned n, bool only_irreducible, Budget budget = default_budget())
        : field_(q), n_(n), only_irreducible_(only_irreducible), total_(checked_pow(q, n)) {
        budget.check(total_, "monic enumeration q^n");
    }

    u64 size_upper_bound() const noexcept { return total_; }

    std::optional<Poly> next() {
        while (next_index_ < total_) {
            Poly f = monic_from_index(field_, n_, next_index_++);
            if (!only_irreducible_ || is_irreducible(f)) return f;
        }
        return std::nullopt;
    }

private:
    PrimeField field_;
    unsigned n_;
    bool only_irreducible_;
    u64 total_;
    u64 next_index_ = 0;
};

inline std::vector<Poly> enumerate_monic(u64 q, unsigned n, bool only_irreducible,
                                         Budget budget = default_budget()) {
    MonicEnumerator e(q, n, only_irreducible, budget);
    std::vector<Poly> out;
    while (auto f = e.next()) out.push_back(std::move(*f));
    return out;
}

/// Irreducibility flags for every monic polynomial of degree n, by monic_index.
inline std::vector<bool> irreducible_table(u64 q, unsigned n, Budget budget = default_budget()) {
    PrimeField field(q);
    const u64 total = checked_pow(q, n);
    budget.check(total, "irreducibility table q^n");
    std::vector<bool> flags(total);
    for (u64 i = 0; i < total; ++i) flags[i] = is_irreducible(monic_from_index(field, n, i));
    return flags;
}

/// Text form: comma-separated coefficients ascending by degree ("1,0,1" = t^2+1).
inline std::string format_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) os << (i ? "," : "") << f.coeffs()[i];
    return os.str();
}

inline Poly parse_poly(PrimeField field, const std::string& text) {
    std::vector<i64> c;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            c.push_back(std::stoll(item, &used));
            require(used == item.size() || item.find_first_not_of(" \t", used) == std::string::npos,
                    "bad coefficient '" + item + "'");
        } catch (const std::logic_error&) {
            throw precondition_error("bad polynomial coefficient '" + item + "'");
        }
    }
    return Poly::from_signed(field, c);
}

/// Human-readable form such as "t^2 + 2t + 1".
inline std::string pretty_poly(const Poly& f) {
    if (f.is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = f.degree(); i >= 0; --i) {
        const u64 c = f.coeff(i);
        if (c == 0) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0 || c != 1) os << c;
        if (i >= 1) os << "t";
        if (i >= 2) os << "^" << i;
    }
    return os.str();
}

}  // namespace sievelab
