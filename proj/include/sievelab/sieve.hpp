#pragma once

/// @file sieve.hpp
/// @brief Multidimensional Selberg sieve weights over Z and F_q[t]: the y and
/// lambda tables, their mutual inversion, y^(m), brute-force S1/S2 with the
/// predicted main terms, the GGPY summation check, and the level-of-
/// distribution measurement over F_q[t].
///
/// Weight tables are keyed by k-tuples of indices into a list of squarefree
/// moduli coprime to w with norm below R. That set is divisor-closed, which is
/// what makes the lambda <-> y transforms exact inverses of each other.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sievelab/budget.hpp"
#include "sievelab/error.hpp"
#include "sievelab/ffpoly.hpp"
#include "sievelab/mk.hpp"
#include "sievelab/parallel.hpp"
#include "sievelab/rings.hpp"
#include "sievelab/tuples.hpp"

namespace sievelab {

// ---------------------------------------------------------------------------
// Test functions

/// F = sum_i c_i (1 - P1)^{a_i} P2^{b_i} on R_k, zero elsewhere.
struct TestFunction {
    unsigned k = 1;
    std::vector<BasisElement> generators;
    std::vector<double> coefficients;

    /// (1 - x_1 - ... - x_k)^power, clipped to the simplex.
    static TestFunction simplex_power(unsigned k, unsigned power) { return {k, {{power, 0}}, {1.0}}; }

    double operator()(const std::vector<double>& x) const {
        double p1 = 0.0, p2 = 0.0;
        for (double v : x) {
            if (v < 0.0) return 0.0;
            p1 += v;
            p2 += v * v;
        }
        return evaluate_basis_function(generators, coefficients, p1, p2);
    }

    /// sup over sample points of |F| + sum_i |dF/dx_i|. The points are the
    /// origin, the vertices, and a fixed quasi-random cloud in R_k.
    double f_max() const {
        auto value_plus_gradient = [&](const std::vector<double>& x) {
            double p1 = 0.0, p2 = 0.0;
            for (double v : x) {
                p1 += v;
                p2 += v * v;
            }
            if (p1 > 1.0) return 0.0;
            double f = 0.0, grad = 0.0;
            for (std::size_t i = 0; i < x.size(); ++i) {
                double d = 0.0;
                for (std::size_t g = 0; g < generators.size(); ++g) {
                    const double a = generators[g].a, b = generators[g].b, c = coefficients[g];
                    if (i == 0) f += c * std::pow(1.0 - p1, a) * std::pow(p2, b);
                    if (a > 0) d -= c * a * std::pow(1.0 - p1, a - 1) * std::pow(p2, b);
                    if (b > 0) d += c * 2.0 * b * x[i] * std::pow(1.0 - p1, a) * std::pow(p2, b - 1);
                }
                grad += std::fabs(d);
            }
            return std::fabs(f) + grad;
        };
        std::vector<double> x(k, 0.0);
        double best = value_plus_gradient(x);
        for (unsigned i = 0; i < k; ++i) {
            std::fill(x.begin(), x.end(), 0.0);
            x[i] = 1.0;
            best = std::max(best, value_plus_gradient(x));
        }
        // Additive recurrence with the generalized golden ratio, mapped to R_k
        // by sorting-free normalization.
        double phi = 2.0;
        for (int it = 0; it < 50; ++it) phi = std::pow(1.0 + phi, 1.0 / (k + 1));
        for (unsigned s = 1; s <= 4096; ++s) {
            double total = 0.0;
            for (unsigned i = 0; i < k; ++i) {
                const double u = std::fmod(0.5 + s / std::pow(phi, i + 1), 1.0);
                x[i] = -std::log(1.0 - u * 0.999999);
                total += x[i];
            }
            const double scale = std::fmod(0.5 + s / std::pow(phi, k + 1), 1.0) / total;
            for (auto& v : x) v *= scale;
            best = std::max(best, value_plus_gradient(x));
        }
        return best;
    }

    /// I_k(F) and sum_m J_k^(m)(F) from the exact forms.
    std::pair<double, double> integrals() const {
        if (generators.empty()) return {0.0, 0.0};
        unsigned deg = 0;
        for (const auto& g : generators) deg = std::max(deg, g.degree());
        SymmetricBasis basis{k, deg, generators};
        const auto forms = build_forms(basis);
        std::vector<Rational> c;
        for (double v : coefficients) c.emplace_back(v);
        return {quadratic_value(forms.M1, c).convert_to<double>(), quadratic_value(forms.M2, c).convert_to<double>()};
    }
};

// ---------------------------------------------------------------------------
// Ring-specific helpers

/// Number of primes in A(N) and a membership test for the translates alpha + h.
class IntegerPrimeIndicator {
public:
    IntegerPrimeIndicator(u64 limit) : flags_(prime_flags(limit)) {}
    bool operator()(i64 v) const { return v >= 2 && static_cast<u64>(v) < flags_.size() && flags_[v]; }

private:
    std::vector<bool> flags_;
};

inline u64 prime_count_in_box(const IntegerRing&, u64 N) {
    const auto flags = prime_flags(2 * N);
    u64 c = 0;
    for (u64 v = N + 1; v <= 2 * N; ++v) c += flags[v];
    return c;
}

inline u64 prime_count_in_box(const PolyRing& ring, u64 N) {
    return count_irreducibles(ring.q(), ring.degree_of_box(N));
}

// ---------------------------------------------------------------------------
// Parameters

template <class Ring>
struct SieveParams {
    using Element = typename Ring::element_type;
    using Mod = SquarefreeModulus<typename Ring::modulus_type, typename Ring::prime_type>;

    Ring ring;
    std::vector<Element> tuple;
    u64 N = 0;
    double theta = 0.5;
    double delta = 0.05;
    u64 D0 = 5;
    double R = 0.0;  ///< support is |d| < R
    Mod w;
    Element v0;

    std::size_t k() const { return tuple.size(); }
    u64 box_size() const { return ring.box_size(N); }
};

namespace detail {

/// Smallest residue class modulo each prime of w avoiding -h_i, then CRT.
template <class Ring>
typename Ring::element_type find_v0(const Ring& ring, const std::vector<typename Ring::element_type>& tuple,
                                    const SquarefreeModulus<typename Ring::modulus_type, typename Ring::prime_type>& w) {
    auto v0 = ring.element_from_int(0);
    std::vector<typename Ring::prime_type> used;
    for (const auto& P : w.primes) {
        std::optional<typename Ring::element_type> choice;
        for (const auto& c : ring.residues(P)) {
            const bool ok = std::none_of(tuple.begin(), tuple.end(),
                                         [&](const auto& h) { return ring.prime_divides(P, c + h); });
            if (ok) {
                choice = c;
                break;
            }
        }
        if (!choice) throw precondition_error("no residue class v0 exists modulo " + ring.prime_string(P));
        v0 = ring.crt(v0, ring.modulus_from_primes(used), *choice, ring.modulus_from_primes({P}));
        used.push_back(P);
    }
    return v0;
}

}  // namespace detail

/// Builds parameters; R defaults to |A(N)|^{theta/2 - delta} unless given.
template <class Ring>
SieveParams<Ring> make_sieve_params(const Ring& ring, std::vector<typename Ring::element_type> tuple, u64 N,
                                    double theta, double delta, u64 D0,
                                    std::optional<double> R_override = std::nullopt) {
    require(!tuple.empty(), "sieve needs a nonempty tuple");
    require(theta > 0.0 && theta < 1.0, "theta must lie in (0, 1)");
    require(delta > 0.0, "delta must be positive");
    auto report = is_admissible(ring, tuple);
    require(report.admissible, "sieve tuple must be admissible");
    SieveParams<Ring> p{ring, std::move(tuple), N, theta, delta, D0, 0.0, primorial_w(ring, D0), ring.element_from_int(0)};
    const u64 size = ring.box_size(N);
    p.R = R_override ? *R_override : std::pow(static_cast<double>(size), theta / 2.0 - delta);
    require(p.R >= 2.0, "R = |A(N)|^(theta/2 - delta) must be at least 2; got " + std::to_string(p.R));
    if constexpr (std::is_same_v<Ring, PolyRing>) {
        const int n = static_cast<int>(ring.degree_of_box(N));
        for (const auto& h : p.tuple)
            require(h.degree() < n, "tuple elements must have degree below n so translates stay monic");
    }
    p.v0 = detail::find_v0(ring, p.tuple, p.w);
    return p;
}

// ---------------------------------------------------------------------------
// Weight system

template <class Ring>
struct WeightSystem {
    using Mod = SquarefreeModulus<typename Ring::modulus_type, typename Ring::prime_type>;
    using Key = std::vector<std::uint32_t>;

    explicit WeightSystem(SieveParams<Ring> p) : params(std::move(p)) {}

    SieveParams<Ring> params;
    std::vector<Mod> moduli;                         ///< index 0 is the unit modulus
    std::vector<std::vector<std::uint32_t>> divisors;  ///< divisor indices of each modulus
    std::vector<Key> support;                        ///< all index tuples with product squarefree, norm < R
    std::map<Key, double> lambda;
    std::map<Key, double> y;
    double y_max = 0.0;
    double lambda_max = 0.0;

    std::size_t k() const { return params.k(); }
    u64 product_norm(const Key& key) const {
        u64 n = 1;
        for (auto i : key) n *= moduli[i].norm;
        return n;
    }
    void refresh_maxima() {
        y_max = lambda_max = 0.0;
        for (const auto& [_, v] : y) y_max = std::max(y_max, std::fabs(v));
        for (const auto& [_, v] : lambda) lambda_max = std::max(lambda_max, std::fabs(v));
    }
};

/// Squarefree moduli coprime to w with norm < R, their divisor lists, and the
/// support tuples. Table size is capped by `max_entries`.
template <class Ring>
WeightSystem<Ring> make_weight_system(const SieveParams<Ring>& params, u64 max_entries = 1'000'000) {
    WeightSystem<Ring> ws(params);
    const u64 bound = static_cast<u64>(std::ceil(params.R)) - 1;  // norm < R
    ws.moduli = enumerate_squarefree_moduli(params.ring, bound, params.w.value);
    std::erase_if(ws.moduli, [&](const auto& m) { return static_cast<double>(m.norm) >= params.R; });

    std::map<typename Ring::modulus_type, std::uint32_t> index;
    for (std::uint32_t i = 0; i < ws.moduli.size(); ++i) index.emplace(ws.moduli[i].value, i);
    ws.divisors.resize(ws.moduli.size());
    for (std::uint32_t i = 0; i < ws.moduli.size(); ++i) {
        const auto& ps = ws.moduli[i].primes;
        for (std::uint64_t mask = 0; mask < (1ULL << ps.size()); ++mask) {
            std::vector<typename Ring::prime_type> sub;
            for (std::size_t b = 0; b < ps.size(); ++b)
                if (mask >> b & 1) sub.push_back(ps[b]);
            ws.divisors[i].push_back(index.at(params.ring.modulus_from_primes(sub)));
        }
        std::sort(ws.divisors[i].begin(), ws.divisors[i].end());
    }

    auto disjoint = [&](std::uint32_t i, std::uint32_t j) {
        for (const auto& P : ws.moduli[i].primes)
            for (const auto& Q : ws.moduli[j].primes)
                if (P == Q) return false;
        return true;
    };
    const std::size_t k = params.k();
    typename WeightSystem<Ring>::Key key;
    std::function<void(u64)> dfs = [&](u64 norm) {
        if (key.size() == k) {
            if (ws.support.size() >= max_entries)
                throw budget_exceeded("weight table exceeds " + std::to_string(max_entries) + " entries");
            ws.support.push_back(key);
            return;
        }
        for (std::uint32_t i = 0; i < ws.moduli.size(); ++i) {
            if (static_cast<double>(norm * ws.moduli[i].norm) >= params.R) break;  // moduli sorted by norm
            bool ok = true;
            for (auto j : key)
                if (!disjoint(i, j)) {
                    ok = false;
                    break;
                }
            if (!ok) continue;
            key.push_back(i);
            dfs(norm * ws.moduli[i].norm);
            key.pop_back();
        }
    };
    dfs(1);
    return ws;
}

namespace detail {

/// Calls fn(divisor_key) for every tuple of divisors of `key`.
template <class Ring, class Fn>
void for_each_divisor_tuple(const WeightSystem<Ring>& ws, const typename WeightSystem<Ring>::Key& key, Fn&& fn) {
    typename WeightSystem<Ring>::Key d(key.size());
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == key.size()) {
            fn(d);
            return;
        }
        for (auto idx : ws.divisors[key[pos]]) {
            d[pos] = idx;
            rec(pos + 1);
        }
    };
    rec(0);
}

}  // namespace detail

/// y[r] = F(log|r_1| / log R, ..., log|r_k| / log R) on the support.
template <class Ring>
void compute_y_from_F(WeightSystem<Ring>& ws, const TestFunction& F) {
    require(F.k == ws.k(), "test function dimension must equal k");
    ws.y.clear();
    const double logR = std::log(ws.params.R);
    std::vector<double> x(ws.k());
    for (const auto& key : ws.support) {
        for (std::size_t i = 0; i < key.size(); ++i) x[i] = std::log(static_cast<double>(ws.moduli[key[i]].norm)) / logR;
        ws.y[key] = F(x);
    }
    ws.refresh_maxima();
}

/// lambda[d] = prod mu(d_i)|d_i| * sum over r with d_i | r_i of y[r] / prod phi(r_i).
template <class Ring>
void compute_lambda_from_y(WeightSystem<Ring>& ws) {
    const auto& ring = ws.params.ring;
    std::map<typename WeightSystem<Ring>::Key, CompensatedSum> acc;
    for (const auto& [r, yr] : ws.y) {
        if (yr == 0.0) continue;
        double phi = 1.0;
        for (auto i : r) phi *= static_cast<double>(ring.euler_phi(ws.moduli[i].value));
        detail::for_each_divisor_tuple(ws, r, [&](const auto& d) { acc[d].add(yr / phi); });
    }
    ws.lambda.clear();
    for (const auto& key : ws.support) {
        double pre = 1.0;
        for (auto i : key) pre *= ring.moebius(ws.moduli[i].value) * static_cast<double>(ws.moduli[i].norm);
        auto it = acc.find(key);
        ws.lambda[key] = it == acc.end() ? 0.0 : pre * it->second.value();
    }
    ws.refresh_maxima();
}

/// y[r] = prod mu(r_i) phi(r_i) * sum over d with r_i | d_i of lambda[d] / prod |d_i|.
template <class Ring>
std::map<typename WeightSystem<Ring>::Key, double> invert_lambda_to_y(const WeightSystem<Ring>& ws) {
    const auto& ring = ws.params.ring;
    std::map<typename WeightSystem<Ring>::Key, CompensatedSum> acc;
    for (const auto& [d, ld] : ws.lambda) {
        if (ld == 0.0) continue;
        const double norm = static_cast<double>(ws.product_norm(d));
        detail::for_each_divisor_tuple(ws, d, [&](const auto& r) { acc[r].add(ld / norm); });
    }
    std::map<typename WeightSystem<Ring>::Key, double> y;
    for (const auto& key : ws.support) {
        double pre = 1.0;
        for (auto i : key)
            pre *= ring.moebius(ws.moduli[i].value) * static_cast<double>(ring.euler_phi(ws.moduli[i].value));
        auto it = acc.find(key);
        y[key] = it == acc.end() ? 0.0 : pre * it->second.value();
    }
    return y;
}

/// g(r) = prod over primes of (|p| - 2).
template <class Ring>
double g_function(const WeightSystem<Ring>& ws, std::uint32_t idx) {
    double g = 1.0;
    for (const auto& P : ws.moduli[idx].primes) g *= static_cast<double>(ws.params.ring.prime_norm(P)) - 2.0;
    return g;
}

/// y^(m)[r] = prod mu(r_i) g(r_i) * sum over d with r_i | d_i, d_m = 1 of
/// lambda[d] / prod phi(d_i); m is 1-based. Entries with r_m != 1 are zero
/// and omitted.
template <class Ring>
std::map<typename WeightSystem<Ring>::Key, double> compute_ym(const WeightSystem<Ring>& ws, std::size_t m) {
    require(m >= 1 && m <= ws.k(), "m must lie in [1, k]");
    const auto& ring = ws.params.ring;
    for (const auto& mod : ws.moduli)
        for (const auto& P : mod.primes)
            require(ring.prime_norm(P) >= 3,
                    "prime " + ring.prime_string(P) + " of norm 2 in the support; raise D0 so it divides w");
    std::map<typename WeightSystem<Ring>::Key, CompensatedSum> acc;
    for (const auto& [d, ld] : ws.lambda) {
        if (ld == 0.0 || d[m - 1] != 0) continue;
        double phi = 1.0;
        for (auto i : d) phi *= static_cast<double>(ring.euler_phi(ws.moduli[i].value));
        detail::for_each_divisor_tuple(ws, d, [&](const auto& r) { acc[r].add(ld / phi); });
    }
    std::map<typename WeightSystem<Ring>::Key, double> out;
    for (const auto& key : ws.support) {
        if (key[m - 1] != 0) continue;
        double pre = 1.0;
        for (auto i : key) pre *= ring.moebius(ws.moduli[i].value) * g_function(ws, i);
        auto it = acc.find(key);
        out[key] = it == acc.end() ? 0.0 : pre * it->second.value();
    }
    return out;
}

/// Main term of y^(m)[r] in terms of y: sum over a_m of y[r with r_m = a_m] / phi(a_m).
template <class Ring>
std::map<typename WeightSystem<Ring>::Key, double> ym_main_term(const WeightSystem<Ring>& ws, std::size_t m) {
    require(m >= 1 && m <= ws.k(), "m must lie in [1, k]");
    std::map<typename WeightSystem<Ring>::Key, CompensatedSum> acc;
    for (const auto& [r, yr] : ws.y) {
        auto base = r;
        base[m - 1] = 0;
        acc[base].add(yr / static_cast<double>(ws.params.ring.euler_phi(ws.moduli[r[m - 1]].value)));
    }
    std::map<typename WeightSystem<Ring>::Key, double> out;
    for (const auto& [key, s] : acc) out[key] = s.value();
    return out;
}

// ---------------------------------------------------------------------------
// Sums

struct SieveSums {
    double S1 = 0.0;
    double S2 = 0.0;
    u64 alphas = 0;  ///< elements of A(N) congruent to v0 mod w
};

namespace detail {

inline bool is_prime_element(const IntegerPrimeIndicator& ind, i64 v) { return ind(v); }

}  // namespace detail

/// Brute-force S1 and S2 over alpha in A(N), alpha = v0 (mod w).
template <class Ring>
SieveSums brute_force_sums(const WeightSystem<Ring>& ws, unsigned threads = 1, Budget budget = default_budget()) {
    const auto& p = ws.params;
    const auto& ring = p.ring;
    const std::size_t k = ws.k();
    budget.check(ring.box_size(p.N), "sieve box");

    // Primes that appear in any modulus, and for each modulus its prime indices.
    std::vector<typename Ring::prime_type> primes;
    for (const auto& m : ws.moduli)
        for (const auto& P : m.primes)
            if (std::find(primes.begin(), primes.end(), P) == primes.end()) primes.push_back(P);
    std::vector<std::vector<std::size_t>> mod_primes(ws.moduli.size());
    for (std::size_t i = 0; i < ws.moduli.size(); ++i)
        for (const auto& P : ws.moduli[i].primes)
            mod_primes[i].push_back(std::find(primes.begin(), primes.end(), P) - primes.begin());

    // lambda lookup by mixed-radix code.
    const u64 radix = ws.moduli.size();
    {
        long double span = 1.0L;
        for (std::size_t i = 0; i < k; ++i) span *= static_cast<long double>(radix);
        require(span < 1.8e19L, "too many moduli to index the weight table");
    }
    std::unordered_map<u64, double> lambda;
    for (const auto& [key, v] : ws.lambda) {
        if (v == 0.0) continue;
        u64 code = 0;
        for (std::size_t i = k; i-- > 0;) code = code * radix + key[i];
        lambda.emplace(code, v);
    }

    auto box = ring.box(p.N, budget);
    std::vector<typename Ring::element_type> alphas;
    const auto w_mod = p.w.value;
    for (auto& a : box)
        if (ring.reduce(a, w_mod) == ring.reduce(p.v0, w_mod)) alphas.push_back(std::move(a));
    box.clear();

    std::function<bool(const typename Ring::element_type&)> is_prime;
    std::optional<IntegerPrimeIndicator> int_primes;
    if constexpr (std::is_same_v<Ring, IntegerRing>) {
        i64 hmax = 0;
        for (auto h : p.tuple) hmax = std::max(hmax, h);
        int_primes.emplace(static_cast<u64>(2 * static_cast<i64>(p.N) + std::max<i64>(hmax, 0) + 1));
        is_prime = [&](const i64& v) { return (*int_primes)(v); };
    } else {
        is_prime = [](const Poly& f) { return f.is_monic() && is_irreducible(f); };
    }

    struct Partial {
        CompensatedSum s1, s2;
    };
    auto partials = parallel_map<Partial>(kShards, threads, [&](u64 shard) {
        const auto [begin, end] = shard_range(alphas.size(), kShards, shard);
        Partial out;
        std::vector<std::vector<std::uint32_t>> dividing(k);
        std::vector<bool> hit(primes.size());
        for (u64 s = begin; s < end; ++s) {
            const auto& alpha = alphas[s];
            unsigned prime_translates = 0;
            for (std::size_t i = 0; i < k; ++i) {
                const auto v = alpha + p.tuple[i];
                if (is_prime(v)) ++prime_translates;
                for (std::size_t j = 0; j < primes.size(); ++j) hit[j] = ring.prime_divides(primes[j], v);
                dividing[i].clear();
                for (std::uint32_t m = 0; m < ws.moduli.size(); ++m) {
                    bool all = true;
                    for (auto j : mod_primes[m]) all = all && hit[j];
                    if (all) dividing[i].push_back(m);
                }
            }
            // Inner sum over tuples (d_1, ..., d_k) with d_i | alpha + h_i.
            CompensatedSum inner;
            std::function<void(std::size_t, u64)> rec = [&](std::size_t pos, u64 code_scale_sum) {
                if (pos == k) {
                    if (auto it = lambda.find(code_scale_sum); it != lambda.end()) inner.add(it->second);
                    return;
                }
                u64 scale = 1;
                for (std::size_t t = 0; t < pos; ++t) scale *= radix;
                for (auto m : dividing[pos]) rec(pos + 1, code_scale_sum + m * scale);
            };
            rec(0, 0);
            const double sq = inner.value() * inner.value();
            out.s1.add(sq);
            out.s2.add(prime_translates * sq);
        }
        return out;
    });
    SieveSums sums;
    CompensatedSum s1, s2;
    for (const auto& part : partials) {
        s1.add(part.s1);
        s2.add(part.s2);
    }
    sums.S1 = s1.value();
    sums.S2 = s2.value();
    sums.alphas = alphas.size();
    return sums;
}

struct MainTerms {
    double S1_pred = 0.0;
    double S2_pred = 0.0;
    double I = 0.0;
    double J = 0.0;
    u64 primes_in_box = 0;
};

/// The main terms
///   S1 ~ phi(w)^k |A(N)| (c_A log R)^k / |w|^{k+1} * I_k(F)
///   S2 ~ phi(w)^k |P(N)| (c_A log R)^{k+1} / |w|^{k+1} * sum_m J_k^(m)(F).
template <class Ring>
MainTerms predicted_main_terms(const WeightSystem<Ring>& ws, const TestFunction& F) {
    const auto& p = ws.params;
    const double k = static_cast<double>(ws.k());
    const double cA = zeta_residue(p.ring.descriptor());
    const double phi_w = static_cast<double>(p.ring.euler_phi(p.w.value));
    const double w = static_cast<double>(p.w.norm);
    const double L = cA * std::log(p.R);
    MainTerms t;
    std::tie(t.I, t.J) = F.integrals();
    t.primes_in_box = prime_count_in_box(p.ring, p.N);
    const double common = std::pow(phi_w, k) / std::pow(w, k + 1) * std::pow(L, k);
    t.S1_pred = common * static_cast<double>(p.ring.box_size(p.N)) * t.I;
    t.S2_pred = common * static_cast<double>(t.primes_in_box) * L * t.J;
    return t;
}

// ---------------------------------------------------------------------------
// GGPY summation lemma, kappa = 1, gamma = 1

struct GgpyResult {
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    double singular_series = 1.0;
    u64 moduli = 0;
};

/// lhs = sum over squarefree d with |d| < z of g(d) G(log|d| / log z), with
/// g(p) = 1/(|p| - 1); rhs = S c_A (log z) int_0^1 G. For gamma = 1 every
/// Euler factor of S is (1 - 1/|p|)^{-1} (1 - 1/|p|) = 1; the product is still
/// formed over primes of norm up to 10^6 (or z when smaller).
template <class Ring>
GgpyResult ggpy_sum_check(const Ring& ring, const std::function<double(double)>& G, double z,
                          Budget budget = default_budget()) {
    require(z >= 2.0, "z must be at least 2");
    GgpyResult r;
    const u64 bound = static_cast<u64>(std::ceil(z)) - 1;
    const auto moduli = enumerate_squarefree_moduli(ring, bound, ring.modulus_from_primes({}), budget);
    const double logz = std::log(z);
    CompensatedSum lhs;
    for (const auto& m : moduli) {
        if (static_cast<double>(m.norm) >= z) continue;
        ++r.moduli;
        lhs.add(G(std::log(static_cast<double>(m.norm)) / logz) / static_cast<double>(ring.euler_phi(m.value)));
    }
    r.lhs = lhs.value();
    double series = 1.0;
    for (const auto& P : ring.primes_up_to_norm(std::min<u64>(1'000'000, bound))) {
        const double np = static_cast<double>(ring.prime_norm(P));
        series *= (1.0 - 1.0 / np) / (1.0 - 1.0 / np);  // (1 - gamma/|p|)^{-1} (1 - 1/|p|)^kappa
    }
    r.singular_series = series;
    // Composite Simpson on [0, 1] for int G.
    const int panels = 2000;
    double integral = G(0.0) + G(1.0);
    for (int i = 1; i < panels; ++i) integral += (i % 2 ? 4.0 : 2.0) * G(static_cast<double>(i) / panels);
    integral /= 3.0 * panels;
    r.rhs = series * zeta_residue(ring.descriptor()) * logz * integral;
    r.ratio = r.rhs == 0.0 ? (r.lhs == 0.0 ? 1.0 : INFINITY) : r.lhs / r.rhs;
    return r;
}

// ---------------------------------------------------------------------------
// Level of distribution over F_q[t]

struct LodModulusRow {
    Poly modulus;
    u64 phi = 0;
    double max_error = 0.0;   ///< max over coprime classes of |E(N; q, a)|
    double normalized = 0.0;  ///< max_error / (log(2|q|) |A(N)|^{1/2})
};

struct LodResult {
    u64 q = 0;
    unsigned n = 0;
    unsigned max_degree = 0;
    u64 primes = 0;
    double constant = 0.0;  ///< max normalized error over all moduli
    std::vector<LodModulusRow> rows;
};

/// E(N; q, a) = #{monic irreducible f of degree n, f = a mod q} - |P(N)| / phi(q)
/// for every monic modulus q of degree <= max_degree.
inline LodResult lod_measure(u64 q, unsigned n, unsigned max_degree, unsigned threads = 1,
                             Budget budget = default_budget()) {
    PolyRing ring(q);
    const auto primes = enumerate_monic(q, n, true, budget);
    LodResult out{q, n, max_degree, primes.size(), 0.0, {}};
    std::vector<Poly> moduli;
    for (unsigned d = 0; d <= max_degree; ++d)
        for (auto& m : enumerate_monic(q, d, false, budget)) moduli.push_back(std::move(m));
    const double sqrtA = std::sqrt(static_cast<double>(checked_pow(q, n)));
    out.rows = parallel_map<LodModulusRow>(moduli.size(), threads, [&](u64 idx) {
        const Poly& m = moduli[idx];
        const u64 norm = ring.norm(m);
        std::vector<u64> counts(norm, 0);
        for (const auto& f : primes) {
            const Poly r = rem(f, m);
            u64 code = 0;
            for (int i = m.degree() - 1; i >= 0; --i) code = code * q + r.coeff(i);
            ++counts[code];
        }
        const u64 phi = ring.euler_phi(m);
        const double expected = static_cast<double>(primes.size()) / static_cast<double>(phi);
        double worst = 0.0;
        for (u64 code = 0; code < norm; ++code) {
            std::vector<u64> c(m.degree(), 0);
            u64 v = code;
            for (int i = 0; i < m.degree(); ++i) {
                c[i] = v % q;
                v /= q;
            }
            const Poly a(ring.field(), std::move(c));
            if (m.degree() > 0 && gcd(a, m).degree() != 0) continue;
            worst = std::max(worst, std::fabs(static_cast<double>(counts[code]) - expected));
        }
        return LodModulusRow{m, phi, worst, worst / (std::log(2.0 * static_cast<double>(norm)) * sqrtA)};
    });
    for (const auto& row : out.rows) out.constant = std::max(out.constant, row.normalized);
    return out;
}

}  // namespace sievelab
