#pragma once

/// @file monte_carlo.hpp
/// @brief Monte Carlo estimate of sum_m J_k^(m)(F) / I_k(F) for a symmetric
/// polynomial F given pointwise, independent of the exact form assembly.
///
/// Points are drawn by defensive importance sampling (see SimplexSampler).
/// The inner integral over x_m is done by Gauss-Legendre quadrature on
/// [0, 1 - s], exact for degree bounds up to 15.

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <tuple>
#include <vector>

#include "sievelab/error.hpp"
#include "sievelab/mk.hpp"
#include "sievelab/parallel.hpp"

namespace sievelab {

struct MonteCarloEstimate {
    double ratio = 0.0;       ///< estimate of sum_m J^(m) / I
    double i_integral = 0.0;  ///< estimate of I_k(F)
    double j_integral = 0.0;  ///< estimate of sum_m J_k^(m)(F)
    std::uint64_t samples = 0;
};

namespace detail {

// 8-point Gauss-Legendre nodes and weights on [-1, 1] (positive half);
// exact for polynomials of degree <= 15.
inline constexpr std::array<double, 4> kGaussNodes = {0.1834346424956498049394761, 0.5255324099163289858177390,
                                                      0.7966664774136267395915539, 0.9602898564975362316835609};
inline constexpr std::array<double, 4> kGaussWeights = {0.3626837833783619829651504, 0.3137066458778872873379622,
                                                        0.2223810344533744705443560, 0.1012285362903762591525314};

inline double lgamma_factorial(unsigned n) { return std::lgamma(static_cast<double>(n) + 1.0); }

}  // namespace detail

/// Draws points of R_dim as x = r * u, r = sum x_i, with
///   r from 1/2 * dim r^(dim-1) + 1/2 * uniform[0, 1]
///   u from 1/2 * uniform on the face {sum x_i = 1} + 1/2 * Dirichlet(alpha)
/// and returns (sum x_i, sum x_i^2, uniform density / proposal density).
/// Under the uniform measure r concentrates near 1 and u near the centre of
/// the face, while optimal F put their mass at moderate r and at directions
/// with larger P2. The uniform halves keep every weight below 4.
class SimplexSampler {
public:
    explicit SimplexSampler(unsigned dim, double alpha = 0.6)
        : dim_(dim), alpha_(alpha), shape_(alpha, 1.0), e_(dim) {
        if (dim > 1)
            log_dirichlet_norm_ = std::lgamma(dim * alpha) - dim * std::lgamma(alpha) - std::lgamma(double(dim));
    }

    std::tuple<double, double, double> draw(std::mt19937_64& rng) {
        if (dim_ == 0) return {0.0, 0.0, 1.0};
        const double r = unit_(rng) < 0.5 ? std::pow(unit_(rng), 1.0 / dim_) : unit_(rng);
        const double radial = dim_ * std::pow(r, static_cast<int>(dim_) - 1);
        double weight = radial / (0.5 * radial + 0.5);
        if (dim_ == 1) return {r, r * r, weight};

        const bool flat = unit_(rng) < 0.5;
        double total = 0.0;
        for (auto& x : e_) total += (x = flat ? expo_(rng) : shape_(rng));
        double squares = 0.0, log_prod = 0.0;
        for (auto& x : e_) {
            x /= total;
            squares += x * x;
            log_prod += std::log(x);
        }
        const double dirichlet = std::exp(log_dirichlet_norm_ + (alpha_ - 1.0) * log_prod);
        weight /= 0.5 + 0.5 * dirichlet;
        return {r, squares * r * r, weight};
    }

private:
    unsigned dim_;
    double alpha_;
    double log_dirichlet_norm_ = 0.0;  ///< log of Dirichlet(alpha) density / flat density, constant part
    std::gamma_distribution<double> shape_;
    std::exponential_distribution<double> expo_{1.0};
    std::uniform_real_distribution<double> unit_{0.0, 1.0};
    std::vector<double> e_;
};

/// Evaluates sum_i c_i (1 - P1)^{a_i} P2^{b_i} with cached power tables.
class BasisEvaluator {
public:
    BasisEvaluator(const std::vector<BasisElement>& gens, const std::vector<double>& coeffs)
        : gens_(gens), coeffs_(coeffs) {
        for (const auto& g : gens) {
            max_a_ = std::max(max_a_, g.a);
            max_b_ = std::max(max_b_, g.b);
        }
        pa_.resize(max_a_ + 1);
        pb_.resize(max_b_ + 1);
    }

    double operator()(double p1, double p2) {
        if (p1 > 1.0) return 0.0;
        pa_[0] = pb_[0] = 1.0;
        for (unsigned i = 1; i <= max_a_; ++i) pa_[i] = pa_[i - 1] * (1.0 - p1);
        for (unsigned i = 1; i <= max_b_; ++i) pb_[i] = pb_[i - 1] * p2;
        double s = 0.0;
        for (std::size_t i = 0; i < gens_.size(); ++i) s += coeffs_[i] * pa_[gens_[i].a] * pb_[gens_[i].b];
        return s;
    }

private:
    const std::vector<BasisElement>& gens_;
    const std::vector<double>& coeffs_;
    unsigned max_a_ = 0, max_b_ = 0;
    std::vector<double> pa_, pb_;
};

/// Ratio k^2 * E[(inner F)^2] / E[F^2] where the first expectation is over a
/// uniform point of R_{k-1} and the second over a uniform point of R_k; the
/// volume ratio vol(R_{k-1}) / vol(R_k) = k supplies one factor of k and the
/// symmetry of F over m supplies the other.
inline MonteCarloEstimate monte_carlo_rayleigh(unsigned k, const std::vector<BasisElement>& gens,
                                               const std::vector<double>& coeffs, std::uint64_t samples,
                                               std::uint64_t seed, unsigned threads = 1) {
    require(k >= 1, "k must be at least 1");
    require(samples >= kShards, "Monte Carlo needs at least one sample per shard");
    require(gens.size() == coeffs.size(), "coefficient vector does not match the basis");
    for (const auto& g : gens)
        require(g.degree() <= 15, "Monte Carlo quadrature supports degree bounds up to 15");

    struct Partial {
        CompensatedSum i_sum, j_sum;
    };
    auto partials = parallel_map<Partial>(kShards, threads, [&](std::uint64_t shard) {
        std::seed_seq seq{seed, shard, std::uint64_t{0x9e3779b97f4a7c15ULL}};
        std::mt19937_64 rng(seq);
        SimplexSampler outer(k), inner_sampler(k - 1);
        BasisEvaluator F(gens, coeffs);
        const auto [begin, end] = shard_range(samples, kShards, shard);
        Partial out;
        for (std::uint64_t s = begin; s < end; ++s) {
            const auto [p1, p2, w_outer] = outer.draw(rng);
            const double f = F(p1, p2);
            out.i_sum.add(w_outer * f * f);

            const auto [s_sum, q_sum, w_inner] = inner_sampler.draw(rng);
            const double half = (1.0 - s_sum) / 2.0;
            double inner = 0.0;
            for (std::size_t g = 0; g < detail::kGaussNodes.size(); ++g)
                for (int sign : {-1, 1}) {
                    const double x = half + sign * half * detail::kGaussNodes[g];
                    inner += detail::kGaussWeights[g] * F(s_sum + x, q_sum + x * x);
                }
            inner *= half;
            out.j_sum.add(w_inner * inner * inner);
        }
        return out;
    });
    CompensatedSum isum, jsum;
    for (const auto& p : partials) {
        isum.add(p.i_sum);
        jsum.add(p.j_sum);
    }
    const double ei = isum.value() / static_cast<double>(samples);
    const double ej = jsum.value() / static_cast<double>(samples);
    MonteCarloEstimate est;
    est.samples = samples;
    const double log_vol_k = -detail::lgamma_factorial(k);
    const double log_vol_km1 = -detail::lgamma_factorial(k - 1);
    est.i_integral = ei * std::exp(log_vol_k);
    est.j_integral = static_cast<double>(k) * ej * std::exp(log_vol_km1);
    est.ratio = static_cast<double>(k) * static_cast<double>(k) * ej / ei;
    return est;
}

}  // namespace sievelab
