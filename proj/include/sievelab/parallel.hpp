#pragma once

/// @file parallel.hpp
/// @brief Fixed-shard parallel map and compensated summation.
///
/// Work is split into shards whose boundaries depend only on the problem size,
/// never on the thread count, and results are merged in shard order. Together
/// with Neumaier summation this keeps outputs identical for any --threads.

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <exception>
#include <functional>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace sievelab {

/// Neumaier's variant of Kahan summation.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::fabs(sum) >= std::fabs(x)) comp += (sum - t) + x;
        else comp += (x - t) + sum;
        sum = t;
    }
    void add(const CompensatedSum& other) {
        add(other.sum);
        add(other.comp);
    }
    double value() const { return sum + comp; }
};

/// Calls fn(i) for i in [0, n) on up to `threads` workers and returns the
/// results in index order. The first exception thrown by any call is rethrown.
template <class R, class Fn>
std::vector<R> parallel_map(std::uint64_t n, unsigned threads, Fn&& fn) {
    std::vector<std::optional<R>> slots(n);
    auto collect = [&] {
        std::vector<R> out;
        out.reserve(n);
        for (auto& s : slots) out.push_back(std::move(*s));
        return out;
    };
    const unsigned workers = static_cast<unsigned>(std::min<std::uint64_t>(std::max(1u, threads), n));
    if (workers <= 1) {
        for (std::uint64_t i = 0; i < n; ++i) slots[i].emplace(fn(i));
        return collect();
    }
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (;;) {
            const std::uint64_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error) error = std::current_exception();
                next.store(n);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (error) std::rethrow_exception(error);
    return collect();
}

/// Half-open index range [begin, end) of shard s when [0, n) is cut into
/// `shards` nearly equal pieces.
inline std::pair<std::uint64_t, std::uint64_t> shard_range(std::uint64_t n, std::uint64_t shards, std::uint64_t s) {
    const std::uint64_t base = n / shards, extra = n % shards;
    const std::uint64_t begin = s * base + std::min(s, extra);
    return {begin, begin + base + (s < extra ? 1 : 0)};
}

/// Shard count used by every deterministic reduction in the library.
inline constexpr std::uint64_t kShards = 64;

}  // namespace sievelab
