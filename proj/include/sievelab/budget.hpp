#pragma once

#include <cstdint>
#include <cstdlib>
#include <string>

#include "sievelab/error.hpp"

namespace sievelab {

/// Upper bound on elements an enumeration may visit.
///
/// The default comes from the SIEVELAB_BUDGET environment variable when set,
/// otherwise 10^8.
struct Budget {
    std::uint64_t limit;

    static Budget from_env() {
        if (const char* env = std::getenv("SIEVELAB_BUDGET")) {
            try {
                return Budget{std::stoull(env)};
            } catch (const std::exception&) {
                throw precondition_error("SIEVELAB_BUDGET is not an unsigned integer");
            }
        }
        return Budget{100'000'000ULL};
    }

    void check(std::uint64_t requested, const std::string& what) const {
        if (requested > limit)
            throw budget_exceeded(what + ": " + std::to_string(requested) +
                                  " elements exceed budget " + std::to_string(limit));
    }
};

inline Budget default_budget() { return Budget::from_env(); }

}  // namespace sievelab
