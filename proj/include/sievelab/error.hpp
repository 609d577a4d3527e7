#pragma once

#include <stdexcept>
#include <string>

namespace sievelab {

/// A caller violated an operation's precondition (CLI exit status 2).
class precondition_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration or search exceeded its configured budget (CLI exit status 3).
class budget_exceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline void require(bool condition, const std::string& what) {
    if (!condition) throw precondition_error(what);
}

}  // namespace sievelab
