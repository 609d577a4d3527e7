#pragma once

/// @file json_out.hpp
/// @brief Deterministic JSON text: insertion-ordered keys, two-space indent and
/// floats printed with 17 significant digits.

#include <cmath>
#include <cstdio>
#include <string>

#include "json.hpp"

namespace sievelab {

using Json = nlohmann::ordered_json;

inline std::string format_double(double x) {
    if (std::isnan(x)) return "null";  // JSON has no NaN or infinity
    if (std::isinf(x)) return "null";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    std::string s(buf);
    if (s.find_first_of(".eE") == std::string::npos) s += ".0";
    return s;
}

namespace detail {

inline void write_json(const Json& j, std::string& out, int indent) {
    const std::string pad(indent + 2, ' '), close(indent, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (const auto& [key, value] : j.items()) {
                if (!first) out += ",\n";
                first = false;
                out += pad + Json(key).dump() + ": ";
                write_json(value, out, indent + 2);
            }
            out += "\n" + close + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // arrays of scalars stay on one line
            bool flat = true;
            for (const auto& v : j) flat = flat && !v.is_structured();
            out += flat ? "[" : "[\n";
            bool first = true;
            for (const auto& v : j) {
                if (!first) out += flat ? ", " : ",\n";
                first = false;
                if (!flat) out += pad;
                write_json(v, out, indent + 2);
            }
            out += flat ? "]" : "\n" + close + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_double(j.get<double>());
            return;
        default:
            out += j.dump();
    }
}

}  // namespace detail

inline std::string to_text(const Json& j) {
    std::string out;
    detail::write_json(j, out, 0);
    out += "\n";
    return out;
}

}  // namespace sievelab
