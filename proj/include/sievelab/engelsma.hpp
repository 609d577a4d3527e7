#pragma once

/// @file engelsma.hpp
/// @brief Loading and verifying admissible integer tuples stored as JSON arrays.

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "sievelab/error.hpp"
#include "sievelab/rings.hpp"
#include "sievelab/tuples.hpp"

namespace sievelab {

/// The tuple file does not exist.
class data_missing : public precondition_error {
public:
    using precondition_error::precondition_error;
};

struct TupleRecord {
    std::string source;
    std::vector<i64> elements;
    bool verified = false;
    i64 diameter = 0;
    std::optional<AdmissibilityWitness<u64>> witness;
};

/// Parses a JSON integer array and requires it to be strictly increasing.
inline std::vector<i64> parse_tuple_json(const std::string& text, const std::string& label) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw precondition_error(label + ": not valid JSON (" + e.what() + ")");
    }
    require(doc.is_array() && !doc.empty(), label + ": expected a non-empty JSON array");
    std::vector<i64> out;
    for (const auto& v : doc) {
        require(v.is_number_integer(), label + ": array entries must be integers");
        out.push_back(v.get<i64>());
    }
    for (std::size_t i = 1; i < out.size(); ++i)
        require(out[i - 1] < out[i], label + ": entries must be strictly increasing");
    return out;
}

inline TupleRecord verify_tuple(std::vector<i64> elements, std::string source) {
    TupleRecord rec;
    rec.source = std::move(source);
    rec.elements = std::move(elements);
    rec.diameter = diameter(rec.elements);
    auto report = is_admissible(IntegerRing{}, std::span<const i64>(rec.elements));
    rec.verified = report.admissible;
    rec.witness = std::move(report.witness);
    return rec;
}

/// Reads `path`, checks admissibility at every prime up to the tuple size and
/// records the diameter. An inadmissible tuple is returned unverified with a
/// witness prime; unreadable or malformed files throw.
inline TupleRecord load_and_verify(const std::filesystem::path& path) {
    if (!std::filesystem::exists(path)) throw data_missing("data missing: " + path.string());
    std::ifstream in(path);
    require(static_cast<bool>(in), "cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return verify_tuple(parse_tuple_json(buf.str(), path.string()), path.string());
}

#ifdef SIEVELAB_DATA_DIR
inline std::filesystem::path default_engelsma_path() {
    return std::filesystem::path(SIEVELAB_DATA_DIR) / "engelsma_105.json";
}
#endif

}  // namespace sievelab
