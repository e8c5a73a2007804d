#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "regsys/system.hpp"

namespace regsys {

// Wire form of a system; entries are stored reduced to canonical residues.
struct SystemDocument {
    std::uint64_t modulus = 0;
    int n = 0;
    int m = 0;
    std::vector<std::vector<std::int64_t>> a; // n rows of n
    std::vector<std::vector<std::int64_t>> b; // n rows of m
    std::string label;
    bool has_label = false;

    bool operator==(const SystemDocument& o) const = default;
};

// Throws std::invalid_argument on malformed or inconsistent fields and
// NotSquarefreeError on a non-squarefree modulus.  Unknown fields are ignored.
SystemDocument document_from_json(const nlohmann::json& j);

nlohmann::ordered_json document_to_json(const SystemDocument& d);

LinSys system_from_document(const SystemDocument& d);
SystemDocument document_from_system(const LinSys& s);

nlohmann::ordered_json matrix_to_json(const Mat& m);

} // namespace regsys
