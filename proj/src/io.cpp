#include "regsys/io.hpp"

#include <stdexcept>

namespace regsys {

namespace {

std::int64_t read_int(const nlohmann::json& j, const char* what) {
    if (!j.is_number_integer())
        throw std::invalid_argument(std::string("document: ") + what + " must be an integer");
    return j.get<std::int64_t>();
}

std::vector<std::vector<std::int64_t>> read_matrix(const nlohmann::json& j, const char* name,
                                                   int rows, int cols, const Ring& ring) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw std::invalid_argument(std::string("document: ") + name + " must have " +
                                    std::to_string(rows) + " rows");
    std::vector<std::vector<std::int64_t>> out;
    out.reserve(j.size());
    for (const auto& row : j) {
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw std::invalid_argument(std::string("document: ") + name + " rows must have " +
                                        std::to_string(cols) + " entries");
        std::vector<std::int64_t> r;
        r.reserve(row.size());
        for (const auto& v : row)
            r.push_back(static_cast<std::int64_t>(ring->reduce(read_int(v, name))));
        out.push_back(std::move(r));
    }
    return out;
}

} // namespace

SystemDocument document_from_json(const nlohmann::json& j) {
    if (!j.is_object())
        throw std::invalid_argument("document: top level must be an object");
    for (const char* field : {"modulus", "n", "m", "A", "B"})
        if (!j.contains(field))
            throw std::invalid_argument(std::string("document: missing field ") + field);

    std::int64_t modulus = read_int(j.at("modulus"), "modulus");
    if (modulus < 2)
        throw std::invalid_argument("document: modulus must be at least 2");
    Ring ring = make_ring(static_cast<std::uint64_t>(modulus)); // validates squarefreeness

    std::int64_t n = read_int(j.at("n"), "n");
    std::int64_t m = read_int(j.at("m"), "m");
    if (n < 0 || m < 0)
        throw std::invalid_argument("document: n and m must be non-negative");

    SystemDocument d;
    d.modulus = static_cast<std::uint64_t>(modulus);
    d.n = static_cast<int>(n);
    d.m = static_cast<int>(m);
    d.a = read_matrix(j.at("A"), "A", d.n, d.n, ring);
    d.b = read_matrix(j.at("B"), "B", d.n, d.m, ring);
    if (j.contains("label")) {
        if (!j.at("label").is_string())
            throw std::invalid_argument("document: label must be a string");
        d.label = j.at("label").get<std::string>();
        d.has_label = true;
    }
    return d;
}

nlohmann::ordered_json document_to_json(const SystemDocument& d) {
    nlohmann::ordered_json j;
    j["modulus"] = d.modulus;
    j["n"] = d.n;
    j["m"] = d.m;
    j["A"] = d.a;
    j["B"] = d.b;
    if (d.has_label)
        j["label"] = d.label;
    return j;
}

LinSys system_from_document(const SystemDocument& d) {
    Ring ring = make_ring(d.modulus);
    if (d.n == 0) // column counts are not inferable from zero rows
        return LinSys(Mat(ring, 0, 0), Mat(ring, 0, d.m));
    return LinSys(Mat::from_rows(ring, d.a), Mat::from_rows(ring, d.b));
}

SystemDocument document_from_system(const LinSys& s) {
    SystemDocument d;
    d.modulus = s.ring()->modulus();
    d.n = s.state_dim();
    d.m = s.input_dim();
    d.a.assign(static_cast<std::size_t>(d.n), std::vector<std::int64_t>());
    d.b.assign(static_cast<std::size_t>(d.n), std::vector<std::int64_t>());
    for (int i = 0; i < d.n; ++i) {
        auto& ra = d.a[static_cast<std::size_t>(i)];
        auto& rb = d.b[static_cast<std::size_t>(i)];
        ra.reserve(static_cast<std::size_t>(d.n));
        rb.reserve(static_cast<std::size_t>(d.m));
        for (int jx = 0; jx < d.n; ++jx)
            ra.push_back(static_cast<std::int64_t>(s.a(i, jx)));
        for (int jx = 0; jx < d.m; ++jx)
            rb.push_back(static_cast<std::int64_t>(s.b(i, jx)));
    }
    return d;
}

nlohmann::ordered_json matrix_to_json(const Mat& m) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (int i = 0; i < m.rows(); ++i) {
        nlohmann::ordered_json row = nlohmann::ordered_json::array();
        for (int j = 0; j < m.cols(); ++j)
            row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

} // namespace regsys
