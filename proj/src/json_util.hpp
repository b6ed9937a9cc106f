#pragma once

#include "errors.hpp"
#include "linalg.hpp"

#include <json.hpp>

#include <string>

// Shared wire format: a complex scalar is [re, im], a vector is an array of
// those, a matrix an array of rows.
namespace wdde::jsonio {

using nlohmann::ordered_json;

inline Complex read_complex(const ordered_json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ProblemError("expected complex scalar [re, im]", path);
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Vector read_vector(const ordered_json& j, long d, const std::string& path) {
    if (!j.is_array() || static_cast<long>(j.size()) != d)
        throw ProblemError("expected vector of length " + std::to_string(d), path);
    Vector v(d);
    for (long i = 0; i < d; ++i)
        v(i) = read_complex(j[static_cast<size_t>(i)], path + "/" + std::to_string(i));
    return v;
}

inline Matrix read_matrix(const ordered_json& j, long d, const std::string& path) {
    if (!j.is_array() || static_cast<long>(j.size()) != d)
        throw ProblemError("expected " + std::to_string(d) + "x" + std::to_string(d) + " matrix",
                           path);
    Matrix m(d, d);
    for (long i = 0; i < d; ++i) {
        const auto& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<long>(row.size()) != d)
            throw ProblemError(
                "expected " + std::to_string(d) + "x" + std::to_string(d) + " matrix", path);
        for (long k = 0; k < d; ++k)
            m(i, k) = read_complex(row[static_cast<size_t>(k)],
                                   path + "/" + std::to_string(i) + "/" + std::to_string(k));
    }
    return m;
}

inline Matrix read_square_matrix(const ordered_json& j, const std::string& path) {
    if (!j.is_array() || j.empty())
        throw ProblemError("expected square matrix", path);
    return read_matrix(j, static_cast<long>(j.size()), path);
}

inline long parse_index_key(const std::string& key, const std::string& path) {
    try {
        size_t pos = 0;
        long n = std::stol(key, &pos);
        if (pos != key.size()) throw std::invalid_argument(key);
        return n;
    } catch (const std::exception&) {
        throw ProblemError("sample key is not an integer index: '" + key + "'", path);
    }
}

inline ordered_json write_complex(const Complex& z) {
    return ordered_json::array({z.real(), z.imag()});
}

inline ordered_json write_vector(const Vector& v) {
    ordered_json a = ordered_json::array();
    for (long i = 0; i < v.size(); ++i) a.push_back(write_complex(v(i)));
    return a;
}

inline ordered_json write_matrix(const Matrix& m) {
    ordered_json rows = ordered_json::array();
    for (long i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (long j = 0; j < m.cols(); ++j) row.push_back(write_complex(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

} // namespace wdde::jsonio
