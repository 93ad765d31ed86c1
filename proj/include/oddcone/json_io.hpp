#pragma once

#include "canonical_form.hpp"
#include "complement.hpp"
#include "orbit_census.hpp"
#include "superalgebra.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace oddcone {

using nlohmann::json;

// Rationals travel as strings ("3", "-7/2") so every value round-trips
// exactly.  Integers are accepted on input; floats are rejected rather than
// silently approximated.
inline json to_json(const Rational& q) { return q.str(); }

inline Rational rational_from_json(const json& j) {
    if (j.is_number_integer()) return Rational(j.get<long>());
    if (j.is_string()) return Rational::parse(j.get<std::string>());
    throw std::invalid_argument("json: expected exact rational (string or integer), got " +
                                std::string(j.type_name()));
}

namespace detail {
inline const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw std::invalid_argument("json: expected object");
    auto it = j.find(key);
    if (it == j.end())
        throw std::invalid_argument(std::string("json: missing field '") + key + "'");
    return *it;
}

inline int int_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_integer())
        throw std::invalid_argument(std::string("json: field '") + key + "' must be an integer");
    return v.get<int>();
}

inline std::vector<int> int_list_field(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array())
        throw std::invalid_argument(std::string("json: field '") + key + "' must be an array");
    std::vector<int> out;
    out.reserve(v.size());
    for (const json& e : v) {
        if (!e.is_number_integer())
            throw std::invalid_argument(std::string("json: field '") + key +
                                        "' must contain integers");
        out.push_back(e.get<int>());
    }
    return out;
}
}  // namespace detail

inline json to_json(const Matrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(to_json(m(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

// Nested arrays of rationals; all rows must have equal width.  A matrix with
// zero rows deserializes as 0 x 0 (the column count is not recoverable), so
// shaped callers pass through OddElement/GroupElement constructors which
// recheck dimensions.
inline Matrix matrix_from_json(const json& j) {
    if (!j.is_array()) throw std::invalid_argument("json: matrix must be an array of rows");
    int rows = static_cast<int>(j.size());
    int cols = 0;
    if (rows > 0) {
        if (!j[0].is_array())
            throw std::invalid_argument("json: matrix rows must be arrays");
        cols = static_cast<int>(j[0].size());
    }
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[static_cast<size_t>(i)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw std::invalid_argument("json: matrix rows must have equal length");
        for (int c = 0; c < cols; ++c) m(i, c) = rational_from_json(row[static_cast<size_t>(c)]);
    }
    return m;
}

inline json to_json(const OddElement& x) {
    return json{{"m", x.m}, {"n", x.n}, {"xplus", to_json(x.xplus)}, {"xminus", to_json(x.xminus)}};
}

inline OddElement element_from_json(const json& j) {
    int m = detail::int_field(j, "m");
    int n = detail::int_field(j, "n");
    return OddElement(m, n, matrix_from_json(detail::field(j, "xplus")),
                      matrix_from_json(detail::field(j, "xminus")));
}

inline json to_json(const GroupElement& g) {
    return json{{"A", to_json(g.A)}, {"B", to_json(g.B)}};
}

inline GroupElement group_from_json(const json& j) {
    return GroupElement(matrix_from_json(detail::field(j, "A")),
                        matrix_from_json(detail::field(j, "B")));
}

inline json to_json(const OrbitParams& p) {
    return json{{"r", p.r},
                {"partition", p.partition},
                {"c_pivots", p.c_pivots},
                {"r_pivots", p.r_pivots},
                {"s", p.s}};
}

// Structural parse only; validate_params supplies the semantic checks once
// the ambient dimensions are known.
inline OrbitParams params_from_json(const json& j) {
    OrbitParams p;
    p.r = detail::int_field(j, "r");
    p.partition = detail::int_list_field(j, "partition");
    p.c_pivots = detail::int_list_field(j, "c_pivots");
    p.r_pivots = detail::int_list_field(j, "r_pivots");
    p.s = detail::int_field(j, "s");
    return p;
}

inline json to_json(const CanonicalResult& res, bool with_trace = false) {
    json out{{"g", to_json(res.g)}, {"params", to_json(res.params)}, {"y", to_json(res.y)}};
    if (with_trace) {
        json tr = json::array();
        for (const StageRecord& rec : res.trace)
            tr.push_back(json{{"stage", rec.stage}, {"g", to_json(rec.g)}, {"y", to_json(rec.y)}});
        out["trace"] = std::move(tr);
    }
    return out;
}

inline json to_json(const VerifyReport& rep) {
    json checks = json::array();
    for (const CheckResult& c : rep.checks) {
        json entry{{"name", c.name}, {"pass", c.pass}};
        if (!c.detail.empty()) entry["detail"] = c.detail;
        checks.push_back(std::move(entry));
    }
    return json{{"kind", rep.kind.str()}, {"pass", rep.pass}, {"checks", std::move(checks)}};
}

}  // namespace oddcone
