#pragma once

#include <json.hpp>

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "framekit/types.hpp"

namespace framekit::io {

// ---------------------------------------------------------------------------
// Canonical JSON emission: sorted keys, two-space indent, doubles printed with
// 17 significant digits. Reports and matrix files written through this are
// byte-stable across runs.
// ---------------------------------------------------------------------------

struct Json;
using JsonArray = std::vector<Json>;
using JsonObject = std::map<std::string, Json>;

struct Json {
    std::variant<std::nullptr_t, bool, std::int64_t, std::uint64_t, double, std::string, JsonArray,
                 JsonObject>
        value{nullptr};

    Json() = default;
    Json(std::nullptr_t) {}
    Json(bool b) : value(b) {}
    Json(int i) : value(static_cast<std::int64_t>(i)) {}
    Json(long i) : value(static_cast<std::int64_t>(i)) {}
    Json(long long i) : value(static_cast<std::int64_t>(i)) {}
    Json(unsigned long i) : value(static_cast<std::uint64_t>(i)) {}
    Json(unsigned long long i) : value(static_cast<std::uint64_t>(i)) {}
    Json(double d) : value(d) {}
    Json(const char* s) : value(std::string(s)) {}
    Json(std::string s) : value(std::move(s)) {}
    Json(JsonArray a) : value(std::move(a)) {}
    Json(JsonObject o) : value(std::move(o)) {}
};

namespace detail {

inline std::string format_double(double d) {
    if (!std::isfinite(d)) throw Error("refusing to serialize a non-finite number");
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", d);
    return buf;
}

inline void escape_string(const std::string& s, std::string& out) {
    out.push_back('"');
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
}

inline void dump_value(const Json& j, std::string& out, int depth) {
    const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::nullptr_t>) {
                out += "null";
            } else if constexpr (std::is_same_v<T, bool>) {
                out += v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::int64_t> ||
                                 std::is_same_v<T, std::uint64_t>) {
                out += std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                out += format_double(v);
            } else if constexpr (std::is_same_v<T, std::string>) {
                escape_string(v, out);
            } else if constexpr (std::is_same_v<T, JsonArray>) {
                if (v.empty()) {
                    out += "[]";
                    return;
                }
                out += "[\n";
                for (std::size_t i = 0; i < v.size(); ++i) {
                    out += pad_in;
                    dump_value(v[i], out, depth + 1);
                    if (i + 1 < v.size()) out += ",";
                    out += "\n";
                }
                out += pad + "]";
            } else if constexpr (std::is_same_v<T, JsonObject>) {
                if (v.empty()) {
                    out += "{}";
                    return;
                }
                out += "{\n";
                std::size_t i = 0;
                for (const auto& [key, val] : v) {
                    out += pad_in;
                    escape_string(key, out);
                    out += ": ";
                    dump_value(val, out, depth + 1);
                    if (++i < v.size()) out += ",";
                    out += "\n";
                }
                out += pad + "}";
            }
        },
        j.value);
}

}  // namespace detail

inline std::string dump(const Json& j) {
    std::string out;
    detail::dump_value(j, out, 0);
    return out;
}

inline void write_file(const std::string& path, const Json& j) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open for writing: " + path);
    out << dump(j) << "\n";
}

// ---------------------------------------------------------------------------
// MatrixFile: {"rows": r, "cols": c, "complex": bool, "data": row-major rows};
// real entries are plain numbers, complex entries [re, im]. NaN/Inf rejected.
// CSV is accepted read-only for real matrices.
// ---------------------------------------------------------------------------

namespace detail {

inline double finite_number(const nlohmann::json& j, const char* what) {
    if (!j.is_number()) throw ParseError(std::string(what) + " must be a number");
    const double d = j.get<double>();
    if (!std::isfinite(d)) throw ParseError(std::string(what) + " must be finite");
    return d;
}

inline Complex parse_entry(const nlohmann::json& j) {
    if (j.is_number()) return Complex(finite_number(j, "matrix entry"), 0.0);
    if (j.is_array() && j.size() == 2)
        return Complex(finite_number(j[0], "matrix entry re"), finite_number(j[1], "matrix entry im"));
    throw ParseError("matrix entry must be a number or an [re, im] pair");
}

}  // namespace detail

inline Matrix parse_matrix_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ParseError("matrix file must be a JSON object");
    for (const char* key : {"rows", "cols", "data"})
        if (!doc.contains(key)) throw ParseError(std::string("matrix file missing \"") + key + "\"");
    if (!doc["rows"].is_number_integer() || !doc["cols"].is_number_integer())
        throw ParseError("rows and cols must be integers");
    const Index rows = doc["rows"].get<Index>();
    const Index cols = doc["cols"].get<Index>();
    if (rows < 1 || cols < 1) throw ParseError("rows and cols must be positive");
    const auto& data = doc["data"];
    if (!data.is_array() || static_cast<Index>(data.size()) != rows)
        throw ParseError("data must hold exactly \"rows\" rows");
    Matrix m(rows, cols);
    for (Index r = 0; r < rows; ++r) {
        const auto& row = data[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Index>(row.size()) != cols)
            throw ParseError("each data row must hold exactly \"cols\" entries");
        for (Index c = 0; c < cols; ++c)
            m(r, c) = detail::parse_entry(row[static_cast<std::size_t>(c)]);
    }
    return m;
}

inline Matrix parse_matrix_csv(std::istream& in) {
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            try {
                const double d = std::stod(cell);
                if (!std::isfinite(d)) throw ParseError("csv entry must be finite");
                row.push_back(d);
            } catch (const std::invalid_argument&) {
                throw ParseError("csv entry is not a number: " + cell);
            } catch (const std::out_of_range&) {
                throw ParseError("csv entry out of range: " + cell);
            }
        }
        if (!rows.empty() && row.size() != rows.front().size())
            throw ParseError("csv rows have inconsistent lengths");
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.front().empty()) throw ParseError("csv file holds no data");
    Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
    for (Index r = 0; r < m.rows(); ++r)
        for (Index c = 0; c < m.cols(); ++c)
            m(r, c) = Complex(rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)], 0.0);
    return m;
}

inline Matrix parse_matrix_text(const std::string& text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    return parse_matrix_json(doc);
}

inline Matrix load_matrix(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open: " + path);
    if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") return parse_matrix_csv(in);
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
    try {
        return parse_matrix_text(text);
    } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()) + " in " + path);
    }
}

/// A vector file is a matrix file with a single row or column.
inline Vector load_vector(const std::string& path) {
    const Matrix m = load_matrix(path);
    if (m.cols() == 1) return m.col(0);
    if (m.rows() == 1) return m.row(0).transpose();
    throw ParseError("expected a single-row or single-column matrix in " + path);
}

inline Json matrix_to_json(const Matrix& m) {
    if (!all_finite(m)) throw Error("refusing to serialize a non-finite matrix");
    const bool complex = (m.imag().cwiseAbs().maxCoeff() != 0.0);
    JsonArray data;
    data.reserve(static_cast<std::size_t>(m.rows()));
    for (Index r = 0; r < m.rows(); ++r) {
        JsonArray row;
        row.reserve(static_cast<std::size_t>(m.cols()));
        for (Index c = 0; c < m.cols(); ++c) {
            if (complex)
                row.push_back(JsonArray{m(r, c).real(), m(r, c).imag()});
            else
                row.push_back(m(r, c).real());
        }
        data.push_back(std::move(row));
    }
    JsonObject out;
    out["rows"] = static_cast<std::int64_t>(m.rows());
    out["cols"] = static_cast<std::int64_t>(m.cols());
    out["complex"] = complex;
    out["data"] = std::move(data);
    return out;
}

/// Report-side vector encoding: always [re, im] pairs.
inline Json vector_to_json(const Vector& v) {
    JsonArray out;
    out.reserve(static_cast<std::size_t>(v.size()));
    for (Index i = 0; i < v.size(); ++i) out.push_back(JsonArray{v(i).real(), v(i).imag()});
    return out;
}

}  // namespace framekit::io
