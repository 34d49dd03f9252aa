#pragma once

// Shared JSON <-> matrix plumbing for the model and report readers. Complex
// numbers are [re, im] pairs; matrices are flat row-major arrays of pairs.

#include <string>

#include <json.hpp>

#include "qdfs/complex_matrix.hpp"
#include "qdfs/errors.hpp"

namespace qdfs::jsonu {

using nlohmann::json;

[[noreturn]] inline void fail(const std::string& path, const std::string& what) {
    throw ParseError(path + ": " + what);
}

inline const json& field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) fail(path + "." + key, "missing");
    return *it;
}

inline const json* optional_field(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) fail(path, "expected an object");
    auto it = j.find(key);
    return it == j.end() ? nullptr : &*it;
}

inline double number(const json& j, const std::string& path) {
    if (!j.is_number()) fail(path, "expected a number");
    return j.get<double>();
}

inline std::size_t index(const json& j, const std::string& path) {
    if (!j.is_number_unsigned()) fail(path, "expected a non-negative integer");
    return j.get<std::size_t>();
}

inline bool boolean(const json& j, const std::string& path) {
    if (!j.is_boolean()) fail(path, "expected a boolean");
    return j.get<bool>();
}

inline std::string text(const json& j, const std::string& path) {
    if (!j.is_string()) fail(path, "expected a string");
    return j.get<std::string>();
}

inline Complex complex_value(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) fail(path, "expected a [re, im] pair");
    return {number(j[0], path + "[0]"), number(j[1], path + "[1]")};
}

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline ComplexMatrix matrix_value(const json& j, std::size_t rows, std::size_t cols,
                                  const std::string& path) {
    if (!j.is_array()) fail(path, "expected a flat array of [re, im] pairs");
    if (j.size() != rows * cols)
        fail(path, "expected " + std::to_string(rows * cols) + " complex entries for a " +
                       std::to_string(rows) + "x" + std::to_string(cols) + " matrix, got " +
                       std::to_string(j.size()));
    ComplexMatrix m(rows, cols);
    for (std::size_t i = 0; i < j.size(); ++i)
        m.data()[i] = complex_value(j[i], path + "[" + std::to_string(i) + "]");
    return m;
}

inline json matrix_json(const ComplexMatrix& m) {
    json arr = json::array();
    for (std::size_t i = 0; i < m.size(); ++i) arr.push_back(complex_json(m.data()[i]));
    return arr;
}

// Parses "<name>/<major>" and rejects anything but the expected major
// version, so v2 files fail loudly instead of being half-read.
inline void check_format(const json& root, const std::string& name, int major,
                         const std::string& path) {
    const std::string tag = text(field(root, "format", path), path + ".format");
    const std::string prefix = name + "/";
    if (tag.rfind(prefix, 0) != 0)
        fail(path + ".format", "expected a \"" + prefix + "<version>\" tag, got \"" + tag + "\"");
    const std::string ver = tag.substr(prefix.size());
    if (ver != std::to_string(major))
        fail(path + ".format",
             "unsupported " + name + " version " + ver + " (this build reads version " +
                 std::to_string(major) + ")");
}

inline json parse_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw ParseError("invalid JSON");
    return j;
}

} // namespace qdfs::jsonu
