#pragma once

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "slicereg/caratheodory.hpp"
#include "slicereg/quaternion.hpp"
#include "slicereg/series.hpp"

namespace slicereg {

using json = nlohmann::json;

// Interchange formats:
//   Quaternion: [x0, x1, x2, x3]
//   QSeries:    {"order": N, "coeffs": [[...], ...]} with exactly N+1 entries

inline json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }

inline Quaternion quaternion_from_json(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 4) {
        throw ParseError(where + ": quaternion must be an array of 4 numbers");
    }
    Quaternion q;
    double* comp[4] = {&q.w, &q.x, &q.y, &q.z};
    for (std::size_t t = 0; t < 4; ++t) {
        if (!j[t].is_number()) throw ParseError(where + ": quaternion component not a number");
        *comp[t] = j[t].get<double>();
    }
    if (!q.is_finite()) throw ParseError(where + ": quaternion component not finite");
    return q;
}

inline json to_json(const QSeries& f) {
    json coeffs = json::array();
    for (int n = 0; n <= f.order(); ++n) coeffs.push_back(to_json(f[n]));
    return json{{"order", f.order()}, {"coeffs", std::move(coeffs)}};
}

inline QSeries series_from_json(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("order") || !j.contains("coeffs")) {
        throw ParseError(where + ": series must be an object with 'order' and 'coeffs'");
    }
    if (!j["order"].is_number_integer()) throw ParseError(where + ": 'order' must be an integer");
    const long long order = j["order"].get<long long>();
    const json& coeffs = j["coeffs"];
    if (order < 0) throw ParseError(where + ": 'order' must be >= 0");
    if (!coeffs.is_array() || coeffs.empty()) {
        throw ParseError(where + ": 'coeffs' must be a non-empty array");
    }
    if (static_cast<long long>(coeffs.size()) != order + 1) {
        throw ParseError(where + ": 'coeffs' must have exactly order+1 entries");
    }
    std::vector<Quaternion> c;
    c.reserve(coeffs.size());
    for (std::size_t n = 0; n < coeffs.size(); ++n) {
        std::ostringstream field;
        field << where << ".coeffs[" << n << "]";
        c.push_back(quaternion_from_json(coeffs[n], field.str()));
    }
    return QSeries(std::move(c));
}

inline json to_json(const KernelSpec& spec) {
    return json{{"unit", to_json(spec.unit.value())}, {"theta", spec.theta}};
}

inline json to_json(const HerglotzMix& mix) {
    json kernels = json::array();
    for (const KernelSpec& k : mix.kernels) kernels.push_back(to_json(k));
    return json{{"weights", mix.weights}, {"kernels", std::move(kernels)}};
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open for reading");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

inline QSeries load_series(const std::string& path) {
    return series_from_json(load_json_file(path), path);
}

inline void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParseError(path + ": cannot open for writing");
    out << j.dump(2) << '\n';
    if (!out) throw ParseError(path + ": write failed");
}

} // namespace slicereg
