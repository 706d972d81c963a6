#pragma once

#include <nlohmann/json.hpp>

#include "cvxcyclic/errors.hpp"
#include "cvxcyclic/types.hpp"

namespace cvxcyclic {

// Wire formats: a complex number is [re, im]; a vector is [[re, im], ...].

inline nlohmann::json complex_to_json(Complex z) {
    return nlohmann::json::array({z.real(), z.imag()});
}

inline Complex complex_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ConfigError("expected complex number as [re, im], got " + j.dump());
    const Complex z(j[0].get<double>(), j[1].get<double>());
    if (!is_finite(z)) throw ConfigError("complex number out of double range: " + j.dump());
    return z;
}

inline nlohmann::json vector_to_json(const Vector& v) {
    nlohmann::json out = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(complex_to_json(v[i]));
    return out;
}

inline Vector vector_from_json(const nlohmann::json& j) {
    if (!j.is_array() || j.empty())
        throw ConfigError("expected vector as non-empty [[re, im], ...]");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) v[static_cast<Eigen::Index>(i)] = complex_from_json(j[i]);
    return v;
}

}  // namespace cvxcyclic
