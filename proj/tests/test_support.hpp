#pragma once

#include <random>

#include "cvxcyclic/types.hpp"

namespace cvxcyclic::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double unit_box(std::mt19937_64& rng) {
    return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

inline Complex random_complex(std::mt19937_64& rng) {
    return Complex(unit_box(rng), unit_box(rng));
}

inline Vector random_vector(std::mt19937_64& rng, int dim) {
    Vector v(dim);
    for (int i = 0; i < dim; ++i) v[i] = random_complex(rng);
    return v;
}

inline Vector random_unit_vector(std::mt19937_64& rng, int dim) {
    Vector v = random_vector(rng, dim);
    while (v.norm() == 0.0) v = random_vector(rng, dim);
    return v / v.norm();
}

inline Matrix random_matrix(std::mt19937_64& rng, int dim) {
    Matrix m(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = random_complex(rng);
    return m;
}

}  // namespace cvxcyclic::testing
