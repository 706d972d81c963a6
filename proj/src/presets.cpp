#include "cvxcyclic/presets.hpp"

#include <cmath>
#include <numbers>

#include "cvxcyclic/errors.hpp"

namespace cvxcyclic {

std::vector<std::string> preset_names() {
    return {"diag-2i-minus-2i", "2I-plus-B", "twice-backward-shift", "unimodular-diagonal",
            "dirichlet-shift"};
}

namespace {

std::vector<double> unit_weights(int dim) { return std::vector<double>(dim - 1, 1.0); }

Vector ones(int dim) { return Vector::Ones(dim); }

Vector basis0(int dim) {
    Vector v = Vector::Zero(dim);
    v[0] = 1.0;
    return v;
}

}  // namespace

Preset resolve_preset(const std::string& name) {
    std::string base = name;
    int dim = 0;
    if (const auto pos = name.find(':'); pos != std::string::npos) {
        base = name.substr(0, pos);
        try {
            dim = std::stoi(name.substr(pos + 1));
        } catch (...) {
            throw ConfigError("preset: bad dimension suffix in \"" + name + "\"");
        }
        if (dim < 2) throw ConfigError("preset: dimension suffix must be >= 2");
    }
    auto need_dim = [&](int fallback) { return dim > 0 ? dim : fallback; };

    if (base == "diag-2i-minus-2i") {
        if (dim > 0 && dim != 2) throw ConfigError("preset diag-2i-minus-2i is fixed at dim 2");
        return Preset{
            "diag-2i-minus-2i", "Thm6.4a",
            "conjugate eigenvalue pair (2i, -2i): the eigenvalue criterion affirms while the "
            "confinement functional bounds every probe, so reports carry the caveat",
            spec::diagonal({Complex(0, 2), Complex(0, -2)}), ones(2)};
    }
    if (base == "2I-plus-B") {
        const int d = need_dim(8);
        return Preset{
            "2I-plus-B", "Example6.8",
            "finite section of the shift-plus-scalar operator; its adjoint spectrum is real, "
            "so the truncation fails the spectral gate that the full operator escapes",
            spec::sum({{Complex(2, 0), spec::identity(d)},
                       {Complex(1, 0), spec::backward_shift(unit_weights(d), d)}}),
            ones(d) / std::sqrt(static_cast<double>(d))};
    }
    if (base == "twice-backward-shift") {
        const int d = need_dim(8);
        return Preset{"twice-backward-shift", "Sec3",
                      "finite section of twice the backward shift; truncation loses the dense "
                      "range that the full operator has",
                      spec::scale(Complex(2, 0), spec::backward_shift(unit_weights(d), d)),
                      ones(d) / std::sqrt(static_cast<double>(d))};
    }
    if (base == "unimodular-diagonal") {
        const int d = need_dim(4);
        std::vector<Complex> entries(d);
        for (int k = 0; k < d; ++k) {
            const double theta = 2.0 * std::numbers::pi * (k + 1) / (2.0 * d + 1.0);
            entries[k] = Complex(std::cos(theta), std::sin(theta));
        }
        return Preset{"unimodular-diagonal", "Thm4.3",
                      "distinct unimodular eigenvalues: an isometry, hence rejected by both "
                      "the norm gate and the m-isometry gate",
                      spec::diagonal(std::move(entries)), ones(d) / std::sqrt(static_cast<double>(d))};
    }
    if (base == "dirichlet-shift") {
        const int d = need_dim(64);
        std::vector<double> weights(d - 1);
        for (int k = 1; k < d; ++k)
            weights[k - 1] = std::sqrt(static_cast<double>(k + 1) / k);
        return Preset{"dirichlet-shift", "Sec4",
                      "forward shift with weights sqrt((n+1)/n): a strict 2-isometry away from "
                      "the truncation edge, with orbit norms growing like sqrt(n)",
                      spec::forward_shift(std::move(weights), d), basis0(d)};
    }
    throw ConfigError("preset: unknown name \"" + base + "\"");
}

}  // namespace cvxcyclic
