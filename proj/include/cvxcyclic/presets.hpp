#pragma once

#include <string>
#include <vector>

#include "cvxcyclic/operator_spec.hpp"
#include "cvxcyclic/types.hpp"

namespace cvxcyclic {

/// A named operator from the worked examples, with its literature anchor and
/// a default seed vector. Names carrying a ":d" suffix take the dimension
/// there (e.g. "2I-plus-B:16").
struct Preset {
    std::string name;
    std::string citation;     // wire token locating the source statement
    std::string description;  // what the preset demonstrates
    OperatorSpec spec;
    Vector default_seed;
};

/// Names accepted by resolve_preset (dimension suffix stripped).
std::vector<std::string> preset_names();

Preset resolve_preset(const std::string& name);

}  // namespace cvxcyclic
