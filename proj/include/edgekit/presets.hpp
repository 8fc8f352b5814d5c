#pragma once

// Compiled-in named germs used by the CLI, the verification corpus, and the
// golden-mesh tests: six one-coefficient cubic normal forms, the standard
// cusp, and the tangent developable of a helix.

#include <string>
#include <vector>

#include "edgekit/germ.hpp"

namespace edgekit {

std::vector<std::string> preset_names();

// Throws std::invalid_argument("unknown preset <name>") for unknown names.
SurfaceGerm preset_germ(const std::string& name, int order = 6);

// One-line description for --help style listings.
std::string preset_description(const std::string& name);

}  // namespace edgekit
