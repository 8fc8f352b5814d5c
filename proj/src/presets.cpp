#include "edgekit/presets.hpp"

#include <stdexcept>

#include "edgekit/normal_form.hpp"

namespace edgekit {

namespace {

struct PresetDef {
    const char* name;
    const char* description;
    // Cubic-model coefficients, or an expression when expr != nullptr.
    double a20, a30, b20, b30, b12, b03;
    const char* expr;
};

// The tangent developable of the helix (cos u, sin u, u): curvature and
// torsion are both 1/2, so all five edge invariants have closed forms.
constexpr const char* kHelixTd =
    "map(cos(u) - v*sin(u), sin(u) + v*cos(u), u + v)";

const PresetDef kPresets[] = {
    {"fig1-ks", "cubic model with kappa_s = a20 = 3, b03 = 1",
     3, 0, 0, 0, 0, 1, nullptr},
    {"fig1-a30", "cubic model with a30 = 3, b03 = 1",
     0, 3, 0, 0, 0, 1, nullptr},
    {"fig1-kn", "cubic model with kappa_n = b20 = 3, b03 = 1",
     0, 0, 3, 0, 0, 1, nullptr},
    {"fig1-kt", "cubic model with kappa_t = b12 = 3, b03 = 1",
     0, 0, 0, 0, 3, 1, nullptr},
    {"fig1-ki", "cubic model with kappa_i = b30 = 3, b03 = 1",
     0, 0, 0, 3, 0, 1, nullptr},
    {"fig1-kc", "cubic model with kappa_c = b03 = 3",
     0, 0, 0, 0, 0, 3, nullptr},
    {"standard-cusp", "the standard cuspidal edge (u, v^2, v^3)",
     0, 0, 0, 0, 0, 0, "map(u, v^2, v^3)"},
    {"tangent-developable-helix",
     "tangent developable of the helix (cos u, sin u, u)",
     0, 0, 0, 0, 0, 0, kHelixTd},
};

}  // namespace

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const PresetDef& p : kPresets) names.emplace_back(p.name);
    return names;
}

SurfaceGerm preset_germ(const std::string& name, int order) {
    for (const PresetDef& p : kPresets) {
        if (name != p.name) continue;
        if (p.expr) return SurfaceGerm::from_expr_string(p.expr, order);
        return realize(p.a20, p.a30, p.b20, p.b30, p.b12, p.b03, order);
    }
    throw std::invalid_argument("unknown preset " + name);
}

std::string preset_description(const std::string& name) {
    for (const PresetDef& p : kPresets)
        if (name == p.name) return p.description;
    throw std::invalid_argument("unknown preset " + name);
}

}  // namespace edgekit
