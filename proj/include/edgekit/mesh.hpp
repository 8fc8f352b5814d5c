#pragma once

// OBJ export of a germ sampled over a rectangular (u,v) grid, plus the
// singular curve as a polyline companion.  Vertices are written row-major
// (u outer, v inner) with %.17g so coordinates round-trip bitwise; each grid
// cell becomes two counter-clockwise triangles.

#include <string>

#include "edgekit/germ.hpp"

namespace edgekit {

struct MeshOptions {
    int nu = 40, nv = 40;  // vertex counts per side (>= 2)
    double umin = -1, umax = 1;
    double vmin = -1, vmax = 1;
};

// Returns the OBJ text.  When edge_obj is non-null it receives a companion
// OBJ with the singular curve sampled at the grid's u-stations as a polyline
// (or a comment-only file when the germ has no singular curve there).
// Throws std::invalid_argument when the germ has no closed-form evaluator and
// std::runtime_error("non-finite mesh vertex at grid (i, j)") for bad values.
std::string export_mesh(const SurfaceGerm& g, const MeshOptions& opt,
                        std::string* edge_obj = nullptr);

}  // namespace edgekit
