#include "edgekit/mesh.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace edgekit {

namespace {

void append_vertex(std::string& out, const Vec3& p) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "v %.17g %.17g %.17g\n", p.x, p.y, p.z);
    out += buf;
}

}  // namespace

std::string export_mesh(const SurfaceGerm& g, const MeshOptions& opt,
                        std::string* edge_obj) {
    if (!g.has_evaluator())
        throw std::invalid_argument(
            "mesh requires a closed-form evaluator (expression or polynomial "
            "germ)");
    if (opt.nu < 2 || opt.nv < 2)
        throw std::invalid_argument("mesh grid must be at least 2x2");

    std::string out;
    out += "# edgekit mesh\n";
    const auto station = [](double lo, double hi, int k, int n) {
        return lo + (hi - lo) * static_cast<double>(k) /
                        static_cast<double>(n - 1);
    };
    for (int i = 0; i < opt.nu; ++i) {
        const double u = station(opt.umin, opt.umax, i, opt.nu);
        for (int j = 0; j < opt.nv; ++j) {
            const double v = station(opt.vmin, opt.vmax, j, opt.nv);
            const Vec3 p = g.evaluate(u, v);
            if (!std::isfinite(p.x) || !std::isfinite(p.y) ||
                !std::isfinite(p.z))
                throw std::runtime_error("non-finite mesh vertex at grid (" +
                                         std::to_string(i) + ", " +
                                         std::to_string(j) + ")");
            append_vertex(out, p);
        }
    }
    const auto id = [&](int i, int j) { return i * opt.nv + j + 1; };
    for (int i = 0; i + 1 < opt.nu; ++i)
        for (int j = 0; j + 1 < opt.nv; ++j) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "f %d %d %d\nf %d %d %d\n",
                          id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j),
                          id(i + 1, j + 1), id(i, j + 1));
            out += buf;
        }

    if (edge_obj) {
        *edge_obj = "# edgekit singular curve\n";
        try {
            const SingularCurve sc = singular_curve(g);
            for (int i = 0; i < opt.nu; ++i) {
                const double u = station(opt.umin, opt.umax, i, opt.nu);
                const double v = eval(sc.graph, u, 0.0);
                append_vertex(*edge_obj, g.evaluate(u, v));
            }
            *edge_obj += "l";
            for (int i = 1; i <= opt.nu; ++i)
                *edge_obj += " " + std::to_string(i);
            *edge_obj += "\n";
        } catch (const std::exception&) {
            *edge_obj += "# no singular curve through this chart\n";
        }
    }
    return out;
}

}  // namespace edgekit
