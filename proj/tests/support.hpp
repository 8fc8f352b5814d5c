#pragma once

// Shared helpers for the test suites: finite-difference oracles against
// closed-form evaluators, random jet/diffeo generators, and a sampled
// tangent-developable corpus for the winding identity.

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "edgekit/expr.hpp"
#include "edgekit/germ.hpp"
#include "edgekit/jet.hpp"
#include "edgekit/vec3.hpp"

namespace testsupport {

using edgekit::Axis;
using edgekit::Jet2;
using edgekit::Jet2Vec3;
using edgekit::Vec3;

// ----- finite-difference oracle ------------------------------------------

// 6th-order central stencil, applied recursively for mixed partials.
// Step sizes chosen per total order to balance truncation vs roundoff.
inline double fd_step(int total_order) {
    switch (total_order) {
        case 1: return 1e-3;
        case 2: return 4e-3;
        default: return 1.2e-2;
    }
}

inline double fd_partial(const std::function<double(double, double)>& f,
                         int i, int j, double u, double v, double h) {
    auto stencil = [&](const std::function<double(double)>& g, double x) {
        return (-g(x - 3 * h) + 9 * g(x - 2 * h) - 45 * g(x - h) +
                45 * g(x + h) - 9 * g(x + 2 * h) + g(x + 3 * h)) /
               (60 * h);
    };
    if (i > 0) {
        auto g = [&](double uu) { return fd_partial(f, i - 1, j, uu, v, h); };
        return stencil(g, u);
    }
    if (j > 0) {
        auto g = [&](double vv) { return fd_partial(f, i, j - 1, u, vv, h); };
        return stencil(g, v);
    }
    return f(u, v);
}

// Max relative error between jet-table derivative values (coeff * i!j!) and
// central differences of the evaluator, over all total degrees <= max_deg.
inline double fd_max_rel_error(
    const Jet2& jet, const std::function<double(double, double)>& f,
    int max_deg) {
    double worst = 0;
    for (int d = 0; d <= max_deg; ++d) {
        const double h = fd_step(d == 0 ? 1 : d);
        for (int i = 0; i <= d; ++i) {
            const int j = d - i;
            const double jet_val =
                jet.coeff(i, j) * Jet2::factorial(i) * Jet2::factorial(j);
            const double fd_val = fd_partial(f, i, j, 0.0, 0.0, h);
            const double err =
                std::abs(jet_val - fd_val) / (1.0 + std::abs(fd_val));
            worst = std::max(worst, err);
        }
    }
    return worst;
}

// ----- random generators ---------------------------------------------------

inline Jet2 random_jet(std::mt19937_64& rng, int order, double scale = 1.0) {
    std::uniform_real_distribution<double> coeff(-scale, scale);
    Jet2 r(order, 0.0);
    for (int i = 0; i <= order; ++i)
        for (int j = 0; j <= order - i; ++j) r.set_coeff(i, j, coeff(rng));
    return r;
}

// Random jet with unit-scale constant term bounded away from zero.
inline Jet2 random_unit_jet(std::mt19937_64& rng, int order) {
    Jet2 r = random_jet(rng, order, 0.5);
    std::uniform_real_distribution<double> c0(0.5, 1.5);
    std::bernoulli_distribution flip(0.5);
    r.set_coeff(0, 0, flip(rng) ? -c0(rng) : c0(rng));
    return r;
}

// Origin-preserving substitution pair with invertible linear part.
inline void random_diffeo(std::mt19937_64& rng, int order, Jet2& p, Jet2& q) {
    std::uniform_real_distribution<double> lin(-1.0, 1.0);
    double p10, p01, q10, q01;
    do {
        p10 = lin(rng);
        p01 = lin(rng);
        q10 = lin(rng);
        q01 = lin(rng);
    } while (std::abs(p10 * q01 - p01 * q10) < 0.3);
    p = random_jet(rng, order, 0.15);
    q = random_jet(rng, order, 0.15);
    p.set_coeff(0, 0, 0.0);
    q.set_coeff(0, 0, 0.0);
    p.set_coeff(1, 0, p10);
    p.set_coeff(0, 1, p01);
    q.set_coeff(1, 0, q10);
    q.set_coeff(0, 1, q01);
}

// ----- univariate curve jets (space curves as u-only Jet2Vec3) -------------

// Order-N Taylor data of a closed-form curve at t0, encoded in the u slot.
struct CurveJet {
    Jet2Vec3 gamma;   // curve position jet (u-dependence only)
    Vec3 d1, d2, d3;  // gamma', gamma'', gamma''' values at t0
};

inline CurveJet curve_jet(const std::vector<edgekit::expr::NodePtr>& asts,
                          int order, double t0) {
    CurveJet c;
    for (int k = 0; k < 3; ++k)
        c.gamma[k] = edgekit::expr::elevate(asts[k], order, t0, 0.0);
    c.d1 = c.gamma.deriv(1, 0);
    c.d2 = c.gamma.deriv(2, 0);
    c.d3 = c.gamma.deriv(3, 0);
    return c;
}

// Frenet curvature/torsion at the basepoint of a CurveJet.
inline double curve_curvature(const CurveJet& c) {
    return edgekit::norm(cross(c.d1, c.d2)) /
           std::pow(edgekit::norm(c.d1), 3.0);
}
inline double curve_torsion(const CurveJet& c) {
    const Vec3 w = cross(c.d1, c.d2);
    return edgekit::det3(c.d1, c.d2, c.d3) / edgekit::dot(w, w);
}

// Tangent developable germ f(u,v) = gamma(t0+u) + v gamma'(t0+u), exact jets.
inline edgekit::SurfaceGerm developable_germ(const CurveJet& c) {
    const Jet2Vec3 dgamma = partial(c.gamma, Axis::u);
    Jet2Vec3 f = c.gamma;
    for (int k = 0; k < 3; ++k)
        f[k] = f[k] + multiply_axis(dgamma[k], Axis::v, 1);
    return edgekit::SurfaceGerm::from_jets(f);
}

}  // namespace testsupport
