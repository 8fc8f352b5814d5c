#pragma once

// Adapted coordinates and pointwise second-order data: put a cuspidal-edge
// germ into coordinates where the singular set is the u-axis and ∂_v spans
// the null direction, then read off fundamental forms and the curvature
// parabola at edge points.

#include <optional>
#include <string>

#include "edgekit/germ.hpp"

namespace edgekit {

struct AdaptedGerm {
    SurfaceGerm original;  // germ as handed in (source of exact re-expansion)
    SurfaceGerm adapted;   // original precomposed into adapted coordinates
    Jet2 change_u, change_v;  // substitution: adapted coords -> original coords
    bool swapped = false;     // quarter-turn applied before straightening
    Jet2Vec3 h;               // f_v = v·h for the adapted germ
    Jet2Vec3 normal;          // unit normal jet ν = f_u×h / |f_u×h|
    Jet2 lambda;              // signed area density det(f_u, f_v, ν)

    // dλ(η)(0) = λ_v(0); positive by the normal's orientation convention.
    double dlambda_eta() const { return lambda.coeff(0, 1); }
};

// Adapt a classified cuspidal-edge germ.  Throws std::invalid_argument
// ("not a cuspidal edge: <kind>") when the germ fails classification.
// residual_slack relaxes the degeneracy guards; re-centering a germ whose
// jet table was truncated leaks tail error into every degree, so callers
// working at a shifted basepoint pass slack > 1.
AdaptedGerm to_adapted(const SurfaceGerm& g, double residual_slack = 1.0);

struct FormCoeffs {
    double E, F, G;           // first fundamental form
    double l_nu, m_nu, n_nu;  // second fundamental form along ν
    Vec3 fuu, fuv, fvv;       // raw second derivatives
    Vec3 fuu_perp, fvv_perp;  // projections of f_uu, f_vv onto the normal plane
    int trusted;              // trusted degree of the shifted jet that was read
};

// Coefficient values at (u, 0).  Off-origin evaluation re-expands the stored
// jet by a polynomial shift, so the trusted degree shrinks with |u|; callers
// needing exact off-origin data should re-center the germ instead (the
// invariants layer does).
FormCoeffs fundamental_forms(const AdaptedGerm& a, double u = 0);

struct ParabolaDesc {
    Vec3 vertex;     // (1/E) fuu_perp
    Vec3 direction;  // fvv_perp (the half-line direction)
    double kappa_u;  // distance from the point to the line through the parabola
};

ParabolaDesc curvature_parabola(const AdaptedGerm& a, double u = 0);

namespace detail {

// Core adaptation shared by classify() and to_adapted(): never throws for
// geometric failures, reports them instead.
struct AdaptAttempt {
    bool ok = false;
    std::string error;       // failure description when !ok
    double dlambda_eta = 0;  // witness, when it was computable
    std::optional<AdaptedGerm> adapted;
};

AdaptAttempt try_adapt(const SurfaceGerm& g, double residual_slack = 1.0);

// Second singular value of the stacked 6x2 matrix (df; dν) at 0, and the
// scale it should be compared against (front condition).
std::pair<double, double> front_condition_sv(const AdaptedGerm& a);

}  // namespace detail

}  // namespace edgekit
