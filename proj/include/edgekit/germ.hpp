#pragma once

// Surface map-germs (R^2,0) -> (R^3,0) and their singularity classification.
//
// A SurfaceGerm is a triple of jets expanded at the origin, plus (when the
// germ was built from expressions or a polynomial table) enough backing data
// to evaluate the map in closed form and to re-expand it exactly at another
// basepoint.  The constant term is always translated away so f(0,0) = 0.

#include <array>
#include <functional>
#include <optional>
#include <string>

#include "edgekit/expr.hpp"
#include "edgekit/jet.hpp"

namespace edgekit {

struct SurfaceGerm {
    enum class Backing {
        jets_only,   // no closed form; re-centering falls back to jet shifts
        polynomial,  // the stored jet *is* the map
        expression,  // component ASTs + basepoint
    };

    Jet2Vec3 f;  // expansion at the (translated) origin
    Backing backing = Backing::jets_only;

    std::array<expr::NodePtr, 3> asts{};  // expression backing
    double base_u = 0, base_v = 0;        // expression basepoint
    Vec3 offset{};                        // raw value subtracted at basepoint

    static SurfaceGerm from_jets(Jet2Vec3 jets, bool polynomial = false);
    static SurfaceGerm from_table(const std::string& json_text);
    static SurfaceGerm from_exprs(const std::array<expr::NodePtr, 3>& asts,
                                  int order, double u0 = 0, double v0 = 0);
    static SurfaceGerm from_expr_string(const std::string& map_text, int order,
                                        double u0 = 0, double v0 = 0);

    int order() const { return f.order(); }
    bool has_evaluator() const { return backing != Backing::jets_only; }

    // Closed-form evaluation (polynomial or expression backing).
    Vec3 evaluate(double du, double dv) const;

    // The same germ re-expanded at (du, dv); exact for polynomial and
    // expression backings.  The result is again translated to the origin.
    SurfaceGerm recenter(double du, double dv) const;
};

struct Classification {
    enum class Kind {
        regular,
        cuspidal_edge,
        degenerate_singularity,
        frontal_not_front,
        corank2,
    };

    Kind kind;
    int rank = 0;                        // rank of df(0)
    double dlambda_eta = 0;              // dλ(η)(0) in the adapted chart
    std::array<double, 2> lambda_gradient{0, 0};  // ∇λ(0), adapted chart
    std::string detail;                  // human-readable witness note

    static const char* kind_name(Kind k);
};

// Rank of the 3x2 Jacobian at the origin (singular values against
// threshold 1e-9 * scale).
int differential_rank(const SurfaceGerm& g);

// Unit normal field for a germ already in adapted coordinates (f_v = v h):
// nu = f_u x h / |f_u x h|, so that (f_u, h, nu) is positively oriented.
// residual_slack relaxes the adapted-chart precondition check (see
// to_adapted).
Jet2Vec3 unit_normal(const SurfaceGerm& g, double residual_slack = 1.0);

// Signed area density λ = det(f_u, f_v, ν).
Jet2 area_density(const SurfaceGerm& g, const Jet2Vec3& nu);

// Total classification; never throws.
Classification classify(const SurfaceGerm& g);

struct SingularCurve {
    Jet2 graph;          // v = graph(u), univariate jet
    Jet2 eta_u, eta_v;   // unit null field along the curve, univariate jets
};

// Solve the singular set as a graph v = g(u) near 0 and compute the unit
// null field, oriented so (curve tangent, η) is positively oriented.
SingularCurve singular_curve(const SurfaceGerm& g);

}  // namespace edgekit
