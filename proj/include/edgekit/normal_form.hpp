#pragma once

// Reduction of a cuspidal-edge germ to the cubic normal form
//
//   (u, v) -> ( u,
//               a20/2 u² + a30/6 u³ + v²/2,
//               b20/2 u² + b30/6 u³ + b12/2 uv² + b03/6 v³ )  +  O(4) tail
//
// by source diffeomorphisms and target isometries only, with every applied
// transform logged so the reduction can be replayed and verified.  The six
// coefficients are unique (with b20 >= 0 enforced by a sign involution), so
// they decide third-order equivalence of germs.

#include <array>
#include <string>
#include <vector>

#include "edgekit/forms.hpp"

namespace edgekit {

struct Transform {
    enum class Kind { source_substitution, target_rotation };
    Kind kind;
    Jet2 p, q;      // source_substitution: f(u,v) <- f(p(u,v), q(u,v))
    Mat3 rotation;  // target_rotation: f <- R f  (always a proper rotation)
    std::string label;
};

struct NormalFormCoefficients {
    double a20 = 0, a30 = 0, b20 = 0, b30 = 0, b12 = 0, b03 = 0;

    Jet2Vec3 reduced;  // the fully reduced jet (normal form plus tail)
    Jet2Vec3 tail;     // reduced minus the cubic model; O(4) when trusted
    int trusted = 0;   // trusted degree of `reduced`
    bool edge_reversed = false;  // the sign-normalizing involution fired
    std::vector<Transform> transform_log;

    std::array<double, 6> tuple() const {
        return {a20, a30, b20, b30, b12, b03};
    }
};

// Run the full reduction.  Requires jet order >= 6 ("increase jet order")
// and a cuspidal edge at the origin (classification failures propagate from
// the adaptation); throws std::runtime_error
// ("reduction degenerate — dλ(η)≈0") when b03 falls below tolerance.
NormalFormCoefficients reduce(const SurfaceGerm& g);

// Apply a transform log to a germ's jet: the reduction's witness.  Replaying
// reduce(g).transform_log on g reproduces `reduced` to roundoff.
Jet2Vec3 replay(const SurfaceGerm& g, const std::vector<Transform>& log);

// The polynomial germ of the cubic model with tail zero.  Throws
// std::invalid_argument("not a cuspidal edge") when b03 == 0 and
// ("normal form requires b20 >= 0") when b20 < 0.
SurfaceGerm realize(double a20, double a30, double b20, double b30, double b12,
                    double b03, int order = 6);

struct EquivalenceResult {
    bool equivalent = false;  // coefficient tuples agree elementwise <= 1e-7
    std::array<double, 6> coefficient_difference{};
    // Alternative determination through the invariant list
    // {κ_s, κ_n, κ_c, κ_t, κ_s′, κ_n′} expressed by coefficient formulas.
    bool invariants_agree = false;
    std::array<double, 6> invariant_difference{};
};

EquivalenceResult equivalent_to_order3(const SurfaceGerm& f,
                                       const SurfaceGerm& g);

}  // namespace edgekit
