#pragma once

// Pointwise differential invariants at cuspidal-edge points: singular
// curvature, limiting normal curvature, umbilic curvature, cuspidal
// curvature, cusp-directional torsion, edge inflectional curvature, the
// Frenet curvature/torsion of the edge curve, their derivatives along the
// edge, tangent-sphere contact data, and the winding identity for the
// cusp-directional torsion around a closed edge.

#include <cstddef>
#include <optional>
#include <vector>

#include "edgekit/forms.hpp"

namespace edgekit {

struct InvariantSet {
    double kappa_s = 0;   // singular curvature (limiting geodesic curvature)
    double kappa_nu = 0;  // signed limiting normal curvature
    double kappa_n = 0;   // |kappa_nu|
    double kappa_u = 0;   // umbilic curvature (curvature-parabola distance)
    double kappa_c = 0;   // cuspidal curvature
    double kappa_t = 0;   // cusp-directional torsion
    double kappa_i = 0;   // edge inflectional curvature
    double kappa = 0;     // Frenet curvature of the edge space curve
    std::optional<double> tau;  // Frenet torsion; undefined when kappa <= tol

    // Arc-length derivatives along the edge; filled by derived_invariants.
    std::optional<double> kappa_s_prime, kappa_n_prime, kappa_prime;
};

// Invariants at the edge point with adapted-chart coordinate (u, 0).  For
// u != 0 the germ is re-expanded at that point (exactly when a closed form is
// stored) and re-adapted, so values stay accurate far from the origin.
// Throws std::domain_error("invariants undefined here") when the point is not
// a cuspidal edge.
InvariantSet invariants_at(const AdaptedGerm& a, double u = 0);

// The re-centered adapted germ used by invariants_at for u != 0: maps (u,0)
// through the chart change, re-expands the original germ there, snaps the new
// origin back onto the singular set, and adapts again.
AdaptedGerm recenter_on_edge(const AdaptedGerm& a, double u);

struct DerivedInvariants {
    // (i) 4th-order central differences of invariants_at along the edge,
    // arc-length corrected; (ii) coefficient formulas applied to the reduced
    // normal form, sign-corrected when the reduction reversed the edge.
    double kappa_s_prime_numeric = 0, kappa_s_prime_formula = 0;
    double kappa_n_prime_numeric = 0, kappa_n_prime_formula = 0;
    std::optional<double> kappa_prime_numeric, kappa_prime_formula;
    double step = 0;             // stencil step in the adapted chart
    double max_discrepancy = 0;  // max |numeric - formula| over defined pairs
};

DerivedInvariants derived_invariants(const AdaptedGerm& a);

struct RelationResiduals {
    double pythagorean_abs = 0;  // |κ² − κ_s² − κ_n²|
    double pythagorean_rel = 0;  // … / (1 + κ²)
    double umbilic_abs = 0;      // |κ_u − κ_n|
    double umbilic_rel = 0;      // … / (1 + κ_n)
};

RelationResiduals relation_residuals(const InvariantSet& s);

struct ContactDescriptor {
    enum class Kind { plane, sphere };
    Kind kind = Kind::plane;
    Vec3 point{};   // the edge point p in the germ's target frame
    Vec3 normal{};  // unit normal ν at p
    Vec3 center{};  // sphere only: p + ε ν / κ_n
    double radius = 0;  // sphere only: 1/κ_n
    int epsilon = 0;    // sphere only: sgn(II_ν(X,X)) for X edge-tangent
};

ContactDescriptor sphere_center(const AdaptedGerm& a, double u = 0);

// One integration cell of the winding identity: values at a sample point and
// the parameter step from this sample to the next (the last step wraps back
// to the first sample).
struct KtSample {
    double kappa_t = 0;  // cusp-directional torsion at the sample
    double c3 = 0;       // connection form coefficient of the chosen frame
    double du = 0;       // step to the next sample
};

struct WindingResult {
    double integral_difference = 0;  // (∫c₃ − ∫κ_t) / 2π
    long n = 0;                      // nearest integer (the winding number)
    double gap = 0;                  // |integral_difference − n|
};

// Trapezoidal evaluation of the closed-curve identity ∫κ_t = ∫c₃ − 2πn.
// Throws std::runtime_error("insufficient sampling or non-closed curve") when
// fewer than min_samples samples are given or the result is further than 0.1
// from an integer.
WindingResult kt_winding(const std::vector<KtSample>& samples,
                         std::size_t min_samples = 1000);

// Invariants evaluated through an arbitrary adapted frame pair
//   ξ = xi_u ∂u + xi_v ∂v   (edge-tangent on v = 0: xi_v divisible by v)
//   η = eta_u ∂u + eta_v ∂v (null on v = 0: eta_u divisible by v)
// with xi_u(0)·eta_v(0) > 0.  Used to test frame independence against the
// adapted-coordinate values (ξ = ∂u, η = ∂v).
struct FrameInvariants {
    double kappa_n = 0, kappa_c = 0, kappa_t = 0, kappa_i = 0;
};

FrameInvariants invariants_from_frame(const AdaptedGerm& a, const Jet2& xi_u,
                                      const Jet2& xi_v, const Jet2& eta_u,
                                      const Jet2& eta_v);

}  // namespace edgekit
