#pragma once

// Assembly and JSON serialization of the full per-germ report: the
// classification, the invariant set with edge derivatives, normal-form
// coefficients, relation residuals, and the tangent sphere/plane contact
// descriptor.  Every numeric field is finite or the string "undefined";
// serialize -> parse -> serialize is byte-identical.

#include <optional>
#include <string>

#include "edgekit/germ.hpp"
#include "edgekit/invariants.hpp"
#include "edgekit/normal_form.hpp"

namespace edgekit {

inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "edgekit/1";

struct Report {
    Classification classification;
    double at_u = 0;
    int jet_order = 0;
    int trusted_degree = 0;

    std::optional<InvariantSet> invariants;  // with primes when computable
    std::optional<RelationResiduals> residuals;
    std::optional<NormalFormCoefficients> normal_form;
    std::optional<ContactDescriptor> contact;
    std::string error;  // first failure encountered, when any section failed
};

// Classify at the origin, evaluate invariants/derivatives/contact at the
// adapted-chart coordinate (u, 0), and reduce the germ; sections that fail
// are left unset and the first diagnostic recorded.
Report make_report(const SurfaceGerm& g, double u = 0);

std::string report_to_json(const Report& r);

// Human-readable rendering of the same data for terminal output.
std::string report_to_text(const Report& r);

// Pretty-print a transform log (one line per transform).
std::string transform_log_to_text(const NormalFormCoefficients& nf);

}  // namespace edgekit
