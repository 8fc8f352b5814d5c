#pragma once

// Identity-verification suite over built-in and randomly generated
// cuspidal-edge germs, plus the seeded generator shared with the tests:
// draws an admissible coefficient tuple, realizes the cubic model, and
// disguises it with a random source diffeomorphism jet and target rotation.

#include <array>
#include <random>
#include <string>
#include <vector>

#include "edgekit/germ.hpp"

namespace edgekit {

struct RandomGerm {
    SurfaceGerm germ;   // disguised germ (diffeo then rotation applied)
    SurfaceGerm model;  // the underlying cubic model
    std::array<double, 6> tuple;  // (a20, a30, b20, b30, b12, b03)
};

// The tuple is drawn with b20 in [0.15, 2] (bounded away from the b20 = 0
// canonicalization boundary) and |b03| in [0.3, 2]; the diffeo's linear part
// keeps the singular curve transverse to the v-axis with margin, so the
// adaptation never needs the quarter-turn for these germs.
RandomGerm random_cuspidal_edge_germ(std::mt19937_64& rng, int order = 6);

// Random proper rotation from a seeded quaternion draw.
Mat3 random_rotation(std::mt19937_64& rng);

struct VerifyItem {
    std::string name;
    bool passed = false;
    double residual = 0;
    double tolerance = 0;
};

struct VerifyOptions {
    int random_count = 0;
    std::uint64_t seed = 1;
};

// Runs classification, the curvature identities, reduction round-trips, and
// derivative cross-checks over the preset corpus and `random_count` generated
// germs.  Deterministic for a fixed seed.
std::vector<VerifyItem> verify_corpus(const VerifyOptions& options);

// The same identity checks for one germ.
std::vector<VerifyItem> verify_germ(const SurfaceGerm& g,
                                    const std::string& name);

}  // namespace edgekit
