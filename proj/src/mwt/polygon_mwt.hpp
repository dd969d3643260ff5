#pragma once

#include <set>

#include "mwt/geometry.hpp"

namespace mwt {

/// Chords (non-boundary vertex pairs) that no triangulation may use.
struct EdgeConstraint {
    std::set<EdgeIx> forbidden;

    bool forbids(int a, int b) const {
        return forbidden.find(make_edge(a, b)) != forbidden.end();
    }
};

struct MwtResult {
    IntInterval optimal_cost;      // enclosure of the optimal internal cost
    Triangulation witness;         // smallest-lower-bound optimum
    bigint multiplicity = 0;       // triangulations not excludable from optimality
    bool candidates_degenerate = false;  // a straight-triangle candidate survives
};

inline constexpr unsigned kDefaultCostScale = 15;

/// Minimum internal cost (chord lengths only; boundary edges are free) of a
/// triangulation of a counterclockwise simple polygon, by the O(n^3) range
/// dynamic program.  A triangle (i, j, k) is admissible when its orientation
/// is counterclockwise or straight; straight ones survive but mark their
/// triangulations degenerate.  Interval ties are never resolved: every
/// contender whose lower bound does not exceed the best upper bound counts
/// toward multiplicity.  The witness takes, in every subproblem, the split
/// with the smallest lower bound (smallest index on ties).
MwtResult polygon_mwt(const Polygon& poly, const EdgeConstraint& constraint = {},
                      unsigned cost_scale_exp = kDefaultCostScale);

inline constexpr size_t kBruteForceMaxVertices = 14;

/// Independent oracle: enumerates every triangulation (Catalan many),
/// evaluates each one's chord-length sum directly, and applies the same
/// reporting contract as polygon_mwt.  Refuses polygons above
/// kBruteForceMaxVertices.
MwtResult brute_force_mwt(const Polygon& poly, const EdgeConstraint& constraint = {},
                          unsigned cost_scale_exp = kDefaultCostScale);

}  // namespace mwt
