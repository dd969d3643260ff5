#pragma once

#include <optional>
#include <vector>

#include "mwt/geometry.hpp"

namespace mwt {

/// Exact signed cosine of an angle: cos = sign * sqrt(num/den), with num/den
/// the reduced square of the cosine.  Keeping the square rational avoids
/// radicals entirely; orderings and thresholds are decided by
/// cross-multiplication.
struct RationalCos2 {
    int sign = 1;  // sign of cos(alpha)
    bigint num;    // cos^2 numerator
    bigint den;    // cos^2 denominator, positive

    // True iff the angle behind a is strictly larger than the one behind b
    // (cosine strictly smaller).
    static bool worse(const RationalCos2& a, const RationalCos2& b);
};

/// Neighborhood analysis of one edge: the worst (largest) apex angle any
/// other point forms over pq, as an exact rational cos^2, plus an interval
/// enclosure of the largest parameter for which the edge still has empty
/// neighborhood circles (1 / sin of the worst angle).  No witness means no
/// point restricts the edge at all.
struct BetaReport {
    Point p, q;
    bool has_witness = false;
    Point witness;
    RationalCos2 worst;
    IntInterval min_beta;  // scale 9; meaningful only when has_witness
};

BetaReport min_beta(const Point& p, const Point& q,
                    const std::vector<Point>& others);

struct CertReport {
    ScaledInt threshold;
    size_t edges_checked = 0;
    std::vector<size_t> violating_edges;   // indices into the edge list
    std::vector<BetaReport> violations;    // parallel to violating_edges
    bool has_binding = false;
    size_t binding_edge = 0;  // edge with the globally worst witness angle
    BetaReport binding;
    bool pass() const { return violating_edges.empty(); }
};

struct CertifyOptions {
    // Skip points farther from an edge midpoint than threshold * |pq|; this
    // cannot miss a violator, but the binding-edge report then only covers
    // scanned points.  Off by default (full scan, exact binding edge).
    bool prefilter = false;
    unsigned workers = 1;
};

/// An edge passes iff every other point r satisfies: angle prq is acute (or
/// right at most) and sin^2 <= 1/threshold^2, decided exactly by
/// cross-multiplication — equivalently the two circles of diameter
/// threshold * |pq| through p and q contain no point in their interior.
CertReport beta_skeleton_certify(
    const std::vector<std::pair<Point, Point>>& boundary_edges,
    const std::vector<Point>& points, const ScaledInt& beta_threshold,
    const CertifyOptions& options = {});

/// Angle expressed as pi * num / den; the default is the filter constant
/// pi / 4.6.
struct PiFraction {
    long num = 5;
    long den = 23;
};

/// Certified rational enclosure of tan(pi * num / den) for angles in
/// (0, pi/2), via fixed-point alternating series with directed rounding.
IntInterval tan_of_pi_fraction(const PiFraction& angle, unsigned scale_exp);

/// True iff at least one of the two isosceles triangles erected over base pq
/// with the given base angle contains no point of `others` (closed
/// containment; a point whose membership cannot be decided at the tangent
/// enclosure's precision counts as contained).
bool diamond_test(const Point& p, const Point& q,
                  const std::vector<Point>& others,
                  const PiFraction& base_angle = {});

}  // namespace mwt
