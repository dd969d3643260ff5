#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "mwt/exact.hpp"

namespace mwt {

enum class Turn { ccw, cw, collinear };

const char* turn_name(Turn t);

// Twice the signed area of triangle pqr: positive iff pqr is a
// counterclockwise turn.  Exact at the operands' common scale.
ScaledInt doubled_area(const Point& p, const Point& q, const Point& r);

Turn orientation(const Point& p, const Point& q, const Point& r);

// True iff r lies on the closed segment pq.
bool on_segment(const Point& p, const Point& q, const Point& r);

// True iff the closed segments ab and cd share at least one point.
bool segments_intersect(const Point& a, const Point& b,
                        const Point& c, const Point& d);

struct Polygon {
    std::vector<Point> vertices;  // counterclockwise boundary order

    size_t size() const { return vertices.size(); }
    const Point& operator[](size_t i) const { return vertices[i]; }

    ScaledInt doubled_signed_area() const;
};

struct ValidationReport {
    std::vector<std::string> issues;         // one verdict per violation
    std::vector<size_t> collinear_vertices;  // informational: middle vertex of
                                             // each straight boundary triple
    bool ok() const { return issues.empty(); }
    std::string summary() const;
};

/// Duplicate-point scan, counterclockwise-orientation check, and an
/// exhaustive O(n^2) boundary self-intersection test.  Straight boundary
/// triples are reported but allowed; downstream optimizers track them as
/// degeneracy candidates.
ValidationReport validate_simple_polygon(const Polygon& poly);

enum class PointLocation { inside, boundary, outside };

// Exact point-in-polygon by crossing count; points on the boundary are
// classified separately.
PointLocation locate_point(const Polygon& poly, const Point& r);

using Triple = std::array<int, 3>;   // vertex indices, ascending
using EdgeIx = std::pair<int, int>;  // vertex indices, ascending

inline EdgeIx make_edge(int a, int b) {
    return a < b ? EdgeIx{a, b} : EdgeIx{b, a};
}

struct Triangulation {
    std::vector<Triple> triangles;       // sorted lexicographically
    std::vector<EdgeIx> internal_edges;  // sorted chords (non-boundary edges)
    IntInterval cost;                    // total internal edge length
    bool degenerate = false;             // contains a collinear triangle
};

enum class TriangulationCheck { valid, valid_degenerate, invalid };

const char* triangulation_check_name(TriangulationCheck c);

// Every edge used by exactly two of the given triangles, sorted.
std::vector<EdgeIx> internal_edges_of(size_t n, const std::vector<Triple>& triangles);

/// Structural triangulation checker: n-2 triangles, all oriented
/// counterclockwise (straight ones demote the verdict to valid_degenerate),
/// each boundary edge covered once and each chord shared exactly twice.
TriangulationCheck check_triangulation(const Polygon& poly,
                                       const std::vector<Triple>& triangles);

}  // namespace mwt
