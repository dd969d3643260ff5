#include "mwt/geometry.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace mwt {

const char* turn_name(Turn t) {
    switch (t) {
        case Turn::ccw: return "CCW";
        case Turn::cw: return "CW";
        case Turn::collinear: return "Collinear";
    }
    return "?";
}

ScaledInt doubled_area(const Point& p, const Point& q, const Point& r) {
    const unsigned s = std::max({p.x.scale_exp, p.y.scale_exp, q.x.scale_exp,
                                 q.y.scale_exp, r.x.scale_exp, r.y.scale_exp});
    const bigint px = p.x.rescaled(s).value, py = p.y.rescaled(s).value;
    const bigint qx = q.x.rescaled(s).value, qy = q.y.rescaled(s).value;
    const bigint rx = r.x.rescaled(s).value, ry = r.y.rescaled(s).value;
    bigint cross = (qx - px) * (ry - py) - (qy - py) * (rx - px);
    return ScaledInt(std::move(cross), 2 * s);
}

Turn orientation(const Point& p, const Point& q, const Point& r) {
    const int s = doubled_area(p, q, r).sign();
    if (s > 0) return Turn::ccw;
    if (s < 0) return Turn::cw;
    return Turn::collinear;
}

bool on_segment(const Point& p, const Point& q, const Point& r) {
    if (orientation(p, q, r) != Turn::collinear) return false;
    const ScaledInt& lox = p.x < q.x ? p.x : q.x;
    const ScaledInt& hix = p.x < q.x ? q.x : p.x;
    const ScaledInt& loy = p.y < q.y ? p.y : q.y;
    const ScaledInt& hiy = p.y < q.y ? q.y : p.y;
    return lox <= r.x && r.x <= hix && loy <= r.y && r.y <= hiy;
}

bool segments_intersect(const Point& a, const Point& b,
                        const Point& c, const Point& d) {
    const int d1 = doubled_area(c, d, a).sign();
    const int d2 = doubled_area(c, d, b).sign();
    const int d3 = doubled_area(a, b, c).sign();
    const int d4 = doubled_area(a, b, d).sign();
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
        return true;
    if (d1 == 0 && on_segment(c, d, a)) return true;
    if (d2 == 0 && on_segment(c, d, b)) return true;
    if (d3 == 0 && on_segment(a, b, c)) return true;
    if (d4 == 0 && on_segment(a, b, d)) return true;
    return false;
}

ScaledInt Polygon::doubled_signed_area() const {
    const size_t n = size();
    unsigned s = 0;
    for (const Point& p : vertices)
        s = std::max({s, p.x.scale_exp, p.y.scale_exp});
    bigint acc = 0;
    for (size_t i = 0; i < n; ++i) {
        const Point& p = vertices[i];
        const Point& q = vertices[(i + 1) % n];
        acc += p.x.rescaled(s).value * q.y.rescaled(s).value -
               q.x.rescaled(s).value * p.y.rescaled(s).value;
    }
    return ScaledInt(std::move(acc), 2 * s);
}

std::string ValidationReport::summary() const {
    if (ok()) return "valid";
    std::ostringstream out;
    out << issues.size() << " issue(s): ";
    for (size_t i = 0; i < issues.size(); ++i) {
        if (i) out << "; ";
        out << issues[i];
    }
    return out.str();
}

ValidationReport validate_simple_polygon(const Polygon& poly) {
    ValidationReport report;
    const size_t n = poly.size();
    if (n < 3) {
        report.issues.push_back("polygon has fewer than 3 vertices");
        return report;
    }

    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            if (poly[i] == poly[j])
                report.issues.push_back("duplicate point at indices " +
                                        std::to_string(i) + " and " +
                                        std::to_string(j));

    if (poly.doubled_signed_area().sign() <= 0)
        report.issues.push_back("orientation: boundary is not counterclockwise");

    for (size_t b = 0; b < n; ++b) {
        const Point& prev = poly[(b + n - 1) % n];
        const Point& next = poly[(b + 1) % n];
        if (orientation(prev, poly[b], next) == Turn::collinear)
            report.collinear_vertices.push_back(b);
    }

    for (size_t i = 0; i < n; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % n];
        for (size_t j = i + 1; j < n; ++j) {
            const Point& c = poly[j];
            const Point& d = poly[(j + 1) % n];
            const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
            if (adjacent) {
                // Sharing the common vertex is fine; any further contact means
                // the boundary folds back onto itself.
                const Point& shared = (j == i + 1) ? b : a;
                const Point& tail_i = (j == i + 1) ? a : b;
                const Point& tail_j = (j == i + 1) ? d : c;
                if (tail_i == tail_j) continue;  // reported as duplicate above
                const Point& other_i = tail_i;
                const Point& other_j = tail_j;
                if (on_segment(shared, other_j, other_i) ||
                    on_segment(shared, other_i, other_j))
                    report.issues.push_back("boundary folds back at edges " +
                                            std::to_string(i) + " and " +
                                            std::to_string(j));
                continue;
            }
            if (segments_intersect(a, b, c, d))
                report.issues.push_back("edges " + std::to_string(i) + " and " +
                                        std::to_string(j) + " cross");
        }
    }
    return report;
}

PointLocation locate_point(const Polygon& poly, const Point& r) {
    const size_t n = poly.size();
    int crossings = 0;
    for (size_t i = 0; i < n; ++i) {
        const Point& a = poly[i];
        const Point& b = poly[(i + 1) % n];
        if (on_segment(a, b, r)) return PointLocation::boundary;
        if (a.y <= r.y && r.y < b.y && orientation(a, b, r) == Turn::ccw)
            ++crossings;
        else if (b.y <= r.y && r.y < a.y && orientation(a, b, r) == Turn::cw)
            ++crossings;
    }
    return crossings % 2 ? PointLocation::inside : PointLocation::outside;
}

const char* triangulation_check_name(TriangulationCheck c) {
    switch (c) {
        case TriangulationCheck::valid: return "Valid";
        case TriangulationCheck::valid_degenerate: return "ValidDegenerate";
        case TriangulationCheck::invalid: return "Invalid";
    }
    return "?";
}

namespace {

bool is_boundary_edge(size_t n, const EdgeIx& e) {
    return e.second == e.first + 1 ||
           (e.first == 0 && static_cast<size_t>(e.second) == n - 1);
}

}  // namespace

std::vector<EdgeIx> internal_edges_of(size_t n, const std::vector<Triple>& triangles) {
    std::map<EdgeIx, int> uses;
    for (const Triple& t : triangles) {
        ++uses[make_edge(t[0], t[1])];
        ++uses[make_edge(t[1], t[2])];
        ++uses[make_edge(t[0], t[2])];
    }
    std::vector<EdgeIx> chords;
    for (const auto& [edge, count] : uses)
        if (count == 2 && !is_boundary_edge(n, edge)) chords.push_back(edge);
    return chords;
}

TriangulationCheck check_triangulation(const Polygon& poly,
                                       const std::vector<Triple>& triangles) {
    const size_t n = poly.size();
    if (n < 3 || triangles.size() != n - 2) return TriangulationCheck::invalid;

    bool degenerate = false;
    std::map<EdgeIx, int> uses;
    std::vector<Triple> seen;
    for (const Triple& t : triangles) {
        if (!(0 <= t[0] && t[0] < t[1] && t[1] < t[2] &&
              static_cast<size_t>(t[2]) < n))
            return TriangulationCheck::invalid;
        seen.push_back(t);
        switch (orientation(poly[t[0]], poly[t[1]], poly[t[2]])) {
            case Turn::cw: return TriangulationCheck::invalid;
            case Turn::collinear: degenerate = true; break;
            case Turn::ccw: break;
        }
        ++uses[make_edge(t[0], t[1])];
        ++uses[make_edge(t[1], t[2])];
        ++uses[make_edge(t[0], t[2])];
    }
    std::sort(seen.begin(), seen.end());
    if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
        return TriangulationCheck::invalid;

    for (const auto& [edge, count] : uses) {
        if (is_boundary_edge(n, edge)) {
            if (count != 1) return TriangulationCheck::invalid;
        } else if (count != 2) {
            return TriangulationCheck::invalid;
        }
    }
    for (size_t i = 0; i < n; ++i) {
        const EdgeIx e = make_edge(static_cast<int>(i),
                                   static_cast<int>((i + 1) % n));
        if (uses.find(e) == uses.end()) return TriangulationCheck::invalid;
    }
    return degenerate ? TriangulationCheck::valid_degenerate
                      : TriangulationCheck::valid;
}

}  // namespace mwt
