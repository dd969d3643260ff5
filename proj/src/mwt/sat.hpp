#pragma once

// Positive one-in-three formulas over named boolean variables, planar CNF
// instances with explicit rectilinear embeddings, and the reduction that
// turns the latter into the former while keeping a valid embedding.

#include <array>
#include <functional>
#include <iosfwd>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "mwt/errors.hpp"
#include "mwt/geometry.hpp"

namespace mwt {

// ---------------------------------------------------------------------------
// Domain types
// ---------------------------------------------------------------------------

struct GridPoint {
    long x = 0;
    long y = 0;
    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

// An axis-parallel polyline on the integer grid, stored as waypoints.
struct LatticePath {
    std::vector<GridPoint> pts;
    friend bool operator==(const LatticePath&, const LatticePath&) = default;
};

struct Literal {
    std::string var;
    bool negated = false;
    friend bool operator==(const Literal&, const Literal&) = default;
};

// Drawing of a variable/clause incidence graph: variables sit on one
// horizontal line, clause vertices above or below it, and every incidence is
// an axis-parallel path from the clause vertex to the variable point.
// legs[c][i] belongs to the i-th literal of clause c and runs from
// clause_vertices[c] to that literal's variable.
struct RectilinearEmbedding {
    long line_y = 0;
    std::vector<std::pair<std::string, GridPoint>> variables;
    std::vector<GridPoint> clause_vertices;
    std::vector<std::vector<LatticePath>> legs;
    friend bool operator==(const RectilinearEmbedding&,
                           const RectilinearEmbedding&) = default;
};

// CNF with at most three literals per clause, plus a drawing of its
// incidence graph.
struct Planar3SatInstance {
    std::vector<std::vector<Literal>> clauses;
    RectilinearEmbedding embedding;
    friend bool operator==(const Planar3SatInstance&,
                           const Planar3SatInstance&) = default;
};

// Clauses are ordered triples of distinct variable names; a satisfying
// assignment makes exactly one variable of every triple true.  No negations.
struct Formula1in3 {
    std::vector<std::string> variables;
    std::vector<std::array<std::string, 3>> clauses;
    friend bool operator==(const Formula1in3&, const Formula1in3&) = default;
};

// A positive instance together with its drawing.
struct PositiveInstance {
    Formula1in3 formula;
    RectilinearEmbedding embedding;
    friend bool operator==(const PositiveInstance&,
                           const PositiveInstance&) = default;
};

using Assignment = std::vector<std::pair<std::string, bool>>;

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

struct OneInThreeResult {
    bool satisfiable = false;
    Assignment witness;                    // empty when unsatisfiable
    unsigned long long model_count = 0;
};

// Exhaustive enumeration over all assignments.  Raises TooLarge beyond 24
// variables.  The witness is the first satisfying assignment in the
// enumeration order (variables in formula order, false before true).
OneInThreeResult brute_force_1in3(const Formula1in3& f, unsigned workers = 1);

struct SolveResult {
    bool satisfiable = false;
    Assignment witness;
};

// Complete backtracking search with exactly-one constraint propagation.
// Handles instances far beyond the brute-force limit.  Optional assumptions
// pin variables before the search starts.
SolveResult solve_1in3(const Formula1in3& f, const Assignment& assumptions = {});

// Plain CNF satisfiability by enumeration (at most 24 distinct variables),
// used as the independent reference on the untransformed side.
bool brute_force_cnf(const std::vector<std::vector<Literal>>& clauses);

// ---------------------------------------------------------------------------
// Gadgets
// ---------------------------------------------------------------------------

enum class GadgetKind { inequality, equality };

// Names fresh variables; the hint describes the role of the variable.
using FreshNamer = std::function<std::string(const std::string& hint)>;

// Creates a namer that prefixes every hint with `prefix` and a dot.
FreshNamer prefixed_namer(std::string prefix);

struct GadgetEmission {
    std::vector<std::array<std::string, 3>> clauses;
    std::vector<std::string> fresh_variables;
    // Left-to-right order of all participating variables, x and y included,
    // as the gadget lays them out on the line.
    std::vector<std::string> line_order;
    // +1: clause is drawn on the gadget's main side, -1: on the other side.
    std::vector<int> clause_side;
};

// Emits clauses that force x != y (respectively x == y) in every satisfying
// assignment, using fresh helper variables only.  x and y may coincide, in
// which case the inequality emission is unsatisfiable.
GadgetEmission build_gadget(GadgetKind kind, const std::string& x,
                            const std::string& y, const FreshNamer& namer);

// Clauses whose satisfying assignments force u = false (three clauses over
// u and three fresh variables).
GadgetEmission build_force_false(const std::string& u, const FreshNamer& namer);

// Clauses equisatisfiable with the disjunction of the given variables
// (two or three of them) under any fixed values of those variables.
GadgetEmission build_disjunction_block(const std::vector<std::string>& vars,
                                       const FreshNamer& namer);

// ---------------------------------------------------------------------------
// Embeddings
// ---------------------------------------------------------------------------

// Geometric legality: variables distinct and on the line, clause vertices off
// the line, legs axis-parallel lattice paths from their clause vertex to a
// variable point, all paths disjoint except at shared endpoints.  When
// `clauses` is given, also checks that the legs cover the variable/clause
// incidences exactly (leg i of clause c ends at the variable of literal i).
ValidationReport validate_embedding(
    const RectilinearEmbedding& e,
    const std::vector<std::vector<Literal>>* clauses = nullptr);

std::vector<std::vector<Literal>> literal_view(const Formula1in3& f);

// Transforms a CNF instance into an equisatisfiable positive one-in-three
// instance with a fresh drawing.  Raises InvalidEmbedding when the input
// drawing is not legal, when a clause repeats a variable, or when the
// drawing is not in comb normal form (no leg of a clause ever crosses to
// the other side of the variable line).
PositiveInstance transform_instance(const Planar3SatInstance& inst);

// ---------------------------------------------------------------------------
// File format (line oriented, '#' comments, round-tripping writers/parsers)
// ---------------------------------------------------------------------------

Planar3SatInstance read_planar_3sat(std::istream& in);
void write_planar_3sat(std::ostream& out, const Planar3SatInstance& inst);

PositiveInstance read_one_in_three(std::istream& in);
void write_one_in_three(std::ostream& out, const PositiveInstance& inst);

// ---------------------------------------------------------------------------
// Random valid instances (drawing included), for property testing
// ---------------------------------------------------------------------------

Planar3SatInstance random_planar_3sat(std::mt19937_64& rng, int max_vars,
                                      int max_clauses);

}  // namespace mwt
