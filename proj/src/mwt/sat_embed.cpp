#include "mwt/sat.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace mwt {

namespace {

unsigned long long point_key(const GridPoint& p) {
    return (static_cast<unsigned long long>(static_cast<std::uint32_t>(p.x)) << 32) |
           static_cast<std::uint32_t>(p.y);
}

// All lattice points of a waypoint path in travel order.  Callers verify the
// segments are axis-parallel first.
std::vector<GridPoint> expand_path(const LatticePath& path) {
    std::vector<GridPoint> out;
    if (path.pts.empty()) return out;
    out.push_back(path.pts.front());
    for (size_t s = 0; s + 1 < path.pts.size(); ++s) {
        GridPoint at = path.pts[s];
        const GridPoint to = path.pts[s + 1];
        const long dx = (to.x > at.x) - (to.x < at.x);
        const long dy = (to.y > at.y) - (to.y < at.y);
        while (!(at == to)) {
            at.x += dx;
            at.y += dy;
            out.push_back(at);
        }
    }
    return out;
}

}  // namespace

ValidationReport validate_embedding(const RectilinearEmbedding& e,
                                    const std::vector<std::vector<Literal>>* clauses) {
    ValidationReport report;
    const auto flag = [&report](std::string text) {
        report.issues.push_back(std::move(text));
    };

    std::unordered_map<unsigned long long, size_t> var_at;
    {
        std::set<std::string> names;
        for (size_t i = 0; i < e.variables.size(); ++i) {
            const auto& [name, p] = e.variables[i];
            if (name.empty())
                flag("variable " + std::to_string(i) + " has an empty name");
            else if (!names.insert(name).second)
                flag("duplicate variable name '" + name + "'");
            if (p.y != e.line_y)
                flag("variable '" + name + "' sits off the shared line");
            const auto [hit, fresh] = var_at.emplace(point_key(p), i);
            if (!fresh)
                flag("variables '" + e.variables[hit->second].first + "' and '" + name +
                     "' share a point");
        }
    }

    std::unordered_map<unsigned long long, size_t> vertex_at;
    for (size_t c = 0; c < e.clause_vertices.size(); ++c) {
        const GridPoint& v = e.clause_vertices[c];
        if (v.y == e.line_y)
            flag("clause " + std::to_string(c) + " vertex sits on the shared line");
        if (var_at.count(point_key(v)))
            flag("clause " + std::to_string(c) + " vertex sits on a variable");
        const auto [hit, fresh] = vertex_at.emplace(point_key(v), c);
        if (!fresh)
            flag("clauses " + std::to_string(hit->second) + " and " + std::to_string(c) +
                 " share a vertex");
    }

    if (e.legs.size() != e.clause_vertices.size())
        flag("embedding has " + std::to_string(e.clause_vertices.size()) +
             " clause vertices but " + std::to_string(e.legs.size()) + " leg groups");
    if (clauses && clauses->size() != e.clause_vertices.size())
        flag("formula has " + std::to_string(clauses->size()) +
             " clauses but the embedding covers " +
             std::to_string(e.clause_vertices.size()));

    if (clauses) {
        std::set<std::string> declared;
        for (const auto& [name, p] : e.variables) {
            (void)p;
            declared.insert(name);
        }
        for (size_t c = 0; c < clauses->size(); ++c)
            for (size_t i = 0; i < (*clauses)[c].size(); ++i)
                if (!declared.count((*clauses)[c][i].var))
                    flag("clause " + std::to_string(c) + " literal " + std::to_string(i) +
                         " references undeclared variable '" + (*clauses)[c][i].var +
                         "'");
    }

    struct Use {
        size_t c, i;
    };
    std::unordered_map<unsigned long long, Use> taken;
    const size_t covered = std::min(e.legs.size(), e.clause_vertices.size());
    for (size_t c = 0; c < covered; ++c) {
        const auto& group = e.legs[c];
        if (group.empty() || group.size() > 3)
            flag("clause " + std::to_string(c) + " has " + std::to_string(group.size()) +
                 " legs");
        if (clauses && c < clauses->size() && (*clauses)[c].size() != group.size())
            flag("clause " + std::to_string(c) + " has " + std::to_string(group.size()) +
                 " legs for " + std::to_string((*clauses)[c].size()) + " literals");
        for (size_t i = 0; i < group.size(); ++i) {
            const auto& pts = group[i].pts;
            const std::string tag =
                "clause " + std::to_string(c) + " leg " + std::to_string(i);
            if (pts.size() < 2) {
                flag(tag + " has fewer than two points");
                continue;
            }
            if (!(pts.front() == e.clause_vertices[c]))
                flag(tag + " does not start at the clause vertex");
            bool straight = true;
            for (size_t s = 0; s + 1 < pts.size() && straight; ++s) {
                if (pts[s] == pts[s + 1]) {
                    flag(tag + " has a zero-length segment");
                    straight = false;
                } else if (pts[s].x != pts[s + 1].x && pts[s].y != pts[s + 1].y) {
                    flag(tag + " has a diagonal segment");
                    straight = false;
                }
            }
            const auto endpoint = var_at.find(point_key(pts.back()));
            if (endpoint == var_at.end()) {
                flag(tag + " does not end at a variable");
            } else if (clauses && c < clauses->size() && i < (*clauses)[c].size()) {
                const std::string& expected = (*clauses)[c][i].var;
                const std::string& actual = e.variables[endpoint->second].first;
                if (actual != expected)
                    flag(tag + " ends at '" + actual + "' but its literal names '" +
                         expected + "'");
            }
            if (!straight) continue;

            const auto walk = expand_path(group[i]);
            std::unordered_set<unsigned long long> visited;
            bool revisit = false;
            for (size_t k = 0; k < walk.size(); ++k) {
                const auto kk = point_key(walk[k]);
                if (!visited.insert(kk).second) {
                    if (!revisit) flag(tag + " revisits a point");
                    revisit = true;
                    continue;
                }
                const bool first = k == 0;
                const bool last = k + 1 == walk.size();
                if (const auto hit = vertex_at.find(kk); hit != vertex_at.end()) {
                    // The clause's own vertex anchors every one of its legs;
                    // any other contact with a vertex is a collision.
                    if (!first || hit->second != c)
                        flag(tag + " passes through clause " +
                             std::to_string(hit->second) + "'s vertex");
                    continue;
                }
                if (const auto hit = var_at.find(kk); hit != var_at.end()) {
                    // Variables are shared landing points; passing over one
                    // mid-flight is a collision.
                    if (!last)
                        flag(tag + " passes through variable '" +
                             e.variables[hit->second].first + "'");
                    continue;
                }
                const auto [slot, fresh] = taken.emplace(kk, Use{c, i});
                if (!fresh)
                    flag(tag + " crosses clause " + std::to_string(slot->second.c) +
                         " leg " + std::to_string(slot->second.i) + " at (" +
                         std::to_string(walk[k].x) + ", " + std::to_string(walk[k].y) +
                         ")");
            }
        }
    }
    return report;
}

namespace {

// ---------------------------------------------------------------------------
// Comb layout engine.  Given variables in line order (rank i sits at x = 8 i)
// and one comb per clause (attachment ranks plus a side), it assigns each leg
// one of the four attachment slots of its variable, stacks nested combs at
// increasing heights, and emits rectilinear paths.
// ---------------------------------------------------------------------------

struct CombSpec {
    std::vector<size_t> attach;  // rank per literal, 1 to 3 entries
    int side = +1;               // +1 above the line, -1 below
};

enum class Slot { none, vertical, walk_left, walk_right };

enum class LegClass {
    leftward,   // the comb extends left: the rank is the span's right end
    middle,     // the rank lies strictly inside the span
    rightward,  // the comb extends right: the rank is the span's left end
    single      // one-legged comb
};

struct SpanOf {
    size_t lo = 0, hi = 0;
};

SpanOf comb_span(const CombSpec& spec) {
    const auto [lo, hi] = std::minmax_element(spec.attach.begin(), spec.attach.end());
    return {*lo, *hi};
}

// Same-side spans must nest or stay apart; sharing an endpoint rank is fine.
bool spans_laminar(const std::vector<CombSpec>& specs) {
    for (const int side : {+1, -1}) {
        std::vector<SpanOf> spans;
        for (const auto& spec : specs)
            if (spec.side == side) spans.push_back(comb_span(spec));
        for (size_t i = 0; i < spans.size(); ++i) {
            for (size_t j = i + 1; j < spans.size(); ++j) {
                const auto& a = spans[i];
                const auto& b = spans[j];
                if (a.hi <= b.lo || b.hi <= a.lo) continue;
                if (a.lo <= b.lo && b.hi <= a.hi) continue;
                if (b.lo <= a.lo && a.hi <= b.hi) continue;
                return false;
            }
        }
    }
    return true;
}

// A comb's bar would be pierced by the legs of any comb that attaches strictly
// inside its span without nesting under it, so that configuration is banned.
bool attachments_nest(const std::vector<CombSpec>& specs) {
    for (size_t i = 0; i < specs.size(); ++i) {
        const auto outer = comb_span(specs[i]);
        for (size_t j = 0; j < specs.size(); ++j) {
            if (i == j || specs[i].side != specs[j].side) continue;
            const auto inner = comb_span(specs[j]);
            const bool nested = outer.lo <= inner.lo && inner.hi <= outer.hi;
            if (nested) continue;
            for (const size_t rank : specs[j].attach)
                if (outer.lo < rank && rank < outer.hi) return false;
        }
    }
    return true;
}

LegClass classify_leg(const CombSpec& spec, size_t lit) {
    if (spec.attach.size() == 1) return LegClass::single;
    const auto span = comb_span(spec);
    if (spec.attach[lit] == span.lo) return LegClass::rightward;
    if (spec.attach[lit] == span.hi) return LegClass::leftward;
    return LegClass::middle;
}

// One walk slot per direction per rank (shared by both sides) and one
// vertical per rank and side.  Narrow combs claim the walks first; wider
// combs fall back to the vertical.  Returns false when some leg ends up
// without a slot.
bool assign_slots(const std::vector<CombSpec>& specs,
                  std::vector<std::vector<Slot>>& out) {
    struct Entry {
        size_t width, comb, lit, rank;
        LegClass cls;
        int side;
    };
    std::vector<Entry> entries;
    for (size_t c = 0; c < specs.size(); ++c) {
        const auto span = comb_span(specs[c]);
        for (size_t i = 0; i < specs[c].attach.size(); ++i)
            entries.push_back({span.hi - span.lo, c, i, specs[c].attach[i],
                               classify_leg(specs[c], i), specs[c].side});
    }
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return std::tie(a.width, a.comb, a.lit) < std::tie(b.width, b.comb, b.lit);
    });

    struct RankSlots {
        bool walk_left = false, walk_right = false;
        bool vert_up = false, vert_down = false;
    };
    std::map<size_t, RankSlots> state;
    out.assign(specs.size(), {});
    for (size_t c = 0; c < specs.size(); ++c)
        out[c].assign(specs[c].attach.size(), Slot::none);

    for (const Entry& en : entries) {
        RankSlots& s = state[en.rank];
        bool& vert = en.side > 0 ? s.vert_up : s.vert_down;
        Slot chosen = Slot::none;
        switch (en.cls) {
            case LegClass::leftward:
                if (!s.walk_left) {
                    chosen = Slot::walk_left;
                    s.walk_left = true;
                } else if (!vert) {
                    chosen = Slot::vertical;
                    vert = true;
                }
                break;
            case LegClass::rightward:
                if (!s.walk_right) {
                    chosen = Slot::walk_right;
                    s.walk_right = true;
                } else if (!vert) {
                    chosen = Slot::vertical;
                    vert = true;
                }
                break;
            case LegClass::middle:
                if (!vert) {
                    chosen = Slot::vertical;
                    vert = true;
                }
                break;
            case LegClass::single:
                if (!vert) {
                    chosen = Slot::vertical;
                    vert = true;
                } else if (!s.walk_left) {
                    chosen = Slot::walk_left;
                    s.walk_left = true;
                } else if (!s.walk_right) {
                    chosen = Slot::walk_right;
                    s.walk_right = true;
                }
                break;
        }
        if (chosen == Slot::none) return false;
        out[en.comb][en.lit] = chosen;
    }
    return true;
}

// Bars of combs that cover other combs run above them: each comb sits one
// level higher than anything its span covers on its own side.
std::vector<long> comb_heights(const std::vector<CombSpec>& specs) {
    struct Entry {
        size_t width, lo, hi, comb;
    };
    std::vector<long> heights(specs.size(), 1);
    for (const int side : {+1, -1}) {
        std::vector<Entry> entries;
        for (size_t c = 0; c < specs.size(); ++c) {
            if (specs[c].side != side) continue;
            const auto span = comb_span(specs[c]);
            entries.push_back({span.hi - span.lo, span.lo, span.hi, c});
        }
        std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
            return std::tie(a.width, a.lo, a.comb) < std::tie(b.width, b.lo, b.comb);
        });
        for (size_t i = 0; i < entries.size(); ++i) {
            long below = 0;
            for (size_t j = 0; j < i; ++j)
                if (entries[i].lo <= entries[j].lo && entries[j].hi <= entries[i].hi)
                    below = std::max(below, heights[entries[j].comb]);
            heights[entries[i].comb] = below + 1;
        }
    }
    return heights;
}

RectilinearEmbedding lay_out_combs(const std::vector<std::string>& names, long line_y,
                                   const std::vector<CombSpec>& specs) {
    RectilinearEmbedding e;
    e.line_y = line_y;
    for (size_t i = 0; i < names.size(); ++i)
        e.variables.emplace_back(names[i],
                                 GridPoint{static_cast<long>(8 * i), line_y});

    for (const auto& spec : specs) {
        if (spec.attach.empty() || spec.attach.size() > 3)
            raise(errc::internal_check, "comb needs 1 to 3 legs");
        if (spec.side != +1 && spec.side != -1)
            raise(errc::internal_check, "comb side must be +1 or -1");
        std::set<size_t> distinct(spec.attach.begin(), spec.attach.end());
        if (distinct.size() != spec.attach.size())
            raise(errc::internal_check, "comb attaches one rank twice");
        for (const size_t rank : spec.attach)
            if (rank >= names.size())
                raise(errc::internal_check, "comb attachment rank out of range");
    }
    if (!spans_laminar(specs))
        raise(errc::internal_check, "comb spans are not laminar");
    if (!attachments_nest(specs))
        raise(errc::internal_check, "comb attaches inside a span it does not nest in");

    std::vector<std::vector<Slot>> slots;
    if (!assign_slots(specs, slots))
        raise(errc::internal_check, "comb legs exceed the attachment slots");
    const auto heights = comb_heights(specs);

    e.clause_vertices.resize(specs.size());
    e.legs.resize(specs.size());
    for (size_t c = 0; c < specs.size(); ++c) {
        const auto& spec = specs[c];
        const long bar_y = line_y + spec.side * heights[c];
        std::vector<long> junction(spec.attach.size());
        for (size_t i = 0; i < spec.attach.size(); ++i) {
            const long col = 8 * static_cast<long>(spec.attach[i]);
            switch (slots[c][i]) {
                case Slot::vertical:
                    junction[i] = col;
                    break;
                case Slot::walk_left:
                    junction[i] = col - 2;
                    break;
                case Slot::walk_right:
                    junction[i] = col + 2;
                    break;
                case Slot::none:
                    raise(errc::internal_check, "leg was left without a slot");
            }
        }
        // The clause vertex anchors on the middle leg's junction when there
        // are three legs, on the left leg's when there are two.
        size_t anchor = 0;
        if (spec.attach.size() == 3) {
            const auto span = comb_span(spec);
            for (size_t i = 0; i < 3; ++i)
                if (spec.attach[i] != span.lo && spec.attach[i] != span.hi) anchor = i;
        } else if (spec.attach.size() == 2) {
            anchor = spec.attach[0] < spec.attach[1] ? 0 : 1;
        }
        e.clause_vertices[c] = GridPoint{junction[anchor], bar_y};
        e.legs[c].resize(spec.attach.size());
        for (size_t i = 0; i < spec.attach.size(); ++i) {
            LatticePath path;
            const auto push = [&path](long x, long y) {
                const GridPoint p{x, y};
                if (path.pts.empty() || !(path.pts.back() == p)) path.pts.push_back(p);
            };
            push(e.clause_vertices[c].x, e.clause_vertices[c].y);
            push(junction[i], bar_y);
            push(junction[i], line_y);
            push(8 * static_cast<long>(spec.attach[i]), line_y);
            e.legs[c][i] = std::move(path);
        }
    }
    return e;
}

// Shared tail for every emitted instance: lay the clauses out as combs over
// the given variable order, then re-validate the result before returning it.
PositiveInstance finish_instance(std::vector<std::string> variables,
                                 std::vector<std::array<std::string, 3>> clauses,
                                 const std::vector<int>& sides, long line_y) {
    PositiveInstance out;
    out.formula.variables = std::move(variables);
    out.formula.clauses = std::move(clauses);

    std::map<std::string, size_t> rank;
    for (size_t i = 0; i < out.formula.variables.size(); ++i)
        if (!rank.emplace(out.formula.variables[i], i).second)
            raise(errc::internal_check, "generated variable names collide: '" +
                                            out.formula.variables[i] + "'");

    std::vector<CombSpec> specs;
    specs.reserve(out.formula.clauses.size());
    for (size_t t = 0; t < out.formula.clauses.size(); ++t) {
        CombSpec spec;
        spec.side = sides[t];
        for (const auto& name : out.formula.clauses[t]) {
            const auto hit = rank.find(name);
            if (hit == rank.end())
                raise(errc::internal_check,
                      "emitted clause references unplaced variable '" + name + "'");
            spec.attach.push_back(hit->second);
        }
        specs.push_back(std::move(spec));
    }

    out.embedding = lay_out_combs(out.formula.variables, line_y, specs);
    const auto view = literal_view(out.formula);
    const auto report = validate_embedding(out.embedding, &view);
    if (!report.ok())
        raise(errc::internal_check,
              "emitted embedding failed validation: " + report.summary());
    return out;
}

// Fixed replacement when simplification already settles the answer as "yes":
// one clause over three fresh variables, trivially satisfiable.
PositiveInstance canned_satisfiable(long line_y) {
    std::vector<std::string> variables = {"t.1", "t.2", "t.3"};
    std::vector<std::array<std::string, 3>> clauses = {{"t.1", "t.2", "t.3"}};
    return finish_instance(std::move(variables), std::move(clauses), {+1}, line_y);
}

// Fixed replacement when simplification finds a contradiction: an inequality
// and an equality gadget over the same pair cannot both be satisfied.  The
// inequality hangs below the line so that its full-width bar cannot be
// pierced by the equality's legs, which run above.
PositiveInstance canned_contradiction(long line_y) {
    const std::string x = "u.x";
    const std::string y = "u.y";
    const auto differ = build_gadget(GadgetKind::inequality, x, y, prefixed_namer("u.n"));
    const auto agree = build_gadget(GadgetKind::equality, x, y, prefixed_namer("u.e"));

    std::vector<std::string> variables;
    variables.push_back(x);
    variables.insert(variables.end(), differ.line_order.begin() + 1,
                     differ.line_order.end() - 1);
    variables.insert(variables.end(), agree.line_order.begin() + 1,
                     agree.line_order.end() - 1);
    variables.push_back(y);

    std::vector<std::array<std::string, 3>> clauses;
    std::vector<int> sides;
    clauses.insert(clauses.end(), differ.clauses.begin(), differ.clauses.end());
    for (const int s : differ.clause_side) sides.push_back(-s);
    clauses.insert(clauses.end(), agree.clauses.begin(), agree.clauses.end());
    sides.insert(sides.end(), agree.clause_side.begin(), agree.clause_side.end());
    return finish_instance(std::move(variables), std::move(clauses), sides, line_y);
}

}  // namespace

PositiveInstance transform_instance(const Planar3SatInstance& inst) {
    const auto& source = inst.embedding;
    {
        const auto report = validate_embedding(source, &inst.clauses);
        if (!report.ok()) raise(errc::invalid_embedding, report.summary());
    }
    for (size_t c = 0; c < inst.clauses.size(); ++c) {
        std::set<std::string> seen;
        for (const auto& lit : inst.clauses[c])
            if (!seen.insert(lit.var).second)
                raise(errc::invalid_embedding, "clause " + std::to_string(c) +
                                                   " repeats variable '" + lit.var +
                                                   "'");
    }

    std::map<std::string, size_t> var_ix;
    for (size_t i = 0; i < source.variables.size(); ++i)
        var_ix.emplace(source.variables[i].first, i);

    std::vector<int> side(inst.clauses.size());
    for (size_t c = 0; c < inst.clauses.size(); ++c)
        side[c] = source.clause_vertices[c].y > source.line_y ? +1 : -1;

    // One connection per (clause, literal), grouped by variable and ordered by
    // the rotational order of arrival: from the left, from above, from below,
    // from the right.  A valid embedding cannot reuse an arrival direction.
    struct Connection {
        size_t clause = 0;
        size_t literal = 0;
        bool negated = false;
        int clause_side = 0;
        int approach = 0;  // 0 left walk, 1 from above, 2 from below, 3 right walk
    };
    std::vector<std::vector<Connection>> connections(source.variables.size());
    for (size_t c = 0; c < inst.clauses.size(); ++c) {
        for (size_t i = 0; i < inst.clauses[c].size(); ++i) {
            const auto& pts = source.legs[c][i].pts;
            for (const auto& p : pts)
                if ((p.y - source.line_y) * side[c] < 0)
                    raise(errc::invalid_embedding,
                          "clause " + std::to_string(c) + " leg " + std::to_string(i) +
                              " strays across the shared line");
            const GridPoint& land = pts[pts.size() - 1];
            const GridPoint& prev = pts[pts.size() - 2];
            Connection conn;
            conn.clause = c;
            conn.literal = i;
            conn.negated = inst.clauses[c][i].negated;
            conn.clause_side = side[c];
            if (prev.x == land.x)
                conn.approach = prev.y > source.line_y ? 1 : 2;
            else
                conn.approach = prev.x < land.x ? 0 : 3;
            connections[var_ix.at(inst.clauses[c][i].var)].push_back(conn);
        }
    }
    for (auto& list : connections) {
        std::sort(list.begin(), list.end(),
                  [](const Connection& a, const Connection& b) {
                      return a.approach < b.approach;
                  });
        for (size_t j = 0; j + 1 < list.size(); ++j)
            if (list[j].approach == list[j + 1].approach)
                raise(errc::internal_check,
                      "validated embedding reuses an arrival direction");
    }

    // Peel off single-literal clauses: their variable is pinned, satisfied
    // clauses drop out, and contradicted literals leave their clauses.
    struct WorkLit {
        std::string var;
        bool negated = false;
        size_t orig = 0;
    };
    struct WorkClause {
        std::vector<WorkLit> lits;
        bool alive = true;
    };
    std::vector<WorkClause> work(inst.clauses.size());
    for (size_t c = 0; c < inst.clauses.size(); ++c)
        for (size_t i = 0; i < inst.clauses[c].size(); ++i)
            work[c].lits.push_back(
                {inst.clauses[c][i].var, inst.clauses[c][i].negated, i});

    std::map<std::string, bool> pinned;
    bool contradiction = false;
    while (!contradiction) {
        size_t unit = work.size();
        for (size_t c = 0; c < work.size(); ++c) {
            if (work[c].alive && work[c].lits.size() == 1) {
                unit = c;
                break;
            }
        }
        if (unit == work.size()) break;
        const WorkLit forced = work[unit].lits.front();
        const bool value = !forced.negated;
        const auto [hit, fresh] = pinned.emplace(forced.var, value);
        if (!fresh && hit->second != value) {
            contradiction = true;
            break;
        }
        for (auto& wc : work) {
            if (!wc.alive) continue;
            bool satisfied = false;
            for (auto li = wc.lits.begin(); li != wc.lits.end();) {
                const auto f = pinned.find(li->var);
                if (f == pinned.end()) {
                    ++li;
                    continue;
                }
                if (f->second != li->negated) {
                    satisfied = true;
                    break;
                }
                li = wc.lits.erase(li);
            }
            if (satisfied) {
                wc.alive = false;
                continue;
            }
            if (wc.lits.empty()) contradiction = true;
        }
    }
    if (contradiction) return canned_contradiction(source.line_y);
    if (std::none_of(work.begin(), work.end(),
                     [](const WorkClause& wc) { return wc.alive; }))
        return canned_satisfiable(source.line_y);

    // Replace every variable by a chain with one element per surviving
    // connection.  An element carries its literal's value, so neighbours of
    // equal polarity are tied together and neighbours of opposite polarity
    // are tied apart.  Each link's bar runs opposite to the side of the
    // clause served by its right element, keeping that side clear.
    struct Stop {
        std::vector<std::string> gap;   // cluster inserted just left of the element
        std::string element;
        std::vector<std::string> tail;  // link internals following the element
    };
    std::vector<std::vector<Stop>> regions;
    std::map<std::pair<size_t, size_t>, std::pair<size_t, size_t>> stop_of;
    std::vector<std::array<std::string, 3>> out_clauses;
    std::vector<int> out_sides;

    std::vector<size_t> order(source.variables.size());
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(), [&source](size_t a, size_t b) {
        return source.variables[a].second.x < source.variables[b].second.x;
    });

    for (const size_t v : order) {
        std::vector<Connection> live;
        for (const Connection& conn : connections[v]) {
            if (!work[conn.clause].alive) continue;
            for (const auto& wl : work[conn.clause].lits) {
                if (wl.orig == conn.literal) {
                    live.push_back(conn);
                    break;
                }
            }
        }
        if (live.empty()) {
            regions.emplace_back();
            continue;
        }
        const std::string& base = source.variables[v].first;
        std::vector<Stop> region(live.size());
        for (size_t j = 0; j < live.size(); ++j) {
            region[j].element = base + ".w" + std::to_string(j + 1);
            stop_of[{live[j].clause, live[j].literal}] = {regions.size(), j};
        }
        for (size_t j = 0; j + 1 < live.size(); ++j) {
            const auto kind = live[j].negated == live[j + 1].negated
                                  ? GadgetKind::equality
                                  : GadgetKind::inequality;
            const auto link =
                build_gadget(kind, region[j].element, region[j + 1].element,
                             prefixed_namer(base + ".l" + std::to_string(j + 1)));
            const int sigma = -live[j + 1].clause_side;
            for (size_t t = 0; t < link.clauses.size(); ++t) {
                out_clauses.push_back(link.clauses[t]);
                out_sides.push_back(sigma * link.clause_side[t]);
            }
            region[j].tail.assign(link.line_order.begin() + 1,
                                  link.line_order.end() - 1);
        }
        regions.push_back(std::move(region));
    }

    // One satisfiability block per surviving clause, attached to the chain
    // elements of its literals.  The block's helper clusters drop into the
    // gaps left of its middle and right attachments.
    for (size_t c = 0; c < work.size(); ++c) {
        if (!work[c].alive) continue;
        const auto& lits = work[c].lits;
        if (lits.size() < 2 || lits.size() > 3)
            raise(errc::internal_check, "unexpected clause arity after simplification");
        std::vector<std::pair<size_t, size_t>> stops;
        stops.reserve(lits.size());
        for (const auto& wl : lits) stops.push_back(stop_of.at({c, wl.orig}));
        std::sort(stops.begin(), stops.end());
        std::vector<std::string> roles;
        roles.reserve(stops.size());
        for (const auto& [r, s] : stops) roles.push_back(regions[r][s].element);

        const auto block =
            build_disjunction_block(roles, prefixed_namer("k" + std::to_string(c)));
        for (size_t t = 0; t < block.clauses.size(); ++t) {
            out_clauses.push_back(block.clauses[t]);
            out_sides.push_back(side[c] * block.clause_side[t]);
        }

        size_t role_at = 0;
        std::vector<std::string> pending;
        for (const auto& name : block.line_order) {
            if (role_at < roles.size() && name == roles[role_at]) {
                if (role_at == 0) {
                    if (!pending.empty())
                        raise(errc::internal_check,
                              "unexpected cluster before the left attachment");
                } else {
                    Stop& stop = regions[stops[role_at].first][stops[role_at].second];
                    if (!stop.gap.empty())
                        raise(errc::internal_check, "two blocks share an insertion gap");
                    stop.gap = std::move(pending);
                }
                pending.clear();
                ++role_at;
            } else {
                pending.push_back(name);
            }
        }
        if (role_at != roles.size() || !pending.empty())
            raise(errc::internal_check, "disjunction block layout is inconsistent");
    }

    std::vector<std::string> global;
    for (const auto& region : regions) {
        for (const auto& stop : region) {
            global.insert(global.end(), stop.gap.begin(), stop.gap.end());
            global.push_back(stop.element);
            global.insert(global.end(), stop.tail.begin(), stop.tail.end());
        }
    }
    return finish_instance(std::move(global), std::move(out_clauses), out_sides,
                           source.line_y);
}

Planar3SatInstance random_planar_3sat(std::mt19937_64& rng, int max_vars,
                                      int max_clauses) {
    if (max_vars < 1 || max_clauses < 1)
        raise(errc::internal_check, "random instance limits must be positive");

    for (int attempt = 0; attempt < 100; ++attempt) {
        const int nvars = std::uniform_int_distribution<int>(1, max_vars)(rng);
        const int want = std::uniform_int_distribution<int>(1, max_clauses)(rng);
        std::vector<std::string> names;
        names.reserve(nvars);
        for (int i = 0; i < nvars; ++i) names.push_back("x" + std::to_string(i + 1));

        std::vector<CombSpec> specs;
        std::vector<std::vector<Literal>> clauses;
        for (int tries = 0; static_cast<int>(clauses.size()) < want && tries < 60;
             ++tries) {
            const int roll = std::uniform_int_distribution<int>(0, 3)(rng);
            const int arity = std::min(nvars, roll <= 0 ? 1 : (roll == 1 ? 2 : 3));

            std::vector<int> pool(nvars);
            std::iota(pool.begin(), pool.end(), 0);
            for (int k = 0; k < arity; ++k) {
                const int other =
                    k + std::uniform_int_distribution<int>(0, nvars - 1 - k)(rng);
                std::swap(pool[k], pool[other]);
            }

            CombSpec spec;
            spec.side = std::uniform_int_distribution<int>(0, 1)(rng) ? +1 : -1;
            std::vector<Literal> clause;
            for (int k = 0; k < arity; ++k) {
                spec.attach.push_back(static_cast<size_t>(pool[k]));
                clause.push_back({names[pool[k]],
                                  std::uniform_int_distribution<int>(0, 1)(rng) == 1});
            }

            std::vector<CombSpec> trial = specs;
            trial.push_back(spec);
            if (!spans_laminar(trial) || !attachments_nest(trial)) continue;
            std::vector<std::vector<Slot>> probe;
            if (!assign_slots(trial, probe)) continue;
            specs = std::move(trial);
            clauses.push_back(std::move(clause));
        }
        if (clauses.empty()) continue;

        Planar3SatInstance inst;
        inst.clauses = std::move(clauses);
        inst.embedding = lay_out_combs(names, 0, specs);
        const auto report = validate_embedding(inst.embedding, &inst.clauses);
        if (report.ok()) return inst;
    }
    raise(errc::internal_check, "random instance generation kept failing");
}

}  // namespace mwt
