#include "mwt/sat.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "mwt/pool.hpp"

namespace mwt {

namespace {

constexpr size_t kBruteForceCap = 24;

std::map<std::string, int> variable_index(const std::vector<std::string>& names) {
    std::map<std::string, int> index;
    for (size_t i = 0; i < names.size(); ++i) {
        if (!index.emplace(names[i], static_cast<int>(i)).second)
            raise(errc::internal_check, "duplicate variable name '" + names[i] + "'");
    }
    return index;
}

std::vector<std::array<int, 3>> clause_indices(const Formula1in3& f,
                                               const std::map<std::string, int>& index) {
    std::vector<std::array<int, 3>> out;
    out.reserve(f.clauses.size());
    for (const auto& clause : f.clauses) {
        std::array<int, 3> triple{};
        for (int k = 0; k < 3; ++k) {
            const auto found = index.find(clause[k]);
            if (found == index.end())
                raise(errc::internal_check,
                      "clause references undeclared variable '" + clause[k] + "'");
            triple[k] = found->second;
        }
        out.push_back(triple);
    }
    return out;
}

}  // namespace

OneInThreeResult brute_force_1in3(const Formula1in3& f, unsigned workers) {
    const size_t n = f.variables.size();
    if (n > kBruteForceCap)
        raise(errc::too_large, "exhaustive search is capped at " +
                                   std::to_string(kBruteForceCap) + " variables, got " +
                                   std::to_string(n));
    const auto index = variable_index(f.variables);
    const auto clauses = clause_indices(f, index);

    const std::uint64_t total = std::uint64_t{1} << n;
    // Repeated variables in a clause contribute with multiplicity, so a clause
    // like (x, a, x) can only be satisfied with x false and a true.
    const auto satisfied = [&clauses](std::uint64_t mask) {
        for (const auto& c : clauses) {
            const int hits = static_cast<int>((mask >> c[0]) & 1) +
                             static_cast<int>((mask >> c[1]) & 1) +
                             static_cast<int>((mask >> c[2]) & 1);
            if (hits != 1) return false;
        }
        return true;
    };

    constexpr std::uint64_t kNoModel = ~std::uint64_t{0};
    if (workers == 0) workers = worker_count();

    std::uint64_t models = 0;
    std::uint64_t lowest = kNoModel;
    if (workers <= 1 || total < (std::uint64_t{1} << 14)) {
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            if (!satisfied(mask)) continue;
            ++models;
            if (lowest == kNoModel) lowest = mask;
        }
    } else {
        // Contiguous assignment blocks, one per worker.  Each block reports its
        // model count and its smallest model; blocks are merged in range order,
        // so the reported witness is identical to the sequential scan's.
        const size_t blocks = static_cast<size_t>(
            std::min<std::uint64_t>(total, workers));
        std::vector<std::uint64_t> block_models(blocks, 0);
        std::vector<std::uint64_t> block_lowest(blocks, kNoModel);
        const std::uint64_t quota = total / blocks;
        const std::uint64_t spill = total % blocks;
        parallel_for(
            blocks,
            [&](size_t b) {
                const std::uint64_t begin =
                    b * quota + std::min<std::uint64_t>(b, spill);
                const std::uint64_t end = begin + quota + (b < spill ? 1 : 0);
                std::uint64_t count = 0;
                std::uint64_t low = kNoModel;
                for (std::uint64_t mask = begin; mask < end; ++mask) {
                    if (!satisfied(mask)) continue;
                    ++count;
                    if (low == kNoModel) low = mask;
                }
                block_models[b] = count;
                block_lowest[b] = low;
            },
            static_cast<unsigned>(blocks));
        for (size_t b = 0; b < blocks; ++b) {
            models += block_models[b];
            if (lowest == kNoModel) lowest = block_lowest[b];
        }
    }

    OneInThreeResult out;
    out.satisfiable = lowest != kNoModel;
    out.model_count = models;
    if (out.satisfiable) {
        out.witness.reserve(n);
        for (size_t i = 0; i < n; ++i)
            out.witness.emplace_back(f.variables[i], ((lowest >> i) & 1) != 0);
    }
    return out;
}

namespace {

// Backtracking search specialised to exactly-one constraints.  Whenever a
// variable is assigned, every clause containing it is re-examined: a second
// true literal is a conflict, a single true literal forces the open ones
// false, and a clause with all but one literal false forces the last true.
class ExactlyOneSolver {
public:
    explicit ExactlyOneSolver(const Formula1in3& f)
        : names_(f.variables),
          clauses_(clause_indices(f, variable_index(f.variables))),
          value_(names_.size(), -1),
          occurrences_(names_.size()) {
        for (size_t c = 0; c < clauses_.size(); ++c)
            for (int v : clauses_[c]) occurrences_[v].push_back(static_cast<int>(c));
        for (auto& list : occurrences_) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
    }

    bool assume(const Assignment& assumptions) {
        for (const auto& [name, value] : assumptions) {
            int v = -1;
            for (size_t i = 0; i < names_.size(); ++i) {
                if (names_[i] == name) {
                    v = static_cast<int>(i);
                    break;
                }
            }
            if (v < 0)
                raise(errc::internal_check,
                      "assumption on undeclared variable '" + name + "'");
            if (!assign(v, value)) return false;
        }
        return true;
    }

    bool solve() { return search(); }

    Assignment witness() const {
        Assignment out;
        out.reserve(names_.size());
        for (size_t i = 0; i < names_.size(); ++i)
            out.emplace_back(names_[i], value_[i] == 1);
        return out;
    }

private:
    bool assign(int v, bool b) {
        if (value_[v] >= 0) return value_[v] == (b ? 1 : 0);
        value_[v] = b ? 1 : 0;
        trail_.push_back(v);
        return true;
    }

    bool propagate() {
        while (processed_ < trail_.size()) {
            const int v = trail_[processed_++];
            for (int c : occurrences_[v]) {
                int true_count = 0;
                int open_count = 0;
                std::array<int, 3> open{};
                for (int w : clauses_[c]) {
                    if (value_[w] == 1)
                        ++true_count;
                    else if (value_[w] < 0)
                        open[open_count++] = w;
                }
                if (true_count > 1) return false;
                if (true_count == 1) {
                    for (int k = 0; k < open_count; ++k)
                        if (!assign(open[k], false)) return false;
                } else if (open_count == 0) {
                    return false;
                } else if (open_count == 1) {
                    if (!assign(open[0], true)) return false;
                }
            }
        }
        return true;
    }

    bool search() {
        if (!propagate()) return false;
        int v = -1;
        for (size_t i = 0; i < value_.size(); ++i) {
            if (value_[i] < 0) {
                v = static_cast<int>(i);
                break;
            }
        }
        if (v < 0) return true;  // complete, and propagate checked every clause
        for (const bool b : {false, true}) {
            const size_t trail_mark = trail_.size();
            const size_t processed_mark = processed_;
            assign(v, b);
            if (search()) return true;
            while (trail_.size() > trail_mark) {
                value_[trail_.back()] = -1;
                trail_.pop_back();
            }
            processed_ = processed_mark;
        }
        return false;
    }

    std::vector<std::string> names_;
    std::vector<std::array<int, 3>> clauses_;
    std::vector<signed char> value_;  // -1 open, 0 false, 1 true
    std::vector<std::vector<int>> occurrences_;
    std::vector<int> trail_;
    size_t processed_ = 0;
};

}  // namespace

SolveResult solve_1in3(const Formula1in3& f, const Assignment& assumptions) {
    ExactlyOneSolver solver(f);
    SolveResult out;
    out.satisfiable = solver.assume(assumptions) && solver.solve();
    if (out.satisfiable) out.witness = solver.witness();
    return out;
}

bool brute_force_cnf(const std::vector<std::vector<Literal>>& clauses) {
    std::map<std::string, int> index;
    for (const auto& clause : clauses)
        for (const auto& lit : clause) index.emplace(lit.var, static_cast<int>(index.size()));
    const size_t n = index.size();
    if (n > kBruteForceCap)
        raise(errc::too_large, "exhaustive search is capped at " +
                                   std::to_string(kBruteForceCap) + " variables, got " +
                                   std::to_string(n));

    std::vector<std::vector<std::pair<int, bool>>> indexed;
    indexed.reserve(clauses.size());
    for (const auto& clause : clauses) {
        std::vector<std::pair<int, bool>> c;
        c.reserve(clause.size());
        for (const auto& lit : clause) c.emplace_back(index.at(lit.var), lit.negated);
        indexed.push_back(std::move(c));
    }

    const std::uint64_t total = std::uint64_t{1} << n;
    for (std::uint64_t mask = 0; mask < total; ++mask) {
        bool all = true;
        for (const auto& clause : indexed) {
            bool any = false;
            for (const auto& [v, negated] : clause) {
                if ((((mask >> v) & 1) != 0) != negated) {
                    any = true;
                    break;
                }
            }
            if (!any) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

std::vector<std::vector<Literal>> literal_view(const Formula1in3& f) {
    std::vector<std::vector<Literal>> out;
    out.reserve(f.clauses.size());
    for (const auto& clause : f.clauses)
        out.push_back({Literal{clause[0], false}, Literal{clause[1], false},
                       Literal{clause[2], false}});
    return out;
}

FreshNamer prefixed_namer(std::string prefix) {
    return [prefix = std::move(prefix)](const std::string& hint) {
        return prefix + "." + hint;
    };
}

namespace {

// (x, a, y) pins a's truth value to "x and y disagree" once the remaining
// three clauses force a false; they have the unique solution b=0, c=1, d=0.
// Line order packs the four fresh variables between the endpoints, and the
// side pattern alternates so each clause's bar nests without crossings:
// the endpoint clause and (b,c,d) run on the emission side, the two clauses
// in between on the opposite side.
GadgetEmission inequality_gadget(const std::string& x, const std::string& y,
                                 const FreshNamer& namer) {
    const std::string a = namer("a");
    const std::string b = namer("b");
    const std::string c = namer("c");
    const std::string d = namer("d");
    GadgetEmission g;
    g.clauses = {{x, a, y}, {a, b, c}, {a, c, d}, {b, c, d}};
    g.clause_side = {+1, -1, -1, +1};
    g.fresh_variables = {a, b, c, d};
    g.line_order = {x, a, b, c, d, y};
    return g;
}

GadgetEmission equality_gadget(const std::string& x, const std::string& y,
                               const FreshNamer& namer) {
    const std::string m = namer("m");
    const auto left = inequality_gadget(
        x, m, [&namer](const std::string& hint) { return namer(hint + "1"); });
    const auto right = inequality_gadget(
        m, y, [&namer](const std::string& hint) { return namer(hint + "2"); });

    GadgetEmission g;
    g.clauses = left.clauses;
    g.clauses.insert(g.clauses.end(), right.clauses.begin(), right.clauses.end());
    g.clause_side = left.clause_side;
    g.clause_side.insert(g.clause_side.end(), right.clause_side.begin(),
                         right.clause_side.end());
    g.fresh_variables = left.fresh_variables;
    g.fresh_variables.push_back(m);
    g.fresh_variables.insert(g.fresh_variables.end(), right.fresh_variables.begin(),
                             right.fresh_variables.end());
    g.line_order = left.line_order;  // ends with m
    g.line_order.insert(g.line_order.end(), right.line_order.begin() + 1,
                        right.line_order.end());
    return g;
}

}  // namespace

GadgetEmission build_gadget(GadgetKind kind, const std::string& x,
                            const std::string& y, const FreshNamer& namer) {
    switch (kind) {
        case GadgetKind::inequality:
            return inequality_gadget(x, y, namer);
        case GadgetKind::equality:
            return equality_gadget(x, y, namer);
    }
    raise(errc::internal_check, "unknown gadget kind");
}

GadgetEmission build_force_false(const std::string& u, const FreshNamer& namer) {
    const std::string s1 = namer("s1");
    const std::string s2 = namer("s2");
    const std::string s3 = namer("s3");
    // u=1 would force s1=s2=s3=0 and starve the third clause, so u must be
    // false; the unique completion is then s2=1, s1=s3=0.  The helper cluster
    // sits immediately left of u, with the first clause on the emission side
    // and the other two tucked underneath on the opposite side.
    GadgetEmission g;
    g.clauses = {{u, s1, s2}, {u, s2, s3}, {s1, s2, s3}};
    g.clause_side = {+1, -1, -1};
    g.fresh_variables = {s1, s2, s3};
    g.line_order = {s3, s1, s2, u};
    return g;
}

GadgetEmission build_disjunction_block(const std::vector<std::string>& vars,
                                       const FreshNamer& namer) {
    if (vars.size() != 2 && vars.size() != 3)
        raise(errc::internal_check, "disjunction block expects 2 or 3 variables, got " +
                                        std::to_string(vars.size()));
    const std::string& x = vars[0];
    const std::string& y = vars[1];

    const std::string u = namer("u");
    const std::string a = namer("a");
    const std::string b = namer("b");
    const std::string q = namer("q");

    GadgetEmission g;
    // Core: with u false, a and b must mirror !x and !y, so (a, b, q) is
    // satisfiable exactly when x or y holds.  With u true (three-variable
    // form only), x and y are forced false and the tail forces z true.
    g.clauses = {{x, u, a}, {y, u, b}, {a, b, q}};
    g.clause_side = {+1, +1, -1};
    g.fresh_variables = {u, a, b, q};

    if (vars.size() == 2) {
        const auto pin = build_force_false(u, namer);
        g.clauses.insert(g.clauses.end(), pin.clauses.begin(), pin.clauses.end());
        g.clause_side.insert(g.clause_side.end(), pin.clause_side.begin(),
                             pin.clause_side.end());
        g.fresh_variables.insert(g.fresh_variables.end(), pin.fresh_variables.begin(),
                                 pin.fresh_variables.end());
        // Helper cluster for u nests inside the gap left of y's attachment.
        g.line_order = {x, a, q, pin.line_order[0], pin.line_order[1],
                        pin.line_order[2], u, b, y};
        return g;
    }

    const std::string& z = vars[2];
    const std::string c = namer("c");
    const std::string r = namer("r");
    const std::string d = namer("d");
    const auto copy = equality_gadget(
        u, c, [&namer](const std::string& hint) { return namer("uc." + hint); });
    const auto flip = inequality_gadget(
        d, z, [&namer](const std::string& hint) { return namer("dz." + hint); });

    g.clauses.insert(g.clauses.end(), copy.clauses.begin(), copy.clauses.end());
    g.clause_side.insert(g.clause_side.end(), copy.clause_side.begin(),
                         copy.clause_side.end());
    g.clauses.push_back({c, d, r});
    g.clause_side.push_back(+1);
    g.clauses.insert(g.clauses.end(), flip.clauses.begin(), flip.clauses.end());
    g.clause_side.insert(g.clause_side.end(), flip.clause_side.begin(),
                         flip.clause_side.end());

    g.fresh_variables.insert(g.fresh_variables.end(), copy.fresh_variables.begin(),
                             copy.fresh_variables.end());
    g.fresh_variables.push_back(c);
    g.fresh_variables.push_back(r);
    g.fresh_variables.push_back(d);
    g.fresh_variables.insert(g.fresh_variables.end(), flip.fresh_variables.begin(),
                             flip.fresh_variables.end());

    // [x .. y] carries the core; the copy chain, (c, d, r), and the flip
    // cluster fill the gap left of z's attachment.
    g.line_order = {x, a, q, u, b, y};
    g.line_order.insert(g.line_order.end(), copy.line_order.begin() + 1,
                        copy.line_order.end());  // drop the duplicate u, ends with c
    g.line_order.push_back(r);
    g.line_order.push_back(d);
    g.line_order.insert(g.line_order.end(), flip.line_order.begin() + 1,
                        flip.line_order.end());  // drop the duplicate d, ends with z
    return g;
}

namespace {

struct FileLine {
    std::string keyword;
    std::vector<std::string> tokens;
    size_t number = 0;
};

std::vector<FileLine> tokenize_stream(std::istream& in) {
    std::vector<FileLine> lines;
    std::string raw;
    size_t number = 0;
    while (std::getline(in, raw)) {
        ++number;
        const size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream split(raw);
        std::vector<std::string> tokens;
        std::string token;
        while (split >> token) tokens.push_back(std::move(token));
        if (tokens.empty()) continue;
        FileLine line;
        line.keyword = std::move(tokens.front());
        line.tokens.assign(std::make_move_iterator(tokens.begin() + 1),
                           std::make_move_iterator(tokens.end()));
        line.number = number;
        lines.push_back(std::move(line));
    }
    return lines;
}

[[noreturn]] void bad_line(size_t number, const std::string& what) {
    raise(errc::malformed_file, "line " + std::to_string(number) + ": " + what);
}

long parse_integer(const std::string& token, size_t number) {
    size_t used = 0;
    long value = 0;
    try {
        value = std::stol(token, &used);
    } catch (const std::exception&) {
        bad_line(number, "expected an integer, got '" + token + "'");
    }
    if (used != token.size())
        bad_line(number, "expected an integer, got '" + token + "'");
    return value;
}

bool writable_name(const std::string& name) {
    if (name.empty() || name.front() == '~') return false;
    for (const char ch : name)
        if (ch == '#' || ch == '~' || std::isspace(static_cast<unsigned char>(ch)))
            return false;
    return true;
}

struct ParsedInstance {
    RectilinearEmbedding embedding;
    std::vector<std::vector<std::string>> clause_tokens;
    std::vector<size_t> clause_lines;  // source line of each clause, for errors
};

// Shared grammar for both instance kinds: a header with declared counts, the
// shared-line height, one line per variable, clause, clause vertex, and leg.
// Legs may only appear once every clause line has been seen, because their
// per-clause slot count comes from the clause's literal count.
ParsedInstance parse_instance_file(std::istream& in, const std::string& header) {
    const auto lines = tokenize_stream(in);
    ParsedInstance out;

    bool have_header = false;
    bool have_line_y = false;
    long declared_vars = 0;
    long declared_clauses = 0;
    std::vector<char> vertex_seen;
    std::vector<std::vector<char>> leg_seen;

    for (const auto& line : lines) {
        const auto want = [&line](size_t count) {
            if (line.tokens.size() != count)
                bad_line(line.number, "expected " + std::to_string(count) +
                                          " fields after '" + line.keyword + "', got " +
                                          std::to_string(line.tokens.size()));
        };
        if (!have_header) {
            if (line.keyword != header)
                bad_line(line.number, "expected '" + header + "' header first, got '" +
                                          line.keyword + "'");
            want(2);
            declared_vars = parse_integer(line.tokens[0], line.number);
            declared_clauses = parse_integer(line.tokens[1], line.number);
            if (declared_vars < 0 || declared_clauses < 0)
                bad_line(line.number, "negative count in header");
            out.embedding.clause_vertices.resize(declared_clauses);
            out.embedding.legs.resize(declared_clauses);
            vertex_seen.assign(declared_clauses, 0);
            leg_seen.resize(declared_clauses);
            have_header = true;
            continue;
        }
        if (line.keyword == header) bad_line(line.number, "duplicate header");
        if (line.keyword == "line-y") {
            if (have_line_y) bad_line(line.number, "duplicate line-y");
            want(1);
            out.embedding.line_y = parse_integer(line.tokens[0], line.number);
            have_line_y = true;
        } else if (line.keyword == "var") {
            want(3);
            GridPoint p;
            p.x = parse_integer(line.tokens[1], line.number);
            p.y = parse_integer(line.tokens[2], line.number);
            out.embedding.variables.emplace_back(line.tokens[0], p);
        } else if (line.keyword == "clause") {
            if (static_cast<long>(out.clause_tokens.size()) == declared_clauses)
                bad_line(line.number, "more clause lines than the header declares");
            out.clause_tokens.push_back(line.tokens);
            out.clause_lines.push_back(line.number);
        } else if (line.keyword == "vertex") {
            want(3);
            const long c = parse_integer(line.tokens[0], line.number);
            if (c < 0 || c >= declared_clauses)
                bad_line(line.number, "clause index " + std::to_string(c) +
                                          " out of range");
            if (vertex_seen[c]) bad_line(line.number, "duplicate vertex for clause " +
                                                          std::to_string(c));
            vertex_seen[c] = 1;
            out.embedding.clause_vertices[c].x = parse_integer(line.tokens[1], line.number);
            out.embedding.clause_vertices[c].y = parse_integer(line.tokens[2], line.number);
        } else if (line.keyword == "leg") {
            if (static_cast<long>(out.clause_tokens.size()) != declared_clauses)
                bad_line(line.number, "leg line before all clauses are declared");
            if (line.tokens.size() < 2 + 4 || (line.tokens.size() - 2) % 2 != 0)
                bad_line(line.number, "leg needs a clause index, a literal index, "
                                      "and at least two coordinate pairs");
            const long c = parse_integer(line.tokens[0], line.number);
            if (c < 0 || c >= declared_clauses)
                bad_line(line.number, "clause index " + std::to_string(c) +
                                          " out of range");
            const long slots = static_cast<long>(out.clause_tokens[c].size());
            if (leg_seen[c].empty()) {
                leg_seen[c].assign(slots, 0);
                out.embedding.legs[c].resize(slots);
            }
            const long i = parse_integer(line.tokens[1], line.number);
            if (i < 0 || i >= slots)
                bad_line(line.number, "literal index " + std::to_string(i) +
                                          " out of range for clause " + std::to_string(c));
            if (leg_seen[c][i])
                bad_line(line.number, "duplicate leg " + std::to_string(i) +
                                          " for clause " + std::to_string(c));
            leg_seen[c][i] = 1;
            LatticePath path;
            for (size_t t = 2; t + 1 < line.tokens.size(); t += 2) {
                GridPoint p;
                p.x = parse_integer(line.tokens[t], line.number);
                p.y = parse_integer(line.tokens[t + 1], line.number);
                path.pts.push_back(p);
            }
            out.embedding.legs[c][i] = std::move(path);
        } else {
            bad_line(line.number, "unknown keyword '" + line.keyword + "'");
        }
    }

    if (!have_header) raise(errc::malformed_file, "empty instance file");
    if (!have_line_y) raise(errc::malformed_file, "missing line-y");
    if (static_cast<long>(out.embedding.variables.size()) != declared_vars)
        raise(errc::malformed_file,
              "header declares " + std::to_string(declared_vars) + " variables, found " +
                  std::to_string(out.embedding.variables.size()));
    if (static_cast<long>(out.clause_tokens.size()) != declared_clauses)
        raise(errc::malformed_file,
              "header declares " + std::to_string(declared_clauses) + " clauses, found " +
                  std::to_string(out.clause_tokens.size()));
    for (long c = 0; c < declared_clauses; ++c) {
        if (!vertex_seen[c])
            raise(errc::malformed_file, "clause " + std::to_string(c) + " has no vertex");
        if (leg_seen[c].empty())
            raise(errc::malformed_file, "clause " + std::to_string(c) + " has no legs");
        for (size_t i = 0; i < leg_seen[c].size(); ++i)
            if (!leg_seen[c][i])
                raise(errc::malformed_file, "clause " + std::to_string(c) +
                                                " is missing leg " + std::to_string(i));
    }

    std::map<std::string, int> declared;
    for (size_t i = 0; i < out.embedding.variables.size(); ++i) {
        const auto& name = out.embedding.variables[i].first;
        if (!writable_name(name))
            raise(errc::malformed_file, "unusable variable name '" + name + "'");
        if (!declared.emplace(name, static_cast<int>(i)).second)
            raise(errc::malformed_file, "duplicate variable '" + name + "'");
    }
    for (size_t c = 0; c < out.clause_tokens.size(); ++c) {
        for (const auto& token : out.clause_tokens[c]) {
            std::string name = token;
            if (!name.empty() && name.front() == '~') name.erase(0, 1);
            if (name.empty())
                bad_line(out.clause_lines[c], "empty literal");
            if (!declared.count(name))
                bad_line(out.clause_lines[c],
                         "clause references undeclared variable '" + name + "'");
        }
    }
    return out;
}

void check_embedding_shape(const RectilinearEmbedding& e, size_t clause_count,
                           const char* what) {
    if (e.clause_vertices.size() != clause_count || e.legs.size() != clause_count)
        raise(errc::internal_check,
              std::string(what) + ": embedding covers " +
                  std::to_string(e.clause_vertices.size()) + " vertices and " +
                  std::to_string(e.legs.size()) + " leg groups for " +
                  std::to_string(clause_count) + " clauses");
    for (const auto& [name, point] : e.variables) {
        (void)point;
        if (!writable_name(name))
            raise(errc::internal_check,
                  std::string(what) + ": unusable variable name '" + name + "'");
    }
}

void write_embedding_tail(std::ostream& out, const RectilinearEmbedding& e) {
    for (size_t c = 0; c < e.clause_vertices.size(); ++c)
        out << "vertex " << c << ' ' << e.clause_vertices[c].x << ' '
            << e.clause_vertices[c].y << '\n';
    for (size_t c = 0; c < e.legs.size(); ++c) {
        for (size_t i = 0; i < e.legs[c].size(); ++i) {
            out << "leg " << c << ' ' << i;
            for (const auto& p : e.legs[c][i].pts) out << ' ' << p.x << ' ' << p.y;
            out << '\n';
        }
    }
}

}  // namespace

Planar3SatInstance read_planar_3sat(std::istream& in) {
    auto parsed = parse_instance_file(in, "planar-3sat");
    Planar3SatInstance inst;
    inst.embedding = std::move(parsed.embedding);
    inst.clauses.reserve(parsed.clause_tokens.size());
    for (size_t c = 0; c < parsed.clause_tokens.size(); ++c) {
        const auto& tokens = parsed.clause_tokens[c];
        if (tokens.empty() || tokens.size() > 3)
            bad_line(parsed.clause_lines[c], "clause needs 1 to 3 literals, got " +
                                                 std::to_string(tokens.size()));
        std::vector<Literal> clause;
        clause.reserve(tokens.size());
        for (const auto& token : tokens) {
            Literal lit;
            lit.negated = token.front() == '~';
            lit.var = lit.negated ? token.substr(1) : token;
            clause.push_back(std::move(lit));
        }
        inst.clauses.push_back(std::move(clause));
    }
    return inst;
}

void write_planar_3sat(std::ostream& out, const Planar3SatInstance& inst) {
    check_embedding_shape(inst.embedding, inst.clauses.size(), "write_planar_3sat");
    for (size_t c = 0; c < inst.clauses.size(); ++c) {
        if (inst.clauses[c].empty() || inst.clauses[c].size() > 3 ||
            inst.embedding.legs[c].size() != inst.clauses[c].size())
            raise(errc::internal_check,
                  "write_planar_3sat: clause " + std::to_string(c) +
                      " has " + std::to_string(inst.clauses[c].size()) +
                      " literals and " + std::to_string(inst.embedding.legs[c].size()) +
                      " legs");
    }
    out << "planar-3sat " << inst.embedding.variables.size() << ' '
        << inst.clauses.size() << '\n';
    out << "line-y " << inst.embedding.line_y << '\n';
    for (const auto& [name, p] : inst.embedding.variables)
        out << "var " << name << ' ' << p.x << ' ' << p.y << '\n';
    for (const auto& clause : inst.clauses) {
        out << "clause";
        for (const auto& lit : clause)
            out << ' ' << (lit.negated ? "~" : "") << lit.var;
        out << '\n';
    }
    write_embedding_tail(out, inst.embedding);
}

PositiveInstance read_one_in_three(std::istream& in) {
    auto parsed = parse_instance_file(in, "one-in-three");
    PositiveInstance inst;
    inst.embedding = std::move(parsed.embedding);
    inst.formula.variables.reserve(inst.embedding.variables.size());
    for (const auto& [name, point] : inst.embedding.variables) {
        (void)point;
        inst.formula.variables.push_back(name);
    }
    inst.formula.clauses.reserve(parsed.clause_tokens.size());
    for (size_t c = 0; c < parsed.clause_tokens.size(); ++c) {
        const auto& tokens = parsed.clause_tokens[c];
        if (tokens.size() != 3)
            bad_line(parsed.clause_lines[c], "clause needs exactly 3 variables, got " +
                                                 std::to_string(tokens.size()));
        for (const auto& token : tokens)
            if (token.front() == '~')
                bad_line(parsed.clause_lines[c],
                         "negated literal '" + token + "' in a positive instance");
        inst.formula.clauses.push_back({tokens[0], tokens[1], tokens[2]});
    }
    return inst;
}

void write_one_in_three(std::ostream& out, const PositiveInstance& inst) {
    check_embedding_shape(inst.embedding, inst.formula.clauses.size(),
                          "write_one_in_three");
    if (inst.formula.variables.size() != inst.embedding.variables.size())
        raise(errc::internal_check,
              "write_one_in_three: formula and embedding disagree on variables");
    for (size_t i = 0; i < inst.formula.variables.size(); ++i)
        if (inst.formula.variables[i] != inst.embedding.variables[i].first)
            raise(errc::internal_check,
                  "write_one_in_three: formula and embedding disagree on variable " +
                      std::to_string(i));
    for (size_t c = 0; c < inst.formula.clauses.size(); ++c)
        if (inst.embedding.legs[c].size() != 3)
            raise(errc::internal_check, "write_one_in_three: clause " +
                                            std::to_string(c) + " needs 3 legs");
    out << "one-in-three " << inst.formula.variables.size() << ' '
        << inst.formula.clauses.size() << '\n';
    out << "line-y " << inst.embedding.line_y << '\n';
    for (const auto& [name, p] : inst.embedding.variables)
        out << "var " << name << ' ' << p.x << ' ' << p.y << '\n';
    for (const auto& clause : inst.formula.clauses)
        out << "clause " << clause[0] << ' ' << clause[1] << ' ' << clause[2] << '\n';
    write_embedding_tail(out, inst.embedding);
}

}  // namespace mwt
