#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "mwt/sat.hpp"

using namespace mwt;

namespace {

// ---------------------------------------------------------------------------
// Test-local reference machinery.  These helpers re-derive results with plain
// loops and share no code with the library oracles.
// ---------------------------------------------------------------------------

bool exactly_one_holds(const Formula1in3& f,
                       const std::map<std::string, bool>& values) {
    for (const auto& clause : f.clauses) {
        int hits = 0;
        for (const auto& name : clause) hits += values.at(name) ? 1 : 0;
        if (hits != 1) return false;
    }
    return true;
}

bool assignment_satisfies(const Formula1in3& f, const Assignment& a) {
    std::map<std::string, bool> values;
    for (const auto& [name, value] : a) values[name] = value;
    for (const auto& name : f.variables)
        if (!values.count(name)) return false;
    return exactly_one_holds(f, values);
}

// Enumerates every assignment of `f` and buckets the satisfying ones by the
// values of the watched variables (bit w of the key is watch[w]).
std::map<unsigned, std::uint64_t> bucket_models(
    const Formula1in3& f, const std::vector<std::string>& watch) {
    const size_t n = f.variables.size();
    REQUIRE(n <= 24);
    std::map<std::string, int> index;
    for (size_t i = 0; i < n; ++i) index[f.variables[i]] = static_cast<int>(i);
    std::vector<std::array<int, 3>> clauses;
    for (const auto& clause : f.clauses)
        clauses.push_back({index.at(clause[0]), index.at(clause[1]),
                           index.at(clause[2])});
    std::vector<int> watched;
    for (const auto& name : watch) watched.push_back(index.at(name));

    std::map<unsigned, std::uint64_t> buckets;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        bool ok = true;
        for (const auto& cl : clauses) {
            const int hits = static_cast<int>((mask >> cl[0]) & 1) +
                             static_cast<int>((mask >> cl[1]) & 1) +
                             static_cast<int>((mask >> cl[2]) & 1);
            if (hits != 1) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        unsigned key = 0;
        for (size_t w = 0; w < watched.size(); ++w)
            key |= static_cast<unsigned>((mask >> watched[w]) & 1) << w;
        ++buckets[key];
    }
    return buckets;
}

Formula1in3 formula_from(const std::vector<std::string>& attached,
                         const GadgetEmission& g) {
    Formula1in3 f;
    f.variables = attached;
    f.variables.insert(f.variables.end(), g.fresh_variables.begin(),
                       g.fresh_variables.end());
    f.clauses = g.clauses;
    return f;
}

bool cnf_satisfied(const std::vector<std::vector<Literal>>& clauses,
                   const std::map<std::string, bool>& values) {
    for (const auto& clause : clauses) {
        bool sat = false;
        for (const auto& lit : clause)
            if (values.at(lit.var) != lit.negated) {
                sat = true;
                break;
            }
        if (!sat) return false;
    }
    return true;
}

// Reference CNF satisfiability by enumeration over the mentioned variables.
bool cnf_brute_reference(const std::vector<std::vector<Literal>>& clauses) {
    std::set<std::string> names;
    for (const auto& clause : clauses)
        for (const auto& lit : clause) names.insert(lit.var);
    std::vector<std::string> order(names.begin(), names.end());
    REQUIRE(order.size() <= 20);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << order.size());
         ++mask) {
        std::map<std::string, bool> values;
        for (size_t i = 0; i < order.size(); ++i)
            values[order[i]] = ((mask >> i) & 1) != 0;
        if (cnf_satisfied(clauses, values)) return true;
    }
    return clauses.empty();
}

// The worked example used across several tests: three ternary clauses over
// five variables, drawn with two combs above the line and one below.
Planar3SatInstance comb_example() {
    Planar3SatInstance inst;
    inst.clauses = {
        {{"x1", false}, {"x3", true}, {"x5", false}},
        {{"x1", true}, {"x2", false}, {"x3", false}},
        {{"x2", false}, {"x4", false}, {"x5", true}},
    };
    auto& e = inst.embedding;
    e.line_y = 0;
    for (int i = 0; i < 5; ++i)
        e.variables.emplace_back("x" + std::to_string(i + 1),
                                 GridPoint{8 * i, 0});
    e.clause_vertices = {{16, 2}, {8, 1}, {24, -1}};
    const auto path = [](std::vector<GridPoint> pts) {
        LatticePath p;
        p.pts = std::move(pts);
        return p;
    };
    e.legs = {
        {path({{16, 2}, {0, 2}, {0, 0}}), path({{16, 2}, {16, 0}}),
         path({{16, 2}, {32, 2}, {32, 0}})},
        {path({{8, 1}, {2, 1}, {2, 0}, {0, 0}}), path({{8, 1}, {8, 0}}),
         path({{8, 1}, {14, 1}, {14, 0}, {16, 0}})},
        {path({{24, -1}, {8, -1}, {8, 0}}), path({{24, -1}, {24, 0}}),
         path({{24, -1}, {32, -1}, {32, 0}})},
    };
    return inst;
}

errc thrown_code(const std::function<void()>& fn) {
    try {
        fn();
    } catch (const error& e) {
        return e.code();
    }
    FAIL("expected an error");
    return errc::internal_check;
}

}  // namespace

// ---------------------------------------------------------------------------
// Brute-force oracle
// ---------------------------------------------------------------------------

TEST_CASE("single clause enumeration: count, witness, order") {
    Formula1in3 f;
    f.variables = {"a", "b", "c"};
    f.clauses = {{"a", "b", "c"}};
    const auto res = brute_force_1in3(f);
    CHECK(res.satisfiable);
    CHECK(res.model_count == 3);
    const Assignment expected = {{"a", true}, {"b", false}, {"c", false}};
    CHECK(res.witness == expected);
    CHECK(assignment_satisfies(f, res.witness));
}

TEST_CASE("unsatisfiable pair of clauses") {
    Formula1in3 f;
    f.variables = {"a", "b", "c", "d"};
    // Both clauses share a and b; the second forces the hit into {a, b},
    // the first then forbids c and d... choose clauses with no common model.
    f.clauses = {{"a", "b", "c"}, {"a", "b", "d"}, {"c", "d", "a"}};
    const auto res = brute_force_1in3(f);
    const auto reference = bucket_models(f, {});
    CHECK(res.satisfiable == !reference.empty());
    std::uint64_t total = 0;
    for (const auto& [key, count] : reference) total += count;
    CHECK(res.model_count == total);
}

TEST_CASE("oracle rejects formulas beyond the enumeration cap") {
    Formula1in3 f;
    for (int i = 0; i < 25; ++i) f.variables.push_back("v" + std::to_string(i));
    f.clauses = {{"v0", "v1", "v2"}};
    CHECK(thrown_code([&] { brute_force_1in3(f); }) == errc::too_large);
}

TEST_CASE("parallel enumeration matches sequential, witness included") {
    Formula1in3 f;
    for (int i = 0; i < 15; ++i) f.variables.push_back("v" + std::to_string(i));
    f.clauses = {{"v0", "v1", "v2"},   {"v2", "v3", "v4"},
                 {"v4", "v5", "v6"},   {"v6", "v7", "v8"},
                 {"v8", "v9", "v10"},  {"v10", "v11", "v12"},
                 {"v12", "v13", "v14"}};
    const auto seq = brute_force_1in3(f, 1);
    const auto par = brute_force_1in3(f, 8);
    CHECK(seq.satisfiable == par.satisfiable);
    CHECK(seq.model_count == par.model_count);
    CHECK(seq.witness == par.witness);
    REQUIRE(seq.satisfiable);
    CHECK(assignment_satisfies(f, seq.witness));
}

TEST_CASE("duplicate names in a triple count with multiplicity") {
    // (x, a, x) can only be satisfied by a alone: x true would count twice.
    Formula1in3 f;
    f.variables = {"x", "a"};
    f.clauses = {{"x", "a", "x"}};
    const auto res = brute_force_1in3(f);
    CHECK(res.satisfiable);
    CHECK(res.model_count == 1);
    const Assignment expected = {{"x", false}, {"a", true}};
    CHECK(res.witness == expected);
}

// ---------------------------------------------------------------------------
// Backtracking solver
// ---------------------------------------------------------------------------

TEST_CASE("solver agrees with enumeration on random small formulas") {
    std::mt19937_64 rng(404);
    for (int round = 0; round < 300; ++round) {
        const int n = 1 + static_cast<int>(rng() % 8);
        Formula1in3 f;
        for (int i = 0; i < n; ++i) f.variables.push_back("v" + std::to_string(i));
        const int m = 1 + static_cast<int>(rng() % 6);
        for (int c = 0; c < m; ++c) {
            std::array<std::string, 3> clause;
            for (auto& slot : clause) slot = f.variables[rng() % n];
            f.clauses.push_back(clause);
        }
        const auto brute = brute_force_1in3(f);
        const auto solved = solve_1in3(f);
        CHECK(brute.satisfiable == solved.satisfiable);
        if (solved.satisfiable) CHECK(assignment_satisfies(f, solved.witness));
    }
}

TEST_CASE("solver honours assumptions") {
    Formula1in3 f;
    f.variables = {"a", "b", "c"};
    f.clauses = {{"a", "b", "c"}};
    CHECK(solve_1in3(f, {{"a", true}}).satisfiable);
    CHECK_FALSE(solve_1in3(f, {{"a", true}, {"b", true}}).satisfiable);
    const auto pinned = solve_1in3(f, {{"a", false}, {"b", false}});
    REQUIRE(pinned.satisfiable);
    CHECK(assignment_satisfies(f, pinned.witness));
    std::map<std::string, bool> values(pinned.witness.begin(),
                                       pinned.witness.end());
    CHECK(values.at("c"));
    CHECK_THROWS_AS((void)solve_1in3(f, {{"missing", true}}), error);
}

TEST_CASE("solver handles an empty formula") {
    Formula1in3 f;
    f.variables = {"a"};
    const auto res = solve_1in3(f);
    CHECK(res.satisfiable);
    CHECK(res.witness.size() == 1);
}

// ---------------------------------------------------------------------------
// CNF reference oracle
// ---------------------------------------------------------------------------

TEST_CASE("plain CNF enumeration on hand-checked inputs") {
    using C = std::vector<Literal>;
    CHECK(brute_force_cnf({}));
    CHECK(brute_force_cnf({C{{"x", false}}}));
    CHECK_FALSE(brute_force_cnf({C{{"x", false}}, C{{"x", true}}}));
    CHECK(brute_force_cnf({C{{"x", false}, {"y", false}},
                           C{{"x", true}, {"y", false}},
                           C{{"x", false}, {"y", true}}}));
    CHECK_FALSE(brute_force_cnf({C{{"x", false}, {"y", false}},
                                 C{{"x", true}, {"y", false}},
                                 C{{"x", false}, {"y", true}},
                                 C{{"x", true}, {"y", true}}}));
}

// ---------------------------------------------------------------------------
// Gadgets
// ---------------------------------------------------------------------------

TEST_CASE("namer prefixes hints") {
    const auto namer = prefixed_namer("left.chunk");
    CHECK(namer("a") == "left.chunk.a");
    CHECK(namer("m") == "left.chunk.m");
}

TEST_CASE("inequality gadget: shape and projection") {
    const auto g = build_gadget(GadgetKind::inequality, "x", "y",
                                prefixed_namer("g"));
    CHECK(g.clauses.size() == 4);
    CHECK(g.fresh_variables.size() == 4);
    CHECK(g.clause_side.size() == g.clauses.size());
    REQUIRE(g.line_order.size() == 6);
    CHECK(g.line_order.front() == "x");
    CHECK(g.line_order.back() == "y");
    for (const auto& name : g.fresh_variables)
        CHECK(name.compare(0, 2, "g.") == 0);

    const auto f = formula_from({"x", "y"}, g);
    const auto buckets = bucket_models(f, {"x", "y"});
    CHECK(buckets.count(0b01) == 1);  // x true, y false
    CHECK(buckets.count(0b10) == 1);  // x false, y true
    CHECK(buckets.count(0b00) == 0);
    CHECK(buckets.count(0b11) == 0);
    // The helper variables have exactly one completion per satisfying pair.
    CHECK(buckets.at(0b01) == 1);
    CHECK(buckets.at(0b10) == 1);

    // The independent solver sees the same projection.
    for (const bool vx : {false, true})
        for (const bool vy : {false, true}) {
            const bool expect = vx != vy;
            CHECK(solve_1in3(f, {{"x", vx}, {"y", vy}}).satisfiable == expect);
        }
}

TEST_CASE("equality gadget: shape and projection") {
    const auto g = build_gadget(GadgetKind::equality, "x", "y",
                                prefixed_namer("g"));
    CHECK(g.clauses.size() == 8);
    CHECK(g.fresh_variables.size() == 9);
    CHECK(g.clause_side.size() == 8);
    REQUIRE(g.line_order.size() == 11);
    CHECK(g.line_order.front() == "x");
    CHECK(g.line_order.back() == "y");

    const auto f = formula_from({"x", "y"}, g);
    const auto buckets = bucket_models(f, {"x", "y"});
    CHECK(buckets.count(0b00) == 1);
    CHECK(buckets.count(0b11) == 1);
    CHECK(buckets.count(0b01) == 0);
    CHECK(buckets.count(0b10) == 0);
    CHECK(buckets.at(0b00) == 1);
    CHECK(buckets.at(0b11) == 1);
}

TEST_CASE("inequality of a variable with itself is unsatisfiable") {
    const auto g = build_gadget(GadgetKind::inequality, "x", "x",
                                prefixed_namer("g"));
    const auto f = formula_from({"x"}, g);
    const auto res = brute_force_1in3(f);
    CHECK_FALSE(res.satisfiable);
    CHECK(res.model_count == 0);
    CHECK_FALSE(solve_1in3(f).satisfiable);
}

TEST_CASE("force-false gadget pins its variable") {
    const auto g = build_force_false("u", prefixed_namer("p"));
    CHECK(g.clauses.size() == 3);
    CHECK(g.fresh_variables.size() == 3);
    const auto f = formula_from({"u"}, g);
    const auto buckets = bucket_models(f, {"u"});
    CHECK(buckets.count(1) == 0);
    REQUIRE(buckets.count(0) == 1);
    CHECK(buckets.at(0) == 1);  // unique completion of the helpers
}

TEST_CASE("three-way disjunction block projects onto x or y or z") {
    const auto g = build_disjunction_block({"x", "y", "z"},
                                           prefixed_namer("k0"));
    CHECK(g.clauses.size() == 16);
    CHECK(g.fresh_variables.size() == 20);
    CHECK(g.line_order.front() == "x");
    CHECK(g.line_order.back() == "z");

    const auto f = formula_from({"x", "y", "z"}, g);
    REQUIRE(f.variables.size() == 23);
    const auto buckets = bucket_models(f, {"x", "y", "z"});
    std::uint64_t total = 0;
    for (unsigned combo = 0; combo < 8; ++combo) {
        const bool expect = combo != 0;
        CHECK((buckets.count(combo) == 1) == expect);
        if (buckets.count(combo)) total += buckets.at(combo);
    }
    // Same totals through the library's own enumeration.
    const auto res = brute_force_1in3(f);
    CHECK(res.satisfiable);
    CHECK(res.model_count == total);

    for (unsigned combo = 0; combo < 8; ++combo) {
        const Assignment pin = {{"x", (combo & 1) != 0},
                                {"y", (combo & 2) != 0},
                                {"z", (combo & 4) != 0}};
        CHECK(solve_1in3(f, pin).satisfiable == (combo != 0));
    }
}

TEST_CASE("two-way disjunction block projects onto x or y") {
    const auto g = build_disjunction_block({"x", "y"}, prefixed_namer("k1"));
    CHECK(g.clauses.size() == 6);
    CHECK(g.fresh_variables.size() == 7);
    const auto f = formula_from({"x", "y"}, g);
    const auto buckets = bucket_models(f, {"x", "y"});
    for (unsigned combo = 0; combo < 4; ++combo)
        CHECK((buckets.count(combo) == 1) == (combo != 0));
}

// ---------------------------------------------------------------------------
// Embedding validation
// ---------------------------------------------------------------------------

TEST_CASE("the worked example embedding is valid") {
    const auto inst = comb_example();
    const auto report = validate_embedding(inst.embedding, &inst.clauses);
    CHECK(report.ok());
    CHECK(report.summary() == "valid");
}

TEST_CASE("legs crossing at a shared interior point are rejected") {
    auto inst = comb_example();
    // Reroute clause 1's leg to x2 sideways through (14, 1), which clause 1's
    // leg to x3 already occupies.
    inst.embedding.legs[1][1].pts = {{8, 1}, {8, 2}, {14, 2}, {14, 1},
                                     {14, 0}, {8, 0}};
    const auto report = validate_embedding(inst.embedding, &inst.clauses);
    CHECK_FALSE(report.ok());
    bool mentions_cross = false;
    for (const auto& issue : report.issues)
        if (issue.find("crosses") != std::string::npos ||
            issue.find("revisits") != std::string::npos)
            mentions_cross = true;
    CHECK(mentions_cross);
}

TEST_CASE("diagonal segments are rejected") {
    auto inst = comb_example();
    inst.embedding.legs[0][0].pts = {{16, 2}, {0, 0}};
    const auto report = validate_embedding(inst.embedding, &inst.clauses);
    CHECK_FALSE(report.ok());
    bool mentions_diagonal = false;
    for (const auto& issue : report.issues)
        if (issue.find("diagonal") != std::string::npos) mentions_diagonal = true;
    CHECK(mentions_diagonal);
}

TEST_CASE("assorted invalid embeddings are reported") {
    // Clause vertex on the line.
    {
        auto inst = comb_example();
        inst.embedding.clause_vertices[1] = {8, 0};
        CHECK_FALSE(validate_embedding(inst.embedding).ok());
    }
    // Variable moved off the line.
    {
        auto inst = comb_example();
        inst.embedding.variables[2].second = {16, 1};
        CHECK_FALSE(validate_embedding(inst.embedding).ok());
    }
    // Two variables on the same point.
    {
        auto inst = comb_example();
        inst.embedding.variables[1].second = inst.embedding.variables[0].second;
        CHECK_FALSE(validate_embedding(inst.embedding).ok());
    }
    // Leg ends nowhere.
    {
        auto inst = comb_example();
        inst.embedding.legs[0][1].pts = {{16, 2}, {16, 1}};
        CHECK_FALSE(validate_embedding(inst.embedding).ok());
    }
    // Leg ends at the wrong literal's variable.
    {
        auto inst = comb_example();
        std::swap(inst.clauses[0][0], inst.clauses[0][1]);
        CHECK_FALSE(validate_embedding(inst.embedding, &inst.clauses).ok());
        // Without the clause list the drawing itself is still fine.
        CHECK(validate_embedding(inst.embedding).ok());
    }
    // Leg runs over a variable point mid-flight.
    {
        auto inst = comb_example();
        inst.embedding.legs[2][0].pts = {{24, -1}, {24, 0}, {8, 0}};
        CHECK_FALSE(validate_embedding(inst.embedding, &inst.clauses).ok());
    }
    // Leg count does not match the literal count.
    {
        auto inst = comb_example();
        inst.embedding.legs[0].pop_back();
        CHECK_FALSE(validate_embedding(inst.embedding, &inst.clauses).ok());
    }
}

// ---------------------------------------------------------------------------
// Transformation
// ---------------------------------------------------------------------------

TEST_CASE("worked example transforms into a satisfiable positive instance") {
    const auto inst = comb_example();
    REQUIRE(cnf_brute_reference(inst.clauses));
    REQUIRE(brute_force_cnf(inst.clauses));

    const auto out = transform_instance(inst);
    const auto view = literal_view(out.formula);
    CHECK(validate_embedding(out.embedding, &view).ok());

    const auto solved = solve_1in3(out.formula);
    CHECK(solved.satisfiable);
    CHECK(assignment_satisfies(out.formula, solved.witness));

    // Every emitted variable descends from a source variable or a clause tag.
    const std::set<std::string> sources = {"x1", "x2", "x3", "x4", "x5"};
    for (const auto& name : out.formula.variables) {
        const auto dot = name.find('.');
        REQUIRE(dot != std::string::npos);
        const std::string root = name.substr(0, dot);
        CHECK((sources.count(root) == 1 || root[0] == 'k'));
    }
    // All clause names refer to laid-out variables.
    const std::set<std::string> declared(out.formula.variables.begin(),
                                         out.formula.variables.end());
    for (const auto& clause : out.formula.clauses)
        for (const auto& name : clause) CHECK(declared.count(name) == 1);
}

TEST_CASE("single positive unit clause becomes a satisfiable instance") {
    Planar3SatInstance inst;
    inst.clauses = {{{"x", false}}};
    inst.embedding.line_y = 0;
    inst.embedding.variables = {{"x", {0, 0}}};
    inst.embedding.clause_vertices = {{0, 1}};
    inst.embedding.legs = {{LatticePath{{{0, 1}, {0, 0}}}}};
    REQUIRE(validate_embedding(inst.embedding, &inst.clauses).ok());

    const auto out = transform_instance(inst);
    const auto view = literal_view(out.formula);
    CHECK(validate_embedding(out.embedding, &view).ok());
    const auto res = brute_force_1in3(out.formula);
    CHECK(res.satisfiable);
    CHECK(solve_1in3(out.formula).satisfiable);
}

TEST_CASE("contradictory unit clauses become an unsatisfiable instance") {
    Planar3SatInstance inst;
    inst.clauses = {{{"x", false}}, {{"x", true}}};
    inst.embedding.line_y = 0;
    inst.embedding.variables = {{"x", {0, 0}}};
    inst.embedding.clause_vertices = {{0, 1}, {0, -1}};
    inst.embedding.legs = {{LatticePath{{{0, 1}, {0, 0}}}},
                           {LatticePath{{{0, -1}, {0, 0}}}}};
    REQUIRE(validate_embedding(inst.embedding, &inst.clauses).ok());
    REQUIRE_FALSE(brute_force_cnf(inst.clauses));

    const auto out = transform_instance(inst);
    const auto view = literal_view(out.formula);
    CHECK(validate_embedding(out.embedding, &view).ok());
    const auto res = brute_force_1in3(out.formula);
    CHECK_FALSE(res.satisfiable);
    CHECK(res.model_count == 0);
    CHECK_FALSE(solve_1in3(out.formula).satisfiable);
}

TEST_CASE("transformation rejects bad inputs") {
    // Broken geometry.
    {
        auto inst = comb_example();
        inst.embedding.legs[0][0].pts = {{16, 2}, {0, 0}};
        CHECK(thrown_code([&] { transform_instance(inst); }) ==
              errc::invalid_embedding);
    }
    // A clause that repeats a variable, drawn legally.
    {
        Planar3SatInstance inst;
        inst.clauses = {{{"x", false}, {"x", true}}};
        inst.embedding.line_y = 0;
        inst.embedding.variables = {{"x", {0, 0}}};
        inst.embedding.clause_vertices = {{2, 1}};
        inst.embedding.legs = {
            {LatticePath{{{2, 1}, {0, 1}, {0, 0}}},
             LatticePath{{{2, 1}, {4, 1}, {4, 0}, {0, 0}}}}};
        REQUIRE(validate_embedding(inst.embedding, &inst.clauses).ok());
        CHECK(thrown_code([&] { transform_instance(inst); }) ==
              errc::invalid_embedding);
    }
    // A leg that wanders across the line.
    {
        Planar3SatInstance inst;
        inst.clauses = {{{"x", false}, {"y", false}}};
        inst.embedding.line_y = 0;
        inst.embedding.variables = {{"x", {0, 0}}, {"y", {8, 0}}};
        inst.embedding.clause_vertices = {{4, 2}};
        inst.embedding.legs = {
            {LatticePath{{{4, 2}, {4, -1}, {0, -1}, {0, 0}}},
             LatticePath{{{4, 2}, {8, 2}, {8, 0}}}}};
        REQUIRE(validate_embedding(inst.embedding, &inst.clauses).ok());
        CHECK(thrown_code([&] { transform_instance(inst); }) ==
              errc::invalid_embedding);
    }
}

TEST_CASE("random instances stay equisatisfiable through the transformation") {
    std::mt19937_64 rng(20260823);
    int satisfiable_seen = 0;
    int unsatisfiable_seen = 0;
    for (int round = 0; round < 200; ++round) {
        const auto inst = random_planar_3sat(rng, 6, 5);
        REQUIRE(validate_embedding(inst.embedding, &inst.clauses).ok());

        const bool expected = brute_force_cnf(inst.clauses);
        CHECK(expected == cnf_brute_reference(inst.clauses));

        const auto out = transform_instance(inst);
        const auto view = literal_view(out.formula);
        const auto report = validate_embedding(out.embedding, &view);
        REQUIRE_MESSAGE(report.ok(), report.summary());

        const auto solved = solve_1in3(out.formula);
        CHECK_MESSAGE(solved.satisfiable == expected,
                      "round ", round, ": CNF ", expected ? "sat" : "unsat",
                      " but transform ", solved.satisfiable ? "sat" : "unsat");
        if (solved.satisfiable)
            CHECK(assignment_satisfies(out.formula, solved.witness));
        if (out.formula.variables.size() <= 24)
            CHECK(brute_force_1in3(out.formula).satisfiable == expected);

        (expected ? satisfiable_seen : unsatisfiable_seen) += 1;
    }
    // The sample is only useful if it exercises both outcomes.
    CHECK(satisfiable_seen > 10);
    CHECK(unsatisfiable_seen > 10);
}

// ---------------------------------------------------------------------------
// File format
// ---------------------------------------------------------------------------

TEST_CASE("CNF instances round-trip through the file format") {
    const auto inst = comb_example();
    std::stringstream buffer;
    write_planar_3sat(buffer, inst);
    const auto back = read_planar_3sat(buffer);
    CHECK(back == inst);
}

TEST_CASE("positive instances round-trip through the file format") {
    const auto out = transform_instance(comb_example());
    std::stringstream buffer;
    write_one_in_three(buffer, out);
    const auto back = read_one_in_three(buffer);
    CHECK(back == out);
}

TEST_CASE("random instances round-trip through the file format") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 25; ++round) {
        const auto inst = random_planar_3sat(rng, 6, 5);
        std::stringstream buffer;
        write_planar_3sat(buffer, inst);
        const auto back = read_planar_3sat(buffer);
        CHECK(back == inst);

        const auto out = transform_instance(inst);
        std::stringstream positive;
        write_one_in_three(positive, out);
        const auto positive_back = read_one_in_three(positive);
        CHECK(positive_back == out);
    }
}

TEST_CASE("parser accepts comments and blank lines") {
    std::stringstream in(
        "# drawn by hand\n"
        "planar-3sat 2 1\n"
        "\n"
        "line-y 0   # the variables' line\n"
        "var a 0 0\n"
        "var b 8 0\n"
        "clause a ~b\n"
        "vertex 0 4 2\n"
        "leg 0 0 4 2 0 2 0 0\n"
        "leg 0 1 4 2 8 2 8 0\n");
    const auto inst = read_planar_3sat(in);
    CHECK(inst.clauses.size() == 1);
    REQUIRE(inst.clauses[0].size() == 2);
    CHECK(inst.clauses[0][0] == Literal{"a", false});
    CHECK(inst.clauses[0][1] == Literal{"b", true});
    CHECK(inst.embedding.variables.size() == 2);
    CHECK(validate_embedding(inst.embedding, &inst.clauses).ok());
}

TEST_CASE("malformed files are rejected with a diagnostic") {
    const auto rejects = [](const std::string& text) {
        std::stringstream in(text);
        return thrown_code([&] { read_planar_3sat(in); }) == errc::malformed_file;
    };
    // Body before the header.
    CHECK(rejects("var a 0 0\nplanar-3sat 1 0\nline-y 0\n"));
    // Wrong header keyword.
    CHECK(rejects("one-in-three 1 0\nline-y 0\nvar a 0 0\n"));
    // Duplicate header.
    CHECK(rejects("planar-3sat 1 0\nplanar-3sat 1 0\nline-y 0\nvar a 0 0\n"));
    // Missing line-y.
    CHECK(rejects("planar-3sat 1 0\nvar a 0 0\n"));
    // Unreadable number.
    CHECK(rejects("planar-3sat 1 0\nline-y zero\nvar a 0 0\n"));
    // Undeclared variable in a clause.
    CHECK(rejects("planar-3sat 1 1\nline-y 0\nvar a 0 0\nclause b\n"
                  "vertex 0 0 1\nleg 0 0 0 1 0 0\n"));
    // Legs before all clauses are declared.
    CHECK(rejects("planar-3sat 1 2\nline-y 0\nvar a 0 0\nclause a\n"
                  "leg 0 0 0 1 0 0\nclause ~a\nvertex 0 0 1\nvertex 1 0 -1\n"
                  "leg 1 0 0 -1 0 0\n"));
    // Odd number of leg coordinates.
    CHECK(rejects("planar-3sat 1 1\nline-y 0\nvar a 0 0\nclause a\n"
                  "vertex 0 0 1\nleg 0 0 0 1 0\n"));
    // Missing leg.
    CHECK(rejects("planar-3sat 1 1\nline-y 0\nvar a 0 0\nclause a\n"
                  "vertex 0 0 1\n"));
    // Declared counts disagree with the body.
    CHECK(rejects("planar-3sat 2 1\nline-y 0\nvar a 0 0\nclause a\n"
                  "vertex 0 0 1\nleg 0 0 0 1 0 0\n"));
    // Unknown keyword.
    CHECK(rejects("planar-3sat 1 0\nline-y 0\nvar a 0 0\nwidget 3\n"));
    // Four literals in one clause.
    CHECK(rejects("planar-3sat 4 1\nline-y 0\nvar a 0 0\nvar b 8 0\n"
                  "var c 16 0\nvar d 24 0\nclause a b c d\n"));

    const auto rejects_positive = [](const std::string& text) {
        std::stringstream in(text);
        return thrown_code([&] { read_one_in_three(in); }) ==
               errc::malformed_file;
    };
    // Negation marker is not part of the positive format.
    CHECK(rejects_positive("one-in-three 3 1\nline-y 0\nvar a 0 0\nvar b 8 0\n"
                           "var c 16 0\nclause a ~b c\nvertex 0 8 1\n"
                           "leg 0 0 8 1 0 1 0 0\nleg 0 1 8 1 8 0\n"
                           "leg 0 2 8 1 16 1 16 0\n"));
    // Triples need exactly three names.
    CHECK(rejects_positive("one-in-three 2 1\nline-y 0\nvar a 0 0\nvar b 8 0\n"
                           "clause a b\nvertex 0 0 1\nleg 0 0 0 1 0 0\n"
                           "leg 0 1 0 1 8 1 8 0\n"));
    // CNF header on the positive reader.
    CHECK(rejects_positive("planar-3sat 1 0\nline-y 0\nvar a 0 0\n"));
}

// ---------------------------------------------------------------------------
// Random generation
// ---------------------------------------------------------------------------

TEST_CASE("generated instances are deterministic per seed and valid") {
    std::mt19937_64 a(99), b(99), c(100);
    const auto first = random_planar_3sat(a, 6, 5);
    const auto second = random_planar_3sat(b, 6, 5);
    CHECK(first == second);
    bool saw_different = false;
    for (int i = 0; i < 5 && !saw_different; ++i)
        saw_different = !(random_planar_3sat(c, 6, 5) == first);
    CHECK(saw_different);

    std::mt19937_64 rng(5);
    for (int round = 0; round < 50; ++round) {
        const auto inst = random_planar_3sat(rng, 6, 5);
        CHECK(!inst.clauses.empty());
        for (const auto& clause : inst.clauses) {
            CHECK(clause.size() >= 1);
            CHECK(clause.size() <= 3);
        }
        CHECK(validate_embedding(inst.embedding, &inst.clauses).ok());
    }
}
