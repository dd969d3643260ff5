#include "mwt/polygon_mwt.hpp"

#include <algorithm>
#include <functional>
#include <optional>

namespace mwt {

namespace {

bool boundary_pair(size_t n, int a, int b) {
    return b == a + 1 || (a == 0 && static_cast<size_t>(b) == n - 1);
}

// Chord-length enclosures for all vertex pairs; boundary edges and the
// diagonal are left empty because they never contribute to internal cost.
class ChordTable {
public:
    ChordTable(const Polygon& poly, unsigned scale)
        : n_(poly.size()), cells_(n_ * n_) {
        for (size_t a = 0; a < n_; ++a)
            for (size_t b = a + 2; b < n_; ++b) {
                if (a == 0 && b == n_ - 1) continue;
                cells_[a * n_ + b] =
                    edge_length(poly[a], poly[b], scale);
            }
    }

    // Cost contributed by triangle edge (a, b): zero for boundary edges.
    const IntInterval* chord(int a, int b) const {
        if (boundary_pair(n_, a, b)) return nullptr;
        return &*cells_[static_cast<size_t>(a) * n_ + b];
    }

private:
    size_t n_;
    std::vector<std::optional<IntInterval>> cells_;
};

void validate_constraint(const Polygon& poly, const EdgeConstraint& constraint) {
    const size_t n = poly.size();
    for (const EdgeIx& e : constraint.forbidden) {
        const bool chord = 0 <= e.first && e.first < e.second &&
                           static_cast<size_t>(e.second) < n &&
                           !boundary_pair(n, e.first, e.second);
        if (!chord)
            raise(errc::internal_check,
                  "forbidden pair (" + std::to_string(e.first) + ", " +
                      std::to_string(e.second) + ") is not a chord");
    }
}

struct Cell {
    bool feasible = false;
    bigint lo, hi;        // pointwise minima over admissible splits
    bigint count;         // contender triangulations of this range
    bool deg = false;     // a contender contains a straight triangle
    bool nondeg = false;  // a contender is free of straight triangles
    int best_split = -1;  // smallest split attaining the smallest lower bound
};

struct Branch {
    int j;
    bigint lo, hi;
    bool straight;
};

}  // namespace

MwtResult polygon_mwt(const Polygon& poly, const EdgeConstraint& constraint,
                      unsigned cost_scale_exp) {
    const size_t n = poly.size();
    if (n < 3) raise(errc::no_feasible_triangulation, "fewer than 3 vertices");
    validate_constraint(poly, constraint);

    const ChordTable chords(poly, cost_scale_exp);
    std::vector<Cell> table(n * n);
    auto cell = [&](int i, int k) -> Cell& {
        return table[static_cast<size_t>(i) * n + k];
    };

    for (size_t i = 0; i + 1 < n; ++i) {
        Cell& base = cell(i, i + 1);
        base.feasible = true;
        base.count = 1;
        base.nondeg = true;
    }

    std::vector<Branch> branches;
    for (size_t span = 2; span < n; ++span) {
        for (size_t i = 0; i + span < n; ++i) {
            const size_t k = i + span;
            Cell& out = cell(i, k);
            branches.clear();
            for (size_t j = i + 1; j < k; ++j) {
                const Cell& left = cell(i, j);
                const Cell& right = cell(j, k);
                if (!left.feasible || !right.feasible) continue;
                const Turn turn = orientation(poly[i], poly[j], poly[k]);
                if (turn == Turn::cw) continue;
                if (constraint.forbids(i, j) || constraint.forbids(j, k))
                    continue;
                Branch br{static_cast<int>(j), left.lo + right.lo,
                          left.hi + right.hi, turn == Turn::collinear};
                if (const IntInterval* e = chords.chord(i, j)) {
                    br.lo += e->lo;
                    br.hi += e->hi;
                }
                if (const IntInterval* e = chords.chord(j, k)) {
                    br.lo += e->lo;
                    br.hi += e->hi;
                }
                branches.push_back(std::move(br));
            }
            if (branches.empty()) continue;

            out.feasible = true;
            out.lo = branches[0].lo;
            out.hi = branches[0].hi;
            for (const Branch& br : branches) {
                if (br.lo < out.lo) out.lo = br.lo;
                if (br.hi < out.hi) out.hi = br.hi;
            }
            for (const Branch& br : branches) {
                if (br.lo > out.hi) continue;  // excluded from optimality
                const Cell& left = cell(i, br.j);
                const Cell& right = cell(br.j, k);
                out.count += left.count * right.count;
                out.deg = out.deg || br.straight || left.deg || right.deg;
                out.nondeg = out.nondeg ||
                             (!br.straight && left.nondeg && right.nondeg);
                if (out.best_split < 0 && br.lo == out.lo)
                    out.best_split = br.j;
            }
        }
    }

    const Cell& root = cell(0, n - 1);
    if (!root.feasible)
        raise(errc::no_feasible_triangulation,
              "no admissible triangulation (orientation or constraints)");
    if (!root.nondeg)
        raise(errc::only_degenerate_optimal,
              "every surviving optimum contains a straight triangle");

    MwtResult result;
    result.optimal_cost = IntInterval(root.lo, root.hi, cost_scale_exp);
    result.multiplicity = root.count;
    result.candidates_degenerate = root.deg;

    std::function<void(int, int)> rebuild = [&](int i, int k) {
        if (k - i < 2) return;
        const int j = cell(i, k).best_split;
        result.witness.triangles.push_back({i, j, k});
        rebuild(i, j);
        rebuild(j, k);
    };
    rebuild(0, static_cast<int>(n - 1));
    std::sort(result.witness.triangles.begin(), result.witness.triangles.end());

    result.witness.internal_edges =
        internal_edges_of(n, result.witness.triangles);
    IntInterval witness_cost = IntInterval::zero(cost_scale_exp);
    for (const EdgeIx& e : result.witness.internal_edges)
        witness_cost += edge_length(poly[e.first], poly[e.second], cost_scale_exp);
    result.witness.cost = witness_cost;
    for (const Triple& t : result.witness.triangles)
        if (orientation(poly[t[0]], poly[t[1]], poly[t[2]]) == Turn::collinear)
            result.witness.degenerate = true;
    return result;
}

namespace {

// Shared state of one brute-force enumeration sweep.
struct SweepState {
    const Polygon* poly;
    const EdgeConstraint* constraint;
    const ChordTable* chords;
    std::vector<Triple> acc;
    bigint lo, hi;     // running chord-sum interval of the partial selection
    int straight = 0;  // straight triangles in the partial selection
};

// Enumerates triangulations of the range polygon (i..k) in deterministic
// order, maintaining the running cost, and calls emit at each completion.
void sweep(SweepState& st, int i, int k, const std::function<void()>& emit) {
    if (k - i < 2) {
        emit();
        return;
    }
    const Polygon& poly = *st.poly;
    for (int j = i + 1; j < k; ++j) {
        const Turn turn = orientation(poly[i], poly[j], poly[k]);
        if (turn == Turn::cw) continue;
        if (st.constraint->forbids(i, j) || st.constraint->forbids(j, k))
            continue;
        const IntInterval* eij = st.chords->chord(i, j);
        const IntInterval* ejk = st.chords->chord(j, k);

        st.acc.push_back({i, j, k});
        if (turn == Turn::collinear) ++st.straight;
        if (eij) { st.lo += eij->lo; st.hi += eij->hi; }
        if (ejk) { st.lo += ejk->lo; st.hi += ejk->hi; }

        sweep(st, i, j, [&] { sweep(st, j, k, emit); });

        if (eij) { st.lo -= eij->lo; st.hi -= eij->hi; }
        if (ejk) { st.lo -= ejk->lo; st.hi -= ejk->hi; }
        if (turn == Turn::collinear) --st.straight;
        st.acc.pop_back();
    }
}

}  // namespace

MwtResult brute_force_mwt(const Polygon& poly, const EdgeConstraint& constraint,
                          unsigned cost_scale_exp) {
    const size_t n = poly.size();
    if (n > kBruteForceMaxVertices)
        raise(errc::too_large, "brute force refuses " + std::to_string(n) +
                                   " vertices (budget " +
                                   std::to_string(kBruteForceMaxVertices) + ")");
    if (n < 3) raise(errc::no_feasible_triangulation, "fewer than 3 vertices");
    validate_constraint(poly, constraint);

    const ChordTable chords(poly, cost_scale_exp);
    SweepState st{&poly, &constraint, &chords, {}, 0, 0, 0};

    // First sweep: the two pointwise minima that define the enclosure.
    bool any = false;
    bigint best_lo, best_hi;
    sweep(st, 0, static_cast<int>(n - 1), [&] {
        if (!any || st.lo < best_lo) best_lo = st.lo;
        if (!any || st.hi < best_hi) best_hi = st.hi;
        any = true;
    });
    if (!any)
        raise(errc::no_feasible_triangulation,
              "no admissible triangulation (orientation or constraints)");

    // Second sweep: contender census and the smallest-lower-bound witness.
    MwtResult result;
    result.optimal_cost = IntInterval(best_lo, best_hi, cost_scale_exp);
    bool have_witness = false;
    bool any_nondeg_contender = false;
    std::vector<Triple> witness;
    sweep(st, 0, static_cast<int>(n - 1), [&] {
        if (st.lo > best_hi) return;
        result.multiplicity += 1;
        if (st.straight > 0) result.candidates_degenerate = true;
        else any_nondeg_contender = true;
        if (!have_witness && st.lo == best_lo) {
            witness = st.acc;
            have_witness = true;
        }
    });
    if (!any_nondeg_contender)
        raise(errc::only_degenerate_optimal,
              "every surviving optimum contains a straight triangle");

    std::sort(witness.begin(), witness.end());
    result.witness.triangles = std::move(witness);
    result.witness.internal_edges =
        internal_edges_of(n, result.witness.triangles);
    IntInterval witness_cost = IntInterval::zero(cost_scale_exp);
    for (const EdgeIx& e : result.witness.internal_edges)
        witness_cost += edge_length(poly[e.first], poly[e.second], cost_scale_exp);
    result.witness.cost = witness_cost;
    for (const Triple& t : result.witness.triangles)
        if (orientation(poly[t[0]], poly[t[1]], poly[t[2]]) == Turn::collinear)
            result.witness.degenerate = true;
    return result;
}

}  // namespace mwt
