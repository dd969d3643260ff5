#include "mwt/skeleton.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "mwt/pool.hpp"

namespace mwt {

namespace {

struct SquaredGeometry {
    bigint pp;  // |rp|^2
    bigint qq;  // |rq|^2
    bigint ee;  // |pq|^2
};

// Squared distances among p, q, r at their common scale (values exact).
SquaredGeometry squares(const Point& p, const Point& q, const Point& r) {
    const unsigned s = std::max({p.x.scale_exp, p.y.scale_exp, q.x.scale_exp,
                                 q.y.scale_exp, r.x.scale_exp, r.y.scale_exp});
    // The explicit return type matters: without it the lambda would return a
    // multiprecision expression template referencing its dead locals.
    auto dd = [s](const Point& a, const Point& b) -> bigint {
        const bigint dx = a.x.rescaled(s).value - b.x.rescaled(s).value;
        const bigint dy = a.y.rescaled(s).value - b.y.rescaled(s).value;
        return dx * dx + dy * dy;
    };
    return SquaredGeometry{dd(r, p), dd(r, q), dd(p, q)};
}

// cos(angle prq) by the cosine law, as sign and reduced square.
RationalCos2 apex_cosine(const SquaredGeometry& g) {
    RationalCos2 out;
    const bigint t = g.pp + g.qq - g.ee;  // 2*|rp|*|rq|*cos(alpha)
    out.sign = t.sign();
    bigint num = t * t;
    bigint den = 4 * g.pp * g.qq;
    const bigint g1 = boost::multiprecision::gcd(num, den);
    if (g1 != 0) {
        num /= g1;
        den /= g1;
    }
    out.num = std::move(num);
    out.den = std::move(den);
    return out;
}

}  // namespace

bool RationalCos2::worse(const RationalCos2& a, const RationalCos2& b) {
    if (a.sign != b.sign) return a.sign < b.sign;
    if (a.sign == 0) return false;
    const bigint lhs = a.num * b.den;
    const bigint rhs = b.num * a.den;
    if (a.sign > 0) return lhs < rhs;  // smaller positive cosine
    return lhs > rhs;                  // more negative cosine
}

BetaReport min_beta(const Point& p, const Point& q,
                    const std::vector<Point>& others) {
    BetaReport report;
    report.p = p;
    report.q = q;
    for (const Point& r : others) {
        if (r == p || r == q) continue;
        const SquaredGeometry g = squares(p, q, r);
        RationalCos2 c = apex_cosine(g);
        if (c.sign > 0 && c.num == c.den) continue;  // angle 0: no restriction
        if (!report.has_witness || RationalCos2::worse(c, report.worst)) {
            report.worst = std::move(c);
            report.witness = r;
            report.has_witness = true;
        }
    }
    if (report.has_witness) {
        const RationalCos2& w = report.worst;
        const bigint sin2_num = w.den - w.num;  // sin^2 = sin2_num / w.den
        if (sin2_num == 0)
            raise(errc::internal_check,
                  "a point lies on the carrier line inside the edge");
        // beta = 1/sin: enclose beta * 10^9 via the squared value.
        const bigint scaled = w.den * pow10(18);
        bigint q_floor = scaled / sin2_num;
        const bool rem = (scaled % sin2_num) != 0;
        const IntInterval lo_root = interval_isqrt(q_floor);
        const IntInterval hi_root =
            rem ? interval_isqrt(bigint(q_floor + 1)) : lo_root;
        report.min_beta = IntInterval(lo_root.lo, hi_root.hi, 9);
    }
    return report;
}

namespace {

// Violation test against threshold P/Q (exact): the angle must be acute and
// satisfy sin^2 <= Q^2/P^2.
bool violates(const RationalCos2& c, const bigint& p2, const bigint& q2) {
    if (c.sign < 0) return true;
    if (c.sign == 0) return true;  // right angle: sin = 1 > 1/threshold
    const bigint sin2_num = c.den - c.num;
    return sin2_num * p2 > c.den * q2;
}

}  // namespace

CertReport beta_skeleton_certify(
    const std::vector<std::pair<Point, Point>>& boundary_edges,
    const std::vector<Point>& points, const ScaledInt& beta_threshold,
    const CertifyOptions& options) {
    if (beta_threshold.value <= 0)
        raise(errc::internal_check, "beta threshold must be positive");
    CertReport report;
    report.threshold = beta_threshold;
    report.edges_checked = boundary_edges.size();

    const bigint p2 = beta_threshold.value * beta_threshold.value;
    const bigint q2 = pow10(2 * beta_threshold.scale_exp);

    std::vector<std::optional<BetaReport>> worst_per_edge(boundary_edges.size());
    std::vector<char> edge_violates(boundary_edges.size(), 0);

    parallel_for(
        boundary_edges.size(),
        [&](size_t e) {
            const Point& p = boundary_edges[e].first;
            const Point& q = boundary_edges[e].second;
            BetaReport local;
            local.p = p;
            local.q = q;
            for (const Point& r : points) {
                if (r == p || r == q) continue;
                const SquaredGeometry g = squares(p, q, r);
                if (options.prefilter) {
                    // |2r - p - q|^2 > 4 * threshold^2 * |pq|^2 puts r outside
                    // both neighborhood circles of every edge that could fail.
                    const unsigned s =
                        std::max({p.x.scale_exp, p.y.scale_exp, q.x.scale_exp,
                                  q.y.scale_exp, r.x.scale_exp, r.y.scale_exp});
                    const bigint mx = r.x.rescaled(s).value * 2 -
                                      p.x.rescaled(s).value -
                                      q.x.rescaled(s).value;
                    const bigint my = r.y.rescaled(s).value * 2 -
                                      p.y.rescaled(s).value -
                                      q.y.rescaled(s).value;
                    if ((mx * mx + my * my) * q2 > 4 * p2 * g.ee) continue;
                }
                RationalCos2 c = apex_cosine(g);
                if (c.sign > 0 && c.num == c.den) continue;
                if (!worst_per_edge[e] ||
                    RationalCos2::worse(c, worst_per_edge[e]->worst)) {
                    BetaReport candidate;
                    candidate.p = p;
                    candidate.q = q;
                    candidate.has_witness = true;
                    candidate.witness = r;
                    candidate.worst = c;
                    worst_per_edge[e] = std::move(candidate);
                }
                if (violates(c, p2, q2)) edge_violates[e] = 1;
            }
        },
        options.workers);

    for (size_t e = 0; e < boundary_edges.size(); ++e) {
        if (!worst_per_edge[e]) continue;
        // Recompute through min_beta to fill the interval enclosure for
        // reporting (single point: cheap).
        BetaReport full = min_beta(boundary_edges[e].first,
                                   boundary_edges[e].second,
                                   {worst_per_edge[e]->witness});
        if (edge_violates[e]) {
            report.violating_edges.push_back(e);
            report.violations.push_back(full);
        }
        if (!report.has_binding ||
            RationalCos2::worse(full.worst, report.binding.worst)) {
            report.has_binding = true;
            report.binding_edge = e;
            report.binding = full;
        }
    }
    return report;
}

namespace {

constexpr unsigned kTanScale = 30;

// pi to 40 fractional digits; the true value lies strictly between
// kPiDigits and kPiDigits + 1 at that scale.
const char kPiDigits[] = "31415926535897932384626433832795028841971";

struct Directed {
    // One nonnegative fixed-point bound pair [lo, hi] at scale kTanScale.
    bigint lo, hi;
};

const bigint& tan_unit() {
    static const bigint unit = pow10(kTanScale);
    return unit;
}

Directed mul(const Directed& a, const Directed& b) {
    const bigint& u = tan_unit();
    bigint lo = a.lo * b.lo / u;
    bigint hi = a.hi * b.hi;
    hi = hi / u + (hi % u == 0 ? 0 : 1);
    return Directed{std::move(lo), std::move(hi)};
}

Directed div_exact_int(const Directed& a, const bigint& d) {
    bigint lo = a.lo / d;
    bigint hi = a.hi / d + (a.hi % d == 0 ? 0 : 1);
    return Directed{std::move(lo), std::move(hi)};
}

// Alternating series sum t0 - t1 + t2 - ... with step(t, k) producing the
// next term; terms must decrease.  Returns a certified enclosure.
Directed alternating_sum(Directed term,
                         const std::function<Directed(const Directed&, int)>& step) {
    bigint lo = 0, hi = 0;
    int k = 0;
    for (;;) {
        if (k % 2 == 0) {
            lo += term.lo;
            hi += term.hi;
        } else {
            lo -= term.hi;
            hi -= term.lo;
        }
        ++k;
        term = step(term, k);
        if (term.hi <= 1) {  // tail below one ulp: widen and stop
            lo -= term.hi;
            hi += term.hi;
            return Directed{std::move(lo), std::move(hi)};
        }
    }
}

}  // namespace

IntInterval tan_of_pi_fraction(const PiFraction& angle, unsigned scale_exp) {
    if (angle.num <= 0 || angle.den <= 0 || 2 * angle.num >= angle.den)
        raise(errc::internal_check,
              "base angle must lie strictly between 0 and pi/2");

    static std::mutex cache_lock;
    static std::map<std::pair<long, long>, Directed> cache;
    Directed tan_bounds;
    {
        std::lock_guard<std::mutex> hold(cache_lock);
        auto it = cache.find({angle.num, angle.den});
        if (it != cache.end()) tan_bounds = it->second;
    }

    if (tan_bounds.hi == 0) {
        const bigint pi_lo(kPiDigits);
        const bigint pi_hi = pi_lo + 1;  // scale 40
        const bigint den_shift = bigint(angle.den) * pow10(40 - kTanScale);
        Directed x;
        x.lo = pi_lo * angle.num / den_shift;
        {
            bigint t = pi_hi * angle.num;
            x.hi = t / den_shift + (t % den_shift == 0 ? 0 : 1);
        }
        const Directed x2 = mul(x, x);

        const Directed sinx = alternating_sum(
            x, [&](const Directed& t, int k) {
                return div_exact_int(mul(t, x2), bigint(2 * k) * (2 * k + 1));
            });
        const Directed cosx = alternating_sum(
            Directed{tan_unit(), tan_unit()}, [&](const Directed& t, int k) {
                return div_exact_int(mul(t, x2), bigint(2 * k - 1) * (2 * k));
            });
        if (cosx.lo <= 0)
            raise(errc::internal_check, "cosine enclosure touches zero");

        tan_bounds.lo = sinx.lo * tan_unit() / cosx.hi;
        bigint t = sinx.hi * tan_unit();
        tan_bounds.hi = t / cosx.lo + (t % cosx.lo == 0 ? 0 : 1);

        std::lock_guard<std::mutex> hold(cache_lock);
        cache[{angle.num, angle.den}] = tan_bounds;
    }

    IntInterval full(tan_bounds.lo, tan_bounds.hi, kTanScale);
    if (scale_exp >= kTanScale) return full.rescaled(scale_exp);
    // Outward rescale to fewer digits.
    const bigint f = pow10(kTanScale - scale_exp);
    bigint lo = floor_div(full.lo, f);
    bigint hi = floor_div(full.hi, f) + (full.hi % f == 0 ? 0 : 1);
    return IntInterval(std::move(lo), std::move(hi), scale_exp);
}

namespace {

enum class Verdict { yes, no, ambiguous };

// Sign verdict for the expression a + dir * t * b with t in [t.lo, t.hi]
// (scale kTanScale), a and b exact integers: is it >= 0?
Verdict nonnegative(const bigint& a, int dir, const bigint& b,
                    const Directed& t) {
    const bigint a_scaled = a * tan_unit();
    const bigint tb1 = t.lo * b * dir;
    const bigint tb2 = t.hi * b * dir;
    const bigint lo = a_scaled + std::min(tb1, tb2);
    const bigint hi = a_scaled + std::max(tb1, tb2);
    if (lo >= 0) return Verdict::yes;
    if (hi < 0) return Verdict::no;
    return Verdict::ambiguous;
}

}  // namespace

bool diamond_test(const Point& p, const Point& q,
                  const std::vector<Point>& others,
                  const PiFraction& base_angle) {
    const IntInterval tan_iv = tan_of_pi_fraction(base_angle, kTanScale);
    const Directed t{tan_iv.lo, tan_iv.hi};

    const unsigned s = std::max({p.x.scale_exp, p.y.scale_exp, q.x.scale_exp,
                                 q.y.scale_exp});
    unsigned sr = s;
    for (const Point& r : others)
        sr = std::max({sr, r.x.scale_exp, r.y.scale_exp});

    const bigint dx = q.x.rescaled(sr).value - p.x.rescaled(sr).value;
    const bigint dy = q.y.rescaled(sr).value - p.y.rescaled(sr).value;

    bool left_empty = true, right_empty = true;
    for (const Point& r : others) {
        if (!left_empty && !right_empty) break;
        if (r == p || r == q) continue;
        const bigint ux = r.x.rescaled(sr).value - p.x.rescaled(sr).value;
        const bigint uy = r.y.rescaled(sr).value - p.y.rescaled(sr).value;
        const bigint vx = r.x.rescaled(sr).value - q.x.rescaled(sr).value;
        const bigint vy = r.y.rescaled(sr).value - q.y.rescaled(sr).value;
        const bigint cross_u = dx * uy - dy * ux;
        const bigint dot_u = dx * ux + dy * uy;
        const bigint cross_v = dx * vy - dy * vx;
        const bigint dot_v = dx * vx + dy * vy;

        // Left triangle (apex on the counterclockwise side): r is inside iff
        // cross_u >= 0, -cross_u + t*dot_u >= 0 and -cross_v - t*dot_v >= 0.
        if (left_empty && cross_u >= 0) {
            const Verdict side_p = nonnegative(-cross_u, +1, dot_u, t);
            const Verdict side_q = nonnegative(-cross_v, -1, dot_v, t);
            if (side_p != Verdict::no && side_q != Verdict::no)
                left_empty = false;
        }
        // Right triangle (mirror image).
        if (right_empty && cross_u <= 0) {
            const Verdict side_p = nonnegative(cross_u, +1, dot_u, t);
            const Verdict side_q = nonnegative(cross_v, -1, dot_v, t);
            if (side_p != Verdict::no && side_q != Verdict::no)
                right_empty = false;
        }
    }
    return left_empty || right_empty;
}

}  // namespace mwt
