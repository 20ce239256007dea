#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>

#include "qtb/bernstein.hpp"
#include "qtb/errors.hpp"
#include "qtb/strata.hpp"

// Dimension-2 strata. The parameter triangle splits into a boundary collar
// (prisms over the already-built edge strata, conforming by vertices) and an
// inner triangle swept by a cylindrical decomposition of
// {C_0 = 0} u {disc_T = 0}. The inner triangle's sides are sweep members, so
// collar and sweep agree along them. Algebraic features live in thin
// rational brackets; full-dimensional cells carry exact samples, bracket
// cells derive their index from their neighbors.

namespace qtb {
namespace detail {

namespace {

using Chart = std::vector<Rational>;

struct Member {
    MultiPoly poly;  // chart vars: x = 0, y = 1
    bool is_lid = false;
    bool is_c0 = false;
    std::string name;
};

struct WallRoot {
    RationalInterval y;
    int member = -1;  // -1: injected exact point (prism foot on the left lid)
    bool exact = false;
    int cell = -1;
};

struct Wall {
    Rational x;
    std::vector<WallRoot> roots;
    std::vector<int> intervals;  // interval j sits between roots j and j+1
};

struct ObjRef {  // strip or cluster occupying a slot in a column's stack
    bool is_cluster = false;
    int idx = 0;
};

struct Strip {
    int member = -1;
    int lroot = -1, rroot = -1;
    int cell = -1;
};

struct Cluster {
    std::vector<int> lroots, rroots;  // root indices, ascending
    int event_cell = -1;
    std::map<int, int> leg_of_lroot, leg_of_rroot;  // root idx -> leg cell
    bool flagged = false;
};

struct Column {
    int lw = -1, rw = -1;
    bool thick = false;
    std::vector<Strip> strips;
    std::vector<Cluster> clusters;
    std::vector<int> regions;                    // region cell ids
    std::vector<int> region_of_linterval;        // per left interval
    std::vector<int> region_of_rinterval;
};

struct Builder {
    Strata* out = nullptr;
    const StrataOptions* opt = nullptr;
    Rational delta;
    std::vector<Member> members;
    std::vector<Wall> walls;
    std::vector<Column> cols;
    int corner_cell = -1;  // w_1 at (1-2delta, delta)
    int counter = 0;

    std::string key(const std::string& tag) {
        return strata_cell_key(out->subset, ":" + tag + std::to_string(counter++));
    }
    int add_cell(const std::string& tag, int dim, const Chart& sample, int label,
                 bool wallflag = false) {
        BaseCell c;
        c.key = key(tag);
        c.dim = dim;
        c.sample = omega_from_chart(sample);
        c.label = label;
        c.wall = wallflag;
        int id = static_cast<int>(out->base.cells.size());
        out->base.cells.push_back(std::move(c));
        return id;
    }
    void link(int cell, int facet) {
        auto& fs = out->base.cells[cell].facets;
        if (std::find(fs.begin(), fs.end(), facet) == fs.end()) fs.push_back(facet);
    }
    int label_at(const Chart& p) { return perturbed_index_at(out->pencil, omega_from_chart(p)); }
    Rational wtop(const Rational& x) const { return Rational(1) - delta - x; }
    int& lbl(int cell) { return out->base.cells[cell].label; }
    void flag_wall(int cell, const std::string& why) {
        out->base.cells[cell].wall = true;
        out->wall_count += 1;
        out->certified = false;
        out->audit.push_back(why + " at " + out->base.cells[cell].key);
    }
};

struct BuildFail {
    std::string why;
};

UniPoly specialize_x(const MultiPoly& p, const Rational& x) {
    auto cs = p.coeffs_in(1);
    std::vector<Rational> uc;
    for (auto& c : cs) uc.push_back(c.eval({x, Rational(0)}));
    return UniPoly(std::move(uc));
}

// Member restricted to the segment (1-t) a + t b, as a polynomial in t.
UniPoly on_segment(const MultiPoly& p, const Chart& a, const Chart& b) {
    std::vector<MultiPoly> sub;
    for (int i = 0; i < 2; ++i) {
        MultiPoly s = MultiPoly::constant(1, a[i]) +
                      MultiPoly::variable(1, 0) * (b[i] - a[i]);
        sub.push_back(s);
    }
    MultiPoly q = p.substitute(sub);
    auto cs = q.coeffs_in(0);
    std::vector<Rational> uc;
    for (auto& c : cs) uc.push_back(c.eval({Rational(0)}));
    return UniPoly(std::move(uc));
}

bool segment_clean(Builder& b, const Chart& p0, const Chart& p1, bool skip_lids = true) {
    for (auto& m : b.members) {
        if (skip_lids && m.is_lid) continue;
        UniPoly u = on_segment(m.poly, p0, p1);
        if (u.is_zero()) return false;
        auto roots = isolate_real_roots_in(u, Rational(0), Rational(1), rat(1, 4));
        if (!roots.empty()) return false;
    }
    return true;
}

Rational interval_sample(const Wall& w, int j) {
    return simplest_rational_between(w.roots[j].y.hi + (w.roots[j + 1].y.lo - w.roots[j].y.hi) / 16,
                                     w.roots[j + 1].y.lo -
                                         (w.roots[j + 1].y.lo - w.roots[j].y.hi) / 16);
}

// Off-curve rational point inside the y-bracket on wall x (for thick roots).
std::optional<Rational> off_curve_y(Builder& b, const Rational& x, const RationalInterval& yiv) {
    Rational lo = yiv.lo, hi = yiv.hi;
    if (lo == hi) return lo;
    for (int t = 0; t < 40; ++t) {
        Rational cand = simplest_rational_between(lo + (hi - lo) / 16, hi - (hi - lo) / 16);
        bool ok = true;
        for (auto& m : b.members)
            if (m.poly.eval(std::vector<Rational>{x, cand}) == 0) {
                ok = false;
                break;
            }
        if (ok) return cand;
        lo = lo + (hi - lo) / 8;
    }
    return std::nullopt;
}

void build_wall(Builder& b, Wall& w, const std::vector<Rational>& inject) {
    Rational top = b.wtop(w.x);
    if (!(top > b.delta)) throw BuildFail{"wall window empty"};
    std::vector<WallRoot> roots;
    for (size_t m = 0; m < b.members.size(); ++m) {
        UniPoly p = specialize_x(b.members[m].poly, w.x);
        if (p.is_zero()) throw BuildFail{"member vanishes on a wall"};
        auto rs = isolate_real_roots_in(squarefree_part(p), b.delta, top, b.opt->thick);
        for (auto& r : rs) {
            WallRoot wr;
            wr.y = r;
            wr.member = static_cast<int>(m);
            wr.exact = r.is_point();
            roots.push_back(wr);
        }
    }
    for (const auto& y : inject) {
        if (!(y > b.delta) || !(y < top)) continue;
        WallRoot wr;
        wr.y = RationalInterval(y);
        wr.member = -1;
        wr.exact = true;
        roots.push_back(wr);
    }
    std::sort(roots.begin(), roots.end(),
              [](const WallRoot& a, const WallRoot& c) { return a.y.lo < c.y.lo; });
    for (size_t i = 0; i + 1 < roots.size(); ++i) {
        for (int tries = 0; !(roots[i].y.hi < roots[i + 1].y.lo); ++tries) {
            if (tries >= 3 || roots[i].member == roots[i + 1].member)
                throw BuildFail{"coincident roots on a wall"};
            auto refine_one = [&](WallRoot& wr) {
                if (wr.member < 0 || wr.exact) return;
                UniPoly p = squarefree_part(specialize_x(b.members[wr.member].poly, w.x));
                wr.y = refine_root(p, wr.y, wr.y.width() / 4096);
                wr.exact = wr.y.is_point();
            };
            refine_one(roots[i]);
            refine_one(roots[i + 1]);
            if (roots[i + 1].y.hi < roots[i].y.lo) std::swap(roots[i], roots[i + 1]);
        }
    }
    // Window endpoints must be the two lid roots.
    if (roots.size() < 2 || roots.front().member != 0 || roots.back().member != 1)
        throw BuildFail{"wall window not bounded by the lid members"};
    w.roots = std::move(roots);
}

void make_wall_cells(Builder& b, Wall& w) {
    for (auto& r : w.roots) {
        if (r.exact) {
            Chart p{w.x, r.y.lo};
            int lab = b.label_at(p);
            r.cell = b.add_cell("wv", 0, p, lab);
        } else {
            auto yy = off_curve_y(b, w.x, r.y);
            if (!yy) throw BuildFail{"no off-curve sample on wall"};
            r.cell = b.add_cell("wt", 0, Chart{w.x, *yy}, -1);  // label derived later
        }
    }
    for (size_t j = 0; j + 1 < w.roots.size(); ++j) {
        Rational ys = interval_sample(w, static_cast<int>(j));
        Chart p{w.x, ys};
        int cell = b.add_cell("wi", 1, p, b.label_at(p));
        b.link(cell, w.roots[j].cell);
        b.link(cell, w.roots[j + 1].cell);
        w.intervals.push_back(cell);
    }
    // Derived labels for inexact roots.
    for (size_t j = 0; j < w.roots.size(); ++j) {
        if (w.roots[j].exact) continue;
        int lo = j > 0 ? b.lbl(w.intervals[j - 1]) : -1;
        int hi = j + 1 < w.roots.size() ? b.lbl(w.intervals[j]) : -1;
        if (lo < 0) lo = hi;
        if (hi < 0) hi = lo;
        b.lbl(w.roots[j].cell) = std::min(lo, hi);
        bool is_c0 = w.roots[j].member >= 0 && b.members[w.roots[j].member].is_c0;
        int jump = std::abs(lo - hi);
        if ((is_c0 && jump != 1) || (!is_c0 && jump != 0))
            b.flag_wall(w.roots[j].cell, "wall-root index jump mismatch");
    }
}

// Roots of `member` on wall `w` (indices into w.roots).
std::vector<int> member_roots(const Wall& w, int member) {
    std::vector<int> out;
    for (size_t i = 0; i < w.roots.size(); ++i)
        if (w.roots[i].member == member) out.push_back(static_cast<int>(i));
    return out;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int c) { parent[find(a)] = find(c); }
};

// Build strips/clusters/regions for one column. Assumes walls already have
// cells. Thick columns may carry clusters; clean columns must match 1-1.
void build_column(Builder& b, Column& col) {
    Wall& L = b.walls[col.lw];
    Wall& R = b.walls[col.rw];
    int nl = static_cast<int>(L.roots.size());
    int nr = static_cast<int>(R.roots.size());

    // Injected points (member -1) sit only on the left lid wall and are not
    // part of the sweep structure; they never appear on interior walls.
    // Per-member order-preserving matching.
    struct RootTag {
        int side;  // 0 = left, 1 = right
        int idx;
        bool matched = false;
        int partner = -1;
    };
    std::vector<RootTag> ltags(nl), rtags(nr);
    for (int i = 0; i < nl; ++i) ltags[i] = {0, i, false, -1};
    for (int i = 0; i < nr; ++i) rtags[i] = {1, i, false, -1};

    for (size_t m = 0; m < b.members.size(); ++m) {
        auto lr = member_roots(L, static_cast<int>(m));
        auto rr = member_roots(R, static_cast<int>(m));
        // DP: order-preserving max matching with y-proximity requirement.
        Rational tol = (R.x - L.x) * 8 + rat(1, 8) * 0;
        auto compatible = [&](int li, int ri) {
            RationalInterval a = L.roots[li].y, c = R.roots[ri].y;
            return !(a.hi + tol < c.lo || c.hi + tol < a.lo);
        };
        size_t A = lr.size(), B = rr.size();
        std::vector<std::vector<int>> dp(A + 1, std::vector<int>(B + 1, 0));
        for (size_t i = 1; i <= A; ++i)
            for (size_t j = 1; j <= B; ++j) {
                dp[i][j] = std::max(dp[i - 1][j], dp[i][j - 1]);
                if (compatible(lr[i - 1], rr[j - 1]))
                    dp[i][j] = std::max(dp[i][j], dp[i - 1][j - 1] + 1);
            }
        // Recover one optimal matching.
        size_t i = A, j = B;
        std::vector<std::pair<int, int>> pairs;
        while (i > 0 && j > 0) {
            if (compatible(lr[i - 1], rr[j - 1]) && dp[i][j] == dp[i - 1][j - 1] + 1) {
                pairs.push_back({lr[i - 1], rr[j - 1]});
                --i;
                --j;
            } else if (dp[i - 1][j] >= dp[i][j - 1])
                --i;
            else
                --j;
        }
        for (auto& [li, ri] : pairs) {
            ltags[li].matched = true;
            ltags[li].partner = ri;
            rtags[ri].matched = true;
            rtags[ri].partner = li;
        }
        if (!col.thick && (pairs.size() != A || pairs.size() != B))
            throw BuildFail{"clean column with unmatched branches"};
    }

    // Candidate strips; crossings or unmatched roots go into clusters.
    struct Cand {
        int li, ri;
    };
    std::vector<Cand> cands;
    for (int i = 0; i < nl; ++i)
        if (ltags[i].matched) cands.push_back({i, ltags[i].partner});
    std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& c) { return a.li < c.li; });
    std::vector<bool> cand_clustered(cands.size(), false);
    for (size_t a = 0; a < cands.size(); ++a)
        for (size_t c = a + 1; c < cands.size(); ++c)
            if (cands[c].ri < cands[a].ri) {
                cand_clustered[a] = cand_clustered[c] = true;
                if (!col.thick) throw BuildFail{"crossing in clean column"};
            }

    // Cluster roots: unmatched + clustered candidates.
    std::vector<bool> l_in_cluster(nl, false), r_in_cluster(nr, false);
    for (int i = 0; i < nl; ++i)
        if (!ltags[i].matched) l_in_cluster[i] = true;
    for (int i = 0; i < nr; ++i)
        if (!rtags[i].matched) r_in_cluster[i] = true;
    for (size_t a = 0; a < cands.size(); ++a)
        if (cand_clustered[a]) {
            l_in_cluster[cands[a].li] = true;
            r_in_cluster[cands[a].ri] = true;
        }

    bool any_cluster = false;
    for (int i = 0; i < nl; ++i) any_cluster = any_cluster || l_in_cluster[i];
    for (int i = 0; i < nr; ++i) any_cluster = any_cluster || r_in_cluster[i];
    if (any_cluster && !col.thick) throw BuildFail{"cluster in clean column"};

    // Group clustered roots into maximal y-connected groups: a strip whose
    // both roots separate the groups acts as a divider.
    // Simple approach: sort all clustered roots by y midpoint; split where a
    // clean strip separates.
    struct CRoot {
        int side, idx;
        Rational ymid;
    };
    std::vector<CRoot> croots;
    for (int i = 0; i < nl; ++i)
        if (l_in_cluster[i]) croots.push_back({0, i, L.roots[i].y.mid()});
    for (int i = 0; i < nr; ++i)
        if (r_in_cluster[i]) croots.push_back({1, i, R.roots[i].y.mid()});
    std::sort(croots.begin(), croots.end(),
              [](const CRoot& a, const CRoot& c) { return a.ymid < c.ymid; });
    auto strip_between = [&](const Rational& ylo, const Rational& yhi) {
        for (size_t a = 0; a < cands.size(); ++a) {
            if (cand_clustered[a]) continue;
            Rational sy = L.roots[cands[a].li].y.mid();
            Rational ry = R.roots[cands[a].ri].y.mid();
            if (sy > ylo && sy < yhi && ry > ylo && ry < yhi) return true;
        }
        return false;
    };
    std::vector<Cluster> clusters;
    size_t start = 0;
    while (start < croots.size()) {
        size_t end = start + 1;
        while (end < croots.size() && !strip_between(croots[end - 1].ymid, croots[end].ymid)) ++end;
        Cluster cl;
        for (size_t i = start; i < end; ++i) {
            if (croots[i].side == 0)
                cl.lroots.push_back(croots[i].idx);
            else
                cl.rroots.push_back(croots[i].idx);
        }
        std::sort(cl.lroots.begin(), cl.lroots.end());
        std::sort(cl.rroots.begin(), cl.rroots.end());
        clusters.push_back(std::move(cl));
        start = end;
    }

    // Strips (non-clustered candidates).
    for (size_t a = 0; a < cands.size(); ++a) {
        if (cand_clustered[a]) continue;
        Strip s;
        s.member = L.roots[cands[a].li].member;
        s.lroot = cands[a].li;
        s.rroot = cands[a].ri;
        col.strips.push_back(s);
    }
    std::sort(col.strips.begin(), col.strips.end(),
              [](const Strip& a, const Strip& c) { return a.lroot < c.lroot; });

    // Create cells for strips.
    for (auto& s : col.strips) {
        const WallRoot& wr = L.roots[s.lroot];
        Chart sample = b.out->base.cells[wr.cell].sample.size() ? Chart{} : Chart{};
        // Reuse the left root's chart sample, nudged into the column.
        const auto& rc = b.out->base.cells[wr.cell];
        // recover chart coords from omega sample: omega = (-(1-x-y), -x, -y)
        Chart p{-rc.sample[1], -rc.sample[2]};
        p[0] = p[0] + (R.x - L.x) / 64;
        int lab = b.members[s.member].is_lid ? b.label_at(p) : -1;
        s.cell = b.add_cell("br", 1, p, lab);
        b.link(s.cell, L.roots[s.lroot].cell);
        b.link(s.cell, R.roots[s.rroot].cell);
        (void)sample;
    }

    // Create cells for clusters: event + legs.
    for (auto& cl : clusters) {
        Rational ylo, yhi;
        bool first = true;
        auto acc = [&](const RationalInterval& iv) {
            if (first) {
                ylo = iv.lo;
                yhi = iv.hi;
                first = false;
            } else {
                ylo = rat_min(ylo, iv.lo);
                yhi = rat_max(yhi, iv.hi);
            }
        };
        for (int i : cl.lroots) acc(L.roots[i].y);
        for (int i : cl.rroots) acc(R.roots[i].y);
        Rational xmid = simplest_rational_between(L.x + (R.x - L.x) / 4, R.x - (R.x - L.x) / 4);
        auto ysamp = off_curve_y(b, xmid, RationalInterval(ylo, yhi));
        Chart p{xmid, ysamp ? *ysamp : (ylo + yhi) / 2};
        cl.event_cell = b.add_cell("ev", 0, p, -1);
        for (int i : cl.lroots) {
            Chart lp{-b.out->base.cells[L.roots[i].cell].sample[1],
                     -b.out->base.cells[L.roots[i].cell].sample[2]};
            lp[0] += (R.x - L.x) / 128;
            int leg = b.add_cell("lg", 1, lp, -1);
            b.link(leg, L.roots[i].cell);
            b.link(leg, cl.event_cell);
            cl.leg_of_lroot[i] = leg;
        }
        for (int i : cl.rroots) {
            Chart rp{-b.out->base.cells[R.roots[i].cell].sample[1],
                     -b.out->base.cells[R.roots[i].cell].sample[2]};
            rp[0] -= (R.x - L.x) / 128;
            int leg = b.add_cell("lg", 1, rp, -1);
            b.link(leg, R.roots[i].cell);
            b.link(leg, cl.event_cell);
            cl.leg_of_rroot[i] = leg;
        }
        col.clusters.push_back(cl);
    }

    // Regions: union-find over wall intervals.
    int nli = nl - 1, nri = nr - 1;
    UnionFind uf(nli + nri);
    auto lid_of = [&](int j) { return j; };           // left interval j
    auto rid_of = [&](int j) { return nli + j; };     // right interval j

    // Objects in y-order: strips and clusters.
    struct Obj {
        bool is_cluster;
        int idx;
        int topl = -1, botl = -1, topr = -1, botr = -1;  // root indices (-1 if none)
    };
    std::vector<Obj> objs;
    for (size_t s = 0; s < col.strips.size(); ++s) {
        Obj o;
        o.is_cluster = false;
        o.idx = static_cast<int>(s);
        o.topl = o.botl = col.strips[s].lroot;
        o.topr = o.botr = col.strips[s].rroot;
        objs.push_back(o);
    }
    for (size_t c = 0; c < col.clusters.size(); ++c) {
        Obj o;
        o.is_cluster = true;
        o.idx = static_cast<int>(c);
        const Cluster& cl = col.clusters[c];
        if (!cl.lroots.empty()) {
            o.botl = cl.lroots.front();
            o.topl = cl.lroots.back();
        }
        if (!cl.rroots.empty()) {
            o.botr = cl.rroots.front();
            o.topr = cl.rroots.back();
        }
        objs.push_back(o);
    }
    std::sort(objs.begin(), objs.end(), [&](const Obj& a, const Obj& c) {
        Rational ya = a.botl >= 0 ? L.roots[a.botl].y.lo : R.roots[a.botr].y.lo;
        Rational yc = c.botl >= 0 ? L.roots[c.botl].y.lo : R.roots[c.botr].y.lo;
        return ya < yc;
    });

    // Gap unions above every object that has roots on both sides.
    for (size_t i = 0; i + 1 < objs.size(); ++i) {
        const Obj& o = objs[i];
        if (o.topl >= 0 && o.topr >= 0) {
            if (o.topl < nli && o.topr < nri) uf.unite(lid_of(o.topl), rid_of(o.topr));
        }
    }
    // One-sided clusters: wrap regions around the missing side.
    for (const Obj& o : objs) {
        if (!o.is_cluster) continue;
        if (o.topl < 0 && o.botl < 0) {
            // spans on the left: interval at the cluster's y-range
            Rational ymid = (R.roots[o.botr].y.lo + R.roots[o.topr].y.hi) / 2;
            int span = -1;
            for (int j = 0; j < nli; ++j)
                if (L.roots[j].y.hi < ymid && ymid < L.roots[j + 1].y.lo) span = j;
            if (span < 0) throw BuildFail{"cannot locate spanning interval"};
            if (o.botr > 0) uf.unite(lid_of(span), rid_of(o.botr - 1));
            if (o.topr < nri) uf.unite(lid_of(span), rid_of(o.topr));
        }
        if (o.topr < 0 && o.botr < 0) {
            Rational ymid = (L.roots[o.botl].y.lo + L.roots[o.topl].y.hi) / 2;
            int span = -1;
            for (int j = 0; j < nri; ++j)
                if (R.roots[j].y.hi < ymid && ymid < R.roots[j + 1].y.lo) span = j;
            if (span < 0) throw BuildFail{"cannot locate spanning interval"};
            if (o.botl > 0) uf.unite(rid_of(span), lid_of(o.botl - 1));
            if (o.topl < nli) uf.unite(rid_of(span), lid_of(o.topl));
        }
    }
    // Two-sided clusters additionally connect below-gaps.
    for (const Obj& o : objs) {
        if (!o.is_cluster) continue;
        if (o.botl >= 0 && o.botr >= 0 && o.botl > 0 && o.botr > 0)
            uf.unite(lid_of(o.botl - 1), rid_of(o.botr - 1));
        if (o.topl >= 0 && o.topr >= 0 && o.topl < nli && o.topr < nri)
            uf.unite(lid_of(o.topl), rid_of(o.topr));
    }

    // Region cells per union-find class.
    std::map<int, int> class_region;
    col.region_of_linterval.assign(nli, -1);
    col.region_of_rinterval.assign(nri, -1);
    for (int j = 0; j < nli + nri; ++j) {
        int root = uf.find(j);
        if (!class_region.count(root)) {
            // Sample: the first wall interval in the class, nudged inward.
            int li = -1, ri = -1;
            for (int t = 0; t < nli && li < 0; ++t)
                if (uf.find(lid_of(t)) == root) li = t;
            for (int t = 0; t < nri && ri < 0; ++t)
                if (uf.find(rid_of(t)) == root) ri = t;
            Chart p;
            if (li >= 0) {
                Rational ys = interval_sample(L, li);
                p = {L.x + (R.x - L.x) / 64, ys};
            } else {
                Rational ys = interval_sample(R, ri);
                p = {R.x - (R.x - L.x) / 64, ys};
            }
            // Label from a wall interval (exact, inside the same region).
            int lab = li >= 0 ? b.lbl(L.intervals[li]) : b.lbl(R.intervals[ri]);
            int cell = b.add_cell("rg", 2, p, lab);
            class_region[root] = cell;
            col.regions.push_back(cell);
        }
        int cell = class_region[root];
        if (j < nli) {
            col.region_of_linterval[j] = cell;
            b.link(cell, L.intervals[j]);
        } else {
            col.region_of_rinterval[j - nli] = cell;
            b.link(cell, R.intervals[j - nli]);
        }
    }
    // Label consistency across a region's intervals.
    for (int j = 0; j < nli; ++j) {
        int cell = col.region_of_linterval[j];
        if (b.lbl(cell) != b.lbl(L.intervals[j]))
            b.flag_wall(cell, "region label mismatch");
    }
    for (int j = 0; j < nri; ++j) {
        int cell = col.region_of_rinterval[j];
        if (b.lbl(cell) != b.lbl(R.intervals[j]))
            b.flag_wall(cell, "region label mismatch");
    }

    // Region facets: strips and legs bounding each region; strip labels.
    auto region_below_l = [&](int rootidx) -> int {
        return rootidx > 0 ? col.region_of_linterval[rootidx - 1] : -1;
    };
    auto region_above_l = [&](int rootidx) -> int {
        return rootidx < nli ? col.region_of_linterval[rootidx] : -1;
    };
    for (auto& s : col.strips) {
        int below = region_below_l(s.lroot);
        int above = region_above_l(s.lroot);
        if (below >= 0) b.link(below, s.cell);
        if (above >= 0) b.link(above, s.cell);
        const Member& m = b.members[s.member];
        int lb = below >= 0 ? b.lbl(below) : -1;
        int la = above >= 0 ? b.lbl(above) : -1;
        if (lb < 0) lb = la;
        if (la < 0) la = lb;
        if (m.is_lid) {
            b.lbl(s.cell) = std::max(la, lb);
            if (la >= 0 && lb >= 0 && la != lb && s.member <= 1) {
                // lids are artificial: both sides must agree when present
                b.flag_wall(s.cell, "lid strip separates distinct labels");
            }
        } else {
            b.lbl(s.cell) = std::min(la, lb);
            int jump = std::abs(la - lb);
            if ((m.is_c0 && jump != 1) || (!m.is_c0 && jump != 0))
                b.flag_wall(s.cell, "strip index jump mismatch");
        }
    }
    for (auto& cl : col.clusters) {
        int minlab = -1;
        auto touch = [&](int region, int leg) {
            if (region < 0) return;
            b.link(region, leg);
            if (minlab < 0 || b.lbl(region) < minlab) minlab = b.lbl(region);
        };
        for (int i : cl.lroots) {
            int leg = cl.leg_of_lroot[i];
            touch(region_below_l(i), leg);
            touch(region_above_l(i), leg);
            int lb = region_below_l(i) >= 0 ? b.lbl(region_below_l(i)) : -1;
            int la = region_above_l(i) >= 0 ? b.lbl(region_above_l(i)) : -1;
            if (lb < 0) lb = la;
            if (la < 0) la = lb;
            b.lbl(leg) = b.members[L.roots[i].member].is_lid ? std::max(la, lb)
                                                             : std::min(la, lb);
        }
        auto region_below_r = [&](int rootidx) -> int {
            return rootidx > 0 ? col.region_of_rinterval[rootidx - 1] : -1;
        };
        auto region_above_r = [&](int rootidx) -> int {
            return rootidx < nri ? col.region_of_rinterval[rootidx] : -1;
        };
        for (int i : cl.rroots) {
            int leg = cl.leg_of_rroot[i];
            touch(region_below_r(i), leg);
            touch(region_above_r(i), leg);
            int lb = region_below_r(i) >= 0 ? b.lbl(region_below_r(i)) : -1;
            int la = region_above_r(i) >= 0 ? b.lbl(region_above_r(i)) : -1;
            if (lb < 0) lb = la;
            if (la < 0) la = lb;
            b.lbl(leg) = b.members[R.roots[i].member].is_lid ? std::max(la, lb)
                                                             : std::min(la, lb);
        }
        // Event label: minimum over adjacent legs.
        int ev = cl.event_cell;
        int lab = -1;
        for (auto& [i, leg] : cl.leg_of_lroot)
            if (lab < 0 || b.lbl(leg) < lab) lab = b.lbl(leg);
        for (auto& [i, leg] : cl.leg_of_rroot)
            if (lab < 0 || b.lbl(leg) < lab) lab = b.lbl(leg);
        if (lab < 0) lab = minlab;
        b.lbl(ev) = lab < 0 ? 0 : lab;
        if (lab < 0) b.flag_wall(ev, "event with no adjacent label");
    }
}

}  // namespace

void build_triangle_strata(Strata& out, const std::map<std::vector<int>, const Strata*>& faces,
                           const StrataOptions& opt) {
    const std::vector<int>& S = out.subset;
    std::vector<std::vector<int>> edge_subsets = {{S[0], S[1]}, {S[0], S[2]}, {S[1], S[2]}};
    std::vector<const Strata*> edge_faces;
    for (auto& es : edge_subsets) {
        auto it = faces.find(es);
        if (it == faces.end()) throw QtbError("build_triangle_strata: missing edge face");
        edge_faces.push_back(it->second);
    }

    MultiPoly c0 = pull_to_chart(out.pencil.charpoly_coeffs[0], 3);
    MultiPoly dt = pull_to_chart(out.pencil.discriminant_t, 3);

    std::vector<Rational> delta_tries = {rat(1, 64), rat(1, 512), rat(1, 4096)};
    std::string last_fail = "unknown";
    for (const auto& delta : delta_tries) {
        Strata attempt;
        attempt.subset = out.subset;
        attempt.pencil = out.pencil;
        try {
            Builder b;
            b.out = &attempt;
            b.opt = &opt;
            b.delta = delta;
            {
                Member bot;
                bot.poly = MultiPoly::variable(2, 1) - MultiPoly::constant(2, delta);
                bot.is_lid = true;
                bot.name = "lid0";
                b.members.push_back(bot);
                Member hyp;
                hyp.poly = MultiPoly::variable(2, 0) + MultiPoly::variable(2, 1) -
                           MultiPoly::constant(2, Rational(1) - delta);
                hyp.is_lid = true;
                hyp.name = "lid2";
                b.members.push_back(hyp);
                auto add_curve = [&](const MultiPoly& p, bool is_c0, const std::string& name) {
                    if (p.is_zero()) {
                        attempt.audit.push_back("triangle: " + name + " vanishes identically");
                        attempt.certified = false;
                        return;
                    }
                    Member m;
                    m.poly = p;
                    m.is_c0 = is_c0;
                    m.name = name;
                    b.members.push_back(m);
                };
                add_curve(c0, true, "C0");
                add_curve(dt, false, "disc");
            }
            build_triangle_core(b, edge_faces, edge_subsets);
            out.base = std::move(attempt.base);
            out.wall_count += attempt.wall_count;
            if (!attempt.certified) out.certified = false;
            for (auto& a : attempt.audit) out.audit.push_back(a);
            return;
        } catch (const BuildFail& f) {
            last_fail = f.why;
        } catch (const QtbError& e) {
            last_fail = e.what();
        }
    }
    throw CertificationFailed("build_triangle_strata: " + last_fail);
}

void build_tetrahedron_strata(Strata& out, const std::map<std::vector<int>, const Strata*>&,
                              const StrataOptions&) {
    (void)out;
    throw CertificationFailed(
        "dimension-3 parameter strata are not certified by this build (best-effort path)");
}

}  // namespace detail
}  // namespace qtb
