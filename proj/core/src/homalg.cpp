#include "qtb/homalg.hpp"

#include <algorithm>
#include <sstream>

#include "qtb/errors.hpp"

namespace qtb {

namespace {

bool is_zero_matrix(const RatMatrix& m) {
    for (const auto& x : m.a)
        if (x != 0) return false;
    return true;
}

std::string join_subset(const std::vector<int>& q) {
    std::ostringstream os;
    for (size_t i = 0; i < q.size(); ++i) {
        if (i) os << ",";
        os << q[i];
    }
    return os.str();
}

}  // namespace

int ChainComplexQ::dim(int p) const {
    auto it = dims.find(p);
    return it == dims.end() ? 0 : it->second;
}

const RatMatrix* ChainComplexQ::diff(int p) const {
    auto it = d.find(p);
    return it == d.end() ? nullptr : &it->second;
}

RatMatrix ChainComplexQ::diff_or_zero(int p) const {
    auto it = d.find(p);
    if (it != d.end()) return it->second;
    return RatMatrix(dim(p - 1), dim(p));
}

void ChainComplexQ::validate() const {
    for (const auto& [p, m] : d) {
        if (m.rows != dim(p - 1) || m.cols != dim(p))
            throw QtbError("ChainComplexQ: differential shape mismatch");
    }
    for (const auto& [p, m] : d) {
        auto it = d.find(p + 1);
        if (it == d.end()) continue;
        if (!is_zero_matrix(m * it->second)) throw QtbError("ChainComplexQ: d.d != 0");
    }
}

std::map<int, int> ChainComplexQ::homology_ranks() const {
    std::map<int, int> out;
    for (const auto& [p, n] : dims) {
        if (n == 0) continue;
        int r_out = rank(diff_or_zero(p));
        int r_in = rank(diff_or_zero(p + 1));
        out[p] = n - r_out - r_in;
    }
    return out;
}

int CochainComplexQ::dim(int q) const {
    auto it = dims.find(q);
    return it == dims.end() ? 0 : it->second;
}

RatMatrix CochainComplexQ::delta_or_zero(int q) const {
    auto it = delta.find(q);
    if (it != delta.end()) return it->second;
    return RatMatrix(dim(q + 1), dim(q));
}

void CochainComplexQ::validate() const {
    for (const auto& [q, m] : delta) {
        if (m.rows != dim(q + 1) || m.cols != dim(q))
            throw QtbError("CochainComplexQ: differential shape mismatch");
    }
    for (const auto& [q, m] : delta) {
        auto it = delta.find(q + 1);
        if (it == delta.end()) continue;
        if (!is_zero_matrix(it->second * m)) throw QtbError("CochainComplexQ: delta.delta != 0");
    }
}

std::map<int, int> CochainComplexQ::cohomology_ranks() const {
    std::map<int, int> out;
    for (const auto& [q, n] : dims) {
        if (n == 0) continue;
        int r_out = rank(delta_or_zero(q));
        int r_in = rank(delta_or_zero(q - 1));
        out[q] = n - r_out - r_in;
    }
    return out;
}

ChainComplexQ dualize(const ChainComplexQ& c) {
    ChainComplexQ out;
    for (const auto& [p, n] : c.dims) out.dims[-p] = n;
    // Dual differential Hom(C_{p-1}) -> Hom(C_p) is transpose(d_p); at
    // negated degrees it lowers again: out.d[-(p-1)] : -(p-1) -> -p.
    for (const auto& [p, m] : c.d) out.d[-(p - 1)] = m.transpose();
    return out;
}

ChainComplexQ dualize(const CochainComplexQ& c) {
    ChainComplexQ out;
    out.dims = c.dims;
    for (const auto& [q, m] : c.delta) out.d[q + 1] = m.transpose();
    return out;
}

int DoubleComplexQ::dim(int p, int q) const {
    auto it = dims.find({p, q});
    return it == dims.end() ? 0 : it->second;
}

RatMatrix DoubleComplexQ::dv_or_zero(int p, int q) const {
    auto it = dv.find({p, q});
    if (it != dv.end()) return it->second;
    return RatMatrix(dim(p, q + vdir), dim(p, q));
}

RatMatrix DoubleComplexQ::dh_or_zero(int p, int q) const {
    auto it = dh.find({p, q});
    if (it != dh.end()) return it->second;
    return RatMatrix(dim(p + 1, q), dim(p, q));
}

void DoubleComplexQ::validate() const {
    if (vdir != 1 && vdir != -1) throw QtbError("DoubleComplexQ: vdir must be +-1");
    for (const auto& [pq, m] : dv)
        if (m.rows != dim(pq.first, pq.second + vdir) || m.cols != dim(pq.first, pq.second))
            throw QtbError("DoubleComplexQ: dv shape mismatch");
    for (const auto& [pq, m] : dh)
        if (m.rows != dim(pq.first + 1, pq.second) || m.cols != dim(pq.first, pq.second))
            throw QtbError("DoubleComplexQ: dh shape mismatch");
    for (const auto& [pq, n] : dims) {
        if (n == 0) continue;
        auto [p, q] = pq;
        if (!is_zero_matrix(dv_or_zero(p, q + vdir) * dv_or_zero(p, q)))
            throw QtbError("DoubleComplexQ: dv.dv != 0");
        if (!is_zero_matrix(dh_or_zero(p + 1, q) * dh_or_zero(p, q)))
            throw QtbError("DoubleComplexQ: dh.dh != 0");
        RatMatrix anti = dv_or_zero(p + 1, q) * dh_or_zero(p, q) +
                         dh_or_zero(p, q + vdir) * dv_or_zero(p, q);
        if (!is_zero_matrix(anti)) throw QtbError("DoubleComplexQ: dv.dh + dh.dv != 0");
    }
}

DoubleComplexQ truncate(const DoubleComplexQ& dc, int k, int l) {
    auto keep = [&](int p, int q) { return p >= 0 && p <= l + 1 && q >= k - l - 1 && q <= k; };
    DoubleComplexQ out;
    out.vdir = dc.vdir;
    for (const auto& [pq, n] : dc.dims)
        if (keep(pq.first, pq.second)) out.dims[pq] = n;
    for (const auto& [pq, m] : dc.dv)
        if (keep(pq.first, pq.second) && keep(pq.first, pq.second + dc.vdir)) out.dv[pq] = m;
    for (const auto& [pq, m] : dc.dh)
        if (keep(pq.first, pq.second) && keep(pq.first + 1, pq.second)) out.dh[pq] = m;
    for (const auto& [pq, b] : dc.blocks)
        if (keep(pq.first, pq.second)) out.blocks[pq] = b;
    return out;
}

namespace {

// Double complex with both differentials raising, entries indexed (p, q).
struct Normalized {
    std::map<std::pair<int, int>, int> dims;
    std::map<std::pair<int, int>, RatMatrix> dv;  // (p,q) -> (p,q+1)
    std::map<std::pair<int, int>, RatMatrix> dh;  // (p,q) -> (p+1,q)

    int dim(int p, int q) const {
        auto it = dims.find({p, q});
        return it == dims.end() ? 0 : it->second;
    }
    RatMatrix dv_or_zero(int p, int q) const {
        auto it = dv.find({p, q});
        return it != dv.end() ? it->second : RatMatrix(dim(p, q + 1), dim(p, q));
    }
    RatMatrix dh_or_zero(int p, int q) const {
        auto it = dh.find({p, q});
        return it != dh.end() ? it->second : RatMatrix(dim(p + 1, q), dim(p, q));
    }
};

Normalized normalize(const DoubleComplexQ& dc, int regrade_k) {
    Normalized n;
    if (dc.vdir == 1) {
        n.dims = dc.dims;
        n.dv = dc.dv;
        n.dh = dc.dh;
        return n;
    }
    int kk = regrade_k;
    if (kk < 0) {
        kk = 0;
        for (const auto& [pq, d] : dc.dims)
            if (d > 0) kk = std::max(kk, pq.second);
    }
    for (const auto& [pq, d] : dc.dims) n.dims[{pq.first, kk - pq.second}] = d;
    for (const auto& [pq, m] : dc.dv) n.dv[{pq.first, kk - pq.second}] = m;
    for (const auto& [pq, m] : dc.dh) n.dh[{pq.first, kk - pq.second}] = m;
    return n;
}

Normalized transpose_roles(const Normalized& n) {
    Normalized t;
    for (const auto& [pq, d] : n.dims) t.dims[{pq.second, pq.first}] = d;
    for (const auto& [pq, m] : n.dv) t.dh[{pq.second, pq.first}] = m;
    for (const auto& [pq, m] : n.dh) t.dv[{pq.second, pq.first}] = m;
    return t;
}

struct TotalComplex {
    std::map<int, std::vector<std::pair<int, int>>> comps;  // ordered components
    std::map<int, int> dims;
    std::map<int, RatMatrix> d;  // d[n] : Tot^n -> Tot^{n+1}
};

TotalComplex build_total(const Normalized& nc) {
    TotalComplex tc;
    for (const auto& [pq, d] : nc.dims) {
        if (d == 0) continue;
        tc.comps[pq.first + pq.second].push_back(pq);
    }
    for (auto& [n, v] : tc.comps) {
        std::sort(v.begin(), v.end());
        int total = 0;
        for (auto& pq : v) total += nc.dim(pq.first, pq.second);
        tc.dims[n] = total;
    }
    for (const auto& [n, v] : tc.comps) {
        int tgt_dim = tc.dims.count(n + 1) ? tc.dims[n + 1] : 0;
        RatMatrix m(tgt_dim, tc.dims[n]);
        auto tgt = tc.comps.find(n + 1);
        if (tgt != tc.comps.end()) {
            auto offset_of = [&](const std::vector<std::pair<int, int>>& list,
                                 std::pair<int, int> key) -> int {
                int off = 0;
                for (const auto& pq : list) {
                    if (pq == key) return off;
                    off += nc.dim(pq.first, pq.second);
                }
                return -1;
            };
            int src_off = 0;
            for (const auto& pq : v) {
                auto [p, q] = pq;
                int sd = nc.dim(p, q);
                RatMatrix mv = nc.dv_or_zero(p, q);
                int off_v = offset_of(tgt->second, {p, q + 1});
                if (off_v >= 0 && mv.rows > 0)
                    for (int i = 0; i < mv.rows; ++i)
                        for (int j = 0; j < sd; ++j) m.at(off_v + i, src_off + j) = mv.at(i, j);
                RatMatrix mh = nc.dh_or_zero(p, q);
                int off_h = offset_of(tgt->second, {p + 1, q});
                if (off_h >= 0 && mh.rows > 0)
                    for (int i = 0; i < mh.rows; ++i)
                        for (int j = 0; j < sd; ++j) m.at(off_h + i, src_off + j) += mh.at(i, j);
                src_off += sd;
            }
        }
        tc.d[n] = std::move(m);
    }
    return tc;
}

}  // namespace

std::map<int, int> total_homology_ranks(const DoubleComplexQ& dc, bool fourth_quadrant_regrading,
                                        int regrade_k) {
    if (fourth_quadrant_regrading && dc.vdir != -1)
        throw QtbError("total_homology_ranks: regrading needs vdir == -1");
    if (!fourth_quadrant_regrading && dc.vdir != 1)
        throw QtbError("total_homology_ranks: first-quadrant grading needs vdir == +1");
    Normalized nc = normalize(dc, fourth_quadrant_regrading ? regrade_k : -1);
    TotalComplex tc = build_total(nc);
    std::map<int, int> out;
    for (const auto& [n, dim_n] : tc.dims) {
        if (dim_n == 0) continue;
        int r_out = rank(tc.d[n]);
        int r_in = 0;
        auto prev = tc.d.find(n - 1);
        if (prev != tc.d.end()) r_in = rank(prev->second);
        out[n] = dim_n - r_out - r_in;
    }
    return out;
}

namespace {

RatMatrix hcat(const RatMatrix& a, const RatMatrix& b) {
    RatMatrix out(a.rows, a.cols + b.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) out.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols; ++j) out.at(i, a.cols + j) = b.at(i, j);
    }
    return out;
}

// Independent subset of columns spanning the column space.
RatMatrix column_basis(const RatMatrix& m) {
    if (m.cols == 0) return RatMatrix(m.rows, 0);
    std::vector<std::vector<Rational>> reduced;  // echelon rows over columns^T
    std::vector<int> keep;
    for (int c = 0; c < m.cols; ++c) {
        std::vector<Rational> v(m.rows);
        for (int i = 0; i < m.rows; ++i) v[i] = m.at(i, c);
        for (const auto& rv : reduced) {
            int lead = -1;
            for (int i = 0; i < m.rows; ++i)
                if (rv[i] != 0) {
                    lead = i;
                    break;
                }
            if (lead >= 0 && v[lead] != 0) {
                Rational f = v[lead] / rv[lead];
                for (int i = 0; i < m.rows; ++i) v[i] -= f * rv[i];
            }
        }
        bool nonzero = false;
        for (const auto& x : v)
            if (x != 0) {
                nonzero = true;
                break;
            }
        if (nonzero) {
            reduced.push_back(std::move(v));
            keep.push_back(c);
        }
    }
    RatMatrix out(m.rows, static_cast<int>(keep.size()));
    for (size_t c = 0; c < keep.size(); ++c)
        for (int i = 0; i < m.rows; ++i) out.at(i, static_cast<int>(c)) = m.at(i, keep[c]);
    return out;
}

}  // namespace

std::vector<SpectralPage> spectral_pages(const DoubleComplexQ& dc, Filtration orientation,
                                         int up_to_r) {
    Normalized nc = normalize(dc, -1);
    if (orientation == Filtration::Row) nc = transpose_roles(nc);
    TotalComplex tc = build_total(nc);

    // Basis of F^p inside Tot^n (coordinate subspace: components with p' >= p).
    auto filtration_basis = [&](int p, int n) -> RatMatrix {
        auto it = tc.comps.find(n);
        if (it == tc.comps.end()) return RatMatrix(0, 0);
        int total = tc.dims[n];
        std::vector<int> idx;
        int off = 0;
        for (const auto& pq : it->second) {
            int d = nc.dim(pq.first, pq.second);
            if (pq.first >= p)
                for (int j = 0; j < d; ++j) idx.push_back(off + j);
            off += d;
        }
        RatMatrix b(total, static_cast<int>(idx.size()));
        for (size_t c = 0; c < idx.size(); ++c) b.at(idx[c], static_cast<int>(c)) = 1;
        return b;
    };

    // A_r^{p,n} = {x in F^p Tot^n : D x in F^{p+r} Tot^{n+1}} (column basis).
    auto a_space = [&](int r, int p, int n) -> RatMatrix {
        RatMatrix base = filtration_basis(p, n);
        if (base.cols == 0) return base;
        auto dit = tc.d.find(n);
        if (dit == tc.d.end() || dit->second.rows == 0) return base;
        const RatMatrix& d = dit->second;
        RatMatrix db = d * base;
        auto tgt = tc.comps.find(n + 1);
        std::vector<int> bad_rows;
        if (tgt != tc.comps.end()) {
            int off = 0;
            for (const auto& pq : tgt->second) {
                int dd = nc.dim(pq.first, pq.second);
                if (pq.first < p + r)
                    for (int j = 0; j < dd; ++j) bad_rows.push_back(off + j);
                off += dd;
            }
        }
        if (bad_rows.empty()) return base;
        RatMatrix cond(static_cast<int>(bad_rows.size()), base.cols);
        for (size_t i = 0; i < bad_rows.size(); ++i)
            for (int j = 0; j < base.cols; ++j)
                cond.at(static_cast<int>(i), j) = db.at(bad_rows[i], j);
        auto kb = kernel_basis(cond);
        RatMatrix out(base.rows, static_cast<int>(kb.size()));
        for (size_t c = 0; c < kb.size(); ++c)
            for (int i = 0; i < base.rows; ++i) {
                Rational acc(0);
                for (int j = 0; j < base.cols; ++j)
                    if (kb[c][j] != 0) acc += base.at(i, j) * kb[c][j];
                out.at(i, static_cast<int>(c)) = acc;
            }
        return out;
    };

    std::vector<SpectralPage> pages;
    struct SpotData {
        RatMatrix reps;
        RatMatrix boundary;
    };
    for (int r = 1; r <= up_to_r; ++r) {
        SpectralPage page;
        page.r = r;
        std::map<std::pair<int, int>, SpotData> spots;
        for (const auto& [pq, dd] : nc.dims) {
            if (dd == 0) continue;
            auto [p, q] = pq;
            int n = p + q;
            RatMatrix ar = a_space(r, p, n);
            RatMatrix sub1 = a_space(r - 1, p + 1, n);
            RatMatrix pre = a_space(r - 1, p - r + 1, n - 1);
            RatMatrix dpre(ar.rows, pre.cols);
            auto dit = tc.d.find(n - 1);
            if (dit != tc.d.end() && pre.cols > 0 && dit->second.rows > 0) dpre = dit->second * pre;
            RatMatrix bnd = column_basis(hcat(sub1, dpre));
            int dim_e = rank(ar) - bnd.cols;
            if (dim_e < 0) throw QtbError("spectral_pages: negative dimension");
            page.dims[pq] = dim_e;
            RatMatrix reps(ar.rows, 0);
            RatMatrix cur = bnd;
            int cur_rank = bnd.cols;
            for (int c = 0; c < ar.cols && reps.cols < dim_e; ++c) {
                RatMatrix cand(ar.rows, 1);
                for (int i = 0; i < ar.rows; ++i) cand.at(i, 0) = ar.at(i, c);
                RatMatrix test = hcat(cur, cand);
                if (rank(test) > cur_rank) {
                    cur = test;
                    ++cur_rank;
                    reps = hcat(reps, cand);
                }
            }
            spots[pq] = SpotData{std::move(reps), std::move(bnd)};
        }
        for (const auto& [pq, sd] : spots) {
            auto [p, q] = pq;
            std::pair<int, int> tgt{p + r, q - r + 1};
            auto ts = spots.find(tgt);
            int tdim = page.dims.count(tgt) ? page.dims[tgt] : 0;
            int sdim = page.dims[pq];
            RatMatrix dm(tdim, sdim);
            if (tdim > 0 && sdim > 0 && ts != spots.end()) {
                int n = p + q;
                auto dit = tc.d.find(n);
                if (dit != tc.d.end() && dit->second.rows > 0) {
                    const SpotData& td = ts->second;
                    RatMatrix sys = hcat(td.reps, td.boundary);
                    for (int c = 0; c < sdim; ++c) {
                        std::vector<Rational> rhs(dit->second.rows, Rational(0));
                        for (int i = 0; i < dit->second.rows; ++i) {
                            Rational acc(0);
                            for (int j = 0; j < sd.reps.rows; ++j)
                                if (dit->second.at(i, j) != 0)
                                    acc += dit->second.at(i, j) * sd.reps.at(j, c);
                            rhs[i] = acc;
                        }
                        auto sol = solve(sys, rhs);
                        if (!sol) throw QtbError("spectral_pages: d_r image escapes target");
                        for (int i = 0; i < tdim; ++i) dm.at(i, c) = (*sol)[i];
                    }
                }
            }
            page.d[pq] = std::move(dm);
        }
        pages.push_back(std::move(page));
    }
    return pages;
}

void SimplicialComplex::insert_with_faces(std::vector<int> simplex) {
    std::sort(simplex.begin(), simplex.end());
    simplex.erase(std::unique(simplex.begin(), simplex.end()), simplex.end());
    int n = static_cast<int>(simplex.size());
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        std::vector<int> face;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) face.push_back(simplex[i]);
        simplices.insert(std::move(face));
    }
}

SimplicialComplex SimplicialComplex::union_with(const SimplicialComplex& o) const {
    SimplicialComplex u = *this;
    u.simplices.insert(o.simplices.begin(), o.simplices.end());
    return u;
}

SimplicialComplex SimplicialComplex::intersection_with(const SimplicialComplex& o) const {
    SimplicialComplex r;
    for (const auto& s : simplices)
        if (o.simplices.count(s)) r.simplices.insert(s);
    return r;
}

ChainComplexQ SimplicialComplex::chain_complex() const {
    std::map<int, std::vector<std::vector<int>>> by_dim;
    for (const auto& s : simplices) by_dim[static_cast<int>(s.size()) - 1].push_back(s);
    std::map<std::vector<int>, int> index;
    for (auto& [d, list] : by_dim) {
        std::sort(list.begin(), list.end());
        for (size_t i = 0; i < list.size(); ++i) index[list[i]] = static_cast<int>(i);
    }
    ChainComplexQ cc;
    for (const auto& [d, list] : by_dim) cc.dims[d] = static_cast<int>(list.size());
    for (const auto& [d, list] : by_dim) {
        if (d == 0) continue;
        RatMatrix m(static_cast<int>(by_dim[d - 1].size()), static_cast<int>(list.size()));
        for (size_t c = 0; c < list.size(); ++c) {
            const auto& s = list[c];
            for (size_t i = 0; i < s.size(); ++i) {
                std::vector<int> face = s;
                face.erase(face.begin() + static_cast<long>(i));
                m.at(index.at(face), static_cast<int>(c)) = (i % 2 == 0) ? 1 : -1;
            }
        }
        cc.d[d] = std::move(m);
    }
    return cc;
}

std::map<int, int> SimplicialComplex::betti() const {
    if (simplices.empty()) return {};
    return chain_complex().homology_ranks();
}

DoubleComplexQ mv_double_complex(const std::vector<SimplicialComplex>& cover) {
    int s = static_cast<int>(cover.size());
    if (s == 0) throw QtbError("mv_double_complex: empty cover");
    DoubleComplexQ dc;
    dc.vdir = -1;

    struct Tuple {
        SimplicialComplex un;
        std::map<int, std::vector<std::vector<int>>> by_dim;
        std::map<std::vector<int>, int> index;
    };
    std::map<std::vector<int>, Tuple> tuples;
    for (unsigned mask = 1; mask < (1u << s); ++mask) {
        std::vector<int> mem;
        for (int i = 0; i < s; ++i)
            if (mask & (1u << i)) mem.push_back(i);
        Tuple t;
        t.un = cover[mem[0]];
        for (size_t i = 1; i < mem.size(); ++i) t.un = t.un.union_with(cover[mem[i]]);
        for (const auto& sx : t.un.simplices)
            t.by_dim[static_cast<int>(sx.size()) - 1].push_back(sx);
        for (auto& [d, list] : t.by_dim) {
            std::sort(list.begin(), list.end());
            for (size_t i = 0; i < list.size(); ++i) t.index[list[i]] = static_cast<int>(i);
        }
        tuples[mem] = std::move(t);
    }

    std::map<int, std::vector<std::vector<int>>> tuples_by_p;
    for (const auto& [mem, t] : tuples)
        tuples_by_p[static_cast<int>(mem.size()) - 1].push_back(mem);
    for (auto& [p, v] : tuples_by_p) std::sort(v.begin(), v.end());

    int qmax = 0;
    for (const auto& [mem, t] : tuples)
        for (const auto& [d, list] : t.by_dim) qmax = std::max(qmax, d);

    auto block_dim = [&](const std::vector<int>& mem, int q) -> int {
        const auto& t = tuples.at(mem);
        auto it = t.by_dim.find(q);
        return it == t.by_dim.end() ? 0 : static_cast<int>(it->second.size());
    };

    for (const auto& [p, mems] : tuples_by_p)
        for (int q = 0; q <= qmax; ++q) {
            int total = 0;
            std::vector<std::pair<std::string, int>> blocks;
            for (const auto& mem : mems) {
                int d = block_dim(mem, q);
                blocks.push_back({join_subset(mem), d});
                total += d;
            }
            dc.dims[{p, q}] = total;
            dc.blocks[{p, q}] = blocks;
        }

    // Vertical: blockwise simplicial boundary, twisted by (-1)^p.
    for (const auto& [p, mems] : tuples_by_p)
        for (int q = 1; q <= qmax; ++q) {
            RatMatrix m(dc.dim(p, q - 1), dc.dim(p, q));
            int roff = 0, coff = 0;
            for (const auto& mem : mems) {
                const Tuple& t = tuples.at(mem);
                int dq = block_dim(mem, q), dq1 = block_dim(mem, q - 1);
                if (dq > 0 && dq1 > 0) {
                    const auto& list = t.by_dim.at(q);
                    for (int c = 0; c < dq; ++c) {
                        const auto& sx = list[c];
                        for (size_t i = 0; i < sx.size(); ++i) {
                            std::vector<int> face = sx;
                            face.erase(face.begin() + static_cast<long>(i));
                            Rational sign((i % 2 == 0) ? 1 : -1);
                            if (p % 2 == 1) sign = -sign;
                            m.at(roff + t.index.at(face), coff + c) = sign;
                        }
                    }
                }
                roff += dq1;
                coff += dq;
            }
            dc.dv[{p, q}] = std::move(m);
        }

    // Horizontal: signed deletion sums realized by inclusions of unions.
    for (const auto& [p, mems] : tuples_by_p) {
        auto nxt = tuples_by_p.find(p + 1);
        if (nxt == tuples_by_p.end()) continue;
        for (int q = 0; q <= qmax; ++q) {
            RatMatrix m(dc.dim(p + 1, q), dc.dim(p, q));
            int roff = 0;
            for (const auto& tmem : nxt->second) {
                const Tuple& tt = tuples.at(tmem);
                int rdim = block_dim(tmem, q);
                if (rdim > 0) {
                    for (size_t del = 0; del < tmem.size(); ++del) {
                        std::vector<int> smem = tmem;
                        smem.erase(smem.begin() + static_cast<long>(del));
                        const Tuple& st = tuples.at(smem);
                        int coff = 0;
                        for (const auto& mem : mems) {
                            if (mem == smem) break;
                            coff += block_dim(mem, q);
                        }
                        int sdim = block_dim(smem, q);
                        if (sdim == 0) continue;
                        Rational sign((del % 2 == 0) ? 1 : -1);
                        const auto& slist = st.by_dim.at(q);
                        for (int c = 0; c < sdim; ++c)
                            m.at(roff + tt.index.at(slist[c]), coff + c) += sign;
                    }
                }
                roff += rdim;
            }
            dc.dh[{p, q}] = std::move(m);
        }
    }
    return dc;
}

std::map<std::pair<int, int>, RatMatrix> inclusion_morphism(const DoubleComplexQ& super,
                                                            const DoubleComplexQ& sub) {
    std::map<std::pair<int, int>, RatMatrix> phi;
    for (const auto& [pq, dim_sub] : sub.dims) {
        int dim_super = super.dim(pq.first, pq.second);
        RatMatrix m(dim_sub, dim_super);
        if (dim_sub > 0) {
            auto bs = super.blocks.find(pq);
            auto bb = sub.blocks.find(pq);
            if (bs == super.blocks.end() || bb == sub.blocks.end())
                throw ComponentMismatch("inclusion_morphism: missing block labels");
            std::map<std::string, std::pair<int, int>> super_off;
            int off = 0;
            for (const auto& [lab, d] : bs->second) {
                super_off[lab] = {off, d};
                off += d;
            }
            int roff = 0;
            for (const auto& [lab, d] : bb->second) {
                if (d == 0) continue;
                auto it = super_off.find(lab);
                if (it == super_off.end() || it->second.second != d)
                    throw ComponentMismatch("inclusion_morphism: block mismatch: " + lab);
                for (int i = 0; i < d; ++i) m.at(roff + i, it->second.first + i) = 1;
                roff += d;
            }
        }
        phi[pq] = std::move(m);
    }
    for (const auto& [pq, m] : phi) {
        auto [p, q] = pq;
        auto tgt_v = phi.find({p, q + sub.vdir});
        if (tgt_v != phi.end()) {
            RatMatrix lhs = tgt_v->second * super.dv_or_zero(p, q);
            RatMatrix rhs = sub.dv_or_zero(p, q) * m;
            if (!(lhs == rhs)) throw ComponentMismatch("inclusion_morphism: dv does not commute");
        }
        auto tgt_h = phi.find({p + 1, q});
        if (tgt_h != phi.end()) {
            RatMatrix lhs = tgt_h->second * super.dh_or_zero(p, q);
            RatMatrix rhs = sub.dh_or_zero(p, q) * m;
            if (!(lhs == rhs)) throw ComponentMismatch("inclusion_morphism: dh does not commute");
        }
    }
    return phi;
}

DoubleComplexQ assemble_d(
    const std::map<std::vector<int>, CochainComplexQ>& modules,
    const std::map<std::pair<std::vector<int>, std::vector<int>>, std::map<int, RatMatrix>>&
        phi_dual) {
    DoubleComplexQ dc;
    dc.vdir = -1;
    if (modules.empty()) return dc;

    std::map<std::vector<int>, ChainComplexQ> duals;
    std::map<int, std::vector<std::vector<int>>> by_p;
    int qmax = 0;
    for (const auto& [sub, mod] : modules) {
        duals[sub] = dualize(mod);
        by_p[static_cast<int>(sub.size()) - 1].push_back(sub);
        for (const auto& [q, d] : mod.dims)
            if (d > 0) qmax = std::max(qmax, q);
    }
    for (auto& [p, v] : by_p) std::sort(v.begin(), v.end());

    auto block_dim = [&](const std::vector<int>& sub, int q) {
        return duals.at(sub).dim(q);
    };

    for (const auto& [p, subs] : by_p)
        for (int q = 0; q <= qmax; ++q) {
            int total = 0;
            std::vector<std::pair<std::string, int>> blocks;
            for (const auto& sub : subs) {
                int d = block_dim(sub, q);
                blocks.push_back({join_subset(sub), d});
                total += d;
            }
            dc.dims[{p, q}] = total;
            dc.blocks[{p, q}] = blocks;
        }

    for (const auto& [p, subs] : by_p)
        for (int q = 1; q <= qmax; ++q) {
            RatMatrix m(dc.dim(p, q - 1), dc.dim(p, q));
            int roff = 0, coff = 0;
            for (const auto& sub : subs) {
                int dq = block_dim(sub, q), dq1 = block_dim(sub, q - 1);
                if (dq > 0 && dq1 > 0) {
                    RatMatrix blk = duals.at(sub).diff_or_zero(q);
                    for (int i = 0; i < dq1; ++i)
                        for (int j = 0; j < dq; ++j)
                            m.at(roff + i, coff + j) = (p % 2 == 0) ? blk.at(i, j) : -blk.at(i, j);
                }
                roff += dq1;
                coff += dq;
            }
            dc.dv[{p, q}] = std::move(m);
        }

    for (const auto& [p, subs] : by_p) {
        auto nxt = by_p.find(p + 1);
        if (nxt == by_p.end()) continue;
        for (int q = 0; q <= qmax; ++q) {
            RatMatrix m(dc.dim(p + 1, q), dc.dim(p, q));
            int roff = 0;
            for (const auto& big : nxt->second) {
                int rdim = block_dim(big, q);
                if (rdim > 0) {
                    for (size_t del = 0; del < big.size(); ++del) {
                        std::vector<int> small = big;
                        small.erase(small.begin() + static_cast<long>(del));
                        auto pit = phi_dual.find({small, big});
                        if (pit == phi_dual.end())
                            throw AssemblyIncomplete("assemble_d: missing dual restriction map");
                        int sdim = block_dim(small, q);
                        if (sdim == 0) continue;
                        int coff = 0;
                        for (const auto& sub : subs) {
                            if (sub == small) break;
                            coff += block_dim(sub, q);
                        }
                        Rational sign((del % 2 == 0) ? 1 : -1);
                        auto mit = pit->second.find(q);
                        if (mit != pit->second.end()) {
                            const RatMatrix& blk = mit->second;
                            for (int i = 0; i < rdim; ++i)
                                for (int j = 0; j < sdim; ++j)
                                    if (blk.at(i, j) != 0)
                                        m.at(roff + i, coff + j) += sign * blk.at(i, j);
                        }
                    }
                }
                roff += rdim;
            }
            dc.dh[{p, q}] = std::move(m);
        }
    }
    return dc;
}

}  // namespace qtb
