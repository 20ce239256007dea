#include <random>

#include "doctest.h"
#include "qtb/homalg.hpp"

using namespace qtb;

namespace {

std::mt19937 rng(777);

int rand_int(int lo, int hi) {
    std::uniform_int_distribution<int> d(lo, hi);
    return d(rng);
}

// Random chain complex with d.d = 0: d_{p+1} maps into ker(d_p).
ChainComplexQ random_chain_complex(int top, int max_dim) {
    ChainComplexQ cc;
    for (int p = 0; p <= top; ++p) cc.dims[p] = rand_int(0, max_dim);
    for (int p = 1; p <= top; ++p) {
        int rows = cc.dims[p - 1], cols = cc.dims[p];
        if (rows == 0 || cols == 0) continue;
        auto prev = cc.d.find(p - 1);
        if (p == 1 || prev == cc.d.end()) {
            RatMatrix m(rows, cols);
            for (auto& x : m.a) x = rat(rand_int(-2, 2));
            cc.d[p] = m;
        } else {
            auto kb = kernel_basis(prev->second);
            RatMatrix m(rows, cols);
            for (int c = 0; c < cols; ++c)
                for (const auto& v : kb) {
                    Rational coef = rat(rand_int(-2, 2));
                    if (coef == 0) continue;
                    for (int i = 0; i < rows; ++i) m.at(i, c) += coef * v[i];
                }
            cc.d[p] = m;
        }
    }
    cc.validate();
    return cc;
}

// Tensor product as a fourth-quadrant double complex after regrading p so
// the horizontal differential raises. Kuenneth gives the homology oracle.
DoubleComplexQ tensor_double_complex(const ChainComplexQ& c, const ChainComplexQ& e) {
    int cp_max = c.dims.empty() ? 0 : c.dims.rbegin()->first;
    int eq_max = e.dims.empty() ? 0 : e.dims.rbegin()->first;
    DoubleComplexQ out;
    out.vdir = -1;
    for (int p = 0; p <= cp_max; ++p)
        for (int q = 0; q <= eq_max; ++q) out.dims[{cp_max - p, q}] = c.dim(p) * e.dim(q);
    for (int p = 0; p <= cp_max; ++p) {
        int np = c.dim(p);
        if (np == 0) continue;
        for (int q = 1; q <= eq_max; ++q) {
            RatMatrix eq = e.diff_or_zero(q);
            int nq = e.dim(q);
            if (nq == 0 || eq.rows == 0) continue;
            RatMatrix m(np * eq.rows, np * nq);
            for (int i = 0; i < np; ++i)
                for (int r = 0; r < eq.rows; ++r)
                    for (int cx = 0; cx < nq; ++cx)
                        m.at(i * eq.rows + r, i * nq + cx) =
                            (p % 2 == 0) ? eq.at(r, cx) : -eq.at(r, cx);
            out.dv[{cp_max - p, q}] = std::move(m);
        }
    }
    for (int p = cp_max; p >= 1; --p) {
        RatMatrix cd = c.diff_or_zero(p);
        if (cd.rows == 0 || cd.cols == 0) continue;
        for (int q = 0; q <= eq_max; ++q) {
            int nq = e.dim(q);
            if (nq == 0) continue;
            RatMatrix m(cd.rows * nq, cd.cols * nq);
            for (int r = 0; r < cd.rows; ++r)
                for (int cx = 0; cx < cd.cols; ++cx) {
                    if (cd.at(r, cx) == 0) continue;
                    for (int j = 0; j < nq; ++j) m.at(r * nq + j, cx * nq + j) = cd.at(r, cx);
                }
            out.dh[{cp_max - p, q}] = std::move(m);
        }
    }
    out.validate();
    return out;
}

SimplicialComplex random_complex(int vertices, int tries) {
    SimplicialComplex sc;
    for (int i = 0; i < tries; ++i) {
        int n = rand_int(1, 3);
        std::vector<int> s;
        for (int j = 0; j < n; ++j) s.push_back(rand_int(0, vertices - 1));
        sc.insert_with_faces(s);
    }
    return sc;
}

}  // namespace

TEST_CASE("dualize basics") {
    ChainComplexQ zero;
    CHECK(dualize(zero).dims.empty());

    ChainComplexQ one;
    one.dims[0] = 1;
    CHECK(dualize(one).dim(0) == 1);

    ChainComplexQ cc = random_chain_complex(3, 3);
    ChainComplexQ dd = dualize(dualize(cc));
    for (const auto& [p, n] : cc.dims) CHECK(dd.dim(p) == n);
    for (const auto& [p, m] : cc.d) {
        if (m.rows == 0 || m.cols == 0) continue;
        CHECK(dd.d.at(p) == m);
    }
    auto h = cc.homology_ranks();
    auto hd = dualize(cc).homology_ranks();
    for (const auto& [p, r] : h) {
        if (cc.dim(p) == 0) continue;
        CHECK(hd.at(-p) == r);
    }
}

TEST_CASE("total homology basics") {
    DoubleComplexQ dc;
    dc.vdir = 1;
    dc.dims[{0, 0}] = 1;
    CHECK(total_homology_ranks(dc, false).at(0) == 1);

    // Koszul square, exact everywhere.
    DoubleComplexQ kz;
    kz.vdir = 1;
    kz.dims[{0, 0}] = kz.dims[{0, 1}] = kz.dims[{1, 0}] = kz.dims[{1, 1}] = 1;
    RatMatrix id1 = RatMatrix::identity(1);
    kz.dh[{0, 0}] = id1;
    kz.dh[{0, 1}] = id1;
    kz.dv[{0, 0}] = id1;
    kz.dv[{1, 0}] = id1 * rat(-1);
    kz.validate();
    for (const auto& [n, r] : total_homology_ranks(kz, false)) CHECK(r == 0);
}

TEST_CASE("truncate window") {
    DoubleComplexQ dc;
    dc.vdir = -1;
    dc.dims[{0, 2}] = 2;
    dc.dims[{1, 2}] = 1;
    dc.dims[{0, 0}] = 3;
    DoubleComplexQ t = truncate(dc, 2, 0);  // p in [0,1], q in [1,2]
    CHECK(t.dim(0, 2) == 2);
    CHECK(t.dim(1, 2) == 1);
    CHECK(t.dim(0, 0) == 0);
    DoubleComplexQ t2 = truncate(t, 2, 0);
    CHECK(t2.dims == t.dims);
    DoubleComplexQ t3 = truncate(dc, 10, 0);
    int total = 0;
    for (const auto& [pq, d] : t3.dims) total += d;
    CHECK(total == 0);
}

TEST_CASE("euler characteristic identity on random tensor complexes") {
    for (int trial = 0; trial < 10; ++trial) {
        DoubleComplexQ dc =
            tensor_double_complex(random_chain_complex(2, 2), random_chain_complex(2, 2));
        int kk = 0;
        for (const auto& [pq, d] : dc.dims)
            if (d > 0) kk = std::max(kk, pq.second);
        auto h = total_homology_ranks(dc, true, kk);
        long chi_dim = 0, chi_h = 0;
        for (const auto& [pq, d] : dc.dims) {
            int n = pq.first + (kk - pq.second);
            chi_dim += (n % 2 == 0 ? d : -d);
        }
        for (const auto& [n, r] : h) chi_h += (n % 2 == 0 ? r : -r);
        CHECK(chi_dim == chi_h);
    }
}

TEST_CASE("spectral pages basics") {
    DoubleComplexQ dc;
    dc.vdir = -1;
    dc.dims[{0, 0}] = 2;
    dc.dims[{1, 1}] = 3;
    auto pages = spectral_pages(dc, Filtration::Column, 3);
    CHECK(pages[0].dims.at({0, 1}) == 2);  // q normalized to K - q with K = 1
    CHECK(pages[0].dims.at({1, 0}) == 3);
    CHECK(pages[2].dims == pages[0].dims);

    DoubleComplexQ sc;
    sc.vdir = -1;
    sc.dims[{0, 0}] = 1;
    sc.dims[{0, 1}] = 1;
    sc.dv[{0, 1}] = RatMatrix::identity(1);
    auto ps = spectral_pages(sc, Filtration::Column, 2);
    int tot1 = 0;
    for (const auto& [pq, d] : ps[0].dims) tot1 += d;
    CHECK(tot1 == 0);
}

TEST_CASE("spectral sequence converges to total homology") {
    for (int trial = 0; trial < 50; ++trial) {
        DoubleComplexQ dc =
            tensor_double_complex(random_chain_complex(2, 2), random_chain_complex(2, 2));
        int kk = 0;
        for (const auto& [pq, d] : dc.dims)
            if (d > 0) kk = std::max(kk, pq.second);
        auto h = total_homology_ranks(dc, true, kk);
        for (auto orient : {Filtration::Column, Filtration::Row}) {
            auto pages = spectral_pages(dc, orient, 6);
            const SpectralPage& einf = pages.back();
            std::map<int, int> sums;
            for (const auto& [pq, d] : einf.dims) sums[pq.first + pq.second] += d;
            for (const auto& [n, r] : h) CHECK((sums.count(n) ? sums[n] : 0) == r);
            for (const auto& [n, s] : sums) CHECK((h.count(n) ? h.at(n) : 0) == s);
        }
    }
}

TEST_CASE("kuenneth oracle for tensor complexes") {
    for (int trial = 0; trial < 10; ++trial) {
        ChainComplexQ c = random_chain_complex(2, 2);
        ChainComplexQ e = random_chain_complex(2, 2);
        DoubleComplexQ dc = tensor_double_complex(c, e);
        int cp_max = c.dims.empty() ? 0 : c.dims.rbegin()->first;
        int kk = 0;
        for (const auto& [pq, d] : dc.dims)
            if (d > 0) kk = std::max(kk, pq.second);
        auto h = total_homology_ranks(dc, true, kk);
        auto hc = c.homology_ranks();
        auto he = e.homology_ranks();
        std::map<int, int> expect;
        for (const auto& [p, rp] : hc)
            for (const auto& [q, rq] : he)
                if (rp > 0 && rq > 0) expect[(cp_max - p) + (kk - q)] += rp * rq;
        for (const auto& [n, r] : h) CHECK(r == (expect.count(n) ? expect[n] : 0));
        for (const auto& [n, r] : expect) CHECK(r == (h.count(n) ? h.at(n) : 0));
    }
}

TEST_CASE("simplicial complexes and betti") {
    SimplicialComplex triangle_boundary;
    triangle_boundary.insert_with_faces({0, 1});
    triangle_boundary.insert_with_faces({1, 2});
    triangle_boundary.insert_with_faces({0, 2});
    auto b = triangle_boundary.betti();
    CHECK(b.at(0) == 1);
    CHECK(b.at(1) == 1);

    SimplicialComplex filled;
    filled.insert_with_faces({0, 1, 2});
    auto bf = filled.betti();
    CHECK(bf.at(0) == 1);
    CHECK((bf.count(1) == 0 || bf.at(1) == 0));

    SimplicialComplex two_edges;
    two_edges.insert_with_faces({0, 1});
    two_edges.insert_with_faces({2, 3});
    CHECK(two_edges.betti().at(0) == 2);
}

TEST_CASE("mv double complex: interval cover contracts to a point") {
    SimplicialComplex a1, a2;
    a1.insert_with_faces({1, 2});
    a2.insert_with_faces({2, 3});
    DoubleComplexQ dc = mv_double_complex({a1, a2});
    dc.validate();
    int kk = 0;
    for (const auto& [pq, d] : dc.dims)
        if (d > 0) kk = std::max(kk, pq.second);
    auto h = total_homology_ranks(dc, true, kk);
    CHECK(h.at(kk) == 1);  // b_0 of the intersection {2}
    for (const auto& [n, r] : h)
        if (n != kk) CHECK(r == 0);
}

TEST_CASE("mv double complex: duplicated circle cover") {
    SimplicialComplex circ;
    circ.insert_with_faces({0, 1});
    circ.insert_with_faces({1, 2});
    circ.insert_with_faces({0, 2});
    DoubleComplexQ dc = mv_double_complex({circ, circ});
    dc.validate();
    int kk = 0;
    for (const auto& [pq, d] : dc.dims)
        if (d > 0) kk = std::max(kk, pq.second);
    auto h = total_homology_ranks(dc, true, kk);
    CHECK(h.at(kk - 0) == 1);  // b_0
    CHECK(h.at(kk - 1) == 1);  // b_1
}

TEST_CASE("mv double complex: two arcs meeting in two points") {
    SimplicialComplex a1, a2;
    a1.insert_with_faces({0, 1});
    a1.insert_with_faces({1, 2});
    a2.insert_with_faces({2, 3});
    a2.insert_with_faces({3, 0});
    auto inter = a1.intersection_with(a2);
    REQUIRE(inter.betti().at(0) == 2);
    DoubleComplexQ dc = mv_double_complex({a1, a2});
    dc.validate();
    int kk = 0;
    for (const auto& [pq, d] : dc.dims)
        if (d > 0) kk = std::max(kk, pq.second);
    auto h = total_homology_ranks(dc, true, kk);
    CHECK(h.at(kk) == 2);
    for (const auto& [n, r] : h)
        if (n != kk) CHECK(r == 0);
}

TEST_CASE("mv double complex: one-set cover") {
    SimplicialComplex a;
    a.insert_with_faces({0, 1, 2});
    a.insert_with_faces({2, 3});
    DoubleComplexQ dc = mv_double_complex({a});
    dc.validate();
    CHECK(dc.dh.empty());
    int kk = 0;
    for (const auto& [pq, d] : dc.dims)
        if (d > 0) kk = std::max(kk, pq.second);
    auto h = total_homology_ranks(dc, true, kk);
    auto hb = a.betti();
    for (const auto& [d, r] : hb) {
        int got = h.count(kk - d) ? h.at(kk - d) : 0;
        CHECK(got == r);
    }
}

TEST_CASE("mv total homology equals intersection homology on random covers") {
    for (int trial = 0; trial < 50; ++trial) {
        int nsets = rand_int(2, 4);
        std::vector<SimplicialComplex> cover;
        for (int i = 0; i < nsets; ++i) cover.push_back(random_complex(8, rand_int(2, 5)));
        for (auto& sc : cover) sc.insert_with_faces({0, 1});
        SimplicialComplex inter = cover[0];
        for (int i = 1; i < nsets; ++i) inter = inter.intersection_with(cover[i]);
        DoubleComplexQ dc = mv_double_complex(cover);
        dc.validate();
        int kk = 0;
        for (const auto& [pq, dd] : dc.dims)
            if (dd > 0) kk = std::max(kk, pq.second);
        auto h = total_homology_ranks(dc, true, kk);
        auto hb = inter.betti();
        for (int d = 0; d <= kk; ++d) {
            int want = hb.count(d) ? hb.at(d) : 0;
            int got = h.count(kk - d) ? h.at(kk - d) : 0;
            CHECK(got == want);
        }
    }
}

TEST_CASE("generalized MV rows are exact") {
    for (int trial = 0; trial < 50; ++trial) {
        int nsets = rand_int(2, 4);
        std::vector<SimplicialComplex> cover;
        for (int i = 0; i < nsets; ++i) cover.push_back(random_complex(8, rand_int(2, 5)));
        for (auto& sc : cover) sc.insert_with_faces({0});
        SimplicialComplex inter = cover[0];
        for (int i = 1; i < nsets; ++i) inter = inter.intersection_with(cover[i]);
        DoubleComplexQ dc = mv_double_complex(cover);
        auto icc = inter.chain_complex();
        int kk = 0;
        for (const auto& [pq, dd] : dc.dims)
            if (dd > 0) kk = std::max(kk, pq.second);
        for (int q = 0; q <= kk; ++q) {
            int prev_rank = icc.dim(q);  // image rank of the augmentation injection
            for (int p = 0;; ++p) {
                int dim_here = dc.dim(p, q);
                if (dim_here == 0 && dc.dim(p + 1, q) == 0) break;
                int r_next = rank(dc.dh_or_zero(p, q));
                CHECK(dim_here - r_next == prev_rank);
                prev_rank = r_next;
            }
        }
    }
}

TEST_CASE("inclusion morphism identity and projection") {
    SimplicialComplex a1, a2;
    a1.insert_with_faces({0, 1});
    a2.insert_with_faces({1, 2});
    DoubleComplexQ super = mv_double_complex({a1, a2});
    auto phi_id = inclusion_morphism(super, super);
    for (const auto& [pq, m] : phi_id) CHECK(m == RatMatrix::identity(m.rows));

    DoubleComplexQ sub = mv_double_complex({a1});
    auto phi = inclusion_morphism(super, sub);
    CHECK(!phi.empty());
    for (const auto& [pq, m] : phi) {
        CHECK(m.rows == sub.dim(pq.first, pq.second));
        CHECK(m.cols == super.dim(pq.first, pq.second));
    }
}
