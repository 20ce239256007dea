#include <random>

#include "doctest.h"
#include "qtb/bernstein.hpp"
#include "qtb/eigenframe.hpp"
#include "qtb/interval_linalg.hpp"
#include "qtb/matrix.hpp"
#include "qtb/poly.hpp"

using namespace qtb;

namespace {

RatMatrix diag(std::vector<Rational> d) {
    RatMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return m;
}

std::mt19937 rng(20240817);

Rational rand_rat(int max_num = 9, int max_den = 5) {
    std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
    return rat(num(rng), den(rng));
}

RatMatrix rand_sym(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) m.at(i, j) = m.at(j, i) = rand_rat();
    return m;
}

}  // namespace

TEST_CASE("rank basics") {
    CHECK(rank(RatMatrix(3, 3)) == 0);
    CHECK(rank(RatMatrix::identity(3)) == 3);
    RatMatrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 2;
    m.at(1, 0) = 2;
    m.at(1, 1) = 4;
    CHECK(rank(m) == 1);
}

TEST_CASE("rank properties") {
    for (int trial = 0; trial < 20; ++trial) {
        RatMatrix m(4, 5);
        for (auto& x : m.a) x = rand_rat();
        CHECK(rank(m) == rank(m.transpose()));
        CHECK(rank(m) + static_cast<int>(kernel_basis(m).size()) == m.cols);
        for (const auto& v : kernel_basis(m)) {
            auto r = m.apply(v);
            for (const auto& x : r) CHECK(x == 0);
        }
    }
}

TEST_CASE("kernel basics") {
    CHECK(kernel_basis(RatMatrix::identity(2)).empty());
    CHECK(kernel_basis(RatMatrix(2, 2)).size() == 2);
    RatMatrix row(1, 2);
    row.at(0, 0) = 1;
    row.at(0, 1) = 1;
    auto kb = kernel_basis(row);
    REQUIRE(kb.size() == 1);
    CHECK(kb[0][0] == -kb[0][1]);
    CHECK(kb[0][0] != 0);
}

TEST_CASE("charpoly examples") {
    // diag(1,-2) -> T^2 - T - 2
    UniPoly f = charpoly(diag({rat(1), rat(-2)}));
    CHECK(f.c == std::vector<Rational>{rat(-2), rat(-1), rat(1)});
    // 1x1 [0] -> T
    UniPoly g = charpoly(diag({rat(0)}));
    CHECK(g.c == std::vector<Rational>{rat(0), rat(1)});
    // diag(1,1,1) -> (T+1)^3
    UniPoly h = charpoly(diag({rat(1), rat(1), rat(1)}));
    CHECK(h.c == std::vector<Rational>{rat(1), rat(3), rat(3), rat(1)});
    CHECK_THROWS([] {
        RatMatrix m(2, 2);
        m.at(0, 1) = 1;  // not symmetric
        charpoly(m);
    }());
}

TEST_CASE("charpoly roots at -lambda on diagonal matrices") {
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<Rational> d{rand_rat(), rand_rat(), rand_rat(), rand_rat()};
        UniPoly f = charpoly(diag(d));
        for (const auto& lam : d) CHECK(f.eval(-lam) == 0);
    }
}

TEST_CASE("adjugate identity") {
    for (int trial = 0; trial < 8; ++trial) {
        RatMatrix m = rand_sym(4);
        auto cp = charpoly_with_adjugate(m);
        // (m + tI) adj(t) == F(t) I at a few rational t
        for (long tv : {0L, 1L, -3L}) {
            Rational t(tv);
            RatMatrix shifted = m + RatMatrix::identity(4) * t;
            RatMatrix adj(4, 4);
            Rational tp(1);
            for (size_t j = 0; j < cp.b.size(); ++j) {
                adj = adj + cp.b[j] * tp;
                tp *= t;
            }
            RatMatrix prod = shifted * adj;
            Rational f = cp.f.eval(t);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) CHECK(prod.at(i, j) == (i == j ? f : Rational(0)));
        }
    }
}

TEST_CASE("signature examples and properties") {
    Signature s1 = signature(diag({rat(-1), rat(-1), rat(2)}));
    CHECK(s1 == Signature{2, 0, 1});
    CHECK(signature(RatMatrix(2, 2)) == Signature{0, 2, 0});
    RatMatrix sw(2, 2);
    sw.at(0, 1) = sw.at(1, 0) = 1;
    CHECK(signature(sw) == Signature{1, 0, 1});

    for (int trial = 0; trial < 20; ++trial) {
        RatMatrix m = rand_sym(4);
        Signature s = signature(m);
        CHECK(s.n_neg + s.n_zero + s.n_pos == 4);
        Signature sneg = signature(m * Rational(-1));
        CHECK(sneg.n_neg == s.n_pos);
        CHECK(sneg.n_pos == s.n_neg);
        CHECK(sneg.n_zero == s.n_zero);
    }
}

TEST_CASE("root isolation examples") {
    // T^2 - 2
    UniPoly p({rat(-2), rat(0), rat(1)});
    auto roots = isolate_real_roots(p, rat(1, 16));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].hi < roots[1].lo);
    for (const auto& r : roots) CHECK(r.width() <= rat(1, 16));
    // sqrt(2) in second interval
    CHECK(roots[1].lo * roots[1].lo <= 2);
    CHECK(roots[1].hi * roots[1].hi >= 2);
    CHECK(roots[0].lo <= -1);

    // T^2 + 1: no real roots
    CHECK(isolate_real_roots(UniPoly({rat(1), rat(0), rat(1)}), rat(1, 4)).empty());

    // T(T-1)
    auto r2 = isolate_real_roots(UniPoly({rat(0), rat(-1), rat(0) * 0 + rat(1)}), rat(1, 4));
    REQUIRE(r2.size() == 2);
    CHECK(r2[0].contains(rat(0)));
    CHECK(r2[1].contains(rat(1)));
    CHECK_THROWS(isolate_real_roots(UniPoly(), rat(1, 4)));
}

TEST_CASE("sturm intervals contain one sign change each") {
    // (T-1)(T-2)(T+3) = T^3 - 7T + 6
    UniPoly p({rat(6), rat(-7), rat(0), rat(1)});
    auto roots = isolate_real_roots(p, rat(1, 32));
    REQUIRE(roots.size() == 3);
    SturmChain st(p);
    for (const auto& r : roots) {
        if (r.is_point())
            CHECK(p.eval(r.lo) == 0);
        else
            CHECK(st.count_roots(r.lo, r.hi) == 1);
    }
    CHECK(roots[0].contains(rat(-3)));
    CHECK(roots[1].contains(rat(1)));
    CHECK(roots[2].contains(rat(2)));
}

TEST_CASE("bernstein sign certificates") {
    // standard 2-simplex
    std::vector<std::vector<Rational>> tri{{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(0), rat(1)}};
    CHECK(bernstein_sign(MultiPoly::constant(2, rat(1)), tri) == SignCert::Positive);
    MultiPoly z1 = MultiPoly::variable(2, 0), z2 = MultiPoly::variable(2, 1);
    CHECK(bernstein_sign(z1 - z2, tri) == SignCert::Indeterminate);
    CHECK(bernstein_sign(MultiPoly::constant(2, rat(-1)) - z1 * z1, tri) == SignCert::Negative);
    std::vector<std::vector<Rational>> degen{{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(2), rat(0)}};
    CHECK_THROWS(bernstein_sign(z1, degen));
}

TEST_CASE("bernstein never certifies a sign across an interior zero") {
    // 100 random degree-2 polys with p(c) = 0 at the barycenter c.
    std::vector<std::vector<Rational>> tri{{rat(0), rat(0)}, {rat(1), rat(0)}, {rat(0), rat(1)}};
    std::vector<Rational> bary{rat(1, 3), rat(1, 3)};
    for (int trial = 0; trial < 100; ++trial) {
        MultiPoly p(2);
        std::vector<int> e(2);
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; i + j <= 2; ++j) {
                e[0] = i;
                e[1] = j;
                p.add_term(e, rand_rat());
            }
        p = p - MultiPoly::constant(2, p.eval(bary));
        if (p.is_zero()) continue;
        CHECK(bernstein_sign(p, tri) == SignCert::Indeterminate);
    }
}

TEST_CASE("interval gram schmidt") {
    // exact e1, e2 stay put
    std::vector<IntervalVector> vs{iv_from_exact({rat(1), rat(0)}), iv_from_exact({rat(0), rat(1)})};
    auto out = interval_gram_schmidt(vs);
    CHECK(out[0][0].contains(rat(1)));
    CHECK(out[0][1].contains(rat(0)));
    CHECK(out[1][1].contains(rat(1)));

    // (1,0), (1,1) -> (1,0), (0,1)
    auto out2 = interval_gram_schmidt(
        {iv_from_exact({rat(1), rat(0)}), iv_from_exact({rat(1), rat(1)})});
    CHECK(out2[1][0].contains(rat(0)));
    CHECK(out2[1][1].contains(rat(1)));
    RationalInterval d = iv_dot(out2[0], out2[1]);
    CHECK(d.contains(rat(0)));

    // wide nearly-parallel enclosures fail
    RationalInterval wide(rat(-1), rat(1));
    std::vector<IntervalVector> bad{{RationalInterval(rat(1)), wide},
                                    {RationalInterval(rat(1)), wide}};
    CHECK_THROWS_AS(interval_gram_schmidt(bad), IndependenceNotCertified);
}

TEST_CASE("eigenframe on simple and repeated spectra") {
    // distinct diagonal: standard basis, eigenvalues sorted
    EigenFrame f = eigenframe(diag({rat(3), rat(-1), rat(2)}));
    REQUIRE(f.n == 3);
    CHECK(f.eigenvalues[0].contains(rat(-1)));
    CHECK(f.eigenvalues[1].contains(rat(2)));
    CHECK(f.eigenvalues[2].contains(rat(3)));
    CHECK(f.vectors[0][1].contains(rat(1)));

    // [[0,1],[1,0]]: eigenvalues -1, 1, vectors (1,-1)/sqrt2 and (1,1)/sqrt2
    RatMatrix sw(2, 2);
    sw.at(0, 1) = sw.at(1, 0) = 1;
    EigenFrame g = eigenframe(sw);
    CHECK(g.eigenvalues[0].contains(rat(-1)));
    CHECK(g.eigenvalues[1].contains(rat(1)));
    CHECK(g.vectors[0][0].lo > 0);      // sign normalization
    CHECK(g.vectors[0][1].hi < 0);      // (1,-1)/sqrt2
    CHECK(g.vectors[1][0].lo > 0);
    CHECK(g.vectors[1][1].lo > 0);

    // repeated rational eigenvalue: identity block
    EigenFrame h = eigenframe(diag({rat(5), rat(5), rat(1)}));
    CHECK(h.eigenvalues[0].contains(rat(1)));
    CHECK(h.eigenvalues[1].contains(rat(5)));
    CHECK(h.eigenvalues[2].contains(rat(5)));
}

TEST_CASE("parse and print rationals") {
    CHECK(*rat_parse("3/4") == rat(3, 4));
    CHECK(*rat_parse("-7") == rat(-7));
    CHECK(!rat_parse("3/0").has_value());
    CHECK(!rat_parse("a").has_value());
    CHECK(rat_str(rat(-6, 8)) == "-3/4");
}
