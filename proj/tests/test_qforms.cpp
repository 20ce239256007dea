#include <random>

#include "doctest.h"
#include "qtb/eigenframe.hpp"
#include "qtb/qforms.hpp"

using namespace qtb;

namespace {

std::mt19937 rng(4242);

Rational rand_rat(int max_num = 6, int max_den = 3) {
    std::uniform_int_distribution<int> num(-max_num, max_num), den(1, max_den);
    return rat(num(rng), den(rng));
}

QuadraticPolynomial poly_from_terms(int k, const std::vector<std::tuple<int, int, Rational>>& ts) {
    // terms as (i, j, coef) with 0 = affine slot, i <= j
    QuadraticPolynomial p(k);
    for (const auto& [i, j, c] : ts) {
        if (i == j)
            p.a.at(i, j) += c;
        else {
            p.a.at(i, j) += c / 2;
            p.a.at(j, i) += c / 2;
        }
    }
    return p;
}

QuadraticForm diag_form(std::vector<Rational> d) {
    RatMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
    for (size_t i = 0; i < d.size(); ++i) m.at(static_cast<int>(i), static_cast<int>(i)) = d[i];
    return QuadraticForm(m);
}

}  // namespace

TEST_CASE("homogenize definitional examples") {
    QuadraticPolynomial p =
        poly_from_terms(1, {{1, 1, rat(1)}, {0, 1, rat(2)}, {0, 0, rat(-3)}});
    QuadraticForm f = homogenize(p);
    CHECK(f.dim == 2);
    CHECK(f.eval({rat(1), rat(2)}) == p.eval({rat(2)}));
    QuadraticPolynomial c = poly_from_terms(1, {{0, 0, rat(-1)}});
    QuadraticForm fc = homogenize(c);
    CHECK(fc.eval({rat(1), rat(7)}) == rat(-1));
    CHECK(fc.eval({rat(2), rat(0)}) == rat(-4));
    QuadraticPolynomial h = poly_from_terms(2, {{1, 2, rat(1)}});
    QuadraticForm fh = homogenize(h);
    CHECK(fh.eval({rat(1), rat(3), rat(5)}) == rat(15));
}

TEST_CASE("homogenize recovers p at X0 = 1 on random inputs") {
    for (int trial = 0; trial < 20; ++trial) {
        QuadraticPolynomial p(3);
        for (int i = 0; i <= 3; ++i)
            for (int j = i; j <= 3; ++j) {
                Rational c = rand_rat();
                p.a.at(i, j) += c / 2;
                p.a.at(j, i) += c / 2;
            }
        QuadraticForm f = homogenize(p);
        for (int t = 0; t < 5; ++t) {
            std::vector<Rational> x{rand_rat(), rand_rat(), rand_rat()};
            std::vector<Rational> x1{rat(1), x[0], x[1], x[2]};
            CHECK(f.eval(x1) == p.eval(x));
        }
    }
}

TEST_CASE("add ball constraint") {
    QuadraticSystem sys;
    sys.k = 2;
    sys.polys.push_back(poly_from_terms(2, {{1, 1, rat(1)}}));
    QuadraticSystem out = add_ball_constraint(sys, rat(1, 1024));
    REQUIRE(out.polys.size() == 2);
    const QuadraticPolynomial& ball = out.polys.back();
    CHECK(ball.eval({rat(0), rat(0)}) == rat(-1));
    CHECK(ball.eval({rat(32), rat(0)}) == rat(0));
    CHECK(ball.a.at(1, 1) == rat(1, 1024));
    CHECK(ball.a.at(2, 2) == rat(1, 1024));

    QuadraticSystem empty1;
    empty1.k = 1;
    QuadraticSystem one = add_ball_constraint(empty1, rat(1));
    REQUIRE(one.polys.size() == 1);
    CHECK(one.polys[0].eval({rat(1)}) == rat(0));

    QuadraticSystem twice = add_ball_constraint(out, rat(1, 2));
    CHECK(twice.polys.size() == 3);
    CHECK_THROWS(add_ball_constraint(sys, rat(0)));
}

TEST_CASE("strict to weak") {
    GeneralSystem gs;
    gs.k = 1;
    QuadraticPolynomial x = poly_from_terms(1, {{0, 1, rat(1)}});
    gs.constraints.push_back({x, Relation::GtZero});
    QuadraticSystem w = strict_to_weak(gs, rat(1, 8));
    REQUIRE(w.polys.size() == 1);
    CHECK(w.polys[0].eval({rat(0)}) == rat(1, 8));
    CHECK(w.polys[0].eval({rat(1)}) == rat(-7, 8));

    GeneralSystem eq;
    eq.k = 1;
    eq.constraints.push_back({x, Relation::EqZero});
    QuadraticSystem we = strict_to_weak(eq, rat(1, 8));
    REQUIRE(we.polys.size() == 2);
    CHECK(we.polys[0].eval({rat(2)}) == rat(2));
    CHECK(we.polys[1].eval({rat(2)}) == rat(-2));

    GeneralSystem leq;
    leq.k = 1;
    leq.constraints.push_back({x, Relation::LeqZero});
    QuadraticSystem wl = strict_to_weak(leq, rat(1));
    REQUIRE(wl.polys.size() == 1);
    CHECK(wl.polys[0] == x);
    CHECK_THROWS(strict_to_weak(gs, rat(0)));
}

TEST_CASE("pencil: diagonal example") {
    Pencil p = build_pencil({diag_form({rat(1), rat(-1)})}, rat(0));
    REQUIRE(p.charpoly_coeffs.size() == 3);
    MultiPoly z1 = MultiPoly::variable(1, 0);
    CHECK(p.charpoly_coeffs[0] == MultiPoly(1) - z1 * z1);
    CHECK(p.charpoly_coeffs[1].is_zero());
    CHECK(p.charpoly_coeffs[2] == MultiPoly::constant(1, rat(1)));
}

TEST_CASE("pencil: two-form derived example") {
    Pencil p = build_pencil({diag_form({rat(1), rat(1)}), diag_form({rat(1), rat(-1)})}, rat(0));
    MultiPoly z1 = MultiPoly::variable(2, 0), z2 = MultiPoly::variable(2, 1);
    CHECK(p.charpoly_coeffs[0] == z1 * z1 - z2 * z2);
    CHECK(p.charpoly_coeffs[1] == z1 * rat(2));
}

TEST_CASE("pencil consistency at sampled points") {
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<QuadraticForm> forms;
        int ell = 2, dim = 3;
        for (int t = 0; t < ell; ++t) {
            RatMatrix m(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j) m.at(i, j) = m.at(j, i) = rand_rat();
            forms.push_back(QuadraticForm(m));
        }
        Pencil p = build_pencil(forms, pow2(-8));
        std::vector<Rational> z{rand_rat(), rand_rat()};
        CHECK(p.charpoly_at(z) == charpoly(p.mbar_at(z)));
    }
}

TEST_CASE("pencil discriminant vanishes exactly at eigenvalue collisions") {
    Pencil p = build_pencil({diag_form({rat(1), rat(2)})}, rat(1, 4));
    // diagonal entries (3/4)z and (3/2)z + 1/4 agree at z = -1/3
    CHECK(p.discriminant_t.eval({rat(-1, 3)}) == 0);
    CHECK(p.discriminant_t.eval({rat(0)}) != 0);
    CHECK(p.discriminant_t.eval({rat(-1)}) != 0);
}

TEST_CASE("distinct roots when discriminant nonzero") {
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<QuadraticForm> forms;
        int ell = 2, dim = 3;
        for (int t = 0; t < ell; ++t) {
            RatMatrix m(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j) m.at(i, j) = m.at(j, i) = rand_rat();
            forms.push_back(QuadraticForm(m));
        }
        Pencil p = build_pencil(forms, pow2(-8));
        Rational t = rat_abs(rand_rat()) / 7 + rat(1, 9);
        std::vector<Rational> z{-t, t - 1};
        if (p.discriminant_t.eval(z) == 0) continue;
        auto roots = isolate_real_roots(p.charpoly_at(z), rat(1, 64));
        CHECK(static_cast<int>(roots.size()) == dim);
    }
}

TEST_CASE("perturbed index matches unperturbed on stable samples") {
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<QuadraticForm> forms;
        int ell = 2, dim = 4;
        for (int t = 0; t < ell; ++t) {
            RatMatrix m(dim, dim);
            for (int i = 0; i < dim; ++i)
                for (int j = i; j < dim; ++j) m.at(i, j) = m.at(j, i) = rat((int)(rng() % 7) - 3);
            forms.push_back(QuadraticForm(m));
        }
        Pencil p = build_pencil(forms, pow2(-24));
        std::vector<Rational> z{rat(-1, 3), rat(-2, 3)};
        Signature unp = signature(p.unperturbed_at(z));
        Signature per = signature(p.mbar_at(z));
        if (unp.n_zero == 0) CHECK(per.n_neg == unp.n_neg);
    }
}

TEST_CASE("pencil restriction to a face") {
    std::vector<QuadraticForm> forms{diag_form({rat(1), rat(2)}), diag_form({rat(-1), rat(3)}),
                                     diag_form({rat(2), rat(-2)})};
    Pencil p = build_pencil(forms, pow2(-10));
    Pencil sub = p.restrict({0, 2});
    CHECK(sub.ell == 2);
    std::vector<Rational> z{rat(-1, 4), rat(-3, 4)};
    std::vector<Rational> zfull{rat(-1, 4), rat(0), rat(-3, 4)};
    CHECK(sub.mbar_at(z) == p.mbar_at(zfull));
    CHECK(sub.charpoly_at(z) == p.charpoly_at(zfull));
}
