#pragma once

#include <vector>

#include "qtb/rational.hpp"

namespace qtb {

// Dense univariate polynomial over Q, coefficients[i] = coefficient of T^i.
// Zero polynomial is the empty vector; otherwise the leading coefficient is
// nonzero.
struct UniPoly {
    std::vector<Rational> c;

    UniPoly() = default;
    explicit UniPoly(std::vector<Rational> coeffs);
    static UniPoly constant(const Rational& a);
    static UniPoly monomial(const Rational& a, int deg);

    bool is_zero() const { return c.empty(); }
    int degree() const { return static_cast<int>(c.size()) - 1; }
    const Rational& leading() const { return c.back(); }
    void normalize();

    Rational eval(const Rational& x) const;
    RationalInterval eval(const RationalInterval& x) const;

    UniPoly derivative() const;
    UniPoly operator+(const UniPoly& o) const;
    UniPoly operator-(const UniPoly& o) const;
    UniPoly operator*(const UniPoly& o) const;
    UniPoly operator*(const Rational& a) const;
    bool operator==(const UniPoly& o) const { return c == o.c; }

    // Quotient/remainder by a nonzero divisor.
    static void divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r);

    UniPoly monic() const;
    // Scale so coefficients are coprime integers with positive leading sign.
    UniPoly primitive_part() const;
};

UniPoly gcd(const UniPoly& a, const UniPoly& b);

// Square-free factorization (Yun): returns g_1, g_2, ... with
// p = c * prod g_i^i and the g_i pairwise coprime and square-free.
std::vector<UniPoly> squarefree_decomposition(const UniPoly& p);
UniPoly squarefree_part(const UniPoly& p);

// Number of sign variations in a coefficient/value sequence, ignoring zeros.
int sign_variations(const std::vector<Rational>& seq);

// Sturm chain of p (with p' as second entry), signs evaluated exactly.
struct SturmChain {
    std::vector<UniPoly> chain;
    explicit SturmChain(const UniPoly& p);
    // Number of distinct real roots in (a, b], and on the whole line.
    int count_roots(const Rational& a, const Rational& b) const;
    int count_all_roots() const;
    int variations_at(const Rational& x) const;
    int variations_at_neg_inf() const;
    int variations_at_pos_inf() const;
};

// Cauchy root bound: all real roots lie in [-B, B].
Rational root_bound(const UniPoly& p);

// Isolating intervals for the distinct real roots of p, sorted increasingly,
// pairwise disjoint, each of width <= precision (width 0 when a root is
// identified as an interval endpoint). Rejects the zero polynomial.
std::vector<RationalInterval> isolate_real_roots(const UniPoly& p, const Rational& precision);

// Roots restricted to [lo, hi].
std::vector<RationalInterval> isolate_real_roots_in(const UniPoly& p, const Rational& lo,
                                                    const Rational& hi, const Rational& precision);

// Refine an isolating interval of p (odd sign change across it) to width <= w.
RationalInterval refine_root(const UniPoly& p, RationalInterval iv, const Rational& w);

}  // namespace qtb
