#pragma once

#include <map>
#include <vector>

#include "qtb/poly.hpp"
#include "qtb/rational.hpp"

namespace qtb {

// Sparse multivariate polynomial over Q in a fixed number of variables.
// Keys are exponent vectors; zero coefficients are never stored.
struct MultiPoly {
    int nvars = 0;
    std::map<std::vector<int>, Rational> terms;

    MultiPoly() = default;
    explicit MultiPoly(int n) : nvars(n) {}
    static MultiPoly constant(int nvars, const Rational& a);
    static MultiPoly variable(int nvars, int i);

    bool is_zero() const { return terms.empty(); }
    int total_degree() const;
    void add_term(const std::vector<int>& exps, const Rational& coef);

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const Rational& a) const;
    MultiPoly operator-() const { return *this * Rational(-1); }
    bool operator==(const MultiPoly& o) const { return nvars == o.nvars && terms == o.terms; }

    Rational eval(const std::vector<Rational>& x) const;
    RationalInterval eval(const std::vector<RationalInterval>& x) const;

    // Substitute each variable by an affine-linear polynomial in new
    // variables: x_i -> sub[i]. All sub[i] share the same variable count.
    MultiPoly substitute(const std::vector<MultiPoly>& sub) const;

    // Exact division; throws if o does not divide exactly.
    MultiPoly exact_div(const MultiPoly& o) const;

    // Collect as a univariate polynomial in variable `var` with MultiPoly
    // coefficients (in the remaining variables, same nvars with var-slot 0).
    std::vector<MultiPoly> coeffs_in(int var) const;

    // Specialize to a univariate polynomial in `var`, fixing all other
    // variables at the given rational values (values[var] is ignored).
    UniPoly specialize_to(int var, const std::vector<Rational>& values) const;
};

// Resultant of a and b w.r.t. variable `var` (Sylvester determinant computed
// by fraction-free elimination over the polynomial ring).
MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, int var);

MultiPoly derivative(const MultiPoly& p, int var);

}  // namespace qtb
