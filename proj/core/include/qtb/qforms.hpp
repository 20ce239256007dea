#pragma once

#include <vector>

#include "qtb/matrix.hpp"
#include "qtb/mpoly.hpp"

namespace qtb {

// Affine polynomial of degree <= 2 in x_1..x_k, stored as a symmetric
// (k+1)x(k+1) matrix A with P(x) = (1,x)^T A (1,x). Slot 0 is the
// homogenizing coordinate.
struct QuadraticPolynomial {
    int k = 0;
    RatMatrix a;

    QuadraticPolynomial() = default;
    explicit QuadraticPolynomial(int k_) : k(k_), a(k_ + 1, k_ + 1) {}

    Rational eval(const std::vector<Rational>& x) const;
    RationalInterval eval(const std::vector<RationalInterval>& x) const;
    MultiPoly to_mpoly() const;  // in k variables
    static QuadraticPolynomial from_mpoly(const MultiPoly& p);  // degree <= 2 required
    bool operator==(const QuadraticPolynomial& o) const { return k == o.k && a == o.a; }
};

// Homogeneous quadratic form <Mx, x> in `dim` variables.
struct QuadraticForm {
    int dim = 0;
    RatMatrix m;

    QuadraticForm() = default;
    explicit QuadraticForm(RatMatrix mat);
    Rational eval(const std::vector<Rational>& x) const;
    bool operator==(const QuadraticForm& o) const { return dim == o.dim && m == o.m; }
};

// Conjunction P_1 <= 0, ..., P_s <= 0.
struct QuadraticSystem {
    int k = 0;
    std::vector<QuadraticPolynomial> polys;
    // Provenance marker for the SAT-generator shape (enumerate_01_points
    // refuses systems without it).
    bool satgen_01 = false;
    int suspension_depth = 0;
};

enum class Relation { LeqZero, GeqZero, LtZero, GtZero, EqZero };

struct GeneralConstraint {
    QuadraticPolynomial p;
    Relation rel = Relation::LeqZero;
};

struct GeneralSystem {
    int k = 0;
    std::vector<GeneralConstraint> constraints;
};

// X_0-homogenization: same matrix, read in variables (X_0, .., X_k).
QuadraticForm homogenize(const QuadraticPolynomial& p);

// Appends eps * sum_j X_j^2 - 1 <= 0. eps > 0 required.
QuadraticSystem add_ball_constraint(const QuadraticSystem& sys, const Rational& eps);

// P>0 -> -P+delta <= 0; P<0 -> P+delta <= 0; P=0 -> {P<=0, -P<=0};
// weak inequalities pass through. delta > 0 required.
QuadraticSystem strict_to_weak(const GeneralSystem& sys, const Rational& delta);

// Symbolic pencil of forms M_1..M_ell with the index-splitting perturbation:
// Mbar(Z) = (1-eps)(Z_1 M_1 + ... + Z_ell M_ell) + eps diag(0,1,..,dim-1).
struct Pencil {
    int ell = 0;
    int dim = 0;
    std::vector<RatMatrix> forms;
    Rational epsilon;
    std::vector<MultiPoly> charpoly_coeffs;  // C_0..C_dim in Z_1..Z_ell, C_dim = 1
    MultiPoly discriminant_t;                // disc_T(F) as polynomial in Z

    RatMatrix mbar_at(const std::vector<Rational>& z) const;
    RatMatrix unperturbed_at(const std::vector<Rational>& z) const;
    UniPoly charpoly_at(const std::vector<Rational>& z) const;  // from charpoly_coeffs
    // Sub-pencil for the parameter subset keep (indices into 1..ell order).
    Pencil restrict(const std::vector<int>& keep) const;
};

// eps in [0, 1); eps = 0 is allowed for tests.
Pencil build_pencil(const std::vector<QuadraticForm>& forms, const Rational& eps);

}  // namespace qtb
