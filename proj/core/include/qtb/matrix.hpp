#pragma once

#include <vector>

#include "qtb/poly.hpp"
#include "qtb/rational.hpp"

namespace qtb {

// Dense matrix over Q.
struct RatMatrix {
    int rows = 0, cols = 0;
    std::vector<Rational> a;  // row-major

    RatMatrix() = default;
    RatMatrix(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c, Rational(0)) {}

    static RatMatrix identity(int n);
    static RatMatrix zero(int r, int c) { return RatMatrix(r, c); }

    Rational& at(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
    const Rational& at(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

    bool is_symmetric() const;
    RatMatrix transpose() const;
    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix operator*(const Rational& s) const;
    bool operator==(const RatMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
    std::vector<Rational> apply(const std::vector<Rational>& v) const;
};

// Exact rank by fraction-free (Bareiss) elimination with pivoting.
int rank(const RatMatrix& m);

// Basis of the null space; size == cols - rank(m).
std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m);

// Solve m x = b; nullopt when inconsistent. Returns one solution.
std::optional<std::vector<Rational>> solve(const RatMatrix& m, const std::vector<Rational>& b);

Rational determinant(const RatMatrix& m);

// det(m + T I) as a monic UniPoly in T (so an eigenvalue x of m corresponds
// to the root T = -x). Division-free up to exact integer divisions
// (Faddeev-LeVerrier). Rejects non-symmetric input per the numlin contract.
UniPoly charpoly(const RatMatrix& m);

// Same recurrence, also producing the adjugate polynomial
// adj(m + T I) = sum_i T^i B[i]  with  (m + T I) adj(m + T I) = F(T) I.
struct CharPolyAdj {
    UniPoly f;
    std::vector<RatMatrix> b;  // b[i] multiplies T^i, size n
};
CharPolyAdj charpoly_with_adjugate(const RatMatrix& m);

struct Signature {
    int n_neg = 0, n_zero = 0, n_pos = 0;
    bool operator==(const Signature& o) const {
        return n_neg == o.n_neg && n_zero == o.n_zero && n_pos == o.n_pos;
    }
};

// Eigenvalue sign counts of a symmetric matrix via Descartes' rule applied to
// det(m + T I): exact because the characteristic polynomial of a symmetric
// matrix has only real roots.
Signature signature(const RatMatrix& m);

}  // namespace qtb
