#include "qtb/matrix.hpp"

#include <stdexcept>

namespace qtb {

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

bool RatMatrix::is_symmetric() const {
    if (rows != cols) return false;
    for (int i = 0; i < rows; ++i)
        for (int j = i + 1; j < cols; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols, rows);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) t.at(j, i) = at(i, j);
    return t;
}

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols != o.rows) throw std::invalid_argument("matrix product shape mismatch");
    RatMatrix r(rows, o.cols);
    for (int i = 0; i < rows; ++i)
        for (int k = 0; k < cols; ++k) {
            const Rational& x = at(i, k);
            if (x == 0) continue;
            for (int j = 0; j < o.cols; ++j) r.at(i, j) += x * o.at(k, j);
        }
    return r;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("matrix sum shape mismatch");
    RatMatrix r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] += o.a[i];
    return r;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
    if (rows != o.rows || cols != o.cols) throw std::invalid_argument("matrix diff shape mismatch");
    RatMatrix r = *this;
    for (size_t i = 0; i < a.size(); ++i) r.a[i] -= o.a[i];
    return r;
}

RatMatrix RatMatrix::operator*(const Rational& s) const {
    RatMatrix r = *this;
    for (auto& x : r.a) x *= s;
    return r;
}

std::vector<Rational> RatMatrix::apply(const std::vector<Rational>& v) const {
    if (static_cast<int>(v.size()) != cols) throw std::invalid_argument("apply shape mismatch");
    std::vector<Rational> r(rows, Rational(0));
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            if (at(i, j) != 0) r[i] += at(i, j) * v[j];
    return r;
}

namespace {

// Row echelon by Bareiss; returns pivot columns. Mutates work in place.
std::vector<int> bareiss_echelon(RatMatrix& w) {
    std::vector<int> pivot_cols;
    Rational prev(1);
    int r = 0;
    for (int c = 0; c < w.cols && r < w.rows; ++c) {
        int piv = -1;
        for (int i = r; i < w.rows; ++i)
            if (w.at(i, c) != 0) {
                piv = i;
                break;
            }
        if (piv < 0) continue;
        if (piv != r)
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(r, j));
        for (int i = r + 1; i < w.rows; ++i) {
            for (int j = c + 1; j < w.cols; ++j)
                w.at(i, j) = (w.at(r, c) * w.at(i, j) - w.at(i, c) * w.at(r, j)) / prev;
            w.at(i, c) = 0;
        }
        prev = w.at(r, c);
        pivot_cols.push_back(c);
        ++r;
    }
    return pivot_cols;
}

}  // namespace

int rank(const RatMatrix& m) {
    RatMatrix w = m;
    return static_cast<int>(bareiss_echelon(w).size());
}

std::vector<std::vector<Rational>> kernel_basis(const RatMatrix& m) {
    RatMatrix w = m;
    std::vector<int> piv = bareiss_echelon(w);
    int r = static_cast<int>(piv.size());
    std::vector<bool> is_pivot(m.cols, false);
    for (int c : piv) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (int free_c = 0; free_c < m.cols; ++free_c) {
        if (is_pivot[free_c]) continue;
        std::vector<Rational> v(m.cols, Rational(0));
        v[free_c] = 1;
        // Back-substitute through the echelon rows.
        for (int i = r - 1; i >= 0; --i) {
            int pc = piv[i];
            Rational s(0);
            for (int j = pc + 1; j < m.cols; ++j)
                if (w.at(i, j) != 0) s += w.at(i, j) * v[j];
            v[pc] = -s / w.at(i, pc);
        }
        basis.push_back(std::move(v));
    }
    return basis;
}

std::optional<std::vector<Rational>> solve(const RatMatrix& m, const std::vector<Rational>& b) {
    if (static_cast<int>(b.size()) != m.rows) throw std::invalid_argument("solve shape mismatch");
    RatMatrix w(m.rows, m.cols + 1);
    for (int i = 0; i < m.rows; ++i) {
        for (int j = 0; j < m.cols; ++j) w.at(i, j) = m.at(i, j);
        w.at(i, m.cols) = b[i];
    }
    std::vector<int> piv = bareiss_echelon(w);
    // Inconsistent iff a pivot sits in the appended column.
    if (!piv.empty() && piv.back() == m.cols) return std::nullopt;
    int r = static_cast<int>(piv.size());
    std::vector<Rational> x(m.cols, Rational(0));
    for (int i = r - 1; i >= 0; --i) {
        int pc = piv[i];
        Rational s = w.at(i, m.cols);
        for (int j = pc + 1; j < m.cols; ++j)
            if (w.at(i, j) != 0) s -= w.at(i, j) * x[j];
        x[pc] = s / w.at(i, pc);
    }
    return x;
}

Rational determinant(const RatMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    RatMatrix w = m;
    Rational prev(1);
    int sign = 1;
    for (int k = 0; k < w.rows - 1; ++k) {
        if (w.at(k, k) == 0) {
            int piv = -1;
            for (int i = k + 1; i < w.rows; ++i)
                if (w.at(i, k) != 0) {
                    piv = i;
                    break;
                }
            if (piv < 0) return Rational(0);
            for (int j = 0; j < w.cols; ++j) std::swap(w.at(piv, j), w.at(k, j));
            sign = -sign;
        }
        for (int i = k + 1; i < w.rows; ++i) {
            for (int j = k + 1; j < w.cols; ++j)
                w.at(i, j) = (w.at(k, k) * w.at(i, j) - w.at(i, k) * w.at(k, j)) / prev;
            w.at(i, k) = 0;
        }
        prev = w.at(k, k);
    }
    Rational d = w.rows == 0 ? Rational(1) : w.at(w.rows - 1, w.rows - 1);
    return sign > 0 ? d : -d;
}

CharPolyAdj charpoly_with_adjugate(const RatMatrix& m) {
    if (m.rows != m.cols) throw std::invalid_argument("charpoly of non-square matrix");
    if (!m.is_symmetric()) throw std::invalid_argument("charpoly: symmetric input required");
    int n = m.rows;
    // Faddeev-LeVerrier on A = -m computes F(T) = det(T I + m):
    //   M_1 = I; c_{n-k} = -tr(A M_k)/k; M_{k+1} = A M_k + c_{n-k} I,
    // and adj(T I + m) = sum_{k=0..n-1} T^{n-1-k} M_{k+1}.
    RatMatrix a = m * Rational(-1);
    std::vector<Rational> c(n + 1, Rational(0));
    c[n] = 1;
    std::vector<RatMatrix> adj_terms;  // adj_terms[j] multiplies T^j
    adj_terms.assign(n, RatMatrix(n, n));
    RatMatrix mk = RatMatrix::identity(n);
    for (int k = 1; k <= n; ++k) {
        if (n >= 1) adj_terms[n - k] = mk;
        RatMatrix am = a * mk;
        Rational tr(0);
        for (int i = 0; i < n; ++i) tr += am.at(i, i);
        c[n - k] = -tr / Rational(k);
        if (k < n) {
            mk = am;
            for (int i = 0; i < n; ++i) mk.at(i, i) += c[n - k];
        }
    }
    CharPolyAdj out;
    out.f = UniPoly(std::move(c));
    // charpoly of an n x n matrix is always monic of degree n; keep padded
    // coefficients even if trailing ones vanish (normalize() trims only the
    // leading zero case, which cannot happen here).
    out.b = std::move(adj_terms);
    return out;
}

UniPoly charpoly(const RatMatrix& m) { return charpoly_with_adjugate(m).f; }

Signature signature(const RatMatrix& m) {
    if (!m.is_symmetric()) throw std::invalid_argument("signature: symmetric input required");
    UniPoly f = charpoly(m);
    int n = m.rows;
    // F(T) = prod (T + lambda_i). Positive roots of F <-> negative eigenvalues.
    int nz = 0;
    while (nz <= f.degree() && f.c[nz] == 0) ++nz;
    std::vector<Rational> pos, neg;
    for (int i = nz; i <= f.degree(); ++i) pos.push_back(f.c[i]);
    for (int i = nz; i <= f.degree(); ++i)
        neg.push_back((i - nz) % 2 == 0 ? f.c[i] : -f.c[i]);
    Signature s;
    s.n_zero = nz;
    s.n_neg = sign_variations(pos);   // positive roots T (all real, exact count)
    s.n_pos = sign_variations(neg);   // negative roots T
    if (s.n_neg + s.n_zero + s.n_pos != n)
        throw std::logic_error("signature: Descartes count mismatch");
    return s;
}

}  // namespace qtb
