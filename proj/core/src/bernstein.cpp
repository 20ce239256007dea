#include "qtb/bernstein.hpp"

#include <stdexcept>

#include "qtb/matrix.hpp"

namespace qtb {

SignCert bernstein_sign(const MultiPoly& p, const std::vector<std::vector<Rational>>& simplex) {
    int m = p.nvars;
    if (static_cast<int>(simplex.size()) != m + 1)
        throw std::invalid_argument("bernstein_sign: need m+1 vertices");
    for (const auto& v : simplex)
        if (static_cast<int>(v.size()) != m)
            throw std::invalid_argument("bernstein_sign: vertex dimension mismatch");
    // Non-degeneracy: edge vectors from vertex 0 span R^m.
    RatMatrix edges(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) edges.at(i, j) = simplex[i + 1][j] - simplex[0][j];
    if (m > 0 && determinant(edges) == 0)
        throw std::invalid_argument("bernstein_sign: degenerate simplex");

    // Pull back to barycentric coordinates: Z_i -> sum_j simplex[j][i] * L_j.
    std::vector<MultiPoly> sub;
    sub.reserve(m);
    for (int i = 0; i < m; ++i) {
        MultiPoly s(m + 1);
        for (int j = 0; j <= m; ++j) {
            std::vector<int> e(m + 1, 0);
            e[j] = 1;
            s.add_term(e, simplex[j][i]);
        }
        sub.push_back(std::move(s));
    }
    MultiPoly bar = p.substitute(sub);
    if (bar.is_zero()) return SignCert::Indeterminate;

    // Homogenize with (sum L_j)^(d - deg(term)); then coefficients of the
    // degree-d form are positive multiples of the Bernstein coefficients.
    int d = bar.total_degree();
    MultiPoly ones(m + 1);
    for (int j = 0; j <= m; ++j) {
        std::vector<int> e(m + 1, 0);
        e[j] = 1;
        ones.add_term(e, Rational(1));
    }
    MultiPoly hom(m + 1);
    for (const auto& [e, c] : bar.terms) {
        int deg = 0;
        for (int x : e) deg += x;
        MultiPoly t(m + 1);
        t.terms[e] = c;
        for (int j = deg; j < d; ++j) t = t * ones;
        hom = hom + t;
    }

    bool any_pos = false, any_neg = false;
    for (const auto& [e, c] : hom.terms) {
        if (c > 0) any_pos = true;
        if (c < 0) any_neg = true;
    }
    // A vanishing Bernstein coefficient (missing monomial of degree d) means
    // the vector is not uniformly one-signed.
    Integer expected = 1;
    for (int i = 1; i <= m; ++i) expected = expected * (d + i) / i;
    bool complete = Integer(static_cast<long>(hom.terms.size())) == expected;
    if (complete && any_pos && !any_neg) return SignCert::Positive;
    if (complete && any_neg && !any_pos) return SignCert::Negative;
    return SignCert::Indeterminate;
}

}  // namespace qtb
