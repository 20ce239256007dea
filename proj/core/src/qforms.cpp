#include "qtb/qforms.hpp"

#include <stdexcept>

#include "qtb/errors.hpp"

namespace qtb {

Rational QuadraticPolynomial::eval(const std::vector<Rational>& x) const {
    if (static_cast<int>(x.size()) != k) throw std::invalid_argument("eval: wrong arity");
    std::vector<Rational> v(k + 1);
    v[0] = 1;
    for (int i = 0; i < k; ++i) v[i + 1] = x[i];
    Rational acc(0);
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j)
            if (a.at(i, j) != 0) acc += a.at(i, j) * v[i] * v[j];
    return acc;
}

RationalInterval QuadraticPolynomial::eval(const std::vector<RationalInterval>& x) const {
    std::vector<RationalInterval> v(k + 1, RationalInterval(Rational(1)));
    for (int i = 0; i < k; ++i) v[i + 1] = x[i];
    RationalInterval acc{Rational(0)};
    for (int i = 0; i <= k; ++i)
        for (int j = 0; j <= k; ++j)
            if (a.at(i, j) != 0) acc += RationalInterval(a.at(i, j)) * v[i] * v[j];
    return acc;
}

MultiPoly QuadraticPolynomial::to_mpoly() const {
    MultiPoly p(k);
    std::vector<int> e(k, 0);
    for (int i = 0; i <= k; ++i)
        for (int j = i; j <= k; ++j) {
            Rational c = a.at(i, j);
            if (i != j) c += a.at(j, i);
            if (c == 0) continue;
            std::fill(e.begin(), e.end(), 0);
            if (i > 0) e[i - 1] += 1;
            if (j > 0) e[j - 1] += 1;
            p.add_term(e, c);
        }
    return p;
}

QuadraticPolynomial QuadraticPolynomial::from_mpoly(const MultiPoly& p) {
    if (p.total_degree() > 2) throw std::invalid_argument("from_mpoly: degree > 2");
    QuadraticPolynomial q(p.nvars);
    for (const auto& [e, c] : p.terms) {
        std::vector<int> idx;
        for (int i = 0; i < p.nvars; ++i)
            for (int j = 0; j < e[i]; ++j) idx.push_back(i + 1);
        while (idx.size() < 2) idx.insert(idx.begin(), 0);
        int i = idx[0], j = idx[1];
        if (i == j)
            q.a.at(i, j) += c;
        else {
            q.a.at(i, j) += c / 2;
            q.a.at(j, i) += c / 2;
        }
    }
    return q;
}

QuadraticForm::QuadraticForm(RatMatrix mat) : dim(mat.rows), m(std::move(mat)) {
    if (!m.is_symmetric()) throw std::invalid_argument("QuadraticForm: symmetric matrix required");
}

Rational QuadraticForm::eval(const std::vector<Rational>& x) const {
    Rational acc(0);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            if (m.at(i, j) != 0) acc += m.at(i, j) * x[i] * x[j];
    return acc;
}

QuadraticForm homogenize(const QuadraticPolynomial& p) {
    RatMatrix m = p.a;
    if (!m.is_symmetric()) throw std::invalid_argument("homogenize: matrix not symmetric");
    return QuadraticForm(m);
}

QuadraticSystem add_ball_constraint(const QuadraticSystem& sys, const Rational& eps) {
    if (eps <= 0) throw std::invalid_argument("add_ball_constraint: eps must be > 0");
    QuadraticSystem out = sys;
    QuadraticPolynomial ball(sys.k);
    ball.a.at(0, 0) = -1;
    for (int i = 1; i <= sys.k; ++i) ball.a.at(i, i) = eps;
    out.polys.push_back(std::move(ball));
    return out;
}

QuadraticSystem strict_to_weak(const GeneralSystem& sys, const Rational& delta) {
    if (delta <= 0) throw std::invalid_argument("strict_to_weak: delta must be > 0");
    QuadraticSystem out;
    out.k = sys.k;
    for (const auto& c : sys.constraints) {
        QuadraticPolynomial p = c.p;
        switch (c.rel) {
            case Relation::LeqZero:
                out.polys.push_back(p);
                break;
            case Relation::GeqZero: {
                QuadraticPolynomial q(p.k);
                q.a = p.a * Rational(-1);
                out.polys.push_back(q);
                break;
            }
            case Relation::GtZero: {
                QuadraticPolynomial q(p.k);
                q.a = p.a * Rational(-1);
                q.a.at(0, 0) += delta;
                out.polys.push_back(q);
                break;
            }
            case Relation::LtZero: {
                QuadraticPolynomial q = p;
                q.a.at(0, 0) += delta;
                out.polys.push_back(q);
                break;
            }
            case Relation::EqZero: {
                out.polys.push_back(p);
                QuadraticPolynomial q(p.k);
                q.a = p.a * Rational(-1);
                out.polys.push_back(q);
                break;
            }
        }
    }
    return out;
}

RatMatrix Pencil::mbar_at(const std::vector<Rational>& z) const {
    if (static_cast<int>(z.size()) != ell) throw std::invalid_argument("mbar_at: wrong arity");
    RatMatrix m(dim, dim);
    Rational one_m_eps = Rational(1) - epsilon;
    for (int t = 0; t < ell; ++t) {
        if (z[t] == 0) continue;
        Rational c = one_m_eps * z[t];
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (forms[t].at(i, j) != 0) m.at(i, j) += c * forms[t].at(i, j);
    }
    for (int i = 0; i < dim; ++i) m.at(i, i) += epsilon * Rational(i);
    return m;
}

RatMatrix Pencil::unperturbed_at(const std::vector<Rational>& z) const {
    RatMatrix m(dim, dim);
    for (int t = 0; t < ell; ++t) {
        if (z[t] == 0) continue;
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                if (forms[t].at(i, j) != 0) m.at(i, j) += z[t] * forms[t].at(i, j);
    }
    return m;
}

UniPoly Pencil::charpoly_at(const std::vector<Rational>& z) const {
    std::vector<Rational> c;
    c.reserve(charpoly_coeffs.size());
    for (const auto& p : charpoly_coeffs) c.push_back(p.eval(z));
    return UniPoly(std::move(c));
}

Pencil Pencil::restrict(const std::vector<int>& keep) const {
    std::vector<QuadraticForm> sub;
    sub.reserve(keep.size());
    for (int i : keep) {
        QuadraticForm f;
        f.dim = dim;
        f.m = forms[i];
        sub.push_back(f);
    }
    return build_pencil(sub, epsilon);
}

Pencil build_pencil(const std::vector<QuadraticForm>& forms, const Rational& eps) {
    if (forms.empty()) throw std::invalid_argument("build_pencil: no forms");
    if (eps < 0 || eps >= 1) throw std::invalid_argument("build_pencil: eps in [0,1) required");
    int dim = forms[0].dim;
    for (const auto& f : forms)
        if (f.dim != dim) throw std::invalid_argument("build_pencil: dimension mismatch");
    int ell = static_cast<int>(forms.size());

    Pencil p;
    p.ell = ell;
    p.dim = dim;
    p.epsilon = eps;
    for (const auto& f : forms) p.forms.push_back(f.m);

    // Mbar(Z) entries as degree-1 polynomials in Z.
    std::vector<std::vector<MultiPoly>> mz(dim, std::vector<MultiPoly>(dim, MultiPoly(ell)));
    Rational one_m_eps = Rational(1) - eps;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            for (int t = 0; t < ell; ++t) {
                Rational c = one_m_eps * forms[t].m.at(i, j);
                if (c != 0) mz[i][j] = mz[i][j] + MultiPoly::variable(ell, t) * c;
            }
            if (i == j && eps != 0)
                mz[i][j] = mz[i][j] + MultiPoly::constant(ell, eps * Rational(i));
        }

    // Faddeev-LeVerrier on A = -Mbar gives F(T) = det(T I + Mbar) over Q[Z];
    // all divisions are by integers, so exact in the polynomial ring.
    std::vector<std::vector<MultiPoly>> a(dim, std::vector<MultiPoly>(dim, MultiPoly(ell)));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a[i][j] = -mz[i][j];
    std::vector<MultiPoly> c(dim + 1, MultiPoly(ell));
    c[dim] = MultiPoly::constant(ell, Rational(1));
    std::vector<std::vector<MultiPoly>> mk(dim, std::vector<MultiPoly>(dim, MultiPoly(ell)));
    for (int i = 0; i < dim; ++i) mk[i][i] = MultiPoly::constant(ell, Rational(1));
    for (int k = 1; k <= dim; ++k) {
        // am = a * mk
        std::vector<std::vector<MultiPoly>> am(dim, std::vector<MultiPoly>(dim, MultiPoly(ell)));
        for (int i = 0; i < dim; ++i)
            for (int t = 0; t < dim; ++t) {
                if (a[i][t].is_zero()) continue;
                for (int j = 0; j < dim; ++j) {
                    if (mk[t][j].is_zero()) continue;
                    am[i][j] = am[i][j] + a[i][t] * mk[t][j];
                }
            }
        MultiPoly tr(ell);
        for (int i = 0; i < dim; ++i) tr = tr + am[i][i];
        c[dim - k] = tr * Rational(-1, k);
        if (k < dim) {
            mk = std::move(am);
            for (int i = 0; i < dim; ++i) mk[i][i] = mk[i][i] + c[dim - k];
        }
    }
    p.charpoly_coeffs = std::move(c);

    // disc_T(F) = Res_T(F, dF/dT) over Q[Z]: lift to ell+1 variables with T last.
    MultiPoly f_full(ell + 1);
    for (int i = 0; i <= dim; ++i) {
        const MultiPoly& ci = p.charpoly_coeffs[i];
        for (const auto& [e, coef] : ci.terms) {
            std::vector<int> e2 = e;
            e2.push_back(i);
            f_full.add_term(e2, coef);
        }
    }
    MultiPoly df = derivative(f_full, ell);
    MultiPoly res = resultant(f_full, df, ell);
    MultiPoly disc(ell);
    for (const auto& [e, coef] : res.terms) {
        if (e[ell] != 0) throw std::logic_error("build_pencil: resultant not T-free");
        std::vector<int> e2(e.begin(), e.end() - 1);
        disc.add_term(e2, coef);
    }
    p.discriminant_t = std::move(disc);
    return p;
}

}  // namespace qtb
