#include "qtb/mpoly.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtb {

MultiPoly MultiPoly::constant(int nvars, const Rational& a) {
    MultiPoly p(nvars);
    if (a != 0) p.terms[std::vector<int>(nvars, 0)] = a;
    return p;
}

MultiPoly MultiPoly::variable(int nvars, int i) {
    MultiPoly p(nvars);
    std::vector<int> e(nvars, 0);
    e[i] = 1;
    p.terms[e] = Rational(1);
    return p;
}

int MultiPoly::total_degree() const {
    int d = 0;
    for (const auto& [e, c] : terms) {
        int s = 0;
        for (int x : e) s += x;
        d = std::max(d, s);
    }
    return d;
}

void MultiPoly::add_term(const std::vector<int>& exps, const Rational& coef) {
    if (coef == 0) return;
    auto it = terms.find(exps);
    if (it == terms.end()) {
        terms[exps] = coef;
    } else {
        it->second += coef;
        if (it->second == 0) terms.erase(it);
    }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (const auto& [e, c] : o.terms) r.add_term(e, -c);
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r(nvars);
    std::vector<int> e(nvars);
    for (const auto& [e1, c1] : terms)
        for (const auto& [e2, c2] : o.terms) {
            for (int i = 0; i < nvars; ++i) e[i] = e1[i] + e2[i];
            r.add_term(e, c1 * c2);
        }
    return r;
}

MultiPoly MultiPoly::operator*(const Rational& a) const {
    MultiPoly r(nvars);
    if (a == 0) return r;
    for (const auto& [e, c] : terms) r.terms[e] = c * a;
    return r;
}

Rational MultiPoly::eval(const std::vector<Rational>& x) const {
    Rational acc(0);
    for (const auto& [e, c] : terms) {
        Rational t = c;
        for (int i = 0; i < nvars; ++i)
            for (int j = 0; j < e[i]; ++j) t *= x[i];
        acc += t;
    }
    return acc;
}

RationalInterval MultiPoly::eval(const std::vector<RationalInterval>& x) const {
    RationalInterval acc{Rational(0)};
    for (const auto& [e, c] : terms) {
        RationalInterval t{c};
        for (int i = 0; i < nvars; ++i)
            for (int j = 0; j < e[i]; ++j) t = t * x[i];
        acc += t;
    }
    return acc;
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& sub) const {
    if (static_cast<int>(sub.size()) != nvars)
        throw std::invalid_argument("substitute: wrong substitution count");
    int m = sub.empty() ? 0 : sub[0].nvars;
    MultiPoly r(m);
    for (const auto& [e, c] : terms) {
        MultiPoly t = MultiPoly::constant(m, c);
        for (int i = 0; i < nvars; ++i)
            for (int j = 0; j < e[i]; ++j) t = t * sub[i];
        r = r + t;
    }
    return r;
}

namespace {
// Lex order on exponent vectors (first variable dominant).
bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}
}  // namespace

MultiPoly MultiPoly::exact_div(const MultiPoly& o) const {
    if (o.is_zero()) throw std::domain_error("exact_div by zero");
    MultiPoly rem = *this, q(nvars);
    // Leading term of o in lex order.
    auto lead = std::max_element(o.terms.begin(), o.terms.end(),
                                 [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
    const std::vector<int>& le = lead->first;
    const Rational& lc = lead->second;
    while (!rem.is_zero()) {
        auto rl = std::max_element(rem.terms.begin(), rem.terms.end(),
                                   [](const auto& a, const auto& b) { return lex_less(a.first, b.first); });
        std::vector<int> de(nvars);
        for (int i = 0; i < nvars; ++i) {
            de[i] = rl->first[i] - le[i];
            if (de[i] < 0) throw std::domain_error("exact_div: not divisible");
        }
        Rational dc = rl->second / lc;
        MultiPoly t(nvars);
        t.terms[de] = dc;
        q = q + t;
        rem = rem - t * o;
    }
    return q;
}

std::vector<MultiPoly> MultiPoly::coeffs_in(int var) const {
    int d = 0;
    for (const auto& [e, c] : terms) d = std::max(d, e[var]);
    std::vector<MultiPoly> out(d + 1, MultiPoly(nvars));
    for (const auto& [e, c] : terms) {
        std::vector<int> e2 = e;
        int k = e2[var];
        e2[var] = 0;
        out[k].add_term(e2, c);
    }
    while (!out.empty() && out.back().is_zero()) out.pop_back();
    return out;
}

UniPoly MultiPoly::specialize_to(int var, const std::vector<Rational>& values) const {
    auto cs = coeffs_in(var);
    std::vector<Rational> uc;
    uc.reserve(cs.size());
    for (const auto& p : cs) uc.push_back(p.eval(values));
    return UniPoly(std::move(uc));
}

MultiPoly derivative(const MultiPoly& p, int var) {
    MultiPoly r(p.nvars);
    for (const auto& [e, c] : p.terms) {
        if (e[var] == 0) continue;
        std::vector<int> e2 = e;
        e2[var] -= 1;
        r.add_term(e2, c * Rational(e[var]));
    }
    return r;
}

MultiPoly resultant(const MultiPoly& a, const MultiPoly& b, int var) {
    auto ac = a.coeffs_in(var), bc = b.coeffs_in(var);
    int m = static_cast<int>(ac.size()) - 1, n = static_cast<int>(bc.size()) - 1;
    int nv = a.nvars;
    if (m < 0 || n < 0) return MultiPoly(nv);
    if (m == 0 && n == 0) return MultiPoly::constant(nv, Rational(1));
    int N = m + n;
    // Sylvester matrix, then Bareiss fraction-free elimination over Q[Z].
    std::vector<std::vector<MultiPoly>> s(N, std::vector<MultiPoly>(N, MultiPoly(nv)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j <= m; ++j) s[i][i + j] = ac[m - j];
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j) s[n + i][i + j] = bc[n - j];
    MultiPoly prev = MultiPoly::constant(nv, Rational(1));
    int sign = 1;
    for (int k = 0; k < N - 1; ++k) {
        if (s[k][k].is_zero()) {
            int piv = -1;
            for (int i = k + 1; i < N; ++i)
                if (!s[i][k].is_zero()) {
                    piv = i;
                    break;
                }
            if (piv < 0) return MultiPoly(nv);  // singular: resultant 0
            std::swap(s[k], s[piv]);
            sign = -sign;
        }
        for (int i = k + 1; i < N; ++i) {
            for (int j = k + 1; j < N; ++j) {
                MultiPoly num = s[k][k] * s[i][j] - s[i][k] * s[k][j];
                s[i][j] = num.exact_div(prev);
            }
            s[i][k] = MultiPoly(nv);
        }
        prev = s[k][k];
    }
    MultiPoly det = s[N - 1][N - 1];
    return sign > 0 ? det : -det;
}

}  // namespace qtb
