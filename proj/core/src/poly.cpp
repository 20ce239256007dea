#include "qtb/poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace qtb {

UniPoly::UniPoly(std::vector<Rational> coeffs) : c(std::move(coeffs)) { normalize(); }

UniPoly UniPoly::constant(const Rational& a) {
    UniPoly p;
    if (a != 0) p.c = {a};
    return p;
}

UniPoly UniPoly::monomial(const Rational& a, int deg) {
    UniPoly p;
    if (a != 0) {
        p.c.assign(deg + 1, Rational(0));
        p.c[deg] = a;
    }
    return p;
}

void UniPoly::normalize() {
    while (!c.empty() && c.back() == 0) c.pop_back();
}

Rational UniPoly::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
    return acc;
}

RationalInterval UniPoly::eval(const RationalInterval& x) const {
    RationalInterval acc{Rational(0)};
    for (auto it = c.rbegin(); it != c.rend(); ++it)
        acc = acc * x + RationalInterval(*it);
    return acc;
}

UniPoly UniPoly::derivative() const {
    UniPoly d;
    for (size_t i = 1; i < c.size(); ++i) d.c.push_back(c[i] * Rational(static_cast<long>(i)));
    d.normalize();
    return d;
}

UniPoly UniPoly::operator+(const UniPoly& o) const {
    UniPoly r;
    r.c.resize(std::max(c.size(), o.c.size()), Rational(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] += o.c[i];
    r.normalize();
    return r;
}

UniPoly UniPoly::operator-(const UniPoly& o) const {
    UniPoly r;
    r.c.resize(std::max(c.size(), o.c.size()), Rational(0));
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += c[i];
    for (size_t i = 0; i < o.c.size(); ++i) r.c[i] -= o.c[i];
    r.normalize();
    return r;
}

UniPoly UniPoly::operator*(const UniPoly& o) const {
    if (is_zero() || o.is_zero()) return UniPoly();
    UniPoly r;
    r.c.assign(c.size() + o.c.size() - 1, Rational(0));
    for (size_t i = 0; i < c.size(); ++i)
        for (size_t j = 0; j < o.c.size(); ++j) r.c[i + j] += c[i] * o.c[j];
    r.normalize();
    return r;
}

UniPoly UniPoly::operator*(const Rational& a) const {
    if (a == 0) return UniPoly();
    UniPoly r = *this;
    for (auto& x : r.c) x *= a;
    return r;
}

void UniPoly::divmod(const UniPoly& a, const UniPoly& b, UniPoly& q, UniPoly& r) {
    if (b.is_zero()) throw std::domain_error("UniPoly division by zero");
    UniPoly quo, rem = a;  // locals: callers may alias outputs with inputs
    if (a.degree() >= b.degree()) {
        quo.c.assign(a.degree() - b.degree() + 1, Rational(0));
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            int d = rem.degree() - b.degree();
            Rational f = rem.leading() / b.leading();
            quo.c[d] = f;
            for (int i = 0; i <= b.degree(); ++i) rem.c[i + d] -= f * b.c[i];
            rem.normalize();
        }
        quo.normalize();
    }
    q = std::move(quo);
    r = std::move(rem);
}

UniPoly UniPoly::monic() const {
    if (is_zero()) return *this;
    return *this * (Rational(1) / leading());
}

UniPoly UniPoly::primitive_part() const {
    if (is_zero()) return *this;
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& x : c) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    }
    Rational scale = Rational(den_lcm) / Rational(num_gcd);
    if (leading() < 0) scale = -scale;
    return *this * scale;
}

UniPoly gcd(const UniPoly& a, const UniPoly& b) {
    UniPoly x = a, y = b, q, r;
    while (!y.is_zero()) {
        UniPoly::divmod(x, y, q, r);
        x = y;
        y = r;
        // keep coefficients small
        x = x.primitive_part();
        y = y.primitive_part();
    }
    return x.is_zero() ? x : x.primitive_part();
}

std::vector<UniPoly> squarefree_decomposition(const UniPoly& p) {
    std::vector<UniPoly> out;
    if (p.is_zero() || p.degree() == 0) return out;
    UniPoly a = p.primitive_part();
    UniPoly d = a.derivative();
    UniPoly g = gcd(a, d);
    if (g.degree() == 0) {
        out.push_back(a);
        return out;
    }
    UniPoly q, r;
    UniPoly w, y, z;
    UniPoly::divmod(a, g, w, r);
    UniPoly::divmod(d, g, y, r);
    z = y - w.derivative();
    while (!z.is_zero()) {
        UniPoly gg = gcd(w, z);
        out.push_back(gg);
        UniPoly::divmod(w, gg, w, r);
        UniPoly::divmod(z, gg, y, r);
        z = y - w.derivative();
    }
    out.push_back(w);
    return out;
}

UniPoly squarefree_part(const UniPoly& p) {
    if (p.is_zero()) return p;
    if (p.degree() == 0) return UniPoly::constant(Rational(1));
    UniPoly g = gcd(p, p.derivative());
    if (g.degree() == 0) return p.primitive_part();
    UniPoly q, r;
    UniPoly::divmod(p, g, q, r);
    return q.primitive_part();
}

int sign_variations(const std::vector<Rational>& seq) {
    int var = 0, prev = 0;
    for (const auto& x : seq) {
        int s = sgn(x);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++var;
        prev = s;
    }
    return var;
}

namespace {
// Positive content scaling: keeps signs, controls coefficient growth.
UniPoly scale_positive(const UniPoly& p) {
    if (p.is_zero()) return p;
    Integer num_gcd = 0, den_lcm = 1;
    for (const auto& x : p.c) {
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), x.get_num_mpz_t());
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), x.get_den_mpz_t());
    }
    return p * (Rational(den_lcm) / Rational(num_gcd));
}
}  // namespace

SturmChain::SturmChain(const UniPoly& p) {
    if (p.is_zero()) throw std::domain_error("Sturm chain of zero polynomial");
    chain.push_back(scale_positive(p));
    if (p.degree() == 0) return;
    chain.push_back(scale_positive(p.derivative()));
    while (true) {
        const UniPoly& a = chain[chain.size() - 2];
        const UniPoly& b = chain.back();
        if (b.is_zero()) {
            chain.pop_back();
            break;
        }
        if (b.degree() == 0) break;
        UniPoly q, r;
        UniPoly::divmod(a, b, q, r);
        if (r.is_zero()) break;
        chain.push_back(scale_positive(r * Rational(-1)));
    }
}

int SturmChain::variations_at(const Rational& x) const {
    std::vector<Rational> vals;
    vals.reserve(chain.size());
    for (const auto& p : chain) vals.push_back(p.eval(x));
    return sign_variations(vals);
}

int SturmChain::variations_at_neg_inf() const {
    std::vector<Rational> vals;
    for (const auto& p : chain) {
        if (p.is_zero()) {
            vals.push_back(Rational(0));
            continue;
        }
        int s = sgn(p.leading());
        vals.push_back(Rational(p.degree() % 2 == 0 ? s : -s));
    }
    return sign_variations(vals);
}

int SturmChain::variations_at_pos_inf() const {
    std::vector<Rational> vals;
    for (const auto& p : chain)
        vals.push_back(p.is_zero() ? Rational(0) : Rational(sgn(p.leading())));
    return sign_variations(vals);
}

int SturmChain::count_roots(const Rational& a, const Rational& b) const {
    if (a >= b) return 0;
    return variations_at(a) - variations_at(b);
}

int SturmChain::count_all_roots() const {
    return variations_at_neg_inf() - variations_at_pos_inf();
}

Rational root_bound(const UniPoly& p) {
    if (p.is_zero() || p.degree() == 0) return Rational(1);
    Rational m(0);
    for (int i = 0; i < p.degree(); ++i) m = rat_max(m, rat_abs(p.c[i] / p.leading()));
    return m + 1;
}

namespace {

// Sturm bisection over half-open intervals (a, b]. p square-free.
void isolate_rec(const SturmChain& st, const UniPoly& p, const Rational& a, const Rational& b,
                 const Rational& precision, std::vector<RationalInterval>& out) {
    int n = st.count_roots(a, b);
    if (n == 0) return;
    if (n == 1) {
        if (p.eval(b) == 0) {
            out.push_back(RationalInterval(b, b));
            return;
        }
        Rational lo = a, hi = b;
        while (hi - lo > precision) {
            Rational mid = (lo + hi) / 2;
            if (p.eval(mid) == 0) {
                out.push_back(RationalInterval(mid, mid));
                return;
            }
            if (st.count_roots(mid, hi) == 1)
                lo = mid;
            else
                hi = mid;
        }
        out.push_back(RationalInterval(lo, hi));
        return;
    }
    Rational mid = (a + b) / 2;
    isolate_rec(st, p, a, mid, precision, out);
    isolate_rec(st, p, mid, b, precision, out);
}

}  // namespace

std::vector<RationalInterval> isolate_real_roots_in(const UniPoly& p, const Rational& lo,
                                                    const Rational& hi,
                                                    const Rational& precision) {
    if (p.is_zero()) throw std::domain_error("isolate_real_roots: zero polynomial");
    if (precision <= 0) throw std::domain_error("isolate_real_roots: precision must be > 0");
    UniPoly sf = squarefree_part(p);
    if (sf.degree() <= 0) return {};
    if (lo >= hi) {
        if (lo == hi && sf.eval(lo) == 0) return {RationalInterval(lo, lo)};
        return {};
    }
    std::vector<RationalInterval> out;
    SturmChain st(sf);
    if (sf.eval(lo) == 0) out.push_back(RationalInterval(lo, lo));
    isolate_rec(st, sf, lo, hi, precision, out);
    std::sort(out.begin(), out.end(),
              [](const RationalInterval& x, const RationalInterval& y) { return x.lo < y.lo; });
    // Separate intervals that touch at a (non-root) endpoint.
    for (size_t i = 0; i + 1 < out.size(); ++i) {
        while (out[i].hi >= out[i + 1].lo && !out[i + 1].is_point()) {
            Rational mid = out[i + 1].mid();
            if (sf.eval(mid) == 0) {
                out[i + 1] = RationalInterval(mid, mid);
                break;
            }
            if (st.count_roots(mid, out[i + 1].hi) == 1)
                out[i + 1].lo = mid;
            else
                out[i + 1].hi = mid;
        }
    }
    return out;
}

std::vector<RationalInterval> isolate_real_roots(const UniPoly& p, const Rational& precision) {
    if (p.is_zero()) throw std::domain_error("isolate_real_roots: zero polynomial");
    UniPoly sf = squarefree_part(p);
    if (sf.degree() <= 0) return {};
    Rational b = root_bound(sf);
    return isolate_real_roots_in(p, -b, b, precision);
}

RationalInterval refine_root(const UniPoly& p, RationalInterval iv, const Rational& w) {
    UniPoly sf = squarefree_part(p);
    SturmChain st(sf);
    Rational lo = iv.lo, hi = iv.hi;
    if (sf.eval(lo) == 0) return RationalInterval(lo, lo);
    while (hi - lo > w) {
        Rational mid = (lo + hi) / 2;
        if (sf.eval(mid) == 0) return RationalInterval(mid, mid);
        if (st.count_roots(lo, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return RationalInterval(lo, hi);
}

}  // namespace qtb
