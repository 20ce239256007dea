#include "qtb/rational.hpp"

#include <stdexcept>

namespace qtb {

Rational pow2(long e) {
    Integer p = 1;
    mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), e >= 0 ? e : -e);
    return e >= 0 ? Rational(p) : Rational(Integer(1), p);
}

int sgn(const Rational& x) { return mpq_sgn(x.get_mpq_t()); }

Rational rat_abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }
Rational rat_min(const Rational& a, const Rational& b) { return a < b ? a : b; }
Rational rat_max(const Rational& a, const Rational& b) { return a > b ? a : b; }

std::optional<Rational> rat_parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    // mpq accepts "p/q"; validate characters first so garbage fails cleanly.
    bool seen_digit = false;
    int slashes = 0;
    for (size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        if (c == '-' || c == '+') {
            if (i != 0 && s[i - 1] != '/') return std::nullopt;
        } else if (c == '/') {
            ++slashes;
            if (slashes > 1 || !seen_digit) return std::nullopt;
        } else if (c >= '0' && c <= '9') {
            seen_digit = true;
        } else {
            return std::nullopt;
        }
    }
    if (!seen_digit) return std::nullopt;
    Rational r;
    if (mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0) return std::nullopt;
    if (mpz_sgn(mpq_denref(r.get_mpq_t())) == 0) return std::nullopt;
    r.canonicalize();
    return r;
}

std::string rat_str(const Rational& x) { return x.get_str(); }

static Rational rat_floor(const Rational& x) {
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
    return Rational(q);
}

Rational simplest_rational_between(const Rational& lo, const Rational& hi) {
    if (lo > hi) throw std::invalid_argument("simplest_rational_between: empty range");
    if (lo == hi) return lo;
    if (lo <= 0 && 0 <= hi) return Rational(0);
    if (hi < 0) return -simplest_rational_between(-hi, -lo);
    // 0 < lo < hi: continued-fraction descent.
    Rational fl = rat_floor(lo);
    if (fl + 1 <= hi) return lo == fl ? fl : fl + 1;
    if (lo == fl) return fl;
    return fl + 1 / simplest_rational_between(1 / (hi - fl), 1 / (lo - fl));
}

RationalInterval::RationalInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo > hi) throw std::invalid_argument("RationalInterval: lo > hi");
}

RationalInterval RationalInterval::hull(const Rational& a, const Rational& b) {
    return a <= b ? RationalInterval(a, b) : RationalInterval(b, a);
}

std::optional<int> RationalInterval::sign() const {
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    if (lo == 0 && hi == 0) return 0;
    return std::nullopt;
}

RationalInterval RationalInterval::operator+(const RationalInterval& o) const {
    return RationalInterval(lo + o.lo, hi + o.hi);
}
RationalInterval RationalInterval::operator-(const RationalInterval& o) const {
    return RationalInterval(lo - o.hi, hi - o.lo);
}
RationalInterval& RationalInterval::operator+=(const RationalInterval& o) {
    lo += o.lo;
    hi += o.hi;
    return *this;
}
RationalInterval& RationalInterval::operator-=(const RationalInterval& o) {
    Rational nl = lo - o.hi, nh = hi - o.lo;
    lo = nl;
    hi = nh;
    return *this;
}

RationalInterval RationalInterval::operator*(const RationalInterval& o) const {
    Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
    return RationalInterval(rat_min(rat_min(a, b), rat_min(c, d)),
                            rat_max(rat_max(a, b), rat_max(c, d)));
}

RationalInterval RationalInterval::operator/(const RationalInterval& o) const {
    auto s = o.sign();
    if (!s || *s == 0) throw std::domain_error("interval division by interval containing 0");
    Rational a = lo / o.lo, b = lo / o.hi, c = hi / o.lo, d = hi / o.hi;
    return RationalInterval(rat_min(rat_min(a, b), rat_min(c, d)),
                            rat_max(rat_max(a, b), rat_max(c, d)));
}

RationalInterval operator*(const Rational& a, const RationalInterval& x) {
    return RationalInterval(a) * x;
}

RationalInterval RationalInterval::sqrt_enclosure(const Rational& max_width) const {
    if (lo < 0) throw std::domain_error("sqrt of interval with negative part");
    auto enclose_one = [&](const Rational& x) -> RationalInterval {
        if (x == 0) return RationalInterval(Rational(0));
        // Bisection on [0, max(1,x)] to width <= max_width/2.
        Rational a = 0, b = rat_max(Rational(1), x);
        while (b - a > max_width / 2) {
            Rational m = (a + b) / 2;
            if (m * m <= x)
                a = m;
            else
                b = m;
        }
        return RationalInterval(a, b);
    };
    RationalInterval l = enclose_one(lo), h = enclose_one(hi);
    return RationalInterval(l.lo, h.hi);
}

}  // namespace qtb
