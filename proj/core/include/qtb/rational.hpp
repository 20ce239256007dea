#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <vector>

namespace qtb {

// Exact rational scalar. mpq_class keeps values canonical (reduced, positive
// denominator), which is exactly the invariant we need.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long n) { return Rational(n); }
inline Rational rat(long n, long d) {
    Rational r(n, d);
    r.canonicalize();
    return r;
}

// 2^-e for precision knobs.
Rational pow2(long e);

int sgn(const Rational& x);
Rational rat_abs(const Rational& x);
Rational rat_min(const Rational& a, const Rational& b);
Rational rat_max(const Rational& a, const Rational& b);

// Parses "p/q" or "p" (optionally signed). Returns nullopt on junk or q == 0.
std::optional<Rational> rat_parse(const std::string& s);
std::string rat_str(const Rational& x);

// A rational point with mid denominator bits bounded; used to pick sample
// coordinates that keep downstream arithmetic small.
Rational simplest_rational_between(const Rational& lo, const Rational& hi);

// Closed interval [lo, hi] with rational endpoints. All arithmetic returns
// enclosures of the exact result.
struct RationalInterval {
    Rational lo, hi;

    RationalInterval() : lo(0), hi(0) {}
    explicit RationalInterval(const Rational& x) : lo(x), hi(x) {}
    RationalInterval(Rational l, Rational h);

    static RationalInterval hull(const Rational& a, const Rational& b);

    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / 2; }
    bool is_point() const { return lo == hi; }
    bool contains(const Rational& x) const { return lo <= x && x <= hi; }
    bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const RationalInterval& o) const { return !(hi < o.lo || o.hi < lo); }

    // Certified sign: +1 / -1 when the whole interval is one-signed, 0 when
    // the interval is exactly {0}, nullopt when the sign is not decided.
    std::optional<int> sign() const;

    RationalInterval operator-() const { return RationalInterval(-hi, -lo); }
    RationalInterval operator+(const RationalInterval& o) const;
    RationalInterval operator-(const RationalInterval& o) const;
    RationalInterval operator*(const RationalInterval& o) const;
    RationalInterval& operator+=(const RationalInterval& o);
    RationalInterval& operator-=(const RationalInterval& o);

    // Division and sqrt require the operand to be certified nonzero /
    // nonnegative; both throw std::domain_error otherwise.
    RationalInterval operator/(const RationalInterval& o) const;
    RationalInterval sqrt_enclosure(const Rational& max_width) const;
};

RationalInterval operator*(const Rational& a, const RationalInterval& x);

}  // namespace qtb
