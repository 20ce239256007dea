#include "qtb/interval_linalg.hpp"

namespace qtb {

IntervalVector iv_from_exact(const std::vector<Rational>& v) {
    IntervalVector r;
    r.reserve(v.size());
    for (const auto& x : v) r.emplace_back(x);
    return r;
}

RationalInterval iv_dot(const IntervalVector& a, const IntervalVector& b) {
    RationalInterval acc{Rational(0)};
    for (size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
    return acc;
}

IntervalVector iv_add(const IntervalVector& a, const IntervalVector& b) {
    IntervalVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

IntervalVector iv_sub(const IntervalVector& a, const IntervalVector& b) {
    IntervalVector r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

IntervalVector iv_scale(const RationalInterval& s, const IntervalVector& v) {
    IntervalVector r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = s * v[i];
    return r;
}

Rational iv_max_width(const IntervalVector& v) {
    Rational w(0);
    for (const auto& x : v) w = rat_max(w, x.width());
    return w;
}

Rational iv_max_dist(const IntervalVector& a, const IntervalVector& b) {
    Rational d(0);
    for (size_t i = 0; i < a.size(); ++i) {
        RationalInterval diff = a[i] - b[i];
        d = rat_max(d, rat_max(rat_abs(diff.lo), rat_abs(diff.hi)));
    }
    return d;
}

RationalInterval iv_det(const std::vector<IntervalVector>& rows) {
    size_t n = rows.size();
    if (n == 0) return RationalInterval(Rational(1));
    if (n == 1) return rows[0][0];
    RationalInterval acc{Rational(0)};
    std::vector<IntervalVector> minor(n - 1, IntervalVector(n - 1));
    for (size_t j = 0; j < n; ++j) {
        for (size_t i = 1; i < n; ++i) {
            size_t cj = 0;
            for (size_t k = 0; k < n; ++k) {
                if (k == j) continue;
                minor[i - 1][cj++] = rows[i][k];
            }
        }
        RationalInterval term = rows[0][j] * iv_det(minor);
        if (j % 2 == 0)
            acc += term;
        else
            acc -= term;
    }
    return acc;
}

std::vector<IntervalVector> interval_gram_schmidt(const std::vector<IntervalVector>& vs,
                                                  const Rational& sqrt_width) {
    std::vector<IntervalVector> ortho;  // orthogonal, not yet normalized
    std::vector<RationalInterval> norms_sq;
    for (const auto& v : vs) {
        IntervalVector u = v;
        for (size_t j = 0; j < ortho.size(); ++j) {
            RationalInterval coef = iv_dot(u, ortho[j]) / norms_sq[j];
            u = iv_sub(u, iv_scale(coef, ortho[j]));
        }
        RationalInterval ns = iv_dot(u, u);
        if (!(ns.lo > 0))
            throw IndependenceNotCertified("interval_gram_schmidt: norm enclosure touches 0");
        ortho.push_back(std::move(u));
        norms_sq.push_back(std::move(ns));
    }
    std::vector<IntervalVector> out;
    out.reserve(ortho.size());
    for (size_t j = 0; j < ortho.size(); ++j) {
        RationalInterval n = norms_sq[j].sqrt_enclosure(sqrt_width);
        out.push_back(iv_scale(RationalInterval(Rational(1)) / n, ortho[j]));
    }
    return out;
}

}  // namespace qtb
