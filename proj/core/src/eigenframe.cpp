#include "qtb/eigenframe.hpp"

#include <algorithm>

#include "qtb/errors.hpp"

namespace qtb {

namespace {

struct RetryPrecision {};

// Evaluate the adjugate polynomial sum_j T^j B_j at an interval, column c.
IntervalVector adj_column_at(const std::vector<RatMatrix>& b, const RationalInterval& t, int col) {
    int n = b.empty() ? 0 : b[0].rows;
    IntervalVector acc(n, RationalInterval(Rational(0)));
    for (int j = static_cast<int>(b.size()) - 1; j >= 0; --j)
        for (int i = 0; i < n; ++i) acc[i] = acc[i] * t + RationalInterval(b[j].at(i, col));
    return acc;
}

void sign_normalize(IntervalVector& v) {
    for (auto& x : v) {
        auto s = x.sign();
        if (s && *s != 0) {
            if (*s < 0)
                for (auto& y : v) y = -y;
            return;
        }
    }
    throw RetryPrecision{};
}

// Exact rational root of g inside iv, if the refinement exposes one.
std::optional<Rational> find_rational_root(const UniPoly& g, RationalInterval iv,
                                           const Rational& width_cap) {
    if (g.eval(iv.lo) == 0) return iv.lo;
    if (g.eval(iv.hi) == 0) return iv.hi;
    Rational w = iv.width();
    while (w > width_cap) {
        Rational cand = simplest_rational_between(iv.lo, iv.hi);
        if (g.eval(cand) == 0) return cand;
        iv = refine_root(g, iv, w / 1024);
        if (iv.is_point()) return iv.lo;
        w = iv.width();
    }
    return std::nullopt;
}

struct EigenPair {
    RationalInterval value;
    IntervalVector vec;
};

}  // namespace

bool dot_certified_at_least(const IntervalVector& a, const IntervalVector& b,
                            const Rational& threshold, int* sign_out) {
    RationalInterval d = iv_dot(a, b);
    if (d.lo >= threshold) {
        if (sign_out) *sign_out = 1;
        return true;
    }
    if (d.hi <= -threshold) {
        if (sign_out) *sign_out = -1;
        return true;
    }
    return false;
}

EigenFrame eigenframe(const RatMatrix& m, const PrecisionControl& prec) {
    if (!m.is_symmetric()) throw std::invalid_argument("eigenframe: symmetric input required");
    int n = m.rows;
    CharPolyAdj cp = charpoly_with_adjugate(m);
    std::vector<UniPoly> sf = squarefree_decomposition(cp.f);

    Rational width = prec.initial_width;
    while (true) {
        try {
            std::vector<EigenPair> pairs;
            for (size_t fi = 0; fi < sf.size(); ++fi) {
                const UniPoly& g = sf[fi];
                int mult = static_cast<int>(fi) + 1;
                if (g.degree() <= 0) continue;
                auto roots = isolate_real_roots(g, width);
                for (const auto& rt : roots) {
                    if (mult == 1) {
                        int best = -1;
                        Rational best_lo(0);
                        IntervalVector best_v;
                        for (int c = 0; c < n; ++c) {
                            IntervalVector v = adj_column_at(cp.b, rt, c);
                            RationalInterval ns = iv_dot(v, v);
                            if (ns.lo > best_lo) {
                                best_lo = ns.lo;
                                best = c;
                                best_v = std::move(v);
                            }
                        }
                        if (best < 0) throw RetryPrecision{};
                        RationalInterval norm = iv_dot(best_v, best_v).sqrt_enclosure(width);
                        IntervalVector unit = iv_scale(RationalInterval(Rational(1)) / norm, best_v);
                        sign_normalize(unit);
                        pairs.push_back({RationalInterval(-rt.hi, -rt.lo), std::move(unit)});
                    } else {
                        // Repeated eigenvalue: only exactly-representable
                        // (rational) ones are certifiable.
                        auto root = find_rational_root(g, rt, prec.width_cap);
                        if (!root)
                            throw CertificationFailed(
                                "eigenframe: irrational repeated eigenvalue");
                        Rational lambda = -*root;
                        RatMatrix shifted = m - RatMatrix::identity(n) * lambda;
                        auto kb = kernel_basis(shifted);
                        if (static_cast<int>(kb.size()) != mult)
                            throw CertificationFailed(
                                "eigenframe: kernel dimension mismatch at repeated eigenvalue");
                        std::vector<IntervalVector> kb_iv;
                        kb_iv.reserve(kb.size());
                        for (auto& v : kb) kb_iv.push_back(iv_from_exact(v));
                        auto ortho = interval_gram_schmidt(kb_iv, width);
                        for (auto& v : ortho) {
                            sign_normalize(v);
                            pairs.push_back({RationalInterval(lambda), v});
                        }
                    }
                }
            }

            if (static_cast<int>(pairs.size()) != n)
                throw CertificationFailed("eigenframe: eigenvalue count mismatch");
            std::stable_sort(pairs.begin(), pairs.end(),
                             [](const EigenPair& a, const EigenPair& b) {
                                 if (a.value.lo != b.value.lo) return a.value.lo < b.value.lo;
                                 return a.value.hi < b.value.hi;
                             });
            // Enclosures of distinct eigenvalues must be pairwise disjoint.
            for (size_t i = 0; i + 1 < pairs.size(); ++i) {
                const auto& a = pairs[i].value;
                const auto& b = pairs[i + 1].value;
                bool same_exact = a.is_point() && b.is_point() && a.lo == b.lo;
                if (!same_exact && !(a.hi < b.lo)) throw RetryPrecision{};
            }
            // Orthonormality witness at the contracted width.
            for (size_t i = 0; i < pairs.size(); ++i)
                for (size_t j = i; j < pairs.size(); ++j) {
                    RationalInterval d = iv_dot(pairs[i].vec, pairs[j].vec);
                    Rational target = i == j ? Rational(1) : Rational(0);
                    if (!d.contains(target) || d.width() >= pow2(-16)) throw RetryPrecision{};
                }

            EigenFrame out;
            out.n = n;
            for (auto& p : pairs) {
                out.eigenvalues.push_back(p.value);
                out.vectors.push_back(std::move(p.vec));
            }
            return out;
        } catch (const RetryPrecision&) {
        } catch (const IndependenceNotCertified&) {
        }
        width = width / 4;
        if (width < prec.width_cap)
            throw CertificationFailed("eigenframe: precision cap reached");
    }
}

}  // namespace qtb
