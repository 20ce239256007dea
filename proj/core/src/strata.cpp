#include "qtb/strata.hpp"

#include <algorithm>
#include <sstream>

#include "qtb/errors.hpp"

namespace qtb {

namespace detail {

std::string strata_cell_key(const std::vector<int>& subset, const std::string& local) {
    std::ostringstream os;
    os << "S[";
    for (size_t i = 0; i < subset.size(); ++i) {
        if (i) os << ",";
        os << subset[i];
    }
    os << "]" << local;
    return os.str();
}

std::vector<Rational> omega_from_chart(const std::vector<Rational>& chart) {
    int m = static_cast<int>(chart.size()) + 1;
    std::vector<Rational> w(m, Rational(0));
    Rational rest(0);
    for (int i = 1; i < m; ++i) {
        w[i] = -chart[i - 1];
        rest += chart[i - 1];
    }
    w[0] = rest - 1;
    return w;
}

MultiPoly pull_to_chart(const MultiPoly& p, int m) {
    // Z_0 = -(1 - sum x), Z_i = -x_i in m-1 chart variables.
    int n = m - 1;
    std::vector<MultiPoly> sub;
    MultiPoly z0 = MultiPoly::constant(n, Rational(-1));
    for (int i = 0; i < n; ++i) z0 = z0 + MultiPoly::variable(n, i);
    sub.push_back(z0);
    for (int i = 0; i < n; ++i) sub.push_back(MultiPoly::variable(n, i) * Rational(-1));
    return p.substitute(sub);
}

}  // namespace detail

using detail::omega_from_chart;
using detail::pull_to_chart;
using detail::strata_cell_key;

std::vector<int> Strata::face_cells(const std::vector<int>& face_subset) const {
    // Positions of face_subset inside subset.
    std::vector<int> pos;
    for (int g : face_subset) {
        auto it = std::find(subset.begin(), subset.end(), g);
        if (it == subset.end()) throw QtbError("face_cells: not a subset");
        pos.push_back(static_cast<int>(it - subset.begin()));
    }
    std::vector<bool> allowed(subset.size(), false);
    for (int p : pos) allowed[p] = true;
    std::vector<int> out;
    for (size_t i = 0; i < base.cells.size(); ++i) {
        bool ok = true;
        for (size_t j = 0; j < base.cells[i].sample.size(); ++j)
            if (!allowed[j] && base.cells[i].sample[j] != 0) ok = false;
        if (ok) out.push_back(static_cast<int>(i));
    }
    return out;
}

std::string Strata::dump() const {
    std::ostringstream os;
    os << "qtb-strata 1\n";
    os << "subset";
    for (int s : subset) os << " " << s;
    os << "\ncells " << base.cells.size() << "\n";
    for (const auto& c : base.cells) {
        os << c.key << " dim=" << c.dim << " index=" << c.label << (c.wall ? " wall" : "")
           << " sample=(";
        for (size_t i = 0; i < c.sample.size(); ++i) {
            if (i) os << ",";
            os << rat_str(c.sample[i]);
        }
        os << ") facets=[";
        for (size_t i = 0; i < c.facets.size(); ++i) {
            if (i) os << ",";
            os << base.cells[c.facets[i]].key;
        }
        os << "]\n";
    }
    for (const auto& a : audit) os << "audit: " << a << "\n";
    return os.str();
}

int index_at(const Pencil& pencil, const std::vector<Rational>& omega) {
    if (static_cast<int>(omega.size()) != pencil.ell)
        throw std::invalid_argument("index_at: wrong arity");
    Rational sum(0);
    for (const auto& w : omega) {
        if (w > 0) throw std::invalid_argument("index_at: point outside simplex");
        sum += w;
    }
    if (sum != -1) throw std::invalid_argument("index_at: point outside simplex");
    return signature(pencil.unperturbed_at(omega)).n_neg;
}

int perturbed_index_at(const Pencil& pencil, const std::vector<Rational>& omega) {
    return signature(pencil.mbar_at(omega)).n_neg;
}

namespace detail {

std::map<int, int> embed_face_cells(Strata& out, const Strata& face) {
    std::vector<int> pos;
    for (int g : face.subset) {
        auto it = std::find(out.subset.begin(), out.subset.end(), g);
        if (it == out.subset.end()) throw QtbError("embed_face: face not a subset");
        pos.push_back(static_cast<int>(it - out.subset.begin()));
    }
    std::map<std::string, int> existing;
    for (size_t i = 0; i < out.base.cells.size(); ++i)
        existing[out.base.cells[i].key] = static_cast<int>(i);
    std::map<int, int> remap;
    for (size_t i = 0; i < face.base.cells.size(); ++i) {
        const BaseCell& fc = face.base.cells[i];
        auto it = existing.find(fc.key);
        if (it != existing.end()) {
            remap[static_cast<int>(i)] = it->second;
            continue;
        }
        BaseCell c;
        c.key = fc.key;
        c.dim = fc.dim;
        c.label = fc.label;
        c.wall = fc.wall;
        c.sample.assign(out.subset.size(), Rational(0));
        for (size_t j = 0; j < fc.sample.size(); ++j) c.sample[pos[j]] = fc.sample[j];
        c.box_lo = fc.box_lo;
        c.box_hi = fc.box_hi;
        int id = static_cast<int>(out.base.cells.size());
        out.base.cells.push_back(std::move(c));
        existing[fc.key] = id;
        remap[static_cast<int>(i)] = id;
    }
    // facets after all cells exist
    for (size_t i = 0; i < face.base.cells.size(); ++i) {
        int ni = remap[static_cast<int>(i)];
        for (int f : face.base.cells[i].facets) {
            int nf = remap[f];
            auto& fs = out.base.cells[ni].facets;
            if (std::find(fs.begin(), fs.end(), nf) == fs.end()) fs.push_back(nf);
        }
    }
    out.wall_count += face.wall_count;
    if (!face.certified) out.certified = false;
    return remap;
}

}  // namespace detail

namespace {

using detail::embed_face_cells;

const Strata* find_face(const std::map<std::vector<int>, const Strata*>& faces,
                        const std::vector<int>& key) {
    auto it = faces.find(key);
    if (it == faces.end()) throw QtbError("build_strata: missing facet strata");
    return it->second;
}

void build_point_strata(Strata& out, const StrataOptions&) {
    BaseCell c;
    c.key = strata_cell_key(out.subset, ":pt");
    c.dim = 0;
    c.sample = {Rational(-1)};
    c.label = perturbed_index_at(out.pencil, c.sample);
    out.base.cells.push_back(std::move(c));
}

// Pick a rational point in (lo, hi) where poly (if nonzero) does not vanish.
Rational off_curve_point(const Rational& lo, const Rational& hi, const UniPoly& avoid) {
    Rational a = lo, b = hi;
    for (int tries = 0; tries < 64; ++tries) {
        Rational cand = simplest_rational_between(a + (b - a) / 64, b - (b - a) / 64);
        if (avoid.is_zero() || avoid.eval(cand) != 0) return cand;
        a = cand;  // nudge window
        b = cand + (b - cand) / 2;
    }
    throw CertificationFailed("off_curve_point: could not find a sample");
}

void build_segment_strata(Strata& out, const std::map<std::vector<int>, const Strata*>& faces,
                          const StrataOptions& opt) {
    // Faces: chart x=0 is the singleton {subset[0]}, x=1 is {subset[1]}.
    const Strata* f0 = find_face(faces, {out.subset[0]});
    const Strata* f1 = find_face(faces, {out.subset[1]});
    auto r0 = embed_face_cells(out, *f0);
    auto r1 = embed_face_cells(out, *f1);
    int v0 = r0.at(0), v1 = r1.at(0);
    out.base.cells[v0].box_lo = {Rational(0)};
    out.base.cells[v0].box_hi = {Rational(0)};
    out.base.cells[v1].box_lo = {Rational(1)};
    out.base.cells[v1].box_hi = {Rational(1)};

    MultiPoly c0 = pull_to_chart(out.pencil.charpoly_coeffs[0], 2);
    MultiPoly dt = pull_to_chart(out.pencil.discriminant_t, 2);
    UniPoly c0u = c0.is_zero() ? UniPoly() : UniPoly([&] {
        std::vector<Rational> cs;
        auto co = c0.coeffs_in(0);
        for (auto& p : co) cs.push_back(p.eval({Rational(0)}));
        return cs;
    }());
    UniPoly dtu = dt.is_zero() ? UniPoly() : UniPoly([&] {
        std::vector<Rational> cs;
        auto co = dt.coeffs_in(0);
        for (auto& p : co) cs.push_back(p.eval({Rational(0)}));
        return cs;
    }());
    if (c0u.is_zero()) {
        out.audit.push_back("segment: C_0 vanishes identically on the edge");
        out.certified = false;
    }
    if (dtu.is_zero()) {
        out.audit.push_back("segment: disc_T vanishes identically on the edge");
        out.certified = false;
    }

    struct Feature {
        RationalInterval bracket;
        bool from_c0 = false, from_disc = false;
    };
    std::vector<Feature> feats;
    auto add_roots = [&](const UniPoly& p, bool is_c0) {
        if (p.is_zero() || p.degree() <= 0) return;
        auto roots = isolate_real_roots_in(p, Rational(0), Rational(1), opt.thick);
        for (auto& r : roots) {
            if (r.hi <= 0 || r.lo >= 1) continue;  // feature at a vertex: vertex cell covers it
            Feature f;
            f.bracket = r;
            (is_c0 ? f.from_c0 : f.from_disc) = true;
            feats.push_back(f);
        }
    };
    UniPoly c0sf = c0u.is_zero() ? UniPoly() : squarefree_part(c0u);
    UniPoly dtsf = dtu.is_zero() ? UniPoly() : squarefree_part(dtu);
    add_roots(c0sf, true);
    add_roots(dtsf, false);

    // Separate or merge overlapping brackets from the two families.
    std::sort(feats.begin(), feats.end(),
              [](const Feature& a, const Feature& b) { return a.bracket.lo < b.bracket.lo; });
    for (size_t i = 0; i + 1 < feats.size();) {
        if (feats[i].bracket.hi >= feats[i + 1].bracket.lo) {
            // refine both; if they stay coincident, treat as a shared feature
            UniPoly pa = feats[i].from_c0 ? c0sf : dtsf;
            UniPoly pb = feats[i + 1].from_c0 ? c0sf : dtsf;
            RationalInterval ra = refine_root(pa, feats[i].bracket, opt.thick / 1024);
            RationalInterval rb = refine_root(pb, feats[i + 1].bracket, opt.thick / 1024);
            if (ra.hi < rb.lo) {
                feats[i].bracket = ra;
                feats[i + 1].bracket = rb;
                ++i;
            } else if (rb.hi < ra.lo) {
                feats[i].bracket = rb;
                feats[i + 1].bracket = ra;
                std::swap(feats[i].from_c0, feats[i + 1].from_c0);
                std::swap(feats[i].from_disc, feats[i + 1].from_disc);
                ++i;
            } else {
                // genuinely co-located (shared root)
                feats[i].bracket = RationalInterval(rat_min(ra.lo, rb.lo), rat_max(ra.hi, rb.hi));
                feats[i].from_c0 = feats[i].from_c0 || feats[i + 1].from_c0;
                feats[i].from_disc = feats[i].from_disc || feats[i + 1].from_disc;
                feats.erase(feats.begin() + static_cast<long>(i + 1));
            }
        } else {
            ++i;
        }
    }

    // Build the alternating vertex/edge chain left to right.
    struct Pending {
        int cell = -1;       // thick 0-cell id (assigned later)
        Feature f;
    };
    std::vector<Rational> cuts;  // bracket boundaries
    std::vector<Pending> pend(feats.size());
    for (size_t i = 0; i < feats.size(); ++i) pend[i].f = feats[i];

    // Interval cells between consecutive features.
    std::vector<int> interval_ids;
    std::vector<int> thick_ids;
    Rational prev_hi(0);
    int cell_counter = 0;
    UniPoly avoid = c0sf * (dtsf.is_zero() ? UniPoly::constant(Rational(1)) : dtsf);
    if (avoid.is_zero()) avoid = UniPoly::constant(Rational(1));

    auto add_interval = [&](const Rational& lo, const Rational& hi) -> int {
        BaseCell c;
        c.key = strata_cell_key(out.subset, ":i" + std::to_string(cell_counter++));
        c.dim = 1;
        c.box_lo = {lo};
        c.box_hi = {hi};
        Rational s = off_curve_point(lo, hi, avoid);
        c.sample = omega_from_chart({s});
        c.label = perturbed_index_at(out.pencil, c.sample);
        int id = static_cast<int>(out.base.cells.size());
        out.base.cells.push_back(std::move(c));
        return id;
    };
    auto add_thick = [&](const Feature& f) -> int {
        BaseCell c;
        c.key = strata_cell_key(out.subset, ":t" + std::to_string(cell_counter++));
        c.dim = 0;
        c.box_lo = {f.bracket.lo};
        c.box_hi = {f.bracket.hi};
        Rational s = off_curve_point(f.bracket.lo, f.bracket.hi, avoid);
        c.sample = omega_from_chart({s});
        c.label = 0;  // derived below
        c.wall = false;
        int id = static_cast<int>(out.base.cells.size());
        out.base.cells.push_back(std::move(c));
        return id;
    };

    std::vector<int> chain_cells;  // alternating 0/1 dims: v0, I, T, I, ..., v1
    chain_cells.push_back(v0);
    for (size_t i = 0; i < pend.size(); ++i) {
        int iv = add_interval(prev_hi, pend[i].f.bracket.lo);
        int tk = add_thick(pend[i].f);
        interval_ids.push_back(iv);
        thick_ids.push_back(tk);
        chain_cells.push_back(iv);
        chain_cells.push_back(tk);
        prev_hi = pend[i].f.bracket.hi;
    }
    int last_iv = add_interval(prev_hi, Rational(1));
    interval_ids.push_back(last_iv);
    chain_cells.push_back(last_iv);
    chain_cells.push_back(v1);

    // facets: each 1-cell covers its two flanking 0-cells
    for (size_t i = 1; i + 1 <= chain_cells.size(); i += 2) {
        int edge = chain_cells[i];
        out.base.cells[edge].facets.push_back(chain_cells[i - 1]);
        out.base.cells[edge].facets.push_back(chain_cells[i + 1]);
    }

    // Derived labels for thick cells, with crossing checks.
    for (size_t i = 0; i < thick_ids.size(); ++i) {
        int l = out.base.cells[interval_ids[i]].label;
        int r = out.base.cells[interval_ids[i + 1]].label;
        const Feature& f = pend[i].f;
        int jump = std::abs(l - r);
        bool ok;
        if (f.from_c0 && f.from_disc)
            ok = (jump == 2);
        else if (f.from_c0)
            ok = (jump == 1);
        else
            ok = (jump == 0);
        // Simplicity of C_0 crossings: the full C_0 pullback must have a
        // simple root in the bracket (no tangency).
        if (ok && f.from_c0 && !c0u.is_zero()) {
            UniPoly g = gcd(c0u, c0u.derivative());
            if (g.degree() > 0) {
                SturmChain st(g);
                if (st.count_roots(f.bracket.lo, f.bracket.hi) > 0) ok = false;
            }
        }
        out.base.cells[thick_ids[i]].label = std::min(l, r);
        if (!ok) {
            out.base.cells[thick_ids[i]].wall = true;
            out.wall_count += 1;
            out.certified = false;
            out.audit.push_back("segment: underivable crossing at " +
                                out.base.cells[thick_ids[i]].key);
        }
    }

    // Lower-semicontinuity check at the endpoints.
    auto check_vert = [&](int v, int iv) {
        if (out.base.cells[v].label > out.base.cells[iv].label) {
            out.certified = false;
            out.audit.push_back("segment: endpoint index exceeds interior at " +
                                out.base.cells[v].key);
        }
    };
    check_vert(v0, interval_ids.front());
    check_vert(v1, interval_ids.back());
}

}  // namespace

Strata build_strata(const std::vector<int>& subset, const Pencil& pencil,
                    const std::map<std::vector<int>, const Strata*>& faces,
                    const StrataOptions& opt) {
    if (subset.empty()) throw std::invalid_argument("build_strata: empty subset");
    if (!std::is_sorted(subset.begin(), subset.end()))
        throw std::invalid_argument("build_strata: subset must be sorted");
    if (pencil.ell != static_cast<int>(subset.size()))
        throw std::invalid_argument("build_strata: pencil arity mismatch");

    Strata out;
    out.subset = subset;
    out.pencil = pencil;
    int m = static_cast<int>(subset.size());
    switch (m) {
        case 1:
            build_point_strata(out, opt);
            break;
        case 2:
            build_segment_strata(out, faces, opt);
            break;
        case 3:
            detail::build_triangle_strata(out, faces, opt);
            break;
        case 4:
            detail::build_tetrahedron_strata(out, faces, opt);
            break;
        default:
            throw UnsupportedDimension("build_strata: parameter simplex dimension " +
                                       std::to_string(m - 1) + " > 3 is not supported");
    }
    return out;
}

}  // namespace qtb
