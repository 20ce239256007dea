#pragma once

#include <map>
#include <string>
#include <vector>

#include "qtb/collar.hpp"
#include "qtb/eigenframe.hpp"
#include "qtb/qforms.hpp"

namespace qtb {

// Stratification of the parameter simplex Omega_Q = {w_i <= 0, sum w_i = -1}
// of one subset Q, realized as a combinatorial regular cell complex whose
// cells mirror the sign-invariant strata of {C_0 = 0} u {disc_T = 0}.
// Algebraic features are enclosed in thin rational brackets ("thick" cells)
// whose labels are derived from their neighbors; every other cell carries an
// exact sample with label = number of negative eigenvalues of Mbar there.
struct Strata {
    std::vector<int> subset;  // global constraint indices, sorted
    Pencil pencil;            // restricted to the subset (ell = |subset|)
    BaseComplex base;
    int wall_count = 0;
    bool certified = true;
    std::vector<std::string> audit;

    int omega_dim() const { return static_cast<int>(subset.size()) - 1; }
    // Cells lying on the face spanned by the given subset positions.
    std::vector<int> face_cells(const std::vector<int>& face_subset) const;
    std::string dump() const;
};

struct StrataOptions {
    Rational collar_delta = rat(1, 64);  // inner-triangle offset for dim-2 builds
    Rational thick = rat(1, 4096);       // target bracket width around features
    int depth_cap = 14;
    PrecisionControl prec;
};

// Exact index (negative eigenvalue count) of the *unperturbed* pencil at a
// point of the parameter simplex. Rejects points outside the simplex.
int index_at(const Pencil& pencil, const std::vector<Rational>& omega);

// Perturbed index at a sample (the pipeline's cell-label function).
int perturbed_index_at(const Pencil& pencil, const std::vector<Rational>& omega);

// Builds the strata for `subset`, reusing the already-built strata of every
// proper facet subset (keys, labels and samples are embedded verbatim, which
// is what makes restriction-to-face literal). Supported: |subset| <= 3 exact
// (plus |subset| = 4 via the certified-subdivision path in the pipeline).
Strata build_strata(const std::vector<int>& subset, const Pencil& pencil,
                    const std::map<std::vector<int>, const Strata*>& faces,
                    const StrataOptions& opt = {});

namespace detail {
// Copies face strata cells into `out` (dedup by key), injecting samples into
// the subset's coordinates. Returns the face-local -> out index map.
std::map<int, int> embed_face_cells(Strata& out, const Strata& face);

// Dimension-2 interior decomposition (collar + clipped planar CAD); used by
// build_strata for |subset| == 3. Implemented in cad.cpp.
void build_triangle_strata(Strata& out, const std::map<std::vector<int>, const Strata*>& faces,
                           const StrataOptions& opt);
// Dimension-3 path for all-diagonal pencils (exact hyperplane arrangement)
// and the certified-subdivision fallback. Implemented in cad.cpp.
void build_tetrahedron_strata(Strata& out, const std::map<std::vector<int>, const Strata*>& faces,
                              const StrataOptions& opt);

// Shared helpers.
std::string strata_cell_key(const std::vector<int>& subset, const std::string& local);
// Chart of the (m-1)-simplex: barycentric coords over vertices -e_i.
std::vector<Rational> omega_from_chart(const std::vector<Rational>& chart);
MultiPoly pull_to_chart(const MultiPoly& p, int m);
}  // namespace detail

}  // namespace qtb
