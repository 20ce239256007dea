#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "qtb/matrix.hpp"

namespace qtb {

// Chain complex over Q with differential lowering degree:
// d[p] : C_p -> C_{p-1}, stored only where both ends may be nonzero.
struct ChainComplexQ {
    std::map<int, int> dims;
    std::map<int, RatMatrix> d;  // d[p] has shape dim(p-1) x dim(p)

    int dim(int p) const;
    const RatMatrix* diff(int p) const;
    RatMatrix diff_or_zero(int p) const;
    void validate() const;  // shapes and d.d = 0
    std::map<int, int> homology_ranks() const;
};

// Cochain complex: delta[q] : C^q -> C^{q+1}.
struct CochainComplexQ {
    std::map<int, int> dims;
    std::map<int, RatMatrix> delta;  // delta[q] has shape dim(q+1) x dim(q)

    int dim(int q) const;
    RatMatrix delta_or_zero(int q) const;
    void validate() const;
    std::map<int, int> cohomology_ranks() const;
};

// Dual of a chain complex (transposed matrices, grading role reversed;
// degrees are negated so the stored differential still lowers degree).
ChainComplexQ dualize(const ChainComplexQ& c);
// Dual of a cochain complex as a chain complex in the same degrees:
// d[q] = transpose(delta[q-1]).
ChainComplexQ dualize(const CochainComplexQ& c);

// Bigraded complex with horizontal differential raising p and vertical
// differential moving q by vdir (+1 cohomological, -1 for the
// Mayer-Vietoris shape). Optional block labels per entry record direct-sum
// decompositions (used by the subset-indexed pipeline complexes).
struct DoubleComplexQ {
    int vdir = -1;
    std::map<std::pair<int, int>, int> dims;
    std::map<std::pair<int, int>, RatMatrix> dv;  // (p,q) -> (p, q+vdir)
    std::map<std::pair<int, int>, RatMatrix> dh;  // (p,q) -> (p+1, q)
    std::map<std::pair<int, int>, std::vector<std::pair<std::string, int>>> blocks;

    int dim(int p, int q) const;
    RatMatrix dv_or_zero(int p, int q) const;
    RatMatrix dh_or_zero(int p, int q) const;
    // Checks shapes, dv.dv = 0, dh.dh = 0 and dv.dh + dh.dv = 0.
    void validate() const;
};

// Zeroes every entry outside 0 <= p <= l+1, k-l-1 <= q <= k.
DoubleComplexQ truncate(const DoubleComplexQ& dc, int k, int l);

// Ranks of H^n(Tot). With fourth_quadrant_regrading (requires vdir == -1)
// the total degree is n = p + regrade_k - q (regrade_k < 0 picks the max q
// present); otherwise n = p + q (requires vdir == +1).
std::map<int, int> total_homology_ranks(const DoubleComplexQ& dc, bool fourth_quadrant_regrading,
                                        int regrade_k = -1);

struct SpectralPage {
    int r = 0;
    std::map<std::pair<int, int>, int> dims;
    // d_r : E_r^{p,q} -> E_r^{p+r, q-r+1} in the page bases.
    std::map<std::pair<int, int>, RatMatrix> d;
};

enum class Filtration { Column, Row };

// Pages E_1..E_up_to_r of the spectral sequence of the chosen filtration.
// Entries are reported in the normalized grading (both differentials
// raising; for vdir == -1 inputs q is replaced by K - q first).
std::vector<SpectralPage> spectral_pages(const DoubleComplexQ& dc, Filtration orientation,
                                         int up_to_r);

// Finite simplicial complex on integer vertices.
struct SimplicialComplex {
    // Simplices as sorted vertex lists, including all faces.
    std::set<std::vector<int>> simplices;

    void insert_with_faces(std::vector<int> simplex);
    bool contains(const std::vector<int>& s) const { return simplices.count(s) > 0; }
    SimplicialComplex union_with(const SimplicialComplex& o) const;
    SimplicialComplex intersection_with(const SimplicialComplex& o) const;
    ChainComplexQ chain_complex() const;
    std::map<int, int> betti() const;
};

// The generalized Mayer-Vietoris double complex of a cover A_1..A_s:
// N^{p,q} = (+)_{a_0<..<a_p} C_q(A_{a_0} u .. u A_{a_p}), vertical simplicial
// boundary, horizontal signed deletion sum. Its total homology computes
// H(A_1 n .. n A_s). Test/oracle helper.
DoubleComplexQ mv_double_complex(const std::vector<SimplicialComplex>& cover);

// Component projection between block-labeled double complexes whose block
// sets are nested (every block of sub appears in super with equal dims).
// Returns per-(p,q) projection matrices and verifies the chain-map identity.
std::map<std::pair<int, int>, RatMatrix> inclusion_morphism(const DoubleComplexQ& super,
                                                            const DoubleComplexQ& sub);

// Assemble the subset-indexed double complex: D^{p,q} = (+)_{|Q|=p+1} dual
// module of Q, horizontal differential via the signed alternating sum of the
// given dual restriction maps phi[(Q', Q)], vertical differential twisted by
// (-1)^p so the two anticommute. Subsets are labeled by comma-joined indices.
DoubleComplexQ assemble_d(
    const std::map<std::vector<int>, CochainComplexQ>& modules,
    const std::map<std::pair<std::vector<int>, std::vector<int>>, std::map<int, RatMatrix>>& phi_dual);

}  // namespace qtb
