#pragma once

#include <map>
#include <string>
#include <vector>

#include "qtb/homalg.hpp"
#include "qtb/matrix.hpp"

namespace qtb {

// Regular cell complex given by cells and their covering (codimension-1)
// faces. Incidence signs are not supplied by the caller: they are computed
// by propagating fundamental cycles through each cell's boundary sphere,
// seeded deterministically at the lexicographically smallest facet key, so
// any subcomplex reproduces identical signs for shared cells.
struct RegularCellComplex {
    struct Cell {
        std::string key;
        int dim = 0;
        std::string label;
        std::vector<int> facets;                  // covering faces (dim-1)
        std::map<int, Rational> boundary;        // facet id -> incidence sign
    };

    std::vector<Cell> cells;
    std::map<std::string, int> index;

    int add_cell(const std::string& key, int dim, const std::string& label = "");
    void add_facet(int cell, int facet);
    int cell_id(const std::string& key) const;  // -1 when absent

    // Computes all incidence signs; throws QtbError if the covering data is
    // not that of a regular complex (wrong facet counts, inconsistent cycle).
    void compute_incidence();

    int max_dim() const;
    long euler_characteristic() const;
    // Cells ordered by (dim, key); returns per-dim cell lists used as bases.
    std::map<int, std::vector<int>> cells_by_dim() const;
    // Boundary matrix d -> d-1 in the (dim, key) bases.
    RatMatrix boundary_matrix(int d) const;
    ChainComplexQ chain_complex() const;
    CochainComplexQ cochain_complex() const;
    std::map<int, int> homology_ranks() const;

    // Versioned text dump (cell list + boundary triples) for external viewers.
    std::string dump() const;
};

}  // namespace qtb
