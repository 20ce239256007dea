#include "qtb/cellcomplex.hpp"

#include <algorithm>
#include <sstream>

#include "qtb/errors.hpp"

namespace qtb {

int RegularCellComplex::add_cell(const std::string& key, int dim, const std::string& label) {
    auto it = index.find(key);
    if (it != index.end()) throw QtbError("RegularCellComplex: duplicate cell key " + key);
    int id = static_cast<int>(cells.size());
    cells.push_back(Cell{key, dim, label, {}, {}});
    index[key] = id;
    return id;
}

void RegularCellComplex::add_facet(int cell, int facet) {
    if (cells[facet].dim != cells[cell].dim - 1)
        throw QtbError("RegularCellComplex: facet dimension mismatch between " + cells[cell].key +
                       " and " + cells[facet].key);
    cells[cell].facets.push_back(facet);
}

int RegularCellComplex::cell_id(const std::string& key) const {
    auto it = index.find(key);
    return it == index.end() ? -1 : it->second;
}

void RegularCellComplex::compute_incidence() {
    // Process by dimension; facets of each cell carry already-computed rows.
    std::vector<int> order(cells.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        if (cells[a].dim != cells[b].dim) return cells[a].dim < cells[b].dim;
        return cells[a].key < cells[b].key;
    });

    for (int id : order) {
        Cell& c = cells[id];
        c.boundary.clear();
        std::sort(c.facets.begin(), c.facets.end(),
                  [&](int a, int b) { return cells[a].key < cells[b].key; });
        c.facets.erase(std::unique(c.facets.begin(), c.facets.end()), c.facets.end());
        if (c.dim == 0) {
            if (!c.facets.empty()) throw QtbError("0-cell with facets: " + c.key);
            continue;
        }
        if (c.dim == 1) {
            if (c.facets.size() != 2)
                throw QtbError("1-cell without exactly two endpoints: " + c.key);
            c.boundary[c.facets[0]] = 1;  // smaller key positive
            c.boundary[c.facets[1]] = -1;
            continue;
        }
        if (c.facets.empty()) throw QtbError("cell of dim >= 2 without facets: " + c.key);
        // Each (dim-2)-cell under c must lie in exactly two of c's facets.
        std::map<int, std::vector<int>> ridge_to_facets;
        for (int f : c.facets)
            for (const auto& [r, coef] : cells[f].boundary) ridge_to_facets[r].push_back(f);
        for (const auto& [r, fs] : ridge_to_facets)
            if (fs.size() != 2)
                throw QtbError("boundary of " + c.key + " is not a pseudomanifold at " +
                               cells[r].key);
        // Propagate a fundamental cycle over the facet adjacency graph.
        std::map<int, Rational> eps;
        std::vector<int> queue{c.facets[0]};
        eps[c.facets[0]] = 1;
        size_t qi = 0;
        while (qi < queue.size()) {
            int f = queue[qi++];
            for (const auto& [r, coef] : cells[f].boundary) {
                const auto& pairv = ridge_to_facets[r];
                int g = pairv[0] == f ? pairv[1] : pairv[0];
                Rational want = -eps[f] * coef / cells[g].boundary.at(r);
                auto it = eps.find(g);
                if (it == eps.end()) {
                    eps[g] = want;
                    queue.push_back(g);
                } else if (it->second != want) {
                    throw QtbError("inconsistent boundary cycle at " + c.key);
                }
            }
        }
        if (eps.size() != c.facets.size())
            throw QtbError("boundary of " + c.key + " is not connected");
        // The propagated chain must be a cycle.
        std::map<int, Rational> dd;
        for (const auto& [f, e] : eps)
            for (const auto& [r, coef] : cells[f].boundary) dd[r] += e * coef;
        for (const auto& [r, v] : dd)
            if (v != 0) throw QtbError("fundamental chain is not a cycle at " + c.key);
        c.boundary = std::move(eps);
    }
}

int RegularCellComplex::max_dim() const {
    int d = -1;
    for (const auto& c : cells) d = std::max(d, c.dim);
    return d;
}

long RegularCellComplex::euler_characteristic() const {
    long chi = 0;
    for (const auto& c : cells) chi += (c.dim % 2 == 0) ? 1 : -1;
    return chi;
}

std::map<int, std::vector<int>> RegularCellComplex::cells_by_dim() const {
    std::map<int, std::vector<int>> by_dim;
    for (size_t i = 0; i < cells.size(); ++i) by_dim[cells[i].dim].push_back(static_cast<int>(i));
    for (auto& [d, v] : by_dim)
        std::sort(v.begin(), v.end(), [&](int a, int b) { return cells[a].key < cells[b].key; });
    return by_dim;
}

RatMatrix RegularCellComplex::boundary_matrix(int d) const {
    auto by_dim = cells_by_dim();
    std::vector<int> rows = by_dim.count(d - 1) ? by_dim[d - 1] : std::vector<int>{};
    std::vector<int> cols = by_dim.count(d) ? by_dim[d] : std::vector<int>{};
    std::map<int, int> row_of;
    for (size_t i = 0; i < rows.size(); ++i) row_of[rows[i]] = static_cast<int>(i);
    RatMatrix m(static_cast<int>(rows.size()), static_cast<int>(cols.size()));
    for (size_t c = 0; c < cols.size(); ++c)
        for (const auto& [f, coef] : cells[cols[c]].boundary)
            m.at(row_of.at(f), static_cast<int>(c)) = coef;
    return m;
}

ChainComplexQ RegularCellComplex::chain_complex() const {
    ChainComplexQ cc;
    auto by_dim = cells_by_dim();
    for (const auto& [d, v] : by_dim) cc.dims[d] = static_cast<int>(v.size());
    for (const auto& [d, v] : by_dim)
        if (d >= 1) cc.d[d] = boundary_matrix(d);
    return cc;
}

CochainComplexQ RegularCellComplex::cochain_complex() const {
    CochainComplexQ co;
    auto by_dim = cells_by_dim();
    for (const auto& [d, v] : by_dim) co.dims[d] = static_cast<int>(v.size());
    for (const auto& [d, v] : by_dim)
        if (d >= 1) co.delta[d - 1] = boundary_matrix(d).transpose();
    return co;
}

std::map<int, int> RegularCellComplex::homology_ranks() const {
    return chain_complex().homology_ranks();
}

std::string RegularCellComplex::dump() const {
    std::ostringstream os;
    os << "qtb-cellcomplex 1\n";
    os << "cells " << cells.size() << "\n";
    auto by_dim = cells_by_dim();
    for (const auto& [d, v] : by_dim)
        for (int id : v) os << d << " " << cells[id].key << " " << cells[id].label << "\n";
    os << "boundary\n";
    for (const auto& c : cells)
        for (const auto& [f, coef] : c.boundary)
            os << c.key << " " << cells[f].key << " " << rat_str(coef) << "\n";
    return os.str();
}

}  // namespace qtb
