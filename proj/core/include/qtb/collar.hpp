#pragma once

#include <string>
#include <vector>

#include "qtb/rational.hpp"

namespace qtb {

// Abstract regular-cell base (the strata of a parameter simplex): cells with
// covering faces, per-cell index labels and rational sample points.
struct BaseCell {
    std::string key;
    int dim = 0;
    int label = 0;  // index of the pencil on the cell
    std::vector<Rational> sample;
    std::vector<int> facets;  // covering faces
    bool wall = false;
    // Chart-box enclosure in the owning build's chart (used internally by the
    // next-dimension build; empty for 0-dimensional charts).
    std::vector<Rational> box_lo, box_hi;
};

struct BaseComplex {
    std::vector<BaseCell> cells;

    // closure[a][b]: cell b lies in the closure of cell a (reflexive).
    std::vector<std::vector<bool>> closure_matrix() const;
};

// Cell of the chamber/collar decomposition: a chain s_1 < ... < s_p <= eta
// of base cells. The last element may equal the ambient cell eta ("capped",
// the chamber-touching case); dimension is dim(eta) - (p - 1).
struct CollarCell {
    int eta = 0;
    std::vector<int> chain;  // ascending, chain.back() <= eta in closure order
    int dim = 0;
    int min_index = 0;  // label of eta
    std::vector<Rational> sample;
    std::string key;
};

struct CollarComplex {
    const BaseComplex* base = nullptr;
    std::vector<CollarCell> cells;
    std::vector<std::vector<bool>> base_closure;

    bool capped(int c) const { return cells[c].chain.back() == cells[c].eta; }
    // Closure order: (tau; B) <= (eta; A) per the chamber/collar rules.
    bool leq(int c_small, int c_big) const;
    // Covering faces of a collar cell (insertions and ambient reductions).
    std::vector<int> facets(int c) const;
    int find(const std::string& key) const;
};

// Builds every chain cell. Sample points walk from the first chain element
// toward each later one with geometrically decaying collar weights
// (width_base * 4^-dim per step).
CollarComplex collar_complex(const BaseComplex& base, const Rational& width_base = pow2(-8));

}  // namespace qtb
