#include "qtb/collar.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

#include "qtb/errors.hpp"

namespace qtb {

std::vector<std::vector<bool>> BaseComplex::closure_matrix() const {
    size_t n = cells.size();
    std::vector<std::vector<bool>> cl(n, std::vector<bool>(n, false));
    // closure = reflexive-transitive hull of the covering relation
    std::function<void(int, int)> mark = [&](int root, int cur) {
        if (cl[root][cur]) return;
        cl[root][cur] = true;
        for (int f : cells[cur].facets) mark(root, f);
    };
    for (size_t i = 0; i < n; ++i) mark(static_cast<int>(i), static_cast<int>(i));
    return cl;
}

namespace {

std::string collar_key(const BaseComplex& base, int eta, const std::vector<int>& chain) {
    std::ostringstream os;
    os << "C{";
    for (size_t i = 0; i < chain.size(); ++i) {
        if (i) os << "<";
        os << base.cells[chain[i]].key;
    }
    os << "}@" << base.cells[eta].key;
    return os.str();
}

}  // namespace

bool CollarComplex::leq(int c_small, int c_big) const {
    const CollarCell& a = cells[c_big];
    const CollarCell& b = cells[c_small];
    // b = (tau; B), a = (eta; A): need tau <= eta, A subset of B, and if A is
    // capped then tau == eta.
    if (!base_closure[a.eta][b.eta]) return false;
    if (capped(c_big) && b.eta != a.eta) return false;
    // A subset of B as sets (both are chains, so subsequence test suffices).
    size_t i = 0;
    for (int x : b.chain) {
        if (i < a.chain.size() && a.chain[i] == x) ++i;
    }
    return i == a.chain.size();
}

std::vector<int> CollarComplex::facets(int c) const {
    std::vector<int> out;
    const CollarCell& cc = cells[c];
    int n = static_cast<int>(cells.size());
    for (int o = 0; o < n; ++o) {
        if (o == c) continue;
        if (cells[o].dim != cc.dim - 1) continue;
        if (leq(o, c)) out.push_back(o);
    }
    return out;
}

int CollarComplex::find(const std::string& key) const {
    for (size_t i = 0; i < cells.size(); ++i)
        if (cells[i].key == key) return static_cast<int>(i);
    return -1;
}

CollarComplex collar_complex(const BaseComplex& base, const Rational& width_base) {
    CollarComplex out;
    out.base = &base;
    out.base_closure = base.closure_matrix();
    int n = static_cast<int>(base.cells.size());

    // For each ambient cell eta: chains of cells in cl(eta), ending <= eta.
    for (int eta = 0; eta < n; ++eta) {
        std::vector<int> below;
        for (int i = 0; i < n; ++i)
            if (out.base_closure[eta][i]) below.push_back(i);
        // Order candidates by dimension then key for deterministic output.
        std::sort(below.begin(), below.end(), [&](int a, int b) {
            if (base.cells[a].dim != base.cells[b].dim) return base.cells[a].dim < base.cells[b].dim;
            return base.cells[a].key < base.cells[b].key;
        });
        // Enumerate ascending chains in the closure poset of eta.
        std::vector<int> chain;
        std::function<void()> emit = [&]() {
            CollarCell cell;
            cell.eta = eta;
            cell.chain = chain;
            cell.dim = base.cells[eta].dim - (static_cast<int>(chain.size()) - 1);
            cell.min_index = base.cells[eta].label;
            cell.key = collar_key(base, eta, chain);
            // Sample: start at the first chain element, then walk toward each
            // following element (and finally toward eta when uncapped) with
            // shrinking weights.
            std::vector<int> path = chain;
            if (path.back() != eta) path.push_back(eta);
            std::vector<Rational> s = base.cells[path[0]].sample;
            for (size_t i = 1; i < path.size(); ++i) {
                Rational w = width_base;
                int d = base.cells[path[i - 1]].dim;
                for (int t = 0; t < d; ++t) w /= 4;
                const auto& tgt = base.cells[path[i]].sample;
                for (size_t j = 0; j < s.size(); ++j) s[j] = s[j] + w * (tgt[j] - s[j]);
            }
            cell.sample = std::move(s);
            out.cells.push_back(std::move(cell));
        };
        std::function<void(size_t)> rec = [&](size_t start) {
            if (!chain.empty()) emit();
            for (size_t i = start; i < below.size(); ++i) {
                int cand = below[i];
                if (!chain.empty()) {
                    int last = chain.back();
                    if (cand == last) continue;
                    if (!(out.base_closure[cand][last] && cand != last)) continue;
                }
                chain.push_back(cand);
                rec(i + 1);
                chain.pop_back();
            }
        };
        rec(0);
    }
    // Deterministic global order.
    std::sort(out.cells.begin(), out.cells.end(),
              [](const CollarCell& a, const CollarCell& b) { return a.key < b.key; });
    return out;
}

}  // namespace qtb
