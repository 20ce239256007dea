#pragma once

#include "qtb/interval_linalg.hpp"
#include "qtb/matrix.hpp"

namespace qtb {

// Certified orthonormal eigenbasis enclosure of a symmetric rational matrix.
// vectors[i] encloses the unit eigenvector for eigenvalues[i]; eigenvalues
// are ordered increasingly with pairwise disjoint enclosures across distinct
// values. Sign convention: first certified-nonzero coordinate positive.
struct EigenFrame {
    int n = 0;
    std::vector<RationalInterval> eigenvalues;
    std::vector<IntervalVector> vectors;
};

// Global per-run precision policy: interval targets are halved on demand
// until the width cap is reached, then CertificationFailed is thrown.
struct PrecisionControl {
    Rational initial_width = pow2(-32);
    Rational width_cap = pow2(-2048);
};

// Throws CertificationFailed when eigenvalue enclosures cannot be separated
// (irrational multiple eigenvalues) or certification fails at the cap.
EigenFrame eigenframe(const RatMatrix& m, const PrecisionControl& prec = {});

// max |<a,b>| lower bound certified >= threshold? Utility for frame matching.
bool dot_certified_at_least(const IntervalVector& a, const IntervalVector& b,
                            const Rational& threshold, int* sign_out);

}  // namespace qtb
