#pragma once

#include <vector>

#include "qtb/mpoly.hpp"

namespace qtb {

enum class SignCert { Positive, Negative, Indeterminate };

// One-sided sign certificate for p on a (full-dimensional, non-degenerate)
// simplex given by its m+1 vertices in R^m: Positive/Negative exactly when
// the Bernstein coefficient vector of p over the simplex is uniformly
// one-signed. Complete under subdivision for polynomials without zeros on
// the closed simplex; Indeterminate otherwise.
SignCert bernstein_sign(const MultiPoly& p, const std::vector<std::vector<Rational>>& simplex);

}  // namespace qtb
