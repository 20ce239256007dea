#pragma once

#include <vector>

#include "qtb/errors.hpp"
#include "qtb/rational.hpp"

namespace qtb {

using IntervalVector = std::vector<RationalInterval>;

IntervalVector iv_from_exact(const std::vector<Rational>& v);
RationalInterval iv_dot(const IntervalVector& a, const IntervalVector& b);
IntervalVector iv_add(const IntervalVector& a, const IntervalVector& b);
IntervalVector iv_sub(const IntervalVector& a, const IntervalVector& b);
IntervalVector iv_scale(const RationalInterval& s, const IntervalVector& v);
Rational iv_max_width(const IntervalVector& v);
// max-norm distance bound between the two enclosed vector sets
Rational iv_max_dist(const IntervalVector& a, const IntervalVector& b);

// Determinant enclosure by cofactor expansion (small n only).
RationalInterval iv_det(const std::vector<IntervalVector>& rows);

// Gram-Schmidt on interval vectors. Requires certified linear independence
// (each diagonal norm-square enclosure strictly positive); throws
// IndependenceNotCertified otherwise. Output vectors are normalized with
// sqrt enclosures of width <= sqrt_width.
std::vector<IntervalVector> interval_gram_schmidt(const std::vector<IntervalVector>& vs,
                                                  const Rational& sqrt_width = pow2(-32));

}  // namespace qtb
