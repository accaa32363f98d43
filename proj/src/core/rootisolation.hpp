#ifndef CQE_CORE_ROOTISOLATION_HPP
#define CQE_CORE_ROOTISOLATION_HPP

#include "core/ball.hpp"
#include "core/upoly.hpp"

#include <vector>

namespace cqe {

// Certified isolation of all complex roots of p (square-free part is taken
// internally).  Returns exactly deg(squarefree(p)) pairwise-disjoint balls,
// each containing exactly one root, radii <= 2^-precision_bits, sorted by
// (real, imaginary) midpoint.  Throws PrecisionExceeded past the hard cap.
std::vector<ComplexBall> isolate_roots(const UPoly& p, long precision_bits);

// Shrink an isolating ball of a simple root of square-free p down to
// radius <= 2^-target_bits, by interval Newton contraction with a
// re-isolation fallback.
ComplexBall refine_root_ball(const UPoly& p_squarefree, const ComplexBall& ball,
                             long target_bits);

// Same machinery for enclosure coefficients: the polynomial is given by balls
// containing its exact coefficients (leading ball must exclude zero).  When
// the exact polynomial is square-free with simple roots, escalating the input
// precision eventually certifies; returns empty when certification fails at
// this input precision.
std::vector<ComplexBall> isolate_roots_ball_coeffs(const std::vector<ComplexBall>& coeffs,
                                                   long precision_bits);

}  // namespace cqe

#endif
