#ifndef PARLIKE_STRAIGHTEN_HPP
#define PARLIKE_STRAIGHTEN_HPP

// Recovering the member z + 1/z + A hybrid equivalent to a degree-2
// parabolic-like map, up to the sign of A, by matching fixed-point
// invariants that a hybrid conjugacy preserves.

#include <string>
#include <utility>
#include <vector>

#include "parlike/plm.hpp"

namespace parlike {

struct InternalFixedPoint {
    FixedPointRecord record;
    bool parabolic_base = false;  // the point gamma(0)
    bool ambiguous = false;       // within the boundary tolerance of Omega'
};

// Fixed points in Omega' plus the base point, by Newton from a grid of
// seeds, deduplicated and sorted by location.
std::vector<InternalFixedPoint> internal_fixed_points(const PLMap& plm, int grid = 48);

// 1 - A^2, the multiplier of z + 1/z + A at its finite fixed point -1/A.
Complex perone_fixed_multiplier(Complex A);

enum class StraightenMethod { AttractingMultiplier, IndifferentMultiplier, InternalPetalZero, HeuristicRepelling };
enum class Confidence { Guaranteed, Heuristic };

const char* method_name(StraightenMethod m);
const char* confidence_name(Confidence c);

struct StraighteningEstimate {
    Complex A_squared;
    std::pair<Complex, Complex> representatives;  // principal root first
    StraightenMethod method = StraightenMethod::AttractingMultiplier;
    Confidence confidence = Confidence::Guaranteed;
    double residual = 0.0;  // |f(p) - p| at the matched fixed point
};

// Throws std::invalid_argument unless the degree is 2 and NumericalError
// when there is neither an internal fixed point nor an internal petal.
StraighteningEstimate straighten_estimate(const PLMap& plm);

}  // namespace parlike

#endif  // PARLIKE_STRAIGHTEN_HPP
