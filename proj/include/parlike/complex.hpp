#ifndef PARLIKE_COMPLEX_HPP
#define PARLIKE_COMPLEX_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

namespace parlike {

using Complex = std::complex<double>;
using CVector = Eigen::VectorXcd;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr Complex kI{0.0, 1.0};

// The point at infinity. It only ever enters finite arithmetic through the
// w = 1/z chart; callers test for it with is_infinity().
inline const Complex kInfinity{std::numeric_limits<double>::infinity(),
                               std::numeric_limits<double>::infinity()};

inline bool is_infinity(Complex z) { return std::isinf(z.real()) || std::isinf(z.imag()); }

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Wrap an angle into (-pi, pi].
inline double wrap_angle(double theta)
{
    double t = std::fmod(theta + kPi, kTwoPi);
    if (t <= 0.0)
        t += kTwoPi;
    return t - kPi;
}

inline double angle_distance(double a, double b) { return std::abs(wrap_angle(a - b)); }

// Numerical failure inside an iterative algorithm: non-convergence, loss of
// a branch, leaving a petal. The message is meant to be surfaced verbatim.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace parlike

#endif  // PARLIKE_COMPLEX_HPP
