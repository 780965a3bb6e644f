#pragma once

#include <complex>

#include <Eigen/Dense>

namespace cdsim {

using complexd = std::complex<double>;

using Matrix2c = Eigen::Matrix2cd;
using Matrix3c = Eigen::Matrix3cd;
using Vector2c = Eigen::Vector2cd;
using Vector3c = Eigen::Vector3cd;

inline constexpr double pi = 3.141592653589793238462643383279502884;

// imaginary unit
inline constexpr complexd iu{0.0, 1.0};

// Instantaneous value of one drive envelope together with its exact analytic
// time-derivative. Derivatives are never taken numerically in library code;
// finite differences exist only in tests.
struct PulseSample {
  complexd value{};       // [rad/s]
  complexd derivative{};  // [rad/s^2]
};

}  // namespace cdsim
