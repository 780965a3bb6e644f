#pragma once

#include <stdexcept>
#include <string>

namespace cdsim {

// Invalid configuration input. The CLI maps this to exit code 1.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Numeric failure during evaluation or propagation. The CLI maps this to
// exit code 2.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

// arctan branch point 1 + u^2 = 0: the mixing angle is undefined.
struct singular_angle_error : numeric_error {
  explicit singular_angle_error(const std::string& msg) : numeric_error(msg) {}
};

// Coalescing eigenvalues of a non-Hermitian Hamiltonian; spectral projectors
// diverge.
struct exceptional_point_error : numeric_error {
  explicit exceptional_point_error(const std::string& msg) : numeric_error(msg) {}
};

// Both drive amplitudes vanish: the dark-state direction is undefined.
struct degenerate_dark_error : numeric_error {
  explicit degenerate_dark_error(const std::string& msg) : numeric_error(msg) {}
};

// |M| = |Omega_eff^2 + Delta_eff^2| collapsed inside the drive support.
struct singular_m_error : numeric_error {
  explicit singular_m_error(const std::string& msg) : numeric_error(msg) {}
};

// Requested integration step does not resolve the fastest carrier.
struct step_too_coarse_error : numeric_error {
  explicit step_too_coarse_error(const std::string& msg) : numeric_error(msg) {}
};

// An amplitude overflowed or became NaN during propagation.
struct non_finite_error : numeric_error {
  explicit non_finite_error(const std::string& msg) : numeric_error(msg) {}
};

}  // namespace cdsim
