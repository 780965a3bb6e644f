#pragma once

#include <array>
#include <optional>

#include "cdsim/pulses.hpp"
#include "cdsim/types.hpp"

namespace cdsim::two_level {

struct TwoLevelParams {
  double gamma = 0;        // decay rate of |2> [rad/s], >= 0
  double omega_laser = 0;  // laser carrier omega_L [rad/s], >= 0
  pulses::AeParams ae;
  bool counter_rotating = false;  // keep the 1 + e^{-2 i omega_L t} factor
};

void validate(const TwoLevelParams& p);

// Complex mixing angle beta = arctan(u)/2 on a branch kept continuous along a
// trajectory. `branch` counts the pi/2 multiples added to the principal value.
struct MixingAngle {
  complexd beta{};
  complexd beta_dot{};
  int branch = 0;
};

// Right states |phi_+->, and the hatted states obtained by beta -> beta*.
struct BiorthPair2 {
  Vector2c right_plus;
  Vector2c right_minus;
  Vector2c left_plus;
  Vector2c left_minus;
};

struct Pair2Derivatives {
  Vector2c dplus;
  Vector2c dminus;
};

// Reference Hamiltonian: (1/2) [[-Delta, Omega], [Omega, Delta - i Gamma]]
// with Omega dressed by the counter-rotating factor when enabled. The two
// off-diagonal entries are equal (complex symmetric), not conjugate.
Matrix2c hamiltonian(double t, const TwoLevelParams& p);

// Continuous-branch mixing angle with analytic derivative. Pass the previous
// sample of the same trajectory to keep the branch continuous.
MixingAngle mixing_angle(double t, const TwoLevelParams& p,
                         const MixingAngle* prev = nullptr);

BiorthPair2 eigenstates(const MixingAngle& a, double omega_laser, double t);

// d/dt of the right states, assembled from beta, beta_dot analytically.
Pair2Derivatives eigenstate_derivatives(const MixingAngle& a, double omega_laser,
                                        double t);

// Closed-form counterdiabatic generator for the dressed (beyond-RWA) system.
// Written in terms of the full rotation angle theta = arctan(u) = 2*beta; see
// the unit tests for the algebraic identity with cd_general.
Matrix2c cd_beyond_rwa(const MixingAngle& a, double omega_laser, double t);

// Counterdiabatic generator from the biorthogonal sum
//   i * sum_n ( |d phi_n><phi^_n| - <phi^_n|d phi_n> |phi_n><phi^_n| ).
Matrix2c cd_general(const BiorthPair2& pair, const Pair2Derivatives& dot);

struct RwaCd {
  complexd omega_a;  // auxiliary Rabi frequency i*theta_dot/2
  Matrix2c matrix;   // [[0, omega_a], [-omega_a, 0]]
};

// RWA counterdiabatic term built from the undressed pulses.
RwaCd cd_rwa(double t, const TwoLevelParams& p);

// Physically realizable approximation Omega_a ~= i Im(Omega_a).
complexd imag_only_approximation(complexd omega_a);

// Diagnostic only: residuals || H |phi_+-> - lambda |phi_+-> || against the
// eigenvalues from direct 2x2 diagonalization. The carrier-phase ansatz is
// not an exact eigenbasis of the dressed Hamiltonian, so this is reported,
// never asserted.
std::array<double, 2> eigen_residual(double t, const TwoLevelParams& p);

}  // namespace cdsim::two_level
