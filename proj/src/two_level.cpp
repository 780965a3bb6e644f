#include "cdsim/two_level.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cdsim/errors.hpp"

namespace cdsim::two_level {

namespace {

// Principal branch, arctan(z) = log((1+iz)/(1-iz)) / (2i).
complexd atan_principal(complexd z) {
  return std::log((1.0 + iu * z) / (1.0 - iu * z)) / (2.0 * iu);
}

}  // namespace

void validate(const TwoLevelParams& p) {
  if (!(p.gamma >= 0)) throw config_error("gamma: must be >= 0");
  if (!(p.omega_laser >= 0)) throw config_error("omegaL: must be >= 0");
  pulses::validate(p.ae);
}

Matrix2c hamiltonian(double t, const TwoLevelParams& p) {
  const auto d = pulses::ae_drive(t, p.ae);
  const complexd omega = p.counter_rotating
                             ? pulses::dress_counter_rotating(d.rabi, p.omega_laser, t).value
                             : d.rabi.value;
  const complexd delta = d.detuning.value;
  Matrix2c h;
  h << -0.5 * delta, 0.5 * omega,
        0.5 * omega, 0.5 * (delta - iu * p.gamma);
  return h;
}

MixingAngle mixing_angle(double t, const TwoLevelParams& p, const MixingAngle* prev) {
  const auto d = pulses::ae_drive(t, p.ae);
  const double wr = d.rabi.value.real();
  const double wr_dot = d.rabi.derivative.real();

  // Coupling entry of the phase-stripped Hamiltonian: 2 Omega_R cos(omega_L t)
  // with the counter-rotating factor kept, plain Omega_R under RWA.
  double num, num_dot;
  if (p.counter_rotating) {
    const double c = std::cos(p.omega_laser * t);
    const double s = std::sin(p.omega_laser * t);
    num = 2.0 * wr * c;
    num_dot = 2.0 * wr_dot * c - 2.0 * wr * p.omega_laser * s;
  } else {
    num = wr;
    num_dot = wr_dot;
  }

  const double gamma_dot = 0.0;  // constant loss rate
  const complexd den = d.detuning.value - 0.5 * iu * p.gamma;
  const complexd den_dot = d.detuning.derivative - 0.5 * iu * gamma_dot;

  MixingAngle out;
  if (num == 0.0 && den == complexd(0.0, 0.0)) {
    // 0/0 at a pulse tail with Gamma = Delta = 0: beta = 0 by convention.
    out.beta = 0.0;
    out.beta_dot = 0.0;
  } else {
    const complexd s2 = num * num + den * den;  // = D^2 (1 + u^2)
    if (std::abs(s2) < 1e-12 * (num * num + std::norm(den)))
      throw singular_angle_error("mixing angle: 1 + u^2 = 0 (arctan branch point)");
    if (den == complexd(0.0, 0.0)) {
      out.beta = (num > 0 ? 0.25 : -0.25) * pi;  // arctan(+-inf)/2
    } else {
      out.beta = 0.5 * atan_principal(num / den);
    }
    // beta_dot = u_dot / (2 (1 + u^2)), assembled without forming u.
    out.beta_dot = (num_dot * den - num * den_dot) / (2.0 * s2);
  }

  if (prev) {
    // Shift by the pi/2 multiple putting beta nearest the previous sample.
    const double k = std::round((prev->beta.real() - out.beta.real()) / (0.5 * pi));
    out.beta += k * 0.5 * pi;
    out.branch = static_cast<int>(k);
  }
  return out;
}

BiorthPair2 eigenstates(const MixingAngle& a, double omega_laser, double t) {
  const complexd sb = std::sin(a.beta);
  const complexd cb = std::cos(a.beta);
  const complexd sbh = std::sin(std::conj(a.beta));
  const complexd cbh = std::cos(std::conj(a.beta));
  const complexd ep = std::exp(iu * omega_laser * t);
  const complexd em = std::exp(-iu * omega_laser * t);

  BiorthPair2 out;
  out.right_plus << sb, cb * ep;
  out.right_minus << cb * em, -sb;
  out.left_plus << sbh, cbh * ep;
  out.left_minus << cbh * em, -sbh;
  return out;
}

Pair2Derivatives eigenstate_derivatives(const MixingAngle& a, double omega_laser,
                                        double t) {
  const complexd sb = std::sin(a.beta);
  const complexd cb = std::cos(a.beta);
  const complexd bd = a.beta_dot;
  const complexd ep = std::exp(iu * omega_laser * t);
  const complexd em = std::exp(-iu * omega_laser * t);

  Pair2Derivatives out;
  out.dplus << bd * cb, (-bd * sb + iu * omega_laser * cb) * ep;
  out.dminus << (-bd * sb - iu * omega_laser * cb) * em, -bd * cb;
  return out;
}

Matrix2c cd_beyond_rwa(const MixingAngle& a, double omega_laser, double t) {
  const complexd theta = 2.0 * a.beta;  // full rotation angle arctan(u)
  const complexd theta_dot = 2.0 * a.beta_dot;
  const complexd s = std::sin(theta);
  const complexd s2 = std::sin(2.0 * theta);
  const complexd ep = std::exp(iu * omega_laser * t);
  const complexd em = std::exp(-iu * omega_laser * t);

  Matrix2c m;
  m(0, 0) = 0.5 * omega_laser * s * s;
  m(0, 1) = (0.5 * iu * theta_dot + 0.25 * omega_laser * s2) * em;
  m(1, 0) = (-0.5 * iu * theta_dot + 0.25 * omega_laser * s2) * ep;
  m(1, 1) = -m(0, 0);
  return m;
}

Matrix2c cd_general(const BiorthPair2& pair, const Pair2Derivatives& dot) {
  const complexd ip_plus = pair.left_plus.dot(dot.dplus);    // <phi^_+|d phi_+>
  const complexd ip_minus = pair.left_minus.dot(dot.dminus);

  Matrix2c m = dot.dplus * pair.left_plus.adjoint() -
               ip_plus * (pair.right_plus * pair.left_plus.adjoint());
  m += dot.dminus * pair.left_minus.adjoint() -
       ip_minus * (pair.right_minus * pair.left_minus.adjoint());
  return iu * m;
}

RwaCd cd_rwa(double t, const TwoLevelParams& p) {
  const auto d = pulses::ae_drive(t, p.ae);
  const double wr = d.rabi.value.real();
  const double wr_dot = d.rabi.derivative.real();
  const double gamma_dot = 0.0;  // constant loss rate
  const complexd den_half = d.detuning.value - 0.5 * iu * p.gamma;
  const complexd den_half_dot = d.detuning.derivative - 0.5 * iu * gamma_dot;

  const complexd denom = wr * wr + den_half * den_half;
  if (std::abs(denom) < 1e-12 * (wr * wr + std::norm(den_half)))
    throw exceptional_point_error("cd_rwa: Omega_R^2 + (Delta - i Gamma/2)^2 = 0");

  const complexd theta_dot = (wr_dot * den_half - wr * den_half_dot) / denom;
  RwaCd out;
  out.omega_a = 0.5 * iu * theta_dot;
  out.matrix << 0.0, out.omega_a, -out.omega_a, 0.0;
  return out;
}

complexd imag_only_approximation(complexd omega_a) {
  return complexd(0.0, omega_a.imag());
}

std::array<double, 2> eigen_residual(double t, const TwoLevelParams& p) {
  const Matrix2c h = hamiltonian(t, p);
  const MixingAngle a = mixing_angle(t, p);
  const BiorthPair2 pair = eigenstates(a, p.omega_laser, t);

  const complexd mean = 0.5 * (h(0, 0) + h(1, 1));
  const complexd disc = std::sqrt(0.25 * (h(0, 0) - h(1, 1)) * (h(0, 0) - h(1, 1)) +
                                  h(0, 1) * h(1, 0));
  const complexd lam[2] = {mean + disc, mean - disc};

  const auto residual = [&](const Vector2c& v) {
    double best = std::numeric_limits<double>::infinity();
    for (const complexd& l : lam)
      best = std::min(best, (h * v - l * v).norm() / v.norm());
    return best;
  };
  return {residual(pair.right_plus), residual(pair.right_minus)};
}

}  // namespace cdsim::two_level
