#include "cdsim/three_level.hpp"

#include <cmath>
#include <limits>

#include "cdsim/errors.hpp"

namespace cdsim::three_level {

namespace {

// Below this fraction of the peak amplitude the drives carry no population
// and counterdiabatic corrections are forced to zero (0/0 at Gaussian tails).
constexpr double kCdTailCut = 1e-8;

}  // namespace

void validate(const ThreeLevelParams& p) {
  if (!(p.gamma >= 0)) throw config_error("gamma: must be >= 0");
  pulses::validate(p.pulses);
}

void require_two_photon_resonance(const ThreeLevelParams& p) {
  const double scale = std::max({1.0, std::abs(p.delta_pump), std::abs(p.delta_stokes)});
  if (std::abs(p.delta_pump - p.delta_stokes) > 1e-12 * scale)
    throw std::invalid_argument(
        "two-photon resonance (deltaP = deltaS) required by the eigensystem");
}

DressedDrives dressed_drives(double t, const ThreeLevelParams& p) {
  const auto g = pulses::gaussian_pair(t, p.pulses);
  DressedDrives d;
  if (p.counter_rotating) {
    d.pump = pulses::dress_counter_rotating(g.pump, p.omega_pump, t);
    d.stokes = pulses::dress_counter_rotating(g.stokes, p.omega_stokes, t);
  } else {
    d.pump = g.pump;
    d.stokes = g.stokes;
  }
  return d;
}

Matrix3c hamiltonian(double t, const ThreeLevelParams& p) {
  const auto d = dressed_drives(t, p);
  const complexd wp = d.pump.value, ws = d.stokes.value;
  Matrix3c h;
  h << 0.0, 0.5 * wp, 0.0,
       0.5 * std::conj(wp), p.delta_pump - 0.5 * iu * p.gamma, 0.5 * ws,
       0.0, 0.5 * std::conj(ws), p.delta_pump - p.delta_stokes;
  return h;
}

Matrix3c hamiltonian_dot(double t, const ThreeLevelParams& p) {
  const auto d = dressed_drives(t, p);
  const complexd wpd = d.pump.derivative, wsd = d.stokes.derivative;
  Matrix3c h;
  h << 0.0, 0.5 * wpd, 0.0,
       0.5 * std::conj(wpd), 0.0, 0.5 * wsd,
       0.0, 0.5 * std::conj(wsd), 0.0;
  return h;
}

Eigensystem3 eigensystem(double t, const ThreeLevelParams& p, const Eigensystem3* prev) {
  require_two_photon_resonance(p);
  Eigensystem3 es;
  es.drives = dressed_drives(t, p);
  const complexd wp = es.drives.pump.value, ws = es.drives.stokes.value;

  es.xi0_sq = std::norm(wp) + std::norm(ws);
  if (es.xi0_sq == 0.0)
    throw degenerate_dark_error("eigensystem: both drives vanish, dark state undefined");

  const complexd dg = p.delta_pump - 0.5 * iu * p.gamma;  // Delta - i Gamma/2
  const complexd disc = dg * dg + es.xi0_sq;
  if (std::abs(disc) < 1e-10 * std::max(std::norm(dg), es.xi0_sq))
    throw exceptional_point_error("eigensystem: eigenvalues coalesce");

  complexd s = std::sqrt(disc);
  if (prev && std::abs(-s - prev->sqrt_disc) < std::abs(s - prev->sqrt_disc)) s = -s;
  es.sqrt_disc = s;

  es.eps_plus = dg + s;
  es.eps_minus = dg - s;
  es.eps_hat_plus = std::conj(es.eps_plus);
  es.eps_hat_minus = std::conj(es.eps_minus);

  // Each normalizer is judged against its own component magnitudes; Xi_2^2
  // is legitimately tiny in deep pulse tails where eps_- ~ -Xi_0^2/(2 dg).
  es.xi1_sq = es.eps_plus * es.eps_plus + es.xi0_sq;
  es.xi2_sq = es.eps_minus * es.eps_minus + es.xi0_sq;
  if (std::abs(es.xi1_sq) < 1e-10 * (std::norm(es.eps_plus) + es.xi0_sq) ||
      std::abs(es.xi2_sq) < 1e-10 * (std::norm(es.eps_minus) + es.xi0_sq))
    throw exceptional_point_error("eigensystem: Xi_1 or Xi_2 vanishes");

  // Dark-state normalizer clamped at machine scale so the direction stays
  // defined in deep pulse tails.
  const double eps_floor = std::numeric_limits<double>::epsilon() * p.pulses.omega0;
  const double xi0 = std::max(std::sqrt(es.xi0_sq), eps_floor);
  const complexd xi1 = std::sqrt(es.xi1_sq);
  const complexd xi2 = std::sqrt(es.xi2_sq);

  es.right[0] << ws / xi0, 0.0, -std::conj(wp) / xi0;
  es.right[1] << wp / xi1, es.eps_plus / xi1, std::conj(ws) / xi1;
  es.right[2] << wp / xi2, es.eps_minus / xi2, std::conj(ws) / xi2;

  // Left states normalized against conj(Xi) so that <E^_m|E_n> = delta_mn.
  es.left[0] << ws / xi0, 0.0, -std::conj(wp) / xi0;
  es.left[1] << wp / std::conj(xi1), es.eps_hat_plus / std::conj(xi1),
      std::conj(ws) / std::conj(xi1);
  es.left[2] << wp / std::conj(xi2), es.eps_hat_minus / std::conj(xi2),
      std::conj(ws) / std::conj(xi2);
  return es;
}

ProjectorSet3 projectors(const Eigensystem3& es) {
  const complexd wp = es.drives.pump.value, ws = es.drives.stokes.value;

  const auto rank1 = [](const Vector3c& ket, const Vector3c& bra_t, complexd xi_sq) {
    return Matrix3c((ket * bra_t.transpose()) / xi_sq);
  };
  // Holomorphic duals: no conjugation of eps, denominators Xi^2 (not |Xi|^2).
  const Vector3c v0(ws, 0.0, -std::conj(wp));
  const Vector3c w0(std::conj(ws), 0.0, -wp);
  const Vector3c vp(wp, es.eps_plus, std::conj(ws));
  const Vector3c wp_dual(std::conj(wp), es.eps_plus, ws);
  const Vector3c vm(wp, es.eps_minus, std::conj(ws));
  const Vector3c wm_dual(std::conj(wp), es.eps_minus, ws);

  ProjectorSet3 ps;
  ps.pi0 = rank1(v0, w0, complexd(es.xi0_sq));
  ps.pi1 = rank1(vp, wp_dual, es.xi1_sq);
  ps.pi2 = rank1(vm, wm_dual, es.xi2_sq);
  return ps;
}

Matrix3c cd_projector_formula(double t, const ThreeLevelParams& p,
                              const Eigensystem3& es, const ProjectorSet3& ps,
                              const Matrix3c& h0dot) {
  (void)t;
  if (std::sqrt(es.xi0_sq) < kCdTailCut * p.pulses.omega0) return Matrix3c::Zero();

  const complexd energies[3] = {0.0, 0.5 * es.eps_plus, 0.5 * es.eps_minus};
  const Matrix3c* pis[3] = {&ps.pi0, &ps.pi1, &ps.pi2};

  Matrix3c sum = Matrix3c::Zero();
  for (int j = 0; j < 3; ++j) {
    for (int k = 0; k < 3; ++k) {
      if (j == k) continue;
      const complexd gap = energies[k] - energies[j];
      if (gap == complexd(0.0, 0.0))
        throw exceptional_point_error("cd_projector_formula: degenerate eigenvalues");
      sum += (*pis[j]) * h0dot * (*pis[k]) / gap;
    }
  }
  return iu * sum;
}

Matrix3c cd_closed_form(double t, const ThreeLevelParams& p, const Eigensystem3& es) {
  (void)t;
  if (std::sqrt(es.xi0_sq) < kCdTailCut * p.pulses.omega0) return Matrix3c::Zero();

  const complexd wp = es.drives.pump.value, ws = es.drives.stokes.value;
  const complexd wpd = es.drives.pump.derivative, wsd = es.drives.stokes.derivative;
  const complexd wpc = std::conj(wp), wsc = std::conj(ws);
  const complexd wpdc = std::conj(wpd), wsdc = std::conj(wsd);
  const double gamma = p.gamma;
  const double xi0_sq = es.xi0_sq;

  const complexd a_sum = wpc * wpd + ws * wsdc;
  const complexd a = (2.0 * p.delta_pump - iu * gamma) * a_sum;
  const complexd b_sum = wpc * wpdc + ws * wsdc;
  const complexd b = b_sum - std::conj(b_sum);
  const complexd c =
      (std::norm(es.eps_plus) + std::norm(es.eps_minus) + 2.0 * xi0_sq) / xi0_sq;
  const complexd d_1 = wsc * wsdc;
  const complexd d_2 = wpc * wpd;
  const complexd d = std::norm(wp) * (d_1 - std::conj(d_1)) +
                     std::norm(ws) * (d_2 - std::conj(d_2));
  const complexd f = wp * wp * (ws * wpdc - wpc * wsdc) +
                     ws * ws * (wsc * wpd - wp * wsdc);
  const complexd g = wsc * wpd - wp * wsdc;

  const complexd two_i_gamma = 2.0 * iu * gamma;

  Matrix3c m;
  m(0, 0) = std::norm(wp) * b + c * d;
  m(0, 1) = wp * a - two_i_gamma * ws * g;
  m(0, 2) = wp * ws * b + c * f;
  m(1, 0) = -wpc * std::conj(a) - two_i_gamma * wsc * std::conj(g);
  m(1, 1) = -xi0_sq * b;
  m(1, 2) = -ws * std::conj(a) - two_i_gamma * wp * std::conj(g);
  m(2, 0) = -wpc * wsc * std::conj(b) - c * std::conj(f);
  m(2, 1) = wsc * a + two_i_gamma * wpc * g;
  m(2, 2) = std::norm(ws) * b - c * d;

  return (iu / (es.xi1_sq * es.xi2_sq)) * m;
}

Matrix3c cd_rwa(double t, const ThreeLevelParams& p) {
  require_two_photon_resonance(p);
  const auto g = pulses::gaussian_pair(t, p.pulses);
  const double wp = g.pump.value.real(), ws = g.stokes.value.real();
  const double wpd = g.pump.derivative.real(), wsd = g.stokes.derivative.real();

  const double osq = wp * wp + ws * ws;  // Omega'^2
  if (std::sqrt(osq) < kCdTailCut * p.pulses.omega0) return Matrix3c::Zero();

  const double op = std::sqrt(osq);
  const double op_dot = (wp * wpd + ws * wsd) / op;
  const double gamma_dot = 0.0;  // constant loss rate
  const double delta_dot = 0.0;  // constant detuning
  const complexd dg = p.delta_pump - 0.5 * iu * p.gamma;

  const complexd den = osq + dg * dg;
  if (std::abs(den) < 1e-12 * (osq + std::norm(dg)))
    throw exceptional_point_error("cd_rwa: Omega'^2 + (Delta - i Gamma/2)^2 = 0");

  const complexd phi_dot =
      (op_dot * dg - op * complexd(delta_dot, -0.5 * gamma_dot)) / (2.0 * den);
  const double theta_dot = (wpd * ws - wsd * wp) / osq;

  const complexd a = (wp / op) * phi_dot;  // sin(theta) phi_dot
  const complexd b = (ws / op) * phi_dot;  // cos(theta) phi_dot
  const complexd c = theta_dot;

  Matrix3c m;
  m << 0.0, a, c,
       -a, 0.0, -b,
       -c, b, 0.0;
  return iu * m;
}

}  // namespace cdsim::three_level
