#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <iostream>
#include <random>

#include "cdsim/errors.hpp"
#include "cdsim/presets.hpp"
#include "cdsim/propagator.hpp"
#include "cdsim/runner.hpp"
#include "cdsim/three_level.hpp"
#include "cdsim/units.hpp"

using namespace cdsim;
using namespace cdsim::three_level;
using cdsim::units::two_pi_mhz;

namespace {

ThreeLevelParams fig3_params(bool counter_rotating) {
  ThreeLevelParams p;
  p.gamma = two_pi_mhz(100.0);
  p.delta_pump = two_pi_mhz(200.0);
  p.delta_stokes = two_pi_mhz(200.0);
  p.omega_pump = two_pi_mhz(100.0);
  p.omega_stokes = two_pi_mhz(80.0);
  p.counter_rotating = counter_rotating;
  p.pulses.omega0 = two_pi_mhz(200.0);
  p.pulses.tf = 30e-9;
  p.pulses.T = 30e-9 / 6.0;
  p.pulses.tau = 30e-9 / 10.0;
  return p;
}

double rel_diff(const Matrix3c& a, const Matrix3c& b) {
  const double scale = std::max(a.norm(), b.norm());
  return scale == 0 ? 0.0 : (a - b).norm() / scale;
}

ThreeLevelParams random_resonant(std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  ThreeLevelParams p = fig3_params(uni(rng) < 0.5);
  p.pulses.omega0 = two_pi_mhz(50.0 + 450.0 * uni(rng));
  p.gamma = two_pi_mhz(600.0 * uni(rng));
  const double delta = two_pi_mhz(50.0 + 750.0 * uni(rng)) * (uni(rng) < 0.5 ? -1 : 1);
  p.delta_pump = p.delta_stokes = delta;
  p.omega_pump = two_pi_mhz(300.0 * uni(rng));
  p.omega_stokes = two_pi_mhz(300.0 * uni(rng));
  return p;
}

}  // namespace

TEST_CASE("hamiltonian: vanished drives leave the bare diagonal") {
  ThreeLevelParams p = fig3_params(false);
  p.delta_stokes = two_pi_mhz(150.0);  // detuned: hamiltonian itself allows it
  p.pulses.T = p.pulses.tf / 200.0;    // tails underflow to exactly zero
  const Matrix3c h = hamiltonian(0.0, p);
  CHECK(h(0, 1) == complexd(0.0, 0.0));
  CHECK(h(1, 2) == complexd(0.0, 0.0));
  CHECK(h(0, 0) == complexd(0.0, 0.0));
  CHECK(h(1, 1) == p.delta_pump - 0.5 * iu * p.gamma);
  CHECK(h(2, 2) == complexd(p.delta_pump - p.delta_stokes, 0.0));
}

TEST_CASE("hamiltonian: Hermitian in the lossless RWA resonant case") {
  ThreeLevelParams p = fig3_params(false);
  p.gamma = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const Matrix3c h = hamiltonian(p.pulses.tf * i / 20.0, p);
    CHECK((h - h.adjoint()).norm() < 1e-14 * std::max(h.norm(), 1.0));
  }
}

TEST_CASE("hamiltonian at tf/2 against independent evaluation") {
  const ThreeLevelParams p = fig3_params(true);
  const double t = p.pulses.tf / 2.0;
  const Matrix3c h = hamiltonian(t, p);

  // direct long-double evaluation of the dressed couplings
  const long double om0 = p.pulses.omega0;
  const long double x = static_cast<long double>(p.pulses.tau) / p.pulses.T;
  const long double bare = om0 * std::exp(-x * x);  // both pulses at tf/2
  const std::complex<long double> crp =
      1.0L + std::exp(std::complex<long double>(0.0L, -2.0L * p.omega_pump * t));
  const std::complex<long double> crs =
      1.0L + std::exp(std::complex<long double>(0.0L, -2.0L * p.omega_stokes * t));
  const std::complex<long double> wp = bare * crp;
  const std::complex<long double> ws = bare * crs;

  CHECK(std::abs(h(0, 1) - complexd(static_cast<double>(0.5L * wp.real()),
                                    static_cast<double>(0.5L * wp.imag()))) <
        1e-12 * p.pulses.omega0);
  CHECK(std::abs(h(1, 2) - complexd(static_cast<double>(0.5L * ws.real()),
                                    static_cast<double>(0.5L * ws.imag()))) <
        1e-12 * p.pulses.omega0);
  CHECK(h(1, 0) == std::conj(h(0, 1)));
  CHECK(h(2, 1) == std::conj(h(1, 2)));
  CHECK(h(1, 1) == p.delta_pump - 0.5 * iu * p.gamma);
}

TEST_CASE("eigensystem: lossless resonant splitting is +-Xi_0") {
  ThreeLevelParams p = fig3_params(false);
  p.gamma = 0.0;
  p.delta_pump = p.delta_stokes = 0.0;
  const double t = p.pulses.tf / 2.0;
  const auto es = eigensystem(t, p);
  const double xi0 = std::sqrt(es.xi0_sq);
  CHECK(es.eps_plus.real() == doctest::Approx(xi0).epsilon(1e-12));
  CHECK(es.eps_minus.real() == doctest::Approx(-xi0).epsilon(1e-12));
}

TEST_CASE("eigensystem residuals vanish on two-photon resonance") {
  for (bool cr : {false, true}) {
    CAPTURE(cr);
    const ThreeLevelParams p = fig3_params(cr);
    for (int i = 0; i <= 200; ++i) {
      const double t = p.pulses.tf * i / 200.0;
      const Matrix3c h = hamiltonian(t, p);
      const auto es = eigensystem(t, p);
      const double scale = std::max(h.norm(), std::sqrt(es.xi0_sq));
      const complexd energies[3] = {0.0, 0.5 * es.eps_plus, 0.5 * es.eps_minus};
      for (int n = 0; n < 3; ++n) {
        const double res = (h * es.right[n] - energies[n] * es.right[n]).norm();
        CHECK(res <= 1e-9 * scale);
      }
    }
  }
}

TEST_CASE("dark state has no excited-state component") {
  const ThreeLevelParams p = fig3_params(true);
  const auto es = eigensystem(0.4 * p.pulses.tf, p);
  CHECK(es.right[0](1) == complexd(0.0, 0.0));
  // direction (Ws, 0, -Wp*)/Xi_0
  const complexd wp = es.drives.pump.value, ws = es.drives.stokes.value;
  const double xi0 = std::sqrt(es.xi0_sq);
  CHECK(std::abs(es.right[0](0) - ws / xi0) < 1e-14);
  CHECK(std::abs(es.right[0](2) + std::conj(wp) / xi0) < 1e-14);
}

TEST_CASE("quadratic identity and adjoint eigenvalue relation") {
  std::mt19937 rng(11);
  for (int draw = 0; draw < 100; ++draw) {
    const ThreeLevelParams p = random_resonant(rng);
    const double t = p.pulses.tf * (0.2 + 0.6 * (draw / 100.0));
    const auto es = eigensystem(t, p);
    const complexd tr = 2.0 * p.delta_pump - iu * p.gamma;
    for (const complexd eps : {es.eps_plus, es.eps_minus}) {
      const complexd residual = eps * eps - tr * eps - es.xi0_sq;
      CHECK(std::abs(residual) <=
            1e-10 * std::max({std::norm(eps), std::abs(tr * eps), es.xi0_sq}));
    }
    // eps_hat(Gamma) = eps(-Gamma)
    ThreeLevelParams flipped = p;
    flipped.gamma = -p.gamma;
    const complexd dg = flipped.delta_pump - 0.5 * iu * flipped.gamma;
    const complexd disc = dg * dg + es.xi0_sq;
    const complexd s = std::sqrt(disc);
    CHECK(std::abs(es.eps_hat_plus - (dg + s)) < 1e-10 * std::abs(es.eps_hat_plus));
    CHECK(std::abs(es.eps_hat_minus - (dg - s)) < 1e-10 * std::abs(es.eps_hat_minus));
  }
}

TEST_CASE("biorthonormality Gram is the identity; printed pairing reported") {
  std::mt19937 rng(23);
  double worst_gram = 0.0, worst_printed = 0.0;
  for (int draw = 0; draw < 100; ++draw) {
    const ThreeLevelParams p = random_resonant(rng);
    const double t = p.pulses.tf * (0.15 + 0.7 * (draw / 100.0));
    const auto es = eigensystem(t, p);
    for (int m = 0; m < 3; ++m)
      for (int n = 0; n < 3; ++n) {
        const complexd g = es.left[m].dot(es.right[n]);
        worst_gram = std::max(worst_gram, std::abs(g - (m == n ? 1.0 : 0.0)));
      }
    // pairing with the left states normalized by Xi as printed: Xi/Xi* phase
    const complexd xi1 = std::sqrt(es.xi1_sq);
    const Vector3c printed_left = Vector3c(es.drives.pump.value, es.eps_hat_plus,
                                           std::conj(es.drives.stokes.value)) /
                                  xi1;
    worst_printed =
        std::max(worst_printed, std::abs(printed_left.dot(es.right[1]) - 1.0));
  }
  CHECK(worst_gram < 1e-9);
  std::cout << "[diagnostic] printed-normalization pairing |<E^|E> - 1| up to "
            << worst_printed << " (phase Xi/Xi*, see eigensystem notes)\n";
}

TEST_CASE("projector algebra: idempotent, mutually annihilating, complete") {
  std::mt19937 rng(31);
  for (int draw = 0; draw < 60; ++draw) {
    const ThreeLevelParams p = random_resonant(rng);
    const double t = p.pulses.tf * (0.2 + 0.6 * (draw / 60.0));
    const auto es = eigensystem(t, p);
    const auto ps = projectors(es);
    const Matrix3c pis[3] = {ps.pi0, ps.pi1, ps.pi2};
    for (int j = 0; j < 3; ++j) {
      CHECK((pis[j] * pis[j] - pis[j]).norm() < 1e-9 * std::max(1.0, pis[j].norm()));
      for (int k = 0; k < 3; ++k)
        if (j != k)
          CHECK((pis[j] * pis[k]).norm() <
                1e-9 * std::max(1.0, pis[j].norm() * pis[k].norm()));
    }
    CHECK((pis[0] + pis[1] + pis[2] - Matrix3c::Identity()).norm() < 1e-9);
  }
}

TEST_CASE("projector onto the dark state when the Stokes drive is off") {
  ThreeLevelParams p = fig3_params(false);
  p.pulses.T = p.pulses.tf / 200.0;  // pulses well separated
  const double t = p.pulses.tf / 2.0 + p.pulses.tau;  // pump peak, stokes underflowed
  const auto es = eigensystem(t, p);
  CHECK(es.drives.stokes.value == complexd(0.0, 0.0));
  const auto ps = projectors(es);
  Matrix3c expect = Matrix3c::Zero();
  expect(2, 2) = 1.0;
  CHECK((ps.pi0 - expect).norm() < 1e-12);
  CHECK((ps.pi0 * ps.pi0 - ps.pi0).norm() < 1e-14);
}

TEST_CASE("eigensystem error paths") {
  SUBCASE("degenerate dark state when both drives vanish") {
    ThreeLevelParams p = fig3_params(false);
    p.pulses.T = p.pulses.tf / 200.0;
    CHECK_THROWS_AS(eigensystem(0.0, p), degenerate_dark_error);
  }
  SUBCASE("exceptional point when the discriminant vanishes") {
    ThreeLevelParams p = fig3_params(false);
    p.delta_pump = p.delta_stokes = 0.0;
    p.pulses.tau = 0.0;
    const double t = p.pulses.tf / 2.0;  // both pulses at omega0: Xi_0^2 = 2 omega0^2
    p.gamma = 2.0 * std::sqrt(2.0) * p.pulses.omega0;  // (−iΓ/2)^2 + Xi_0^2 = 0
    CHECK_THROWS_AS(eigensystem(t, p), exceptional_point_error);
  }
  SUBCASE("two-photon resonance is enforced") {
    ThreeLevelParams p = fig3_params(false);
    p.delta_stokes = p.delta_pump * 1.5;
    CHECK_THROWS_AS(eigensystem(0.4 * p.pulses.tf, p), std::invalid_argument);
    CHECK_NOTHROW(hamiltonian(0.4 * p.pulses.tf, p));  // diagnostics allowed
  }
}

TEST_CASE("cd_projector_formula: static Hamiltonian gives zero") {
  const ThreeLevelParams p = fig3_params(true);
  const double t = 0.4 * p.pulses.tf;
  const auto es = eigensystem(t, p);
  const auto ps = projectors(es);
  const Matrix3c cd = cd_projector_formula(t, p, es, ps, Matrix3c::Zero());
  CHECK(cd.norm() == 0.0);
}

TEST_CASE("cd_projector_formula: overlapped Gaussian peak is stationary") {
  ThreeLevelParams p = fig3_params(false);
  p.pulses.tau = 0.0;  // pump = stokes, common peak at tf/2
  const double t = p.pulses.tf / 2.0;
  const auto es = eigensystem(t, p);
  const Matrix3c h0dot = hamiltonian_dot(t, p);
  CHECK(h0dot.norm() < 1e-10 * p.pulses.omega0 / p.pulses.tf);
  const Matrix3c cd = cd_projector_formula(t, p, es, projectors(es), h0dot);
  CHECK(cd.norm() < 1e-10 * p.pulses.omega0 / p.pulses.tf);
}

TEST_CASE("Hermitian STIRAP limit: the known 1-3 generator, matching cd_rwa") {
  ThreeLevelParams p = fig3_params(false);
  p.gamma = 0.0;
  p.delta_pump = p.delta_stokes = 0.0;
  for (int i = 1; i < 20; ++i) {
    const double t = p.pulses.tf * i / 20.0;
    const auto es = eigensystem(t, p);
    const Matrix3c cd =
        cd_projector_formula(t, p, es, projectors(es), hamiltonian_dot(t, p));

    // independent theta_dot = (Wp_dot Ws - Ws_dot Wp) / (Wp^2 + Ws^2)
    const auto g = pulses::gaussian_pair(t, p.pulses);
    const double wp = g.pump.value.real(), ws = g.stokes.value.real();
    const double theta_dot =
        (g.pump.derivative.real() * ws - g.stokes.derivative.real() * wp) /
        (wp * wp + ws * ws);

    CHECK(std::abs(cd(0, 2) - iu * theta_dot) < 1e-9 * std::abs(theta_dot));
    CHECK(std::abs(cd(2, 0) + iu * theta_dot) < 1e-9 * std::abs(theta_dot));
    CHECK(std::abs(cd(0, 1)) < 1e-9 * std::abs(theta_dot));
    CHECK(std::abs(cd(1, 2)) < 1e-9 * std::abs(theta_dot));
    CHECK((cd - cd.adjoint()).norm() < 1e-9 * cd.norm());  // Hermitian limit

    const Matrix3c rwa = cd_rwa(t, p);  // phi_dot = 0 here
    CHECK(rel_diff(cd, rwa) < 1e-9);
  }
}

TEST_CASE("projector formula against finite-difference projector transport") {
  const ThreeLevelParams p = fig3_params(true);
  const double h = p.pulses.tf * 1e-7;
  for (const double frac : {0.3, 0.45, 0.5, 0.55, 0.7}) {
    const double t = frac * p.pulses.tf;
    const auto es = eigensystem(t, p);
    const auto lo_es = eigensystem(t - h, p, &es);
    const auto hi_es = eigensystem(t + h, p, &es);
    const auto lo = projectors(lo_es), hi = projectors(hi_es);
    const Matrix3c dpi[3] = {(hi.pi0 - lo.pi0) / (2.0 * h),
                             (hi.pi1 - lo.pi1) / (2.0 * h),
                             (hi.pi2 - lo.pi2) / (2.0 * h)};
    const auto ps = projectors(es);
    const Matrix3c pis[3] = {ps.pi0, ps.pi1, ps.pi2};
    Matrix3c fd_cd = Matrix3c::Zero();
    for (int k = 0; k < 3; ++k)
      fd_cd += (Matrix3c::Identity() - pis[k]) * dpi[k] * pis[k];
    fd_cd *= iu;

    const Matrix3c cd =
        cd_projector_formula(t, p, es, ps, hamiltonian_dot(t, p));
    CHECK(rel_diff(cd, fd_cd) < 1e-5);
  }
}

TEST_CASE("closed form vs projector formula: agreement or logged discrepancy") {
  const ThreeLevelParams p = fig3_params(true);
  double max_disc = 0.0;
  auto prev = eigensystem(0.0, p);
  for (int i = 0; i <= 600; ++i) {
    const double t = p.pulses.tf * i / 600.0;
    const auto es = eigensystem(t, p, &prev);
    prev = es;
    const Matrix3c proj =
        cd_projector_formula(t, p, es, projectors(es), hamiltonian_dot(t, p));
    const Matrix3c closed = cd_closed_form(t, p, es);
    if (std::max(proj.norm(), closed.norm()) < 1e-30) continue;
    max_disc = std::max(max_disc, rel_diff(proj, closed));
  }
  if (max_disc > 1e-6)
    std::cout << "[logged] closed-form CD deviates from the projector formula by up to "
              << max_disc << " (relative); runs proceed with the projector formula\n";
  else
    std::cout << "[diagnostic] closed-form CD agrees with the projector formula to "
              << max_disc << "\n";
  CHECK(std::isfinite(max_disc));
}

TEST_CASE("cd_rwa trivial limits") {
  ThreeLevelParams p = fig3_params(false);
  p.pulses.tau = 0.0;  // constant pulse ratio: theta_dot = 0
  const double t = 0.35 * p.pulses.tf;
  const Matrix3c m = cd_rwa(t, p);
  CHECK(std::abs(m(0, 2)) < 1e-12 * p.pulses.omega0);
  // at the common peak Omega' is stationary too: phi_dot = 0, A = B = 0
  const Matrix3c peak = cd_rwa(p.pulses.tf / 2.0, p);
  CHECK(peak.norm() < 1e-10 * p.pulses.omega0 / p.pulses.tf);
}

TEST_CASE("dark-state transport under the projector CD (fig3b, coarse)") {
  using namespace cdsim::harness;
  SystemConfig cfg = fig3_config(true);
  cfg.integrator.steps = 8000;
  const RunResult res = run_trajectory(cfg);
  const auto pops = propagator::populations(res.trajectory);
  double max_p2 = 0.0;
  for (const auto& pv : pops) max_p2 = std::max(max_p2, pv(1));
  CHECK(max_p2 < 0.05);
  CHECK(res.summary.final_populations[2] > 0.95);

  const auto overlap = propagator::dark_state_overlap(res.trajectory, cfg.three);
  for (double o : overlap) CHECK(o > 0.9);
}
