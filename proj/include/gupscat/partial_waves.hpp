#pragma once

#include <complex>
#include <vector>

#include "gupscat/physical_context.hpp"
#include "gupscat/potentials.hpp"

namespace gupscat {

// P_l(x) by the three-term recurrence. l >= 0, |x| <= 1 (P_l(+-1) = (+-1)^l
// exactly in floating point).
double legendre_polynomial(int l, double x);

// Free radial solution R_kl(r) = sqrt(2/pi) k j_l(kr); its large-r form is
// sqrt(2/pi) sin(kr - l pi/2)/r.
double free_radial_wave(int l, double k, double r);

enum class PhaseMethod { born, self_consistent };

// Phase shifts delta_0..delta_lmax at one wavenumber.
struct PhaseShiftSet {
    double k = 0.0;
    std::vector<double> deltas;
    PhaseMethod method = PhaseMethod::born;

    int l_max() const noexcept { return static_cast<int>(deltas.size()) - 1; }
};

// First-order phase shift with the asymptotic sine kernel:
// sin delta_l = -Int_0^inf sin^2(kr - l pi/2) U_red(r) dr / (k (1 + 2 bp hbar^2 k^2)),
// U_red = 2 m U / hbar^2 (the only combination that leaves sin delta
// dimensionless). The kernel is parity-periodic in l: even l reproduce the
// s-wave integral, and odd l meet a logarithmically divergent integrand at the
// origin for 1/r-singular potentials, which surfaces as ConvergenceError.
// |sin| > 1 raises BornValidityError with the raw value. delta is returned on
// the principal branch [-pi/2, pi/2]. Needs a screened potential; bare Coulomb
// is rejected.
double born_phase_shift(int l, double k, const RadialPotential& pot,
                        const DeformationParams& params, const PhysicalContext& ctx);

// Diagnostic variant with the full radial function in the kernel,
// chi = kr j_l(kr), finite and l-decaying for every l (equals the asymptotic
// kernel at l = 0 only in integral value for even parity). Used to compare the
// two kernels and to drive the truncation scan.
double born_phase_shift_bessel(int l, double k, const RadialPotential& pot,
                               const DeformationParams& params, const PhysicalContext& ctx);

// Self-consistent first-order phase: the phase appears inside its own kernel,
// sin delta = -Int sin(kr - l pi/2) U_red(r) sin(kr - l pi/2 + delta) dr / (k (1 + 2 bp hbar^2 k^2)),
// iterated to a fixed point. Expanding the shifted sine reduces each step to
// two fixed quadratures; oscillating iterates switch the updates to 0.5
// relaxation. Seeded from born_phase_shift.
double self_consistent_phase_shift(int l, double k, const RadialPotential& pot,
                                   const DeformationParams& params, const PhysicalContext& ctx,
                                   int max_iter = 100, double tol = 1e-12);

// f(theta) = (1/k) sum (2l+1) e^{i delta_l} sin(delta_l) P_l(cos theta),
// the numerically stable arrangement of (i/2k) sum (2l+1)(1 - e^{2i delta_l}) P_l.
// theta in [0, pi] (forward direction allowed here).
std::complex<double> partial_amplitude(const PhaseShiftSet& phases, double theta);

// sigma = (4 pi / k^2) sum (2l+1) sin^2 delta_l.
double total_cross_section(const PhaseShiftSet& phases);

// |sigma - (4 pi / k) Im f(0)| / max(sigma, tiny): zero up to rounding for any
// phase set, by construction of the two formulas.
double optical_theorem_residual(const PhaseShiftSet& phases);

// How far the asymptotic pair chi = sin(kr - l pi/2), chi_d = sin(kr - l pi/2 + delta)
// is from satisfying the deformed Wronskian relation at radius r. Exactly zero
// for l = 0; decays as 1/r^2 (the centrifugal remainder) for l > 0 with
// beta_prime > 0. Meaningful once kr >> l.
double asymptotic_wronskian_residual(int l, double k, double delta,
                                     const DeformationParams& params,
                                     const PhysicalContext& ctx, double r);

// Smallest l with |sin delta_l| < tail_tol, scanned in ascending l over the
// l-decaying kernel magnitudes (born_phase_shift_bessel; identical to
// born_phase_shift at l = 0). Capped at l = 64.
int select_lmax(const RadialPotential& pot, double k, const DeformationParams& params,
                const PhysicalContext& ctx, double tail_tol);

} // namespace gupscat
