#pragma once

#include <complex>

namespace gupscat {

// Units and couplings for a run. Defaults are reduced units hbar = m = e2 = 1;
// every formula keeps explicit hbar/m factors so SI-style values work too.
struct PhysicalContext {
    double hbar = 1.0;
    double mass = 1.0;
    double coupling_e2 = 1.0; // e^2 in Gaussian-style form, so Coulomb is e^2/r

    // Euler-Mascheroni constant; appears in the deformed Coulomb cross-section.
    double euler_gamma = 0.5772156649015329;

    PhysicalContext() = default;
    PhysicalContext(double hbar_, double mass_, double coupling_e2_);
};

// Deformation parameters of the modified commutator. beta and beta_prime are
// independent and non-negative; beta = beta_prime = 0 is ordinary QM.
struct DeformationParams {
    double beta = 0.0;
    double beta_prime = 0.0;

    DeformationParams() = default;
    DeformationParams(double beta_, double beta_prime_);
};

// Smallest resolvable length, hbar * sqrt(beta + beta_prime).
double minimal_length(const DeformationParams& params, const PhysicalContext& ctx);

// Deformed dispersion E(k) = (hbar^2 k^2 / 2m) (1 + beta_prime hbar^2 k^2).
double kinetic_energy(double k, const DeformationParams& params, const PhysicalContext& ctx);

// Deformed momentum P(k) = hbar k (1 + beta_prime hbar^2 k^2 / 2).
double momentum(double k, const DeformationParams& params, const PhysicalContext& ctx);

// Inverse of kinetic_energy. Solved in k^2 in a cancellation-free form, so it
// stays accurate and continuous through beta_prime -> 0.
double wavenumber_of_energy(double energy, const DeformationParams& params,
                            const PhysicalContext& ctx);

// 1 / (1 + 2 beta_prime hbar^2 k^2): the factor the deformation puts in front
// of the outgoing Green's function, and hence in front of every first-order
// amplitude and phase.
double green_prefactor(double k, const DeformationParams& params, const PhysicalContext& ctx);

// Outgoing free Green's function at separation r_sep = |r - r'|:
// -exp(i k r_sep) / (4 pi r_sep (1 + 2 beta_prime hbar^2 k^2)).
std::complex<double> green_function_asymptotic(double r_sep, double k,
                                               const DeformationParams& params,
                                               const PhysicalContext& ctx);

// A consistent (k, E, P) triple under the deformed dispersion.
struct Kinematics {
    double k = 0.0;
    double energy = 0.0;
    double momentum = 0.0;
};

Kinematics kinematics_from_wavenumber(double k, const DeformationParams& params,
                                      const PhysicalContext& ctx);
Kinematics kinematics_from_energy(double energy, const DeformationParams& params,
                                  const PhysicalContext& ctx);

} // namespace gupscat
