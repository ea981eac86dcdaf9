#include "gupscat/physical_context.hpp"

#include <cmath>
#include <string>

#include "gupscat/errors.hpp"

namespace gupscat {

namespace {

void require_finite_positive(double v, const char* name) {
    if (!std::isfinite(v) || v <= 0.0)
        throw DomainError(std::string(name) + " must be finite and > 0");
}

} // namespace

PhysicalContext::PhysicalContext(double hbar_, double mass_, double coupling_e2_)
    : hbar(hbar_), mass(mass_), coupling_e2(coupling_e2_) {
    require_finite_positive(hbar, "hbar");
    require_finite_positive(mass, "mass");
    if (!std::isfinite(coupling_e2) || coupling_e2 < 0.0)
        throw DomainError("coupling e2 must be finite and >= 0");
}

DeformationParams::DeformationParams(double beta_, double beta_prime_)
    : beta(beta_), beta_prime(beta_prime_) {
    if (!std::isfinite(beta) || beta < 0.0)
        throw DomainError("beta must be finite and >= 0");
    if (!std::isfinite(beta_prime) || beta_prime < 0.0)
        throw DomainError("beta_prime must be finite and >= 0");
}

double minimal_length(const DeformationParams& params, const PhysicalContext& ctx) {
    return ctx.hbar * std::sqrt(params.beta + params.beta_prime);
}

double kinetic_energy(double k, const DeformationParams& params, const PhysicalContext& ctx) {
    require_finite_positive(k, "k");
    const double hk2 = ctx.hbar * ctx.hbar * k * k;
    return hk2 / (2.0 * ctx.mass) * (1.0 + params.beta_prime * hk2);
}

double momentum(double k, const DeformationParams& params, const PhysicalContext& ctx) {
    require_finite_positive(k, "k");
    const double hk2 = ctx.hbar * ctx.hbar * k * k;
    return ctx.hbar * k * (1.0 + 0.5 * params.beta_prime * hk2);
}

double wavenumber_of_energy(double energy, const DeformationParams& params,
                            const PhysicalContext& ctx) {
    require_finite_positive(energy, "energy");
    // E = (hbar^2 k^2 / 2m)(1 + bp hbar^2 k^2) is quadratic in k^2. Writing the
    // positive root as k^2 = 4mE / (hbar^2 (1 + sqrt(1 + 8 bp m E))) avoids the
    // subtractive cancellation of the textbook root and passes smoothly
    // through bp = 0.
    const double disc = 1.0 + 8.0 * params.beta_prime * ctx.mass * energy;
    if (!std::isfinite(disc) || disc <= 0.0)
        throw DomainError("energy inversion: discriminant not positive");
    const double k2 = 4.0 * ctx.mass * energy /
                      (ctx.hbar * ctx.hbar * (1.0 + std::sqrt(disc)));
    return std::sqrt(k2);
}

double green_prefactor(double k, const DeformationParams& params, const PhysicalContext& ctx) {
    require_finite_positive(k, "k");
    const double hk2 = ctx.hbar * ctx.hbar * k * k;
    return 1.0 / (1.0 + 2.0 * params.beta_prime * hk2);
}

std::complex<double> green_function_asymptotic(double r_sep, double k,
                                               const DeformationParams& params,
                                               const PhysicalContext& ctx) {
    require_finite_positive(r_sep, "r_sep");
    const double pref = green_prefactor(k, params, ctx);
    const std::complex<double> phase(std::cos(k * r_sep), std::sin(k * r_sep));
    return -phase * pref / (4.0 * M_PI * r_sep);
}

Kinematics kinematics_from_wavenumber(double k, const DeformationParams& params,
                                      const PhysicalContext& ctx) {
    Kinematics kin;
    kin.k = k;
    kin.energy = kinetic_energy(k, params, ctx);
    kin.momentum = momentum(k, params, ctx);
    return kin;
}

Kinematics kinematics_from_energy(double energy, const DeformationParams& params,
                                  const PhysicalContext& ctx) {
    return kinematics_from_wavenumber(wavenumber_of_energy(energy, params, ctx), params, ctx);
}

} // namespace gupscat
