#pragma once

#include <functional>
#include <string>

#include "gupscat/physical_context.hpp"

namespace gupscat {

enum class PotentialKind { coulomb, yukawa, custom };
enum class PotentialSign { attractive, repulsive };

// Central potential U(r). Attractive means U < 0 and is the default sign
// convention here: coulomb -> -+ e2/r, yukawa -> -+ e2 exp(-lam r)/r.
// Custom potentials supply their own callable, used verbatim, and must vanish
// beyond r_cut (checked at construction, |U| < 1e-14 at r_cut, 2 r_cut and
// 10 r_cut).
class RadialPotential {
public:
    static RadialPotential coulomb(double e2, PotentialSign sign = PotentialSign::attractive);
    static RadialPotential yukawa(double e2, double lambda,
                                  PotentialSign sign = PotentialSign::attractive);
    static RadialPotential custom(std::function<double(double)> eval, double r_cut);

    double operator()(double r) const; // throws DomainError for r <= 0

    PotentialKind kind() const noexcept { return kind_; }
    PotentialSign sign() const noexcept { return sign_; }
    double strength() const noexcept { return e2_; }         // e2 (0 for custom)
    double screening_lambda() const noexcept { return lambda_; } // lam (0 unless yukawa)

    // Decay length used to steer radial quadrature: 1/lam for yukawa, r_cut
    // for custom, +inf for bare Coulomb (no screening, nothing truncates).
    double decay_scale() const noexcept;

    // Finite support bound for custom potentials, +inf otherwise.
    double r_cut() const noexcept { return r_cut_; }

    std::string describe() const;

private:
    RadialPotential() = default;

    PotentialKind kind_ = PotentialKind::coulomb;
    PotentialSign sign_ = PotentialSign::attractive;
    double e2_ = 0.0;
    double lambda_ = 0.0;
    double r_cut_ = 0.0;
    std::function<double(double)> eval_;
};

// 2m U(r) / hbar^2, the combination the radial problem actually couples to.
double reduced_potential(const RadialPotential& pot, double r, const PhysicalContext& ctx);

// Fourier transform of the (signed) Yukawa potential:
// -+ 4 pi e2 / (q^2 + lam^2). Finite at q = 0; lam <= 0 and q < 0 rejected.
double yukawa_fourier_transform(double q, double lambda, double e2,
                                PotentialSign sign = PotentialSign::attractive);

} // namespace gupscat
