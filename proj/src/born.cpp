#include "gupscat/born.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "gupscat/errors.hpp"
#include "gupscat/quadrature.hpp"

namespace gupscat {

ScatteringGeometry ScatteringGeometry::from_angle(double theta, double k) {
    if (!std::isfinite(k) || k <= 0.0) throw DomainError("geometry: k must be > 0");
    if (!std::isfinite(theta) || theta <= 0.0 || theta > M_PI)
        throw DomainError("geometry: theta must lie in (0, pi]");
    ScatteringGeometry g;
    g.theta = theta;
    g.k = k;
    g.q = 2.0 * k * std::sin(0.5 * theta);
    return g;
}

std::complex<double> born_amplitude_yukawa(const ScatteringGeometry& geom, double lambda,
                                           const DeformationParams& params,
                                           const PhysicalContext& ctx, PotentialSign sign) {
    if (!std::isfinite(lambda) || lambda <= 0.0)
        throw DomainError("born amplitude: lambda must be > 0");
    const double pref = green_prefactor(geom.k, params, ctx);
    const double s = sign == PotentialSign::attractive ? 1.0 : -1.0;
    const double f = s * 2.0 * ctx.mass * ctx.coupling_e2 * pref /
                     (ctx.hbar * ctx.hbar * (geom.q * geom.q + lambda * lambda));
    return {f, 0.0};
}

std::complex<double> born_amplitude_numeric(const ScatteringGeometry& geom,
                                            const RadialPotential& pot,
                                            const DeformationParams& params,
                                            const PhysicalContext& ctx) {
    const double decay = pot.decay_scale();
    if (!std::isfinite(decay))
        throw DomainError("born amplitude (numeric): potential has no decay scale; "
                          "the radial integral cannot truncate (use the closed-form "
                          "Coulomb routes instead)");
    const double q = geom.q;
    const auto integrand = [&](double r) { return r * pot(r) * std::sin(q * r); };
    const QuadratureResult I = integrate_radial_oscillatory(integrand, q, decay);
    const double pref = green_prefactor(geom.k, params, ctx);
    const double f =
        -2.0 * ctx.mass * pref * I.value / (ctx.hbar * ctx.hbar * q);
    return {f, 0.0};
}

double dcs_from_amplitude(std::complex<double> f) { return std::norm(f); }

double rutherford_dcs(const ScatteringGeometry& geom, const PhysicalContext& ctx) {
    const double s2 = std::sin(0.5 * geom.theta) * std::sin(0.5 * geom.theta);
    const double me2 = ctx.mass * ctx.coupling_e2;
    const double hk2 = ctx.hbar * ctx.hbar * geom.k * geom.k;
    return me2 * me2 / (4.0 * hk2 * hk2 * s2 * s2);
}

double deformed_coulomb_beta_prime_term(const ScatteringGeometry& geom,
                                        const DeformationParams& params,
                                        const PhysicalContext& ctx) {
    const double s2 = std::sin(0.5 * geom.theta) * std::sin(0.5 * geom.theta);
    const double me2 = ctx.mass * ctx.coupling_e2;
    const double hbar2k2 = ctx.hbar * ctx.hbar * geom.k * geom.k;
    return -(me2 / (hbar2k2 * s2)) * params.beta_prime * me2 / s2;
}

DcsValue deformed_coulomb_dcs(const ScatteringGeometry& geom, const DeformationParams& params,
                              const PhysicalContext& ctx) {
    DcsValue out;
    const double ruth = rutherford_dcs(geom, ctx);
    if (params.beta == 0.0 && params.beta_prime == 0.0) {
        // Zero-deformation limit: the correction vanishes along with its log
        // scale, so the baseline is returned directly.
        out.value = ruth;
        return out;
    }
    const double tb = 2.0 * params.beta - params.beta_prime;
    if (tb <= 0.0)
        throw DomainError("deformed Coulomb: needs 2*beta - beta_prime > 0 "
                          "(log argument would not be positive)");
    const double s2 = std::sin(0.5 * geom.theta) * std::sin(0.5 * geom.theta);
    const double me2 = ctx.mass * ctx.coupling_e2;
    const double hbar2 = ctx.hbar * ctx.hbar;
    const double k2 = geom.k * geom.k;
    const double bracket =
        std::log(hbar2 * tb * k2 * s2) + 2.0 * ctx.euler_gamma - 1.0 - 1.0 / (2.0 * s2);
    const double correction = (me2 / (hbar2 * k2 * s2)) * (0.5 * me2 * tb * bracket) +
                              deformed_coulomb_beta_prime_term(geom, params, ctx);
    out.value = ruth + correction;
    out.validity_warning = std::abs(correction) > 0.5 * ruth;
    return out;
}

ExtrapolationResult coulomb_limit_extrapolate(const ScatteringGeometry& geom,
                                              const DeformationParams& params,
                                              const PhysicalContext& ctx,
                                              std::span<const double> lambdas,
                                              PotentialSign sign) {
    if (lambdas.size() < 3)
        throw DomainError("coulomb limit: need at least 3 screening values");
    for (size_t i = 0; i < lambdas.size(); ++i) {
        if (!std::isfinite(lambdas[i]) || lambdas[i] <= 0.0)
            throw DomainError("coulomb limit: screening values must be finite and > 0");
        if (i > 0 && lambdas[i] >= lambdas[i - 1])
            throw DomainError("coulomb limit: screening ladder must be strictly decreasing");
    }
    const size_t n = lambdas.size();
    std::vector<double> x(n), diag(n);
    std::vector<double> t(n);
    for (size_t i = 0; i < n; ++i) {
        x[i] = lambdas[i] * lambdas[i];
        t[i] = dcs_from_amplitude(born_amplitude_yukawa(geom, lambdas[i], params, ctx, sign));
    }
    diag[0] = t[0];
    // Neville tableau evaluated at x = 0, kept as a rolling row; diag[j] is
    // the extrapolant built from the first j+1 ladder entries.
    for (size_t j = 1; j < n; ++j) {
        for (size_t i = 0; i + j < n; ++i) {
            t[i] = (-x[i + j] * t[i] + x[i] * t[i + 1]) / (x[i] - x[i + j]);
        }
        diag[j] = t[0];
    }
    const double err_last = std::abs(diag[n - 1] - diag[n - 2]);
    const double err_prev = std::abs(diag[n - 2] - diag[n - 3]);
    const double rounding_floor = 1e-12 * std::max(1.0, std::abs(diag[n - 1]));
    if (err_last > err_prev && err_last > rounding_floor)
        throw ConvergenceError("coulomb limit: extrapolation error grew on the last "
                               "ladder step (screening values too coarse?)",
                               diag[n - 1], err_last);
    ExtrapolationResult out;
    out.value = diag[n - 1];
    out.error_estimate = err_last;
    return out;
}

} // namespace gupscat
