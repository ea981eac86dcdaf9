#include "gupscat/partial_waves.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "gupscat/errors.hpp"
#include "gupscat/quadrature.hpp"

namespace gupscat {

namespace {

constexpr int kLmaxCap = 64;

void require_wavenumber(double k) {
    if (!std::isfinite(k) || k <= 0.0) throw DomainError("k must be finite and > 0");
}

void require_order(int l) {
    if (l < 0) throw DomainError("l must be >= 0");
}

void require_screened(const RadialPotential& pot) {
    if (!std::isfinite(pot.decay_scale()))
        throw DomainError("phase shifts need a screened potential; bare Coulomb "
                          "has no decay scale and its radial integral does not exist");
}

// sin delta_l = -P * Int, with P = 1/(k (1 + 2 bp hbar^2 k^2)).
double phase_prefactor(double k, const DeformationParams& params, const PhysicalContext& ctx) {
    return green_prefactor(k, params, ctx) / k;
}

// Int_0^inf sin^2(kr - l pi/2) U_red dr. The kernel depends on l only through
// parity: sin^2(kr) for even l, cos^2(kr) for odd l (reduced exactly, instead
// of evaluating the shifted argument).
double integral_asymptotic_squared(int l, double k, const RadialPotential& pot,
                                   const PhysicalContext& ctx) {
    const bool even = l % 2 == 0;
    const auto f = [&](double r) {
        const double s = even ? std::sin(k * r) : std::cos(k * r);
        return s * s * reduced_potential(pot, r, ctx);
    };
    return integrate_radial_oscillatory(f, k, pot.decay_scale()).value;
}

// Int_0^inf sin(kr - l pi/2) cos(kr - l pi/2) U_red dr
// = (+-1/2) Int sin(2kr) U_red dr, + for even l.
double integral_asymptotic_cross(int l, double k, const RadialPotential& pot,
                                 const PhysicalContext& ctx) {
    const double parity = l % 2 == 0 ? 0.5 : -0.5;
    const auto f = [&](double r) {
        return std::sin(2.0 * k * r) * reduced_potential(pot, r, ctx);
    };
    return parity * integrate_radial_oscillatory(f, 2.0 * k, pot.decay_scale()).value;
}

} // namespace

double legendre_polynomial(int l, double x) {
    require_order(l);
    if (!(std::abs(x) <= 1.0)) throw DomainError("legendre: |x| must be <= 1");
    if (l == 0) return 1.0;
    double pm = 1.0, pc = x;
    for (int n = 2; n <= l; ++n) {
        const double pn = ((2.0 * n - 1.0) * x * pc - (n - 1.0) * pm) / n;
        pm = pc;
        pc = pn;
    }
    return pc;
}

double free_radial_wave(int l, double k, double r) {
    require_order(l);
    require_wavenumber(k);
    if (!std::isfinite(r) || r <= 0.0) throw DomainError("free wave: r must be > 0");
    return std::sqrt(2.0 / M_PI) * k * std::sph_bessel(static_cast<unsigned>(l), k * r);
}

double born_phase_shift(int l, double k, const RadialPotential& pot,
                        const DeformationParams& params, const PhysicalContext& ctx) {
    require_order(l);
    require_wavenumber(k);
    require_screened(pot);
    const double pref = phase_prefactor(k, params, ctx);
    double integral = 0.0;
    try {
        integral = integral_asymptotic_squared(l, k, pot, ctx);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError("phase shift l=" + std::to_string(l) + ": " + e.what(),
                               -pref * e.estimate(), pref * e.error_estimate());
    }
    const double sin_delta = -pref * integral;
    if (std::abs(sin_delta) > 1.0)
        throw BornValidityError("phase shift l=" + std::to_string(l) +
                                    ": |sin delta| = " + std::to_string(std::abs(sin_delta)) +
                                    " > 1, first-order estimate left its validity range",
                                sin_delta);
    return std::asin(sin_delta);
}

double born_phase_shift_bessel(int l, double k, const RadialPotential& pot,
                               const DeformationParams& params, const PhysicalContext& ctx) {
    require_order(l);
    require_wavenumber(k);
    require_screened(pot);
    const double pref = phase_prefactor(k, params, ctx);
    const auto f = [&](double r) {
        const double chi = k * r * std::sph_bessel(static_cast<unsigned>(l), k * r);
        return chi * chi * reduced_potential(pot, r, ctx);
    };
    const double integral = integrate_radial_oscillatory(f, k, pot.decay_scale()).value;
    const double sin_delta = -pref * integral;
    if (std::abs(sin_delta) > 1.0)
        throw BornValidityError("phase shift (radial kernel) l=" + std::to_string(l) +
                                    ": |sin delta| = " + std::to_string(std::abs(sin_delta)) + " > 1",
                                sin_delta);
    return std::asin(sin_delta);
}

double self_consistent_phase_shift(int l, double k, const RadialPotential& pot,
                                   const DeformationParams& params, const PhysicalContext& ctx,
                                   int max_iter, double tol) {
    require_order(l);
    require_wavenumber(k);
    require_screened(pot);
    if (max_iter < 1) throw DomainError("self-consistent phase: max_iter must be >= 1");
    if (!std::isfinite(tol) || tol <= 0.0)
        throw DomainError("self-consistent phase: tol must be > 0");

    const double pref = phase_prefactor(k, params, ctx);
    // sin(a + delta) = sin a cos delta + cos a sin delta splits the kernel into
    // two delta-independent integrals; the fixed point then runs on scalars.
    const double i_ss = integral_asymptotic_squared(l, k, pot, ctx);
    const double i_sc = integral_asymptotic_cross(l, k, pot, ctx);

    const auto proposal = [&](double delta) {
        return -pref * (std::cos(delta) * i_ss + std::sin(delta) * i_sc);
    };

    double seed = -pref * i_ss;
    if (std::abs(seed) > 1.0)
        throw BornValidityError("self-consistent phase l=" + std::to_string(l) +
                                    ": first-order seed |sin delta| = " +
                                    std::to_string(std::abs(seed)) + " > 1",
                                seed);
    double delta = std::asin(seed);
    bool damped = false;
    int overshoots = 0;
    double prev_diff = 0.0;
    for (int it = 0; it < max_iter; ++it) {
        const double x = proposal(delta);
        double delta_prop;
        if (std::abs(x) > 1.0) {
            // Transient overshoot: clamp to the branch edge and relax from
            // here on. Persistent overshoot means the estimate is invalid.
            if (++overshoots > 5)
                throw BornValidityError("self-consistent phase l=" + std::to_string(l) +
                                            ": |sin delta| = " + std::to_string(std::abs(x)) +
                                            " > 1 persists under relaxation",
                                        x);
            delta_prop = std::copysign(M_PI_2, x);
            damped = true;
        } else {
            delta_prop = std::asin(x);
        }
        const double delta_next = damped ? 0.5 * (delta + delta_prop) : delta_prop;
        const double diff = delta_next - delta;
        if (diff * prev_diff < 0.0) damped = true; // oscillation: relax from now on
        prev_diff = diff;
        delta = delta_next;
        if (std::abs(diff) < tol) return delta;
    }
    std::ostringstream os;
    os << "self-consistent phase l=" << l << ": no fixed point after " << max_iter
       << " iterations (last iterates " << delta - prev_diff << ", " << delta << ")";
    throw ConvergenceError(os.str(), delta, std::abs(prev_diff));
}

std::complex<double> partial_amplitude(const PhaseShiftSet& phases, double theta) {
    require_wavenumber(phases.k);
    if (phases.deltas.empty()) throw DomainError("partial amplitude: empty phase set");
    if (!std::isfinite(theta) || theta < 0.0 || theta > M_PI)
        throw DomainError("partial amplitude: theta must lie in [0, pi]");
    const double mu = std::cos(theta);
    // (i/2k)(1 - e^{2i delta}) = (1/k) e^{i delta} sin delta, term by term; the
    // right side keeps Im f >= 0 term-wise and loses no precision at small
    // delta, so the sum runs on that form.
    std::complex<double> sum = 0.0;
    double pm = 1.0, pc = mu;
    for (int l = 0; l <= phases.l_max(); ++l) {
        double pl;
        if (l == 0) {
            pl = 1.0;
        } else if (l == 1) {
            pl = mu;
        } else {
            pl = ((2.0 * l - 1.0) * mu * pc - (l - 1.0) * pm) / l;
            pm = pc;
            pc = pl;
        }
        const double d = phases.deltas[static_cast<size_t>(l)];
        const std::complex<double> term(std::cos(d) * std::sin(d), std::sin(d) * std::sin(d));
        sum += (2.0 * l + 1.0) * term * pl;
    }
    return sum / phases.k;
}

double total_cross_section(const PhaseShiftSet& phases) {
    require_wavenumber(phases.k);
    if (phases.deltas.empty()) throw DomainError("cross-section: empty phase set");
    double sum = 0.0;
    for (int l = 0; l <= phases.l_max(); ++l) {
        const double s = std::sin(phases.deltas[static_cast<size_t>(l)]);
        sum += (2.0 * l + 1.0) * s * s;
    }
    return 4.0 * M_PI * sum / (phases.k * phases.k);
}

double optical_theorem_residual(const PhaseShiftSet& phases) {
    const double sigma = total_cross_section(phases);
    const double im_f0 = partial_amplitude(phases, 0.0).imag();
    const double diff = std::abs(sigma - 4.0 * M_PI * im_f0 / phases.k);
    return diff / std::max(sigma, 1e-300);
}

double asymptotic_wronskian_residual(int l, double k, double delta,
                                     const DeformationParams& params,
                                     const PhysicalContext& ctx, double r) {
    require_order(l);
    require_wavenumber(k);
    if (!std::isfinite(r) || r <= 0.0) throw DomainError("wronskian residual: r must be > 0");
    if (!std::isfinite(delta)) throw DomainError("wronskian residual: delta must be finite");
    const double a = k * r - l * M_PI_2;
    const double b = a + delta;
    const double chi = std::sin(a), chi_d = std::sin(b);
    const double dchi = k * std::cos(a), dchi_d = k * std::cos(b);
    const double d2chi = -k * k * chi, d2chi_d = -k * k * chi_d;
    const double d3chi = -k * k * dchi, d3chi_d = -k * k * dchi_d;
    const double w = chi * dchi_d - chi_d * dchi;
    const double t3 = chi * d3chi_d - chi_d * d3chi - dchi * d2chi_d + dchi_d * d2chi;
    const double hbar2 = ctx.hbar * ctx.hbar;
    const double bp = params.beta_prime;
    const double lhs =
        w - bp * hbar2 * t3 + 2.0 * bp * hbar2 * (l * (l + 1.0) / (r * r)) * w;
    const double rhs = -k * (1.0 + 2.0 * bp * hbar2 * k * k) * std::sin(delta);
    return std::abs(lhs - rhs);
}

int select_lmax(const RadialPotential& pot, double k, const DeformationParams& params,
                const PhysicalContext& ctx, double tail_tol) {
    require_wavenumber(k);
    require_screened(pot);
    if (!std::isfinite(tail_tol) || tail_tol <= 0.0)
        throw DomainError("select_lmax: tail_tol must be > 0");
    double last = 0.0;
    for (int l = 0; l <= kLmaxCap; ++l) {
        try {
            last = std::abs(std::sin(born_phase_shift_bessel(l, k, pot, params, ctx)));
        } catch (const BornValidityError& e) {
            last = std::abs(e.raw_sin()); // way above any sensible tail_tol; keep scanning
        }
        if (last < tail_tol) return l;
    }
    throw ConvergenceError("select_lmax: no l <= " + std::to_string(kLmaxCap) +
                               " fell below tail_tol",
                           last, tail_tol);
}

} // namespace gupscat
