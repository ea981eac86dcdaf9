#pragma once

#include <functional>
#include <vector>

namespace gupscat {

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0; // upper bound on |value - true|
    int cells = 0;               // half-period cells actually integrated
    int panels = 0;              // adaptive panels across all cells
};

// Semi-infinite integral of a decaying oscillatory integrand f on (0, inf).
// The axis is cut into half-period cells of length pi/k_osc (decay_scale-sized
// cells when k_osc == 0, i.e. no oscillation), each cell is integrated with an
// adaptive Gauss-Kronrod 15(7) rule (open: r = 0 is never evaluated), and the
// cell loop truncates once contributions stay below abs_tol/100 past a few
// decay scales. Evaluation order is fixed, so results are bit-reproducible.
//
// decay_scale is the caller's estimate of the integrand's decay length (1/lam
// for a screened potential); it steers cell sizing and the truncation horizon,
// not correctness. Throws ConvergenceError when the cell cap or the per-cell
// panel cap is hit before the tolerances are met.
QuadratureResult integrate_radial_oscillatory(const std::function<double(double)>& f,
                                              double k_osc, double decay_scale,
                                              double rel_tol = 1e-10,
                                              double abs_tol = 1e-14);

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1], computed by
// Newton iteration on the recurrence and mirrored so the set is exactly
// symmetric. Deterministic for a given n.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre(int n);

// Integral of g(theta) over the full solid angle for an azimuthally symmetric
// integrand: 2 pi * Int_0^pi g(theta) sin(theta) dtheta, evaluated as a
// Gauss-Legendre sum in mu = cos(theta). Exact for integrands that are
// polynomials of degree <= 2n-1 in mu.
double integrate_angular(const std::function<double(double)>& g, int n_nodes);

} // namespace gupscat
