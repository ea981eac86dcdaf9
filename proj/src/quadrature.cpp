#include "gupscat/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "gupscat/errors.hpp"

namespace gupscat {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule on [-1, 1]
// (QUADPACK dqk15 constants). Open rule: no endpoint is an abscissa.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelEstimate {
    double kronrod = 0.0;
    double error = 0.0; // |kronrod - gauss|, a conservative bound
};

PanelEstimate gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    for (int i = 0; i < 7; ++i) {
        fv[i] = f(c - h * kXgk[i]);
        fv[14 - i] = f(c + h * kXgk[i]);
    }
    fv[7] = f(c);
    double resk = kWgk[7] * fv[7];
    double resg = kWg[3] * fv[7];
    for (int i = 0; i < 7; ++i) {
        resk += kWgk[i] * (fv[i] + fv[14 - i]);
        if (i % 2 == 1) resg += kWg[i / 2] * (fv[i] + fv[14 - i]);
    }
    PanelEstimate out;
    out.kronrod = resk * h;
    out.error = std::abs((resk - resg) * h);
    return out;
}

struct CellResult {
    double value = 0.0;
    double error = 0.0;
    int panels = 0;
};

constexpr int kMaxCells = 100000;
constexpr int kMaxPanelsPerCell = 4000;

// Adaptive bisection inside one cell. Panels are processed left to right off a
// stack, so the evaluation order (and hence the result) is fixed.
CellResult integrate_cell(const std::function<double(double)>& f, double a, double b,
                          double tol, double total_so_far) {
    struct Panel {
        double a, b;
        PanelEstimate est;
    };
    std::vector<Panel> stack;
    stack.push_back({a, b, gk15(f, a, b)});
    CellResult out;
    out.panels = 1;
    const double cell_len = b - a;
    while (!stack.empty()) {
        Panel p = stack.back();
        stack.pop_back();
        const double len = p.b - p.a;
        const double local_tol = tol * (len / cell_len);
        const bool floor_hit = len <= 1e-15 * (std::abs(p.a) + cell_len);
        if (p.est.error <= local_tol || floor_hit) {
            out.value += p.est.kronrod;
            out.error += p.est.error;
            continue;
        }
        if (out.panels + 1 > kMaxPanelsPerCell) {
            // Drain the stack into the estimate and report the failure.
            double rest = p.est.kronrod, rest_err = p.est.error;
            for (const Panel& q : stack) {
                rest += q.est.kronrod;
                rest_err += q.est.error;
            }
            throw ConvergenceError(
                "radial quadrature: panel cap hit in cell [" + std::to_string(a) + ", " +
                    std::to_string(b) + "] (integrand too singular?)",
                total_so_far + out.value + rest, out.error + rest_err);
        }
        const double mid = 0.5 * (p.a + p.b);
        Panel right{mid, p.b, gk15(f, mid, p.b)};
        Panel left{p.a, mid, gk15(f, p.a, mid)};
        out.panels += 2;
        stack.push_back(right); // pushed first so the left half is handled first
        stack.push_back(left);
    }
    return out;
}

} // namespace

QuadratureResult integrate_radial_oscillatory(const std::function<double(double)>& f,
                                              double k_osc, double decay_scale,
                                              double rel_tol, double abs_tol) {
    if (!std::isfinite(k_osc) || k_osc < 0.0)
        throw DomainError("k_osc must be finite and >= 0");
    if (!std::isfinite(decay_scale) || decay_scale <= 0.0)
        throw DomainError("decay_scale must be finite and > 0");
    if (!std::isfinite(rel_tol) || !std::isfinite(abs_tol) || rel_tol < 0.0 || abs_tol < 0.0 ||
        (rel_tol == 0.0 && abs_tol == 0.0))
        throw DomainError("tolerances must be non-negative and not both zero");

    const double h = (k_osc > 0.0) ? M_PI / k_osc : decay_scale;
    const double cutoff = abs_tol / 100.0;
    // Never truncate before this radius: a compactly supported integrand may
    // sit silent for several cells and wake up later.
    const double min_cover = 3.0 * decay_scale;

    QuadratureResult total;
    int quiet_cells = 0;
    double peak_cell = 0.0;
    for (int j = 0; j < kMaxCells; ++j) {
        const double a = j * h;
        const double b = a + h;
        const double probe = gk15(f, a, b).kronrod;
        const double tol_cell =
            std::max(abs_tol / 50.0,
                     rel_tol * std::max(std::abs(probe), std::abs(total.value)) / 50.0);
        const CellResult cell = integrate_cell(f, a, b, tol_cell, total.value);
        total.value += cell.value;
        total.error_estimate += cell.error;
        total.cells += 1;
        total.panels += cell.panels + 1;
        peak_cell = std::max(peak_cell, std::abs(cell.value));
        if (std::abs(cell.value) < cutoff && b >= min_cover) {
            if (++quiet_cells >= 2) {
                total.error_estimate += std::abs(cell.value); // tail bound: below cutoff twice over
                // A non-integrable singularity can slip past the adaptive floor
                // panel by panel; it cannot slip past the accumulated error.
                const double budget =
                    100.0 * std::max(abs_tol,
                                     rel_tol * std::max(std::abs(total.value), peak_cell));
                if (total.error_estimate > budget)
                    throw ConvergenceError(
                        "radial quadrature: accumulated error " +
                            std::to_string(total.error_estimate) +
                            " exceeds the tolerance budget (integrand singular?)",
                        total.value, total.error_estimate);
                return total;
            }
        } else {
            quiet_cells = 0;
        }
    }
    throw ConvergenceError("radial quadrature: cell cap hit before truncation "
                           "(integrand not decaying?)",
                           total.value, total.error_estimate);
}

GaussLegendreRule gauss_legendre(int n) {
    if (n < 1) throw DomainError("gauss_legendre: n must be >= 1");
    GaussLegendreRule rule;
    rule.nodes.assign(n, 0.0);
    rule.weights.assign(n, 0.0);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on the recurrence.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int l = 2; l <= n; ++l) {
                const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                // One more cycle to polish, then recompute dp at the root.
                p0 = 1.0;
                p1 = x;
                for (int l = 2; l <= n; ++l) {
                    const double p2 = ((2.0 * l - 1.0) * x * p1 - (l - 1.0) * p0) / l;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        // cos() above walks from +1 toward -1; store ascending and mirrored so
        // the rule is exactly symmetric.
        rule.nodes[i] = -std::abs(x);
        rule.nodes[n - 1 - i] = std::abs(x);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

double integrate_angular(const std::function<double(double)>& g, int n_nodes) {
    if (n_nodes < 2) throw DomainError("integrate_angular: need at least 2 nodes");
    const GaussLegendreRule rule = gauss_legendre(n_nodes);
    // 2 pi Int_0^pi g(theta) sin(theta) dtheta = 2 pi Int_-1^1 g(acos(mu)) dmu
    double sum = 0.0;
    for (int i = 0; i < n_nodes; ++i) sum += rule.weights[i] * g(std::acos(rule.nodes[i]));
    return 2.0 * M_PI * sum;
}

} // namespace gupscat
