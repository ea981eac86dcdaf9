#include "gupscat/potentials.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "gupscat/errors.hpp"

namespace gupscat {

namespace {

double sign_factor(PotentialSign s) {
    return s == PotentialSign::attractive ? -1.0 : 1.0;
}

} // namespace

RadialPotential RadialPotential::coulomb(double e2, PotentialSign sign) {
    if (!std::isfinite(e2) || e2 < 0.0) throw DomainError("coulomb: e2 must be >= 0");
    RadialPotential pot;
    pot.kind_ = PotentialKind::coulomb;
    pot.sign_ = sign;
    pot.e2_ = e2;
    pot.r_cut_ = std::numeric_limits<double>::infinity();
    return pot;
}

RadialPotential RadialPotential::yukawa(double e2, double lambda, PotentialSign sign) {
    if (!std::isfinite(e2) || e2 < 0.0) throw DomainError("yukawa: e2 must be >= 0");
    if (!std::isfinite(lambda) || lambda <= 0.0)
        throw DomainError("yukawa: screening lambda must be > 0");
    RadialPotential pot;
    pot.kind_ = PotentialKind::yukawa;
    pot.sign_ = sign;
    pot.e2_ = e2;
    pot.lambda_ = lambda;
    pot.r_cut_ = std::numeric_limits<double>::infinity();
    return pot;
}

RadialPotential RadialPotential::custom(std::function<double(double)> eval, double r_cut) {
    if (!eval) throw DomainError("custom potential: callable required");
    if (!std::isfinite(r_cut) || r_cut <= 0.0)
        throw DomainError("custom potential: r_cut must be finite and > 0");
    for (double r : {r_cut, 2.0 * r_cut, 10.0 * r_cut}) {
        const double u = eval(r);
        if (!std::isfinite(u) || std::abs(u) >= 1e-14)
            throw DomainError("custom potential: |U(r)| must be < 1e-14 at and beyond r_cut");
    }
    RadialPotential pot;
    pot.kind_ = PotentialKind::custom;
    pot.sign_ = PotentialSign::attractive; // metadata only; eval carries its own sign
    pot.r_cut_ = r_cut;
    pot.eval_ = std::move(eval);
    return pot;
}

double RadialPotential::operator()(double r) const {
    if (!std::isfinite(r) || r <= 0.0) throw DomainError("potential: r must be > 0");
    switch (kind_) {
    case PotentialKind::coulomb:
        return sign_factor(sign_) * e2_ / r;
    case PotentialKind::yukawa:
        return sign_factor(sign_) * e2_ * std::exp(-lambda_ * r) / r;
    case PotentialKind::custom:
        return r > r_cut_ ? 0.0 : eval_(r);
    }
    throw DomainError("potential: unknown kind");
}

double RadialPotential::decay_scale() const noexcept {
    switch (kind_) {
    case PotentialKind::yukawa:
        return 1.0 / lambda_;
    case PotentialKind::custom:
        return r_cut_;
    default:
        return std::numeric_limits<double>::infinity();
    }
}

std::string RadialPotential::describe() const {
    std::ostringstream os;
    switch (kind_) {
    case PotentialKind::coulomb:
        os << "coulomb(e2=" << e2_ << (sign_ == PotentialSign::attractive ? ",attractive" : ",repulsive")
           << ")";
        break;
    case PotentialKind::yukawa:
        os << "yukawa(e2=" << e2_ << ",lambda=" << lambda_
           << (sign_ == PotentialSign::attractive ? ",attractive" : ",repulsive") << ")";
        break;
    case PotentialKind::custom:
        os << "custom(r_cut=" << r_cut_ << ")";
        break;
    }
    return os.str();
}

double reduced_potential(const RadialPotential& pot, double r, const PhysicalContext& ctx) {
    return 2.0 * ctx.mass * pot(r) / (ctx.hbar * ctx.hbar);
}

double yukawa_fourier_transform(double q, double lambda, double e2, PotentialSign sign) {
    if (!std::isfinite(lambda) || lambda <= 0.0)
        throw DomainError("yukawa transform: lambda must be > 0");
    if (!std::isfinite(q) || q < 0.0) throw DomainError("yukawa transform: q must be >= 0");
    return sign_factor(sign) * 4.0 * M_PI * e2 / (q * q + lambda * lambda);
}

} // namespace gupscat
