#include "ssqc/bath_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

namespace ssqc {

namespace {

constexpr cplx I{0.0, 1.0};

// e^{-(i w0 + gamma)|t-s|}
cplx forward_kernel(double t, double s, const BathParams& p) {
    return std::exp(-(I * p.omega0 + p.bandwidth) * std::abs(t - s));
}

// e^{-(-i w0 + gamma)|t-s|}
cplx backward_kernel(double t, double s, const BathParams& p) {
    return std::exp(-(-I * p.omega0 + p.bandwidth) * std::abs(t - s));
}

} // namespace

void BathParams::validate() const {
    if (!std::isfinite(coupling) || !std::isfinite(bandwidth) || !std::isfinite(temperature) ||
        !std::isfinite(omega0))
        throw std::invalid_argument("bath parameters must be finite");
    if (bandwidth <= 0.0)
        throw std::invalid_argument(fmt::format("bandwidth gamma must be positive (got {})", bandwidth));
    if (coupling < 0.0)
        throw std::invalid_argument(fmt::format("coupling Gamma must be non-negative (got {})", coupling));
    if (temperature < 0.0)
        throw std::invalid_argument(fmt::format("temperature T must be non-negative (got {})", temperature));
}

void SqueezeParams::validate() const {
    if (!std::isfinite(r) || !std::isfinite(theta))
        throw std::invalid_argument("squeeze parameters must be finite");
    if (r < 0.0) throw std::invalid_argument(fmt::format("squeeze strength r must be non-negative (got {})", r));
}

double SqueezeParams::u() const { return std::cosh(r); }
double SqueezeParams::w() const { return std::sinh(r); }
cplx SqueezeParams::v() const { return w() * std::exp(I * theta); }

cplx alpha_thermal(double t, double s, const BathParams& p) {
    const cplx pref = 0.5 * p.coupling * p.bandwidth * cplx(p.temperature + p.omega0, -p.bandwidth);
    return pref * forward_kernel(t, s, p);
}

cplx eta_thermal(double t, double s, const BathParams& p) {
    return 0.5 * p.coupling * p.temperature * p.bandwidth * backward_kernel(t, s, p);
}

double spectral_density(double omega, const BathParams& p) {
    const double g2 = p.bandwidth * p.bandwidth;
    const double detune = p.omega0 - omega;
    return p.coupling / std::numbers::pi * omega * g2 / (g2 + detune * detune);
}

// Prefactors follow the printed closed forms, including the (T - w0 - i gamma)
// factor of alpha2 against (T + w0 - i gamma) in alpha1.
cplx SqueezedCorrelations::alpha1(double t, double s) const {
    const double u = squeeze.u();
    const cplx v = squeeze.v();
    const cplx pref = 0.5 * bath.coupling * bath.bandwidth * cplx(bath.temperature + bath.omega0, -bath.bandwidth);
    return pref * (u * u - v * u * std::exp(-2.0 * I * bath.omega0 * s)) * forward_kernel(t, s, bath);
}

cplx SqueezedCorrelations::alpha2(double t, double s) const {
    const double u = squeeze.u();
    const cplx v = squeeze.v();
    const cplx pref = 0.5 * bath.coupling * bath.bandwidth * cplx(bath.temperature - bath.omega0, -bath.bandwidth);
    return pref * (std::norm(v) - std::conj(v) * u * std::exp(2.0 * I * bath.omega0 * s)) *
           backward_kernel(t, s, bath);
}

cplx SqueezedCorrelations::eta1(double t, double s) const {
    const double u = squeeze.u();
    const cplx v = squeeze.v();
    const double pref = 0.5 * bath.coupling * bath.temperature * bath.bandwidth;
    return pref * (u * u - v * u * std::exp(2.0 * I * bath.omega0 * s)) * backward_kernel(t, s, bath);
}

cplx SqueezedCorrelations::eta2(double t, double s) const {
    const double u = squeeze.u();
    const cplx v = squeeze.v();
    const double pref = 0.5 * bath.coupling * bath.temperature * bath.bandwidth;
    return pref * (std::norm(v) - std::conj(v) * u * std::exp(-2.0 * I * bath.omega0 * s)) *
           forward_kernel(t, s, bath);
}

SqueezedCorrelations squeezed_correlations(const BathParams& p, const SqueezeParams& q) {
    p.validate();
    q.validate();
    return SqueezedCorrelations{p, q};
}

} // namespace ssqc
