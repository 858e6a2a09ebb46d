// bath_model.hpp: Ornstein-Uhlenbeck bath correlation functions (thermal and
// two-mode squeezed) and the Lorentz-Drude Ohmic spectral density.

#pragma once

#include <complex>
#include <variant>

namespace ssqc {

using cplx = std::complex<double>;

struct BathParams {
    double coupling{0.05};   // Gamma
    double bandwidth{5.0};   // gamma; 1/gamma is the memory time
    double temperature{15.0};
    double omega0{1.0};      // bath center frequency

    // Throws std::invalid_argument on gamma <= 0, Gamma < 0 or T < 0.
    void validate() const;

    bool operator==(const BathParams&) const = default;
};

struct SqueezeParams {
    double r{0.0};
    double theta{0.0};

    void validate() const;

    double u() const;   // cosh r
    double w() const;   // sinh r
    cplx v() const;     // sinh r * e^{i theta}

    bool operator==(const SqueezeParams&) const = default;
};

// alpha(t,s) = (Gamma gamma / 2)(T + w0 - i gamma) e^{-(i w0 + gamma)|t-s|}
cplx alpha_thermal(double t, double s, const BathParams& p);
// eta(t,s) = (Gamma T gamma / 2) e^{-(-i w0 + gamma)|t-s|}
cplx eta_thermal(double t, double s, const BathParams& p);

// J(w) = (Gamma/pi) w gamma^2 / (gamma^2 + (w0 - w)^2). Never used by the
// propagators; kept to document the bath the correlations stand for.
double spectral_density(double omega, const BathParams& p);

struct ThermalCorrelations {
    BathParams bath;

    cplx alpha(double t, double s) const { return alpha_thermal(t, s, bath); }
    cplx eta(double t, double s) const { return eta_thermal(t, s, bath); }
};

// Correlations of a bath prepared in a symmetric two-mode squeezed vacuum.
// The explicit e^{+-2 i w0 s} factors make these non-stationary for r > 0.
struct SqueezedCorrelations {
    BathParams bath;
    SqueezeParams squeeze;

    cplx alpha1(double t, double s) const;
    cplx alpha2(double t, double s) const;
    cplx eta1(double t, double s) const;
    cplx eta2(double t, double s) const;

    cplx alpha(double t, double s) const { return alpha1(t, s) + alpha2(t, s); }
    cplx eta(double t, double s) const { return eta1(t, s) + eta2(t, s); }
};

using CorrelationSet = std::variant<ThermalCorrelations, SqueezedCorrelations>;

SqueezedCorrelations squeezed_correlations(const BathParams& p, const SqueezeParams& q);

} // namespace ssqc
