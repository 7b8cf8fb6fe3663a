#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qsense/squeeze.hpp"

namespace qsense {

// Single-sided cavity, driven on resonance (detuning fixed to zero). All
// frequencies are angular (rad/s).
struct CavityParams {
    double mass = 1e-6;      // kg
    double omega_m = 100.0;  // mechanical resonance
    double kappa = 1e6;      // cavity decay rate
    double gamma = 1e-4;     // mechanical damping
    double delta = 0.0;      // must stay 0

    void validate() const;
    // Non-fatal: the closed forms assume gamma << omega_m, kappa.
    std::vector<std::string> warnings() const;
};

enum class CouplingKind { position, momentum };

// Optomechanical coupling strength: rad/s per meter (position) or rad/s per
// kg m/s (momentum).
struct Coupling {
    CouplingKind kind = CouplingKind::position;
    double value = 0.0;

    static Coupling position(double g);
    static Coupling momentum(double gp);
    void validate() const;
};

// G' = G / (m kappa): equal drive power across the two readout schemes.
double momentum_coupling_from_position(double g, const CavityParams& p);

struct Susceptibilities {
    std::complex<double> chi_c;  // sqrt(kappa)/(-i nu + kappa/2)
    std::complex<double> chi_m;  // -1/(m (nu^2 - omega_m^2 + i gamma nu))
    std::complex<double> phase;  // (-i nu - kappa/2)/(-i nu + kappa/2), unimodular
};

// Throws std::domain_error on the undamped mechanical pole
// (gamma = 0 with nu = +-omega_m).
Susceptibilities susceptibilities(const CavityParams& p, double nu);

// Coefficients of the input fields in the output quadratures,
// X_out = xout_xin X_in and Y_out = yout_xin X_in + yout_yin Y_in + yout_fin F_in.
struct OutputCoefficients {
    std::complex<double> xout_xin;
    std::complex<double> yout_xin;
    std::complex<double> yout_yin;
    std::complex<double> yout_fin;
};

OutputCoefficients output_quadratures_position(const CavityParams& p, double g, double nu);
OutputCoefficients output_quadratures_momentum(const CavityParams& p, double gp, double nu);

// Per-frequency decomposition of the measurement-induced force noise PSD.
// total = shot + backaction + cross; the external-force PSD f_in rides along
// unsummed as an opaque constant.
struct SpectrumPoint {
    double nu = 0.0;
    double shot = 0.0;
    double backaction = 0.0;
    double cross = 0.0;
    double total = 0.0;
    double f_in = 0.0;
    double theta = 0.0;
    SqueezeParams sq;
};

SpectrumPoint force_psd_position(const CavityParams& p, double g, double nu, double theta,
                                 const SqueezeParams& sq, double f_in_psd = 0.0);
// nu = 0 is rejected: the force estimator carries a 1/nu prefactor.
SpectrumPoint force_psd_momentum(const CavityParams& p, double gp, double nu, double theta,
                                 const SqueezeParams& sq, double f_in_psd = 0.0);

}  // namespace qsense
