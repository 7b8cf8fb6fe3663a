#include "qsense/cavity.hpp"

#include <cmath>
#include <stdexcept>

#include "qsense/constants.hpp"

namespace qsense {

using cplx = std::complex<double>;

void CavityParams::validate() const {
    if (!(mass > 0.0) || !std::isfinite(mass))
        throw std::invalid_argument("CavityParams: mass must be > 0");
    if (!(omega_m >= 0.0) || !std::isfinite(omega_m))
        throw std::invalid_argument("CavityParams: omega_m must be >= 0");
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw std::invalid_argument("CavityParams: kappa must be > 0");
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw std::invalid_argument("CavityParams: gamma must be >= 0");
    if (delta != 0.0)
        throw std::invalid_argument("CavityParams: only the resonant drive (delta = 0) is modeled");
}

std::vector<std::string> CavityParams::warnings() const {
    std::vector<std::string> w;
    if (omega_m > 0.0 && gamma > 0.1 * omega_m)
        w.push_back("gamma is not small against omega_m; the low-gamma closed forms degrade");
    if (gamma > 0.1 * kappa)
        w.push_back("gamma is not small against kappa; the low-gamma closed forms degrade");
    return w;
}

Coupling Coupling::position(double g) { return {CouplingKind::position, g}; }
Coupling Coupling::momentum(double gp) { return {CouplingKind::momentum, gp}; }

void Coupling::validate() const {
    // zero coupling keeps the input-output relations meaningful (pure phase
    // rotation); the force estimator rejects it separately.
    if (!(value >= 0.0) || !std::isfinite(value))
        throw std::invalid_argument("Coupling: value must be >= 0");
}

double momentum_coupling_from_position(double g, const CavityParams& p) {
    p.validate();
    if (!(g > 0.0)) throw std::invalid_argument("momentum_coupling_from_position: G must be > 0");
    return g / (p.mass * p.kappa);
}

Susceptibilities susceptibilities(const CavityParams& p, double nu) {
    p.validate();
    if (!std::isfinite(nu)) throw std::invalid_argument("susceptibilities: nu must be finite");
    const cplx cav_denom(p.kappa / 2.0, -nu);  // -i nu + kappa/2
    const cplx mech_denom = p.mass * cplx(nu * nu - p.omega_m * p.omega_m, p.gamma * nu);
    if (mech_denom == cplx(0.0, 0.0))
        throw std::domain_error("susceptibilities: undamped mechanical resonance is singular "
                                "(gamma = 0 and nu = +-omega_m)");
    Susceptibilities s;
    s.chi_c = std::sqrt(p.kappa) / cav_denom;
    s.chi_m = -1.0 / mech_denom;
    s.phase = cplx(-p.kappa / 2.0, -nu) / cav_denom;
    return s;
}

OutputCoefficients output_quadratures_position(const CavityParams& p, double g, double nu) {
    Coupling::position(g).validate();
    const Susceptibilities s = susceptibilities(p, nu);
    OutputCoefficients c;
    c.xout_xin = s.phase;
    c.yout_yin = s.phase;
    c.yout_fin = g * s.chi_c * s.chi_m;
    c.yout_xin = -hbar * g * g * s.chi_c * s.chi_c * s.chi_m;
    return c;
}

OutputCoefficients output_quadratures_momentum(const CavityParams& p, double gp, double nu) {
    Coupling::momentum(gp).validate();
    const Susceptibilities s = susceptibilities(p, nu);
    OutputCoefficients c;
    c.xout_xin = s.phase;
    c.yout_yin = s.phase;
    c.yout_fin = cplx(0.0, -1.0) * gp * s.chi_c * s.chi_m * p.mass * nu;
    c.yout_xin = -hbar * p.mass * p.mass * p.omega_m * p.omega_m * gp * gp * s.chi_c * s.chi_c * s.chi_m;
    return c;
}

static void require_nondegenerate_theta(double theta) {
    if (!std::isfinite(theta) || std::abs(std::cos(theta)) < 1e-9)
        throw std::domain_error("force PSD undefined at the amplitude quadrature (cos theta ~ 0)");
}

static void require_signal_coupling(double value) {
    if (!(value > 0.0))
        throw std::domain_error("force estimator undefined at zero coupling");
}

SpectrumPoint force_psd_position(const CavityParams& p, double g, double nu, double theta,
                                 const SqueezeParams& sq, double f_in_psd) {
    require_nondegenerate_theta(theta);
    require_signal_coupling(g);
    const Susceptibilities s = susceptibilities(p, nu);
    const SingleModeMoments mom = single_mode_moments(sq);
    const double t = std::tan(theta);

    const double resp_sq = g * g * std::norm(s.chi_c) * std::norm(s.chi_m);
    const cplx c_x = s.phase * t / (g * s.chi_c * s.chi_m) - g * hbar * s.chi_c;

    SpectrumPoint out;
    out.nu = nu;
    out.theta = theta;
    out.sq = sq;
    out.f_in = f_in_psd;
    out.shot = mom.yy / resp_sq;
    out.backaction = std::norm(c_x) * mom.xx;
    // gamma-dependent imaginary part of the cross term is dropped, matching
    // the low-gamma closed form.
    out.cross = (hbar * p.mass * (p.omega_m * p.omega_m - nu * nu) + t / resp_sq) * mom.xy_anti;
    out.total = out.shot + out.backaction + out.cross;
    return out;
}

SpectrumPoint force_psd_momentum(const CavityParams& p, double gp, double nu, double theta,
                                 const SqueezeParams& sq, double f_in_psd) {
    require_nondegenerate_theta(theta);
    require_signal_coupling(gp);
    if (nu == 0.0)
        throw std::domain_error("momentum force PSD undefined at nu = 0 (estimator ~ 1/nu)");
    const Susceptibilities s = susceptibilities(p, nu);
    const SingleModeMoments mom = single_mode_moments(sq);
    const double t = std::tan(theta);
    const double m = p.mass;
    const double wm2 = p.omega_m * p.omega_m;

    const double resp_sq = gp * gp * m * m * nu * nu * std::norm(s.chi_c) * std::norm(s.chi_m);
    const cplx i(0.0, 1.0);
    const cplx c_x = i * s.phase * t / (gp * m * nu * s.chi_c * s.chi_m)
                     - i * gp * hbar * s.chi_c * m * wm2 / nu;

    SpectrumPoint out;
    out.nu = nu;
    out.theta = theta;
    out.sq = sq;
    out.f_in = f_in_psd;
    out.shot = mom.yy / resp_sq;
    out.backaction = std::norm(c_x) * mom.xx;
    out.cross = (hbar * m * (wm2 / (nu * nu)) * (wm2 - nu * nu) + t / resp_sq) * mom.xy_anti;
    out.total = out.shot + out.backaction + out.cross;
    return out;
}

}  // namespace qsense
