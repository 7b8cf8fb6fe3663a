#include "qsense/optimal.hpp"

#include <cmath>
#include <stdexcept>

#include "qsense/constants.hpp"

namespace qsense {

static void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be > 0");
}

double toy_theta_opt_single(double zeta, double beta) {
    require_positive(zeta, "zeta");
    require_positive(beta, "beta");
    return -std::atan(zeta * zeta * beta);
}

double toy_theta_opt_two(double zeta, double beta) {
    require_positive(zeta, "zeta");
    require_positive(beta, "beta");
    return -std::atan(2.0 * zeta * zeta * beta);
}

double toy_sql_zeta_single(double beta) {
    require_positive(beta, "beta");
    return 1.0 / std::sqrt(beta);
}

double toy_sql_zeta_two(double beta) {
    require_positive(beta, "beta");
    return 1.0 / std::sqrt(2.0 * beta);
}

double toy_sql_floor(double beta) {
    require_positive(beta, "beta");
    return 0.25 * beta;
}

double theta_opt_position(const CavityParams& p, double g, double nu) {
    Coupling::position(g).validate();
    const Susceptibilities s = susceptibilities(p, nu);
    const double resp = std::norm(s.chi_c) * std::norm(s.chi_m);
    return std::atan(hbar * g * g * p.mass * resp * (nu * nu - p.omega_m * p.omega_m));
}

double theta_opt_momentum(const CavityParams& p, double gp, double nu) {
    Coupling::momentum(gp).validate();
    const Susceptibilities s = susceptibilities(p, nu);
    const double resp = std::norm(s.chi_c) * std::norm(s.chi_m);
    const double m3 = p.mass * p.mass * p.mass;
    return std::atan(hbar * gp * gp * m3 * p.omega_m * p.omega_m * resp *
                     (nu * nu - p.omega_m * p.omega_m));
}

double g_opt_position(const CavityParams& p, double nu, double r) {
    if (!(r >= 0.0) || !std::isfinite(r)) throw std::invalid_argument("g_opt_position: r must be >= 0");
    const Susceptibilities s = susceptibilities(p, nu);
    return std::exp(-r) /
           (std::sqrt(hbar) * std::sqrt(std::abs(s.chi_m)) * std::abs(s.chi_c));
}

double g_opt_momentum(const CavityParams& p, double nu, double r) {
    if (!(p.omega_m > 0.0))
        throw std::invalid_argument("g_opt_momentum: omega_m must be > 0 for a finite optimum");
    return g_opt_position(p, nu, r) / (p.mass * p.omega_m);
}

void StrategyConfig::validate() const {
    cavity.validate();
    sq.validate();
    if (nu_grid.size() < 2) throw std::invalid_argument("StrategyConfig: nu_grid needs >= 2 points");
    double prev = 0.0;
    for (double nu : nu_grid) {
        if (!(nu > 0.0) || !std::isfinite(nu))
            throw std::invalid_argument("StrategyConfig: nu_grid must be positive and finite");
        if (nu <= prev) throw std::invalid_argument("StrategyConfig: nu_grid must be strictly increasing");
        prev = nu;
    }
    if (mode == StrategyMode::broadband &&
        (target_nu < nu_grid.front() || target_nu > nu_grid.back()))
        throw std::invalid_argument("StrategyConfig: target_nu must lie within the grid span");
}

const SweepSeries& SweepResult::find(CouplingKind kind, bool squeezed) const {
    for (const auto& s : series)
        if (s.kind == kind && (s.r > 0.0) == squeezed) return s;
    throw std::logic_error("SweepResult: series not found");
}

SweepResult broadband_sweep(const StrategyConfig& cfg) {
    cfg.validate();
    const double g = g_opt_position(cfg.cavity, cfg.target_nu, 0.0);
    const double gp = momentum_coupling_from_position(g, cfg.cavity);
    const SqueezeParams vac = SqueezeParams::vacuum();
    const SqueezeParams sq{cfg.sq.r, 0.0};  // phase-quadrature search runs at phi = 0

    SweepResult out;
    out.series = {{CouplingKind::position, 0.0, {}},
                  {CouplingKind::position, sq.r, {}},
                  {CouplingKind::momentum, 0.0, {}},
                  {CouplingKind::momentum, sq.r, {}}};
    for (double nu : cfg.nu_grid) {
        out.series[0].records.push_back({nu, 0.0, g, force_psd_position(cfg.cavity, g, nu, 0.0, vac)});
        out.series[1].records.push_back({nu, 0.0, g, force_psd_position(cfg.cavity, g, nu, 0.0, sq)});
        out.series[2].records.push_back({nu, 0.0, gp, force_psd_momentum(cfg.cavity, gp, nu, 0.0, vac)});
        out.series[3].records.push_back({nu, 0.0, gp, force_psd_momentum(cfg.cavity, gp, nu, 0.0, sq)});
    }
    return out;
}

SweepResult narrowband_sweep(const StrategyConfig& cfg) {
    cfg.validate();
    const SqueezeParams vac = SqueezeParams::vacuum();
    const SqueezeParams sq{cfg.sq.r, 0.0};

    SweepResult out;
    out.series = {{CouplingKind::position, 0.0, {}},
                  {CouplingKind::position, sq.r, {}},
                  {CouplingKind::momentum, 0.0, {}},
                  {CouplingKind::momentum, sq.r, {}}};
    for (double nu : cfg.nu_grid) {
        const double g = g_opt_position(cfg.cavity, nu, 0.0);
        const double gp = g_opt_momentum(cfg.cavity, nu, 0.0);
        const double th_p = theta_opt_position(cfg.cavity, g, nu);
        const double th_m = theta_opt_momentum(cfg.cavity, gp, nu);
        out.series[0].records.push_back({nu, th_p, g, force_psd_position(cfg.cavity, g, nu, th_p, vac)});
        out.series[1].records.push_back({nu, th_p, g, force_psd_position(cfg.cavity, g, nu, th_p, sq)});
        out.series[2].records.push_back({nu, th_m, gp, force_psd_momentum(cfg.cavity, gp, nu, th_m, vac)});
        out.series[3].records.push_back({nu, th_m, gp, force_psd_momentum(cfg.cavity, gp, nu, th_m, sq)});
    }
    return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t n) {
    if (!(lo > 0.0) || !(hi > lo)) throw std::invalid_argument("log_grid: need 0 < lo < hi");
    if (n < 2) throw std::invalid_argument("log_grid: need n >= 2");
    std::vector<double> g(n);
    const double step = std::log(hi / lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo * std::exp(step * static_cast<double>(i));
    g.back() = hi;
    return g;
}

std::vector<double> linear_grid(double lo, double hi, std::size_t n) {
    if (!(hi > lo)) throw std::invalid_argument("linear_grid: need lo < hi");
    if (n < 2) throw std::invalid_argument("linear_grid: need n >= 2");
    std::vector<double> g(n);
    const double step = (hi - lo) / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) g[i] = lo + step * static_cast<double>(i);
    g.back() = hi;
    return g;
}

}  // namespace qsense
