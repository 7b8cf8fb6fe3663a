#pragma once

#include <vector>

#include "qsense/cavity.hpp"
#include "qsense/squeeze.hpp"

namespace qsense {

// ---------------------------------------------------------------------------
// Toy-model optima
// ---------------------------------------------------------------------------

// Backaction-cancelling quadrature angle, -atan(zeta^2 beta).
double toy_theta_opt_single(double zeta, double beta);
// Two-mode difference readout: -atan(2 zeta^2 beta).
double toy_theta_opt_two(double zeta, double beta);

// Coupling that balances shot and backaction at theta = 0 for vacuum input;
// the resulting floor is beta/4.
double toy_sql_zeta_single(double beta);   // zeta^2 = 1/beta
double toy_sql_zeta_two(double beta);      // per-mode zeta^2 = 1/(2 beta)
double toy_sql_floor(double beta);         // beta/4

// ---------------------------------------------------------------------------
// Cavity optima (closed forms; numeric minimizers live in the test oracles)
// ---------------------------------------------------------------------------

// atan[hbar G^2 m |chi_c|^2 |chi_m|^2 (nu^2 - omega_m^2)]
double theta_opt_position(const CavityParams& p, double g, double nu);
// atan[hbar G'^2 m^3 omega_m^2 |chi_c|^2 |chi_m|^2 (nu^2 - omega_m^2)]
double theta_opt_momentum(const CavityParams& p, double gp, double nu);

// e^{-r} / (sqrt(hbar) |chi_m|^{1/2} |chi_c|)
double g_opt_position(const CavityParams& p, double nu, double r);
// e^{-r} / (m omega_m sqrt(hbar) |chi_m|^{1/2} |chi_c|)
double g_opt_momentum(const CavityParams& p, double nu, double r);

// ---------------------------------------------------------------------------
// Search-strategy sweeps
// ---------------------------------------------------------------------------

enum class StrategyMode { broadband, narrowband };

struct StrategyConfig {
    StrategyMode mode = StrategyMode::broadband;
    CavityParams cavity;
    SqueezeParams sq{2.0, 0.0};     // the squeezed comparison series
    double target_nu = 1e6;         // broadband only: band center for the fixed power
    std::vector<double> nu_grid;

    void validate() const;
};

struct SweepRecord {
    double nu = 0.0;
    double theta = 0.0;
    double coupling = 0.0;
    SpectrumPoint point;
};

struct SweepSeries {
    CouplingKind kind = CouplingKind::position;
    double r = 0.0;
    std::vector<SweepRecord> records;
};

// Four series in fixed order: position r=0, position squeezed, momentum r=0,
// momentum squeezed.
struct SweepResult {
    std::vector<SweepSeries> series;

    const SweepSeries& find(CouplingKind kind, bool squeezed) const;
};

// Phase-quadrature sweep at the fixed position coupling g_opt_position
// (target_nu, r=0) with G' = G/(m kappa); same power for every series.
SweepResult broadband_sweep(const StrategyConfig& cfg);

// Per-frequency coupling g_opt(nu, r=0) and quadrature theta_opt; squeezing
// acts on the input state only, keeping the drive power of the r=0 search.
SweepResult narrowband_sweep(const StrategyConfig& cfg);

// Strictly increasing log-spaced grid.
std::vector<double> log_grid(double lo, double hi, std::size_t n);
std::vector<double> linear_grid(double lo, double hi, std::size_t n);

}  // namespace qsense
