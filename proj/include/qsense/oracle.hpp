#pragma once

#include <cstdint>
#include <string>

#include "qsense/cavity.hpp"
#include "qsense/operator_algebra.hpp"

namespace qsense {

// RNG scheme identifier recorded in verification metadata. Stream k of a run
// seeds xoshiro256** with four SplitMix64 outputs starting from
// seed + k * 0x9e3779b97f4a7c15; normals come from Box-Muller on 53-bit
// uniforms. Fully specified, so estimates are bit-reproducible anywhere.
inline constexpr const char* oracle_rng_id = "splitmix64/xoshiro256**/box-muller";

struct OracleConfig {
    std::uint64_t seed = 20260812u;
    std::size_t samples = 1'000'000;

    void validate() const;  // samples >= 1e4
};

struct OracleEstimate {
    double mean = 0.0;
    double stderr_of_mean = 0.0;
    std::size_t samples = 0;

    bool operator==(const OracleEstimate&) const = default;
};

// Draws Gaussian quadrature fluctuations with the given symmetrized moments,
// projects them onto the residual combination and averages the square.
// Throws std::domain_error if the moment matrix is not PSD within tolerance
// (a correlator-sign bug upstream).
OracleEstimate estimate_quadratic_form(const OperatorVector& residual,
                                       const CorrelatorMatrix& moments,
                                       const OracleConfig& cfg);

// Monte-Carlo N^2 for the three toy-model variants.
OracleEstimate estimate_noise(const ToySingleParams& p, const SqueezeParams& sq,
                              const OracleConfig& cfg);
OracleEstimate estimate_noise_lossy(const ToySingleParams& p, const SqueezeParams& sq,
                                    const OracleConfig& cfg);
OracleEstimate estimate_noise(const ToyTwoParams& p, const SqueezeParams& sq,
                              const OracleConfig& cfg);

// Output-quadrature coefficients obtained by solving the four frequency-domain
// equations of motion plus input-output relations as a dense linear system;
// independent of the closed forms in cavity.hpp.
OutputCoefficients solve_output_coefficients(const CavityParams& p, const Coupling& coupling,
                                             double nu);

// ---------------------------------------------------------------------------
// Deterministic RNG primitives (exposed for tests)
// ---------------------------------------------------------------------------

struct SplitMix64 {
    std::uint64_t state;
    std::uint64_t next();
};

class Xoshiro256ss {
public:
    explicit Xoshiro256ss(std::uint64_t seed);
    std::uint64_t next();
    double uniform01();        // in [2^-53, 1]
    double standard_normal();  // Box-Muller, one of a cached pair

private:
    std::uint64_t s_[4];
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace qsense
