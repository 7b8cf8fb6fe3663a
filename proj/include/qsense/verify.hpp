#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qsense/oracle.hpp"

namespace qsense {

struct VerifyOptions {
    std::uint64_t seed = 20260812u;
    std::size_t samples = 1'000'000;
    // Fault-injection self-test: negates the X-Y cross entries of the moment
    // matrix fed to the sampler, which must trip the 3-sigma agreement checks.
    bool flip_cross_sign = false;
};

struct ToyAgreementCase {
    std::string name;
    double analytic = 0.0;
    OracleEstimate estimate;
    double sigma_distance = 0.0;
    bool pass = false;
};

struct CoefficientCase {
    std::string name;
    double max_rel_err = 0.0;
    bool pass = false;
};

struct VerifyReport {
    VerifyOptions options;
    std::vector<ToyAgreementCase> toy_cases;
    std::vector<CoefficientCase> coefficient_cases;
    bool pass = false;

    std::string to_json() const;
};

// >= 50 toy-model configurations (canonical plus seeded random draws) checked
// against the sampler at 3 standard errors.
std::vector<ToyAgreementCase> run_toy_agreement(const VerifyOptions& opts);

// Closed-form output coefficients against the frequency-domain linear solve,
// 20-point (nu, coupling) grid per coupling kind, 1e-10 relative.
std::vector<CoefficientCase> run_coefficient_checks();

VerifyReport run_verification(const VerifyOptions& opts);

}  // namespace qsense
