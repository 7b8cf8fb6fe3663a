#include "qsense/verify.hpp"

#include <cmath>
#include <complex>

#include <json.hpp>

#include "qsense/io.hpp"

namespace qsense {

namespace {

// D Sigma D with D = diag(+1 on X, -1 on Y): flips every X-Y cross moment
// while preserving positive semidefiniteness.
CorrelatorMatrix flip_cross(const CorrelatorMatrix& c) {
    CorrelatorMatrix out = c;
    const auto& basis = c.basis();
    for (std::size_t i = 0; i < basis->size(); ++i) {
        for (std::size_t j = i + 1; j < basis->size(); ++j) {
            if (basis->kind(i) == LabelKind::mechanical || basis->kind(j) == LabelKind::mechanical)
                continue;
            const bool xi = basis->label(i).front() == 'X';
            const bool xj = basis->label(j).front() == 'X';
            if (xi != xj)
                out.set(basis->label(i), basis->label(j), -c.at(static_cast<int>(i), static_cast<int>(j)));
        }
    }
    return out;
}

ToyAgreementCase check_case(std::string name, double analytic, const OperatorVector& residual,
                            const CorrelatorMatrix& moments, const VerifyOptions& opts,
                            std::uint64_t case_seed) {
    OracleConfig cfg{case_seed, opts.samples};
    const OracleEstimate est = opts.flip_cross_sign
                                   ? estimate_quadratic_form(residual, flip_cross(moments), cfg)
                                   : estimate_quadratic_form(residual, moments, cfg);
    ToyAgreementCase out;
    out.name = std::move(name);
    out.analytic = analytic;
    out.estimate = est;
    out.sigma_distance = std::abs(est.mean - analytic) / est.stderr_of_mean;
    out.pass = out.sigma_distance <= 3.0;
    return out;
}

ToyAgreementCase single_case(std::string name, const ToySingleParams& p, const SqueezeParams& sq,
                             const VerifyOptions& opts, std::uint64_t case_seed) {
    const OperatorVector res = p.eta > 0.0 ? noise_residual_single_lossy(p) : noise_residual_single(p);
    const CorrelatorMatrix mom = CorrelatorMatrix::single_mode(res.basis, sq);
    const double analytic = mom.quadratic_form(res);
    return check_case(std::move(name), analytic, res, mom, opts, case_seed);
}

ToyAgreementCase two_case(std::string name, const ToyTwoParams& p, const SqueezeParams& sq,
                          const VerifyOptions& opts, std::uint64_t case_seed) {
    const OperatorVector res = noise_residual_two(p);
    const CorrelatorMatrix mom = CorrelatorMatrix::two_mode(res.basis, sq);
    const double analytic = mom.quadratic_form(res);
    return check_case(std::move(name), analytic, res, mom, opts, case_seed);
}

double draw(Xoshiro256ss& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform01(); }

}  // namespace

std::vector<ToyAgreementCase> run_toy_agreement(const VerifyOptions& opts) {
    std::vector<ToyAgreementCase> cases;
    std::uint64_t k = 0;
    const auto next_seed = [&]() { return opts.seed + 0x51ed2701a9e3c0ffULL * ++k; };

    const double root_half = 1.0 / std::sqrt(2.0);
    // Canonical corners of the model space.
    cases.push_back(single_case("single-vacuum-sql", {1.0, 1.0, 0.0, 0.0}, {0.0, 0.0}, opts, next_seed()));
    cases.push_back(single_case("single-cross-correlator", {1.0, 1.0, 0.0, 0.0}, {2.0, M_PI / 4}, opts, next_seed()));
    cases.push_back(single_case("single-backaction-cancel", {1.0, 1.0, -M_PI / 4, 0.0}, {0.0, 0.0}, opts, next_seed()));
    cases.push_back(single_case("single-lossy", {1.0, 1.0, 0.0, std::sqrt(0.1)}, {2.0, M_PI / 4}, opts, next_seed()));
    cases.push_back(two_case("two-symmetric-sql", {root_half, root_half, 1.0, 0.0}, {0.0, 0.0}, opts, next_seed()));
    cases.push_back(two_case("two-asymmetric", {root_half, 0.9 * root_half, 1.0, 0.0}, {2.0, M_PI / 4}, opts, next_seed()));

    Xoshiro256ss rng(opts.seed ^ 0xd1b54a32d192ed03ULL);
    for (int i = 0; i < 16; ++i) {
        ToySingleParams p{draw(rng, 0.3, 3.0), draw(rng, 0.3, 3.0), draw(rng, -1.2, 1.2), 0.0};
        SqueezeParams sq{draw(rng, 0.0, 2.0), draw(rng, -M_PI, M_PI)};
        cases.push_back(single_case("single-rand-" + std::to_string(i), p, sq, opts, next_seed()));
    }
    for (int i = 0; i < 16; ++i) {
        ToySingleParams p{draw(rng, 0.3, 3.0), draw(rng, 0.3, 3.0), draw(rng, -1.2, 1.2),
                          draw(rng, 0.0, 1.2)};
        SqueezeParams sq{draw(rng, 0.0, 2.0), draw(rng, -M_PI, M_PI)};
        cases.push_back(single_case("lossy-rand-" + std::to_string(i), p, sq, opts, next_seed()));
    }
    for (int i = 0; i < 16; ++i) {
        const double z1 = draw(rng, 0.3, 3.0);
        ToyTwoParams p{z1, z1 * draw(rng, 0.7, 1.0), draw(rng, 0.3, 3.0), draw(rng, -1.2, 1.2)};
        SqueezeParams sq{draw(rng, 0.0, 2.0), draw(rng, -M_PI, M_PI)};
        cases.push_back(two_case("two-rand-" + std::to_string(i), p, sq, opts, next_seed()));
    }
    return cases;
}

std::vector<CoefficientCase> run_coefficient_checks() {
    const CavityParams cavity{1e-6, 100.0, 1e6, 1e-4, 0.0};
    const double nus[5] = {1e3, 1e4, 1e5, 1e6, 1e7};
    const double gs[4] = {1e19, 1e20, 1e21, 1e22};

    const auto rel_err = [](std::complex<double> a, std::complex<double> b) {
        const double scale = std::max(std::abs(a), std::abs(b));
        if (scale == 0.0) return 0.0;
        return std::abs(a - b) / scale;
    };

    std::vector<CoefficientCase> cases;
    for (int kind = 0; kind < 2; ++kind) {
        for (double nu : nus) {
            for (double g : gs) {
                const bool momentum = kind == 1;
                const Coupling coupling = momentum
                                              ? Coupling::momentum(momentum_coupling_from_position(g, cavity))
                                              : Coupling::position(g);
                const OutputCoefficients closed =
                    momentum ? output_quadratures_momentum(cavity, coupling.value, nu)
                             : output_quadratures_position(cavity, coupling.value, nu);
                const OutputCoefficients solved = solve_output_coefficients(cavity, coupling, nu);
                double err = rel_err(closed.xout_xin, solved.xout_xin);
                err = std::max(err, rel_err(closed.yout_xin, solved.yout_xin));
                err = std::max(err, rel_err(closed.yout_yin, solved.yout_yin));
                err = std::max(err, rel_err(closed.yout_fin, solved.yout_fin));
                CoefficientCase c;
                c.name = std::string(momentum ? "momentum" : "position") + " nu=" + format_double(nu) +
                         " G=" + format_double(g);
                c.max_rel_err = err;
                c.pass = err <= 1e-10;
                cases.push_back(std::move(c));
            }
        }
    }
    return cases;
}

VerifyReport run_verification(const VerifyOptions& opts) {
    VerifyReport report;
    report.options = opts;
    report.toy_cases = run_toy_agreement(opts);
    report.coefficient_cases = run_coefficient_checks();
    report.pass = true;
    for (const auto& c : report.toy_cases) report.pass = report.pass && c.pass;
    for (const auto& c : report.coefficient_cases) report.pass = report.pass && c.pass;
    return report;
}

std::string VerifyReport::to_json() const {
    nlohmann::json j;
    j["rng"] = oracle_rng_id;
    j["seed"] = options.seed;
    j["samples"] = options.samples;
    j["cross_sign_flip_injected"] = options.flip_cross_sign;
    j["toy_agreement"] = nlohmann::json::array();
    for (const auto& c : toy_cases) {
        j["toy_agreement"].push_back({{"name", c.name},
                                      {"analytic", c.analytic},
                                      {"mean", c.estimate.mean},
                                      {"stderr", c.estimate.stderr_of_mean},
                                      {"sigma", c.sigma_distance},
                                      {"pass", c.pass}});
    }
    j["output_coefficients"] = nlohmann::json::array();
    for (const auto& c : coefficient_cases) {
        j["output_coefficients"].push_back(
            {{"name", c.name}, {"max_rel_err", c.max_rel_err}, {"pass", c.pass}});
    }
    j["pass"] = pass;
    return j.dump(2) + "\n";
}

}  // namespace qsense
