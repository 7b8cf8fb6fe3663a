#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qsense/oracle.hpp"
#include "qsense/verify.hpp"

using namespace qsense;

TEST_CASE("rng streams are deterministic") {
    Xoshiro256ss a(42), b(42), c(43);
    bool all_equal = true;
    bool any_diff = false;
    for (int i = 0; i < 100; ++i) {
        const auto va = a.next();
        all_equal = all_equal && va == b.next();
        any_diff = any_diff || va != c.next();
    }
    CHECK(all_equal);
    CHECK(any_diff);
}

TEST_CASE("normal generator has standard moments") {
    Xoshiro256ss rng(7);
    const int n = 200000;
    double sum = 0.0, sum_sq = 0.0;
    for (int i = 0; i < n; ++i) {
        const double z = rng.standard_normal();
        sum += z;
        sum_sq += z * z;
    }
    CHECK(std::abs(sum / n) < 0.01);
    CHECK(sum_sq / n == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("oracle estimates are bit-deterministic") {
    const ToySingleParams p{1.0, 1.0, 0.0, 0.0};
    const SqueezeParams sq{2.0, M_PI / 4};
    const OracleConfig cfg{42, 100000};
    const OracleEstimate a = estimate_noise(p, sq, cfg);
    const OracleEstimate b = estimate_noise(p, sq, cfg);
    CHECK(a == b);
    const OracleEstimate c = estimate_noise(p, sq, {43, 100000});
    CHECK(a.mean != c.mean);
    CHECK(a.stderr_of_mean > 0.0);
    CHECK(a.samples == 100000);
}

TEST_CASE("oracle config validation") {
    CHECK_THROWS_AS(OracleConfig({1, 100}).validate(), std::invalid_argument);
    CHECK_NOTHROW(OracleConfig({1, 10000}).validate());
}

TEST_CASE("canonical noise values pass the 3-sigma test") {
    const OracleConfig cfg{20260812, 1000000};

    const OracleEstimate vac = estimate_noise(ToySingleParams{1.0, 1.0, 0.0, 0.0}, {0.0, 0.0}, cfg);
    CHECK(std::abs(vac.mean - 0.25) <= 3.0 * vac.stderr_of_mean);

    const OracleEstimate sq =
        estimate_noise(ToySingleParams{1.0, 1.0, 0.0, 0.0}, {2.0, M_PI / 4}, cfg);
    CHECK(std::abs(sq.mean - 0.004578909722183545) <= 3.0 * sq.stderr_of_mean);

    const double z = 1.0 / std::sqrt(2.0);
    const OracleEstimate two = estimate_noise(ToyTwoParams{z, z, 1.0, 0.0}, {0.0, 0.0}, cfg);
    CHECK(std::abs(two.mean - 0.25) <= 3.0 * two.stderr_of_mean);

    const OracleEstimate lossy = estimate_noise_lossy(
        ToySingleParams{1.0, 1.0, 0.0, std::sqrt(0.1)}, {2.0, M_PI / 4}, cfg);
    CHECK(std::abs(lossy.mean - 0.01622492910463822) <= 3.0 * lossy.stderr_of_mean);
}

TEST_CASE("stderr scales as the inverse square root of the sample count") {
    const ToySingleParams p{1.0, 1.0, 0.0, 0.0};
    const SqueezeParams sq{1.0, 0.5};
    const OracleEstimate small = estimate_noise(p, sq, {5, 20000});
    const OracleEstimate big = estimate_noise(p, sq, {5, 200000});
    const double ratio = small.stderr_of_mean / big.stderr_of_mean;
    CHECK(ratio == doctest::Approx(std::sqrt(10.0)).epsilon(0.2));
}

TEST_CASE("non-PSD moment matrix raises a structural error") {
    const auto basis = OperatorBasis::single_mode();
    CorrelatorMatrix bad = CorrelatorMatrix::single_mode(basis, {0.0, 0.0});
    bad.set("X", "Y", 10.0);  // det << 0
    OperatorVector v(basis);
    v.coefficient("X") = 1.0;
    v.coefficient("Y") = 1.0;
    CHECK_THROWS_AS(estimate_quadratic_form(v, bad, {1, 10000}), std::domain_error);
}

TEST_CASE("linear solver reproduces the closed-form coefficients") {
    const CavityParams p{1e-6, 100.0, 1e6, 1e-4, 0.0};
    for (double nu : {1e3, 1e5, 1e6, 1e7}) {
        const double g = 1e21;
        const OutputCoefficients closed = output_quadratures_position(p, g, nu);
        const OutputCoefficients solved = solve_output_coefficients(p, Coupling::position(g), nu);
        CHECK(std::abs(closed.xout_xin - solved.xout_xin) <= 1e-10 * std::abs(closed.xout_xin));
        CHECK(std::abs(closed.yout_xin - solved.yout_xin) <= 1e-10 * std::abs(closed.yout_xin));
        CHECK(std::abs(closed.yout_yin - solved.yout_yin) <= 1e-10 * std::abs(closed.yout_yin));
        CHECK(std::abs(closed.yout_fin - solved.yout_fin) <= 1e-10 * std::abs(closed.yout_fin));

        const double gp = momentum_coupling_from_position(g, p);
        const OutputCoefficients mc = output_quadratures_momentum(p, gp, nu);
        const OutputCoefficients ms = solve_output_coefficients(p, Coupling::momentum(gp), nu);
        CHECK(std::abs(mc.yout_xin - ms.yout_xin) <= 1e-10 * std::abs(mc.yout_xin));
        CHECK(std::abs(mc.yout_fin - ms.yout_fin) <= 1e-10 * std::abs(mc.yout_fin));
    }

    // zero coupling: the solver returns the pure phase rotation
    const OutputCoefficients rot = solve_output_coefficients(p, Coupling::position(0.0), 2e5);
    CHECK(std::abs(rot.yout_fin) == 0.0);
    CHECK(std::abs(std::abs(rot.xout_xin) - 1.0) < 1e-12);
}

TEST_CASE("momentum backaction coefficient scales as omega_m^2") {
    CavityParams p{1e-6, 1.0, 1e6, 1e-10, 0.0};
    const double gp = 1e15;
    const double nu = 1e5;
    double prev_mag = 0.0;
    for (int k = 0; k < 3; ++k) {
        p.omega_m = 1.0 * std::pow(10.0, k);  // 1, 10, 100 (all ~1e-6 kappa or less)
        const OutputCoefficients c = solve_output_coefficients(p, Coupling::momentum(gp), nu);
        const double mag = std::abs(c.yout_xin);
        if (k > 0) CHECK(mag / prev_mag == doctest::Approx(100.0).epsilon(1e-4));
        prev_mag = mag;
    }
}

TEST_CASE("verification suite passes and the fault injection trips it") {
    VerifyOptions opts;
    opts.seed = 20260812;
    opts.samples = 20000;  // smoke scale; the acceptance suite runs 1e6
    const std::vector<ToyAgreementCase> cases = run_toy_agreement(opts);
    CHECK(cases.size() >= 50);
    for (const auto& c : cases) {
        CAPTURE(c.name);
        CHECK(c.pass);
    }

    VerifyOptions flipped = opts;
    flipped.flip_cross_sign = true;
    const std::vector<ToyAgreementCase> broken = run_toy_agreement(flipped);
    bool any_failed = false;
    for (const auto& c : broken) any_failed = any_failed || !c.pass;
    CHECK(any_failed);

    for (const auto& c : run_coefficient_checks()) {
        CAPTURE(c.name);
        CHECK(c.pass);
        CHECK(c.max_rel_err <= 1e-10);
    }

    const VerifyReport report = run_verification(opts);
    CHECK(report.pass);
    const std::string json = report.to_json();
    CHECK(json.find("\"pass\": true") != std::string::npos);
    CHECK(json.find(oracle_rng_id) != std::string::npos);
}
