#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "qsense/constants.hpp"
#include "qsense/operator_algebra.hpp"
#include "qsense/optimal.hpp"
#include "support/oracles.hpp"

using namespace qsense;

namespace {
double urand(unsigned& state, double lo, double hi) {
    state = state * 1664525u + 1013904223u;
    return lo + (hi - lo) * (state / 4294967296.0);
}

// closed-form Heisenberg images for the single-mode kick-drift-kick
void check_single_closed_form(double zeta, double beta) {
    const AffineMap map = evolve_single({zeta, beta, 0.0, 0.0});
    const OperatorVector yp = map.transformed("Y");
    CHECK(yp.coefficient("Y") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(yp.coefficient("x0") == doctest::Approx(-2.0 * zeta).epsilon(1e-12));
    CHECK(yp.coefficient("p0") == doctest::Approx(-zeta * beta).epsilon(1e-12));
    CHECK(yp.coefficient("X") == doctest::Approx(zeta * zeta * beta).epsilon(1e-12));

    const OperatorVector xp = map.transformed("X");
    CHECK(xp.coefficient("X") == 1.0);
    CHECK(std::abs(xp.coefficient("Y")) + std::abs(xp.coefficient("x0")) +
              std::abs(xp.coefficient("p0")) ==
          0.0);

    const OperatorVector xm = map.transformed("x0");
    CHECK(xm.coefficient("x0") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(xm.coefficient("p0") == doctest::Approx(beta).epsilon(1e-12));
    CHECK(xm.coefficient("X") == doctest::Approx(-beta * zeta).epsilon(1e-12));

    const OperatorVector pm = map.transformed("p0");
    CHECK(pm.coefficient("p0") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(pm.coefficient("X") == doctest::Approx(-2.0 * zeta).epsilon(1e-12));
}
}  // namespace

TEST_CASE("zero interaction leaves only the free drift") {
    const AffineMap map = evolve_single({0.0, 1.0, 0.0, 0.0});
    // optical quadratures and momentum untouched, no coupling terms anywhere
    for (const char* label : {"X", "Y", "p0"}) {
        const OperatorVector v = map.transformed(label);
        for (std::size_t i = 0; i < v.basis->size(); ++i)
            CHECK(v.coeffs[i] == (v.basis->label(i) == label ? 1.0 : 0.0));
    }
    const OperatorVector x = map.transformed("x0");
    CHECK(x.coefficient("x0") == 1.0);
    CHECK(x.coefficient("p0") == 1.0);  // x0 + beta p0 with beta = 1
    CHECK(x.coefficient("X") == 0.0);
    CHECK(x.coefficient("Y") == 0.0);
}

TEST_CASE("single-mode transforms match the closed forms") {
    // zeta=1, beta=1: Y' = Y - 2 x0 - p0 + X, p' = p0 - 2X
    const AffineMap map = evolve_single({1.0, 1.0, 0.0, 0.0});
    const OperatorVector yp = map.transformed("Y");
    CHECK(yp.coefficient("Y") == 1.0);
    CHECK(yp.coefficient("x0") == -2.0);
    CHECK(yp.coefficient("p0") == -1.0);
    CHECK(yp.coefficient("X") == 1.0);
    const OperatorVector pp = map.transformed("p0");
    CHECK(pp.coefficient("p0") == 1.0);
    CHECK(pp.coefficient("X") == -2.0);

    // zeta=2, beta=0.5: X coefficient of Y' is zeta^2 beta = 2, p0 coefficient -zeta beta = -1
    const AffineMap map2 = evolve_single({2.0, 0.5, 0.0, 0.0});
    CHECK(map2.transformed("Y").coefficient("X") == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(map2.transformed("Y").coefficient("p0") == doctest::Approx(-1.0).epsilon(1e-14));

    unsigned state = 31;
    for (int i = 0; i < 100; ++i) check_single_closed_form(urand(state, 0.1, 5.0), urand(state, 0.1, 5.0));
}

TEST_CASE("affine map composition is associative") {
    const auto basis = OperatorBasis::single_mode();
    AffineMap a(basis), b(basis), c(basis);
    unsigned state = 5;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            a.at(i, j) += urand(state, -1.0, 1.0);
            b.at(i, j) += urand(state, -1.0, 1.0);
            c.at(i, j) += urand(state, -1.0, 1.0);
        }
    const AffineMap left = (a * b) * c;
    const AffineMap right = a * (b * c);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(left.at(i, j) == doctest::Approx(right.at(i, j)).epsilon(1e-12));
}

TEST_CASE("measured quadrature limits") {
    // theta = 0 is Y' itself
    const OperatorVector y = measured_quadrature_single({1.0, 1.0, 0.0, 0.0});
    CHECK(y.coefficient("Y") == 1.0);
    CHECK(y.coefficient("x0") == -2.0);

    // theta = pi/2 reads the amplitude quadrature: no signal terms
    const OperatorVector x = measured_quadrature_single({1.0, 1.0, M_PI_2, 0.0});
    CHECK(x.coefficient("X") == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(x.coefficient("x0")) < 1e-15);
    CHECK(std::abs(x.coefficient("p0")) < 1e-15);
    CHECK(std::abs(x.coefficient("Y")) < 1e-16);

    // theta = -pi/4 at zeta = beta = 1 cancels the backaction coefficient
    const OperatorVector bae = measured_quadrature_single({1.0, 1.0, -M_PI / 4, 0.0});
    CHECK(std::abs(bae.coefficient("X")) < 1e-15);
}

TEST_CASE("position estimator") {
    // x_E = -Y/2 + x0 + p0/2 - X/2
    const OperatorVector est = position_estimator_single({1.0, 1.0, 0.0, 0.0});
    CHECK(est.coefficient("Y") == doctest::Approx(-0.5).epsilon(1e-14));
    CHECK(est.coefficient("x0") == 1.0);
    CHECK(est.coefficient("p0") == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(est.coefficient("X") == doctest::Approx(-0.5).epsilon(1e-14));

    const OperatorVector est2 = position_estimator_single({2.0, 1.0, 0.0, 0.0});
    CHECK(est2.coefficient("Y") == doctest::Approx(-0.25).epsilon(1e-14));
    CHECK(est2.coefficient("X") == doctest::Approx(-1.0).epsilon(1e-14));

    unsigned state = 17;
    for (int i = 0; i < 50; ++i) {
        const ToySingleParams p{urand(state, 0.2, 4.0), urand(state, 0.2, 4.0),
                                urand(state, -1.2, 1.2), 0.0};
        CHECK(position_estimator_single(p).coefficient("x0") == 1.0);
    }

    CHECK_THROWS_AS(position_estimator_single({1.0, 1.0, M_PI_2, 0.0}), std::domain_error);
    CHECK_THROWS_AS(position_estimator_single({0.0, 1.0, 0.0, 0.0}), std::domain_error);
}

TEST_CASE("single-mode noise metric frozen values") {
    CHECK(noise_metric_single({1.0, 1.0, 0.0, 0.0}, {0.0, 0.0}) ==
          doctest::Approx(0.25).epsilon(1e-12).scale(0.0));
    CHECK(noise_metric_single({1.0, 1.0, 0.0, 0.0}, {2.0, M_PI / 4}) ==
          doctest::Approx(0.004578909722183545).epsilon(1e-12).scale(0.1));
    CHECK(noise_metric_single({1.0, 1.0, -M_PI / 4, 0.0}, {0.0, 0.0}) ==
          doctest::Approx(0.125).epsilon(1e-12).scale(0.0));
}

TEST_CASE("backaction cancellation at the optimal toy angle") {
    unsigned state = 23;
    for (int i = 0; i < 100; ++i) {
        const double zeta = urand(state, 0.2, 4.0);
        const double beta = urand(state, 0.2, 4.0);
        const double r = urand(state, 0.0, 2.0);
        const double theta = toy_theta_opt_single(zeta, beta);
        const double noise = noise_metric_single({zeta, beta, theta, 0.0}, {r, 0.0});
        const double yy = single_mode_moments({r, 0.0}).yy;
        CHECK(noise == doctest::Approx(yy / (4.0 * zeta * zeta)).epsilon(1e-12).scale(0.0));
    }
}

TEST_CASE("lossy noise metric") {
    const ToySingleParams base{1.0, 1.0, 0.0, 0.0};
    const SqueezeParams sq{2.0, M_PI / 4};

    // eta = 0 reduces to the lossless metric exactly
    CHECK(noise_metric_single_lossy(base, sq) == noise_metric_single(base, sq));

    // eta = pi/2: vacuum-ancilla variance of the estimator prefactors
    for (double theta : {0.0, 0.3}) {
        ToySingleParams p{1.3, 0.8, theta, M_PI_2};
        const double t = std::tan(theta);
        const double expected = (1.0 + t * t) / (8.0 * p.zeta * p.zeta);
        CHECK(noise_metric_single_lossy(p, sq) == doctest::Approx(expected).epsilon(1e-12));
    }

    // eta^2 = 0.1 sits strictly between the lossless squeezed and vacuum values
    ToySingleParams lossy = base;
    lossy.eta = std::sqrt(0.1);
    const double n = noise_metric_single_lossy(lossy, sq);
    CHECK(n == doctest::Approx(0.01622492910463822).epsilon(1e-12));
    CHECK(n > noise_metric_single(base, sq));
    CHECK(n < noise_metric_single(base, {0.0, 0.0}));
}

TEST_CASE("loss continuity and monotonicity toward the vacuum-limited value") {
    const SqueezeParams sq{1.5, M_PI / 4};
    double prev = noise_metric_single_lossy({1.0, 1.0, 0.0, 0.0}, sq);
    for (double eta = 0.05; eta <= M_PI_2 + 1e-9; eta += 0.05) {
        const double cur =
            noise_metric_single_lossy({1.0, 1.0, 0.0, std::min(eta, M_PI_2)}, sq);
        CHECK(cur >= prev - 1e-12);
        prev = cur;
    }
}

TEST_CASE("two-mode transforms") {
    // zeta1 = zeta2 = 0: no coupling terms, only the free drift on x0
    const AffineMap id = evolve_two({0.0, 0.0, 1.0, 0.0});
    for (const char* label : {"X1", "Y1", "X2", "Y2", "p0"}) {
        const OperatorVector v = id.transformed(label);
        for (std::size_t i = 0; i < v.basis->size(); ++i)
            CHECK(v.coeffs[i] == (v.basis->label(i) == label ? 1.0 : 0.0));
    }
    CHECK(id.transformed("x0").coefficient("p0") == 1.0);
    CHECK(id.transformed("x0").coefficient("X1") == 0.0);

    // symmetric case: coefficient of x0 in Y1'-Y2' is -4 zeta, of dX is 2 zeta^2 beta
    const OperatorVector v = measured_quadrature_two({1.0, 1.0, 1.0, 0.0});
    CHECK(v.coefficient("x0") == doctest::Approx(-4.0).epsilon(1e-14));
    CHECK(v.coefficient("p0") == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(v.coefficient("X1") == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(v.coefficient("X2") == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(v.coefficient("Y1") == 1.0);
    CHECK(v.coefficient("Y2") == -1.0);

    // asymmetric: p' = p0 - 2 (zeta1 X1 - zeta2 X2)
    const AffineMap asym = evolve_two({1.0, 0.9, 1.0, 0.0});
    const OperatorVector pp = asym.transformed("p0");
    CHECK(pp.coefficient("X1") == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(pp.coefficient("X2") == doctest::Approx(1.8).epsilon(1e-14));

    // full closed form of Y1' for the asymmetric generator
    const OperatorVector y1 = asym.transformed("Y1");
    CHECK(y1.coefficient("x0") == doctest::Approx(-2.0).epsilon(1e-14));
    CHECK(y1.coefficient("p0") == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(y1.coefficient("X1") == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(y1.coefficient("X2") == doctest::Approx(-0.9).epsilon(1e-14));
}

TEST_CASE("two-mode noise metric") {
    CHECK(noise_metric_two({1.0, 1.0, 1.0, 0.0}, {0.0, 0.0}) ==
          doctest::Approx(0.3125).epsilon(1e-12).scale(0.0));

    // closed form (1/16 zeta^2) <(dY + 2 zeta^2 beta dX + tan(theta) dX)^2>
    unsigned state = 91;
    for (int i = 0; i < 100; ++i) {
        const double zeta = urand(state, 0.2, 3.0);
        const double beta = urand(state, 0.2, 3.0);
        const double theta = urand(state, -1.2, 1.2);
        const SqueezeParams sq{urand(state, 0.0, 2.0), urand(state, -M_PI, M_PI)};
        const TwoModeMoments mom = two_mode_moments(sq);
        const double a = 2.0 * zeta * zeta * beta + std::tan(theta);
        const double expected =
            (mom.dyy() + a * a * mom.dxx() + a * mom.dxy_anti()) / (16.0 * zeta * zeta);
        CHECK(noise_metric_two({zeta, zeta, beta, theta}, sq) ==
              doctest::Approx(expected).epsilon(1e-12).scale(std::cosh(2.0 * sq.r)));
    }

    // minimum over zeta sits at zeta^2 = 1/(2 beta) with floor beta/4
    auto n2 = [](double zeta) { return noise_metric_two({zeta, zeta, 1.0, 0.0}, {0.0, 0.0}); };
    const auto [zmin, nmin] = testsupport::golden_min_log(n2, 0.05, 20.0);
    CHECK(zmin == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-8));
    CHECK(nmin == doctest::Approx(0.25).epsilon(1e-10));

    // power asymmetry raises the noise above the symmetric value
    const double root_half = 1.0 / std::sqrt(2.0);
    const SqueezeParams sq{2.0, M_PI / 4};
    const double sym = noise_metric_two({root_half, root_half, 1.0, 0.0}, sq);
    const double asym = noise_metric_two({root_half, 0.9 * root_half, 1.0, 0.0}, sq);
    CHECK(sym == doctest::Approx(0.004578909722183545).epsilon(1e-10));
    CHECK(asym == doctest::Approx(0.04906825719221786).epsilon(1e-10));
    CHECK(asym > sym);

    CHECK_THROWS_AS(noise_metric_two({1.0, 1.0, 1.0, M_PI_2}, sq), std::domain_error);
}

TEST_CASE("correlator matrix mechanics") {
    const auto basis = OperatorBasis::single_mode();
    CorrelatorMatrix c = CorrelatorMatrix::single_mode(basis, {0.0, 0.0});
    OperatorVector v(basis);
    v.coefficient("x0") = 7.0;
    v.coefficient("p0") = -3.0;
    CHECK(c.quadratic_form(v) == 0.0);  // mechanical weight defaults to zero
    c.set("x0", "x0", 2.0);
    CHECK(c.quadratic_form(v) == doctest::Approx(98.0));
    CHECK(c.get("x0", "x0") == 2.0);
}

TEST_CASE("zeta from physical parameters") {
    const double alpha = std::sqrt(4000.0);
    const double g = 1e3;
    const double kappa = alpha * g / 0.02;
    CHECK(zeta_from_physical(alpha, g, kappa) == doctest::Approx(0.02).epsilon(1e-12));
    CHECK(zeta_from_physical(0.0, 1e3, 1e7) == 0.0);
    CHECK(zeta_from_physical(10.0, 100.0, 1e6) == doctest::Approx(1e-3).epsilon(1e-14));
    CHECK_THROWS_AS(zeta_from_physical(1.0, 1e3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(zeta_from_physical(-1.0, 1e3, 1e6), std::invalid_argument);
}

TEST_CASE("linearization check") {
    const LinearizationCheck ok = linearization_check(std::sqrt(4000.0), {2.0, 0.0});
    CHECK(ok.photons == doctest::Approx(4000.0).epsilon(1e-12));
    CHECK(ok.vacuum_photons == doctest::Approx(13.154116418008245).epsilon(1e-12));
    CHECK(ok.ratio == doctest::Approx(304.08731935228434).epsilon(1e-12));
    CHECK(ok.pass);
    CHECK_FALSE(ok.degenerate);

    const LinearizationCheck zero = linearization_check(0.0, {0.0, 0.0});
    CHECK(zero.pass);
    CHECK(zero.degenerate);
    CHECK(std::isnan(zero.ratio));

    const LinearizationCheck bad = linearization_check(1.0, {3.0, 0.0});
    CHECK(bad.photons == 1.0);
    CHECK(bad.vacuum_photons == doctest::Approx(100.35781806122796).epsilon(1e-12));
    CHECK_FALSE(bad.pass);
}

TEST_CASE("beta from physical parameters") {
    // definitional: hbar t / (m lambda^2) with the thermal De Broglie scale
    const double t = 1e-6, m = 1e-9, temp = 300.0;
    const double lambda_sq = hbar * hbar / (2.0 * m * boltzmann * temp);
    CHECK(beta_from_physical(t, m, temp) ==
          doctest::Approx(hbar * t / (m * lambda_sq)).epsilon(1e-14));
    // the mass cancels: 2 k_B T t / hbar
    CHECK(beta_from_physical(1e-6, 1e-3, 300.0) ==
          doctest::Approx(78552203.52432385).epsilon(1e-12));
    CHECK(beta_from_physical(2e-6, 1e-6, 300.0) ==
          doctest::Approx(2.0 * beta_from_physical(1e-6, 1e-6, 300.0)).epsilon(1e-14));
    CHECK_THROWS_AS(beta_from_physical(0.0, 1.0, 1.0), std::invalid_argument);
}
