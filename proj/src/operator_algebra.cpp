#include "qsense/operator_algebra.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qsense/constants.hpp"

namespace qsense {

OperatorBasis::OperatorBasis(std::vector<std::string> labels, std::vector<LabelKind> kinds)
    : labels_(std::move(labels)), kinds_(std::move(kinds)) {
    if (labels_.size() != kinds_.size())
        throw std::invalid_argument("OperatorBasis: label/kind size mismatch");
    for (std::size_t i = 0; i < labels_.size(); ++i)
        for (std::size_t j = i + 1; j < labels_.size(); ++j)
            if (labels_[i] == labels_[j])
                throw std::invalid_argument("OperatorBasis: duplicate label " + labels_[i]);
}

int OperatorBasis::index(std::string_view label) const {
    for (std::size_t i = 0; i < labels_.size(); ++i)
        if (labels_[i] == label) return static_cast<int>(i);
    throw std::invalid_argument("OperatorBasis: unknown label " + std::string(label));
}

std::shared_ptr<const OperatorBasis> OperatorBasis::single_mode() {
    static const auto basis = std::make_shared<const OperatorBasis>(
        std::vector<std::string>{"X", "Y", "x0", "p0"},
        std::vector<LabelKind>{LabelKind::optical, LabelKind::optical, LabelKind::mechanical,
                               LabelKind::mechanical});
    return basis;
}

std::shared_ptr<const OperatorBasis> OperatorBasis::single_mode_lossy() {
    static const auto basis = std::make_shared<const OperatorBasis>(
        std::vector<std::string>{"X", "Y", "x0", "p0", "X_in", "Y_in"},
        std::vector<LabelKind>{LabelKind::optical, LabelKind::optical, LabelKind::mechanical,
                               LabelKind::mechanical, LabelKind::ancilla, LabelKind::ancilla});
    return basis;
}

std::shared_ptr<const OperatorBasis> OperatorBasis::two_mode() {
    static const auto basis = std::make_shared<const OperatorBasis>(
        std::vector<std::string>{"X1", "Y1", "X2", "Y2", "x0", "p0"},
        std::vector<LabelKind>{LabelKind::optical, LabelKind::optical, LabelKind::optical,
                               LabelKind::optical, LabelKind::mechanical, LabelKind::mechanical});
    return basis;
}

static void check_same_basis(const BasisPtr& a, const BasisPtr& b, const char* what) {
    if (a.get() != b.get()) throw std::invalid_argument(std::string(what) + ": basis mismatch");
}

OperatorVector::OperatorVector(BasisPtr b) : basis(std::move(b)), coeffs(basis->size(), 0.0) {}

OperatorVector OperatorVector::unit(BasisPtr b, std::string_view label) {
    OperatorVector v(std::move(b));
    v.coeffs[v.basis->index(label)] = 1.0;
    return v;
}

OperatorVector& OperatorVector::operator+=(const OperatorVector& other) {
    check_same_basis(basis, other.basis, "OperatorVector::operator+=");
    for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += other.coeffs[i];
    return *this;
}

OperatorVector& OperatorVector::operator*=(double s) {
    for (double& c : coeffs) c *= s;
    return *this;
}

AffineMap::AffineMap(BasisPtr basis) : basis_(std::move(basis)), n_(basis_->size()), m_(n_ * n_, 0.0) {
    for (std::size_t i = 0; i < n_; ++i) m_[i * n_ + i] = 1.0;
}

AffineMap AffineMap::operator*(const AffineMap& other) const {
    check_same_basis(basis_, other.basis_, "AffineMap::operator*");
    AffineMap out(basis_);
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            double acc = 0.0;
            for (std::size_t k = 0; k < n_; ++k) acc += m_[i * n_ + k] * other.m_[k * n_ + j];
            out.m_[i * n_ + j] = acc;
        }
    return out;
}

OperatorVector AffineMap::apply(const OperatorVector& v) const {
    check_same_basis(basis_, v.basis, "AffineMap::apply");
    OperatorVector out(basis_);
    for (std::size_t i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < n_; ++j) acc += m_[i * n_ + j] * v.coeffs[j];
        out.coeffs[i] = acc;
    }
    return out;
}

OperatorVector AffineMap::transformed(std::string_view label) const {
    const int j = basis_->index(label);
    OperatorVector out(basis_);
    for (std::size_t i = 0; i < n_; ++i) out.coeffs[i] = m_[i * n_ + static_cast<std::size_t>(j)];
    return out;
}

CorrelatorMatrix::CorrelatorMatrix(BasisPtr basis)
    : basis_(std::move(basis)), n_(basis_->size()), m_(n_ * n_, 0.0) {}

void CorrelatorMatrix::set(std::string_view a, std::string_view b, double sym_moment) {
    const auto i = static_cast<std::size_t>(basis_->index(a));
    const auto j = static_cast<std::size_t>(basis_->index(b));
    m_[i * n_ + j] = sym_moment;
    m_[j * n_ + i] = sym_moment;
}

double CorrelatorMatrix::get(std::string_view a, std::string_view b) const {
    return at(basis_->index(a), basis_->index(b));
}

double CorrelatorMatrix::quadratic_form(const OperatorVector& v) const {
    check_same_basis(basis_, v.basis, "CorrelatorMatrix::quadratic_form");
    double acc = 0.0;
    for (std::size_t i = 0; i < n_; ++i) {
        if (v.coeffs[i] == 0.0) continue;
        double row = 0.0;
        for (std::size_t j = 0; j < n_; ++j) row += m_[i * n_ + j] * v.coeffs[j];
        acc += v.coeffs[i] * row;
    }
    return acc;
}

CorrelatorMatrix CorrelatorMatrix::single_mode(BasisPtr basis, const SqueezeParams& sq) {
    const SingleModeMoments mom = single_mode_moments(sq);
    CorrelatorMatrix c(std::move(basis));
    c.set("X", "X", mom.xx);
    c.set("Y", "Y", mom.yy);
    c.set("X", "Y", 0.5 * mom.xy_anti);
    for (std::size_t i = 0; i < c.n_; ++i)
        if (c.basis_->kind(i) == LabelKind::ancilla) c.m_[i * c.n_ + i] = 0.5;
    return c;
}

CorrelatorMatrix CorrelatorMatrix::two_mode(BasisPtr basis, const SqueezeParams& sq) {
    const TwoModeMoments mom = two_mode_moments(sq);
    CorrelatorMatrix c(std::move(basis));
    static const char* labels[4] = {"X1", "Y1", "X2", "Y2"};
    for (int i = 0; i < 4; ++i)
        for (int j = i; j < 4; ++j) c.set(labels[i], labels[j], mom.at(i, j));
    return c;
}

// ---------------------------------------------------------------------------

void ToySingleParams::validate() const {
    // zeta = 0 keeps the evolution map well defined (identity kick); the
    // estimator paths reject it separately as a zero-signal readout.
    if (!std::isfinite(zeta) || zeta < 0.0)
        throw std::invalid_argument("ToySingleParams: zeta must be finite and >= 0");
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::invalid_argument("ToySingleParams: beta must be finite and > 0");
    if (!std::isfinite(theta)) throw std::invalid_argument("ToySingleParams: theta must be finite");
    if (!std::isfinite(eta) || eta < 0.0 || eta > M_PI_2)
        throw std::invalid_argument("ToySingleParams: eta must lie in [0, pi/2]");
}

void ToyTwoParams::validate() const {
    if (!std::isfinite(zeta1) || zeta1 < 0.0)
        throw std::invalid_argument("ToyTwoParams: zeta1 must be finite and >= 0");
    if (!std::isfinite(zeta2) || zeta2 < 0.0)
        throw std::invalid_argument("ToyTwoParams: zeta2 must be finite and >= 0");
    if (!std::isfinite(beta) || beta <= 0.0)
        throw std::invalid_argument("ToyTwoParams: beta must be finite and > 0");
    if (!std::isfinite(theta)) throw std::invalid_argument("ToyTwoParams: theta must be finite");
}

static void require_nondegenerate(double theta) {
    if (std::abs(std::cos(theta)) < degenerate_quadrature_tol)
        throw std::domain_error("quadrature angle too close to the amplitude quadrature; "
                                "position estimator undefined");
}

static AffineMap single_kick(const BasisPtr& basis, double zeta) {
    AffineMap m(basis);
    // Y -> Y - zeta x0 ; p0 -> p0 - zeta X
    m.at(basis->index("x0"), basis->index("Y")) = -zeta;
    m.at(basis->index("X"), basis->index("p0")) = -zeta;
    return m;
}

static AffineMap free_drift(const BasisPtr& basis, double beta) {
    AffineMap m(basis);
    // x0 -> x0 + beta p0
    m.at(basis->index("p0"), basis->index("x0")) = beta;
    return m;
}

static AffineMap evolve_single_on(const BasisPtr& basis, const ToySingleParams& p) {
    const AffineMap kick = single_kick(basis, p.zeta);
    const AffineMap drift = free_drift(basis, p.beta);
    return kick * drift * kick;
}

AffineMap evolve_single(const ToySingleParams& p) {
    p.validate();
    return evolve_single_on(OperatorBasis::single_mode(), p);
}

static AffineMap two_kick(const BasisPtr& basis, double zeta1, double zeta2) {
    AffineMap m(basis);
    // Y1 -> Y1 - zeta1 x0 ; Y2 -> Y2 + zeta2 x0 ; p0 -> p0 - (zeta1 X1 - zeta2 X2)
    m.at(basis->index("x0"), basis->index("Y1")) = -zeta1;
    m.at(basis->index("x0"), basis->index("Y2")) = +zeta2;
    m.at(basis->index("X1"), basis->index("p0")) = -zeta1;
    m.at(basis->index("X2"), basis->index("p0")) = +zeta2;
    return m;
}

AffineMap evolve_two(const ToyTwoParams& p) {
    p.validate();
    const auto basis = OperatorBasis::two_mode();
    const AffineMap kick = two_kick(basis, p.zeta1, p.zeta2);
    const AffineMap drift = free_drift(basis, p.beta);
    return kick * drift * kick;
}

static OperatorVector measured_quadrature_single_on(const BasisPtr& basis, const ToySingleParams& p) {
    const AffineMap map = evolve_single_on(basis, p);
    OperatorVector v = std::cos(p.theta) * map.transformed("Y");
    v += std::sin(p.theta) * map.transformed("X");
    return v;
}

OperatorVector measured_quadrature_single(const ToySingleParams& p) {
    p.validate();
    return measured_quadrature_single_on(OperatorBasis::single_mode(), p);
}

OperatorVector measured_quadrature_two(const ToyTwoParams& p) {
    p.validate();
    const AffineMap map = evolve_two(p);
    OperatorVector diff_y = map.transformed("Y1");
    diff_y += -1.0 * map.transformed("Y2");
    OperatorVector diff_x = map.transformed("X1");
    diff_x += -1.0 * map.transformed("X2");
    OperatorVector v = std::cos(p.theta) * diff_y;
    v += std::sin(p.theta) * diff_x;
    return v;
}

static OperatorVector normalize_by_signal(OperatorVector v) {
    const double x0c = v.coefficient("x0");
    if (std::abs(x0c) < 1e-12)
        throw std::domain_error("measured quadrature carries no position signal");
    for (double& c : v.coeffs) c /= x0c;  // x0 coefficient becomes exactly 1
    return v;
}

OperatorVector position_estimator_single(const ToySingleParams& p) {
    p.validate();
    require_nondegenerate(p.theta);
    return normalize_by_signal(measured_quadrature_single(p));
}

OperatorVector position_estimator_two(const ToyTwoParams& p) {
    p.validate();
    require_nondegenerate(p.theta);
    return normalize_by_signal(measured_quadrature_two(p));
}

static OperatorVector subtract_signal(OperatorVector est, double beta) {
    est.coefficient("x0") -= 1.0;
    est.coefficient("p0") -= 0.5 * beta;
    return est;
}

OperatorVector noise_residual_single(const ToySingleParams& p) {
    return subtract_signal(position_estimator_single(p), p.beta);
}

OperatorVector noise_residual_single_lossy(const ToySingleParams& p) {
    p.validate();
    require_nondegenerate(p.theta);
    const auto basis = OperatorBasis::single_mode_lossy();
    const OperatorVector lossless = measured_quadrature_single_on(basis, p);
    const double x0c = lossless.coefficient("x0");  // -2 zeta cos(theta)

    OperatorVector v = std::cos(p.eta) * lossless;
    OperatorVector anc = std::cos(p.theta) * OperatorVector::unit(basis, "Y_in");
    anc += std::sin(p.theta) * OperatorVector::unit(basis, "X_in");
    v += std::sin(p.eta) * anc;

    for (double& c : v.coeffs) c /= x0c;
    return subtract_signal(std::move(v), p.beta);
}

OperatorVector noise_residual_two(const ToyTwoParams& p) {
    return subtract_signal(position_estimator_two(p), p.beta);
}

double noise_metric_single(const ToySingleParams& p, const SqueezeParams& sq) {
    const OperatorVector res = noise_residual_single(p);
    return CorrelatorMatrix::single_mode(res.basis, sq).quadratic_form(res);
}

double noise_metric_single_lossy(const ToySingleParams& p, const SqueezeParams& sq) {
    const OperatorVector res = noise_residual_single_lossy(p);
    return CorrelatorMatrix::single_mode(res.basis, sq).quadratic_form(res);
}

double noise_metric_two(const ToyTwoParams& p, const SqueezeParams& sq) {
    const OperatorVector res = noise_residual_two(p);
    return CorrelatorMatrix::two_mode(res.basis, sq).quadratic_form(res);
}

// ---------------------------------------------------------------------------

double zeta_from_physical(double alpha, double g, double kappa) {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw std::invalid_argument("zeta_from_physical: alpha must be >= 0");
    if (!std::isfinite(g) || g <= 0.0)
        throw std::invalid_argument("zeta_from_physical: g must be > 0");
    if (!std::isfinite(kappa) || kappa <= 0.0)
        throw std::invalid_argument("zeta_from_physical: kappa must be > 0");
    return alpha * g / kappa;
}

LinearizationCheck linearization_check(double alpha, const SqueezeParams& sq, double margin) {
    if (!std::isfinite(alpha) || alpha < 0.0)
        throw std::invalid_argument("linearization_check: alpha must be >= 0");
    sq.validate();
    LinearizationCheck out;
    out.photons = alpha * alpha;
    const double sh = std::sinh(sq.r);
    out.vacuum_photons = sh * sh;
    if (out.vacuum_photons == 0.0) {
        out.ratio = out.photons > 0.0 ? std::numeric_limits<double>::infinity()
                                      : std::numeric_limits<double>::quiet_NaN();
        out.pass = true;
        out.degenerate = out.photons == 0.0;
    } else {
        out.ratio = out.photons / out.vacuum_photons;
        out.pass = out.ratio >= margin;
    }
    return out;
}

double beta_from_physical(double t_seconds, double mass_kg, double temperature_K) {
    if (!(t_seconds > 0.0) || !(mass_kg > 0.0) || !(temperature_K > 0.0))
        throw std::invalid_argument("beta_from_physical: t, m, T must be > 0");
    const double lambda_sq = hbar * hbar / (2.0 * mass_kg * boltzmann * temperature_K);
    return hbar * t_seconds / (mass_kg * lambda_sq);
}

}  // namespace qsense
