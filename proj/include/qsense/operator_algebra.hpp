#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qsense/squeeze.hpp"

namespace qsense {

enum class LabelKind { optical, mechanical, ancilla };

// Ordered, labeled operator basis. Optical labels carry squeezed-state
// statistics, ancilla labels carry plain vacuum, mechanical labels default to
// zero weight in the noise metrics.
class OperatorBasis {
public:
    OperatorBasis(std::vector<std::string> labels, std::vector<LabelKind> kinds);

    std::size_t size() const { return labels_.size(); }
    int index(std::string_view label) const;  // throws std::invalid_argument on unknown label
    const std::string& label(std::size_t i) const { return labels_[i]; }
    LabelKind kind(std::size_t i) const { return kinds_[i]; }

    // (X, Y, x0, p0)
    static std::shared_ptr<const OperatorBasis> single_mode();
    // (X, Y, x0, p0, X_in, Y_in) with a detection-port vacuum ancilla pair
    static std::shared_ptr<const OperatorBasis> single_mode_lossy();
    // (X1, Y1, X2, Y2, x0, p0)
    static std::shared_ptr<const OperatorBasis> two_mode();

private:
    std::vector<std::string> labels_;
    std::vector<LabelKind> kinds_;
};

using BasisPtr = std::shared_ptr<const OperatorBasis>;

// Real linear combination of basis operators.
struct OperatorVector {
    BasisPtr basis;
    std::vector<double> coeffs;

    explicit OperatorVector(BasisPtr b);
    static OperatorVector unit(BasisPtr b, std::string_view label);

    double coefficient(std::string_view label) const { return coeffs[basis->index(label)]; }
    double& coefficient(std::string_view label) { return coeffs[basis->index(label)]; }

    OperatorVector& operator+=(const OperatorVector& other);
    OperatorVector& operator*=(double s);
    friend OperatorVector operator+(OperatorVector a, const OperatorVector& b) { return a += b; }
    friend OperatorVector operator*(double s, OperatorVector v) { return v *= s; }
};

// Homogeneous linear Heisenberg-picture evolution over a basis. Stored as a
// square matrix M with T(e_j) = sum_i M(i,j) e_i, so operator coefficient
// vectors transform as v -> M v and composition is plain matrix product.
class AffineMap {
public:
    explicit AffineMap(BasisPtr basis);  // identity
    static AffineMap identity(BasisPtr basis) { return AffineMap(std::move(basis)); }

    double& at(int i, int j) { return m_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)]; }
    double at(int i, int j) const { return m_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)]; }

    const BasisPtr& basis() const { return basis_; }

    // this applied after other: (this*other)(A) = this(other(A))
    AffineMap operator*(const AffineMap& other) const;
    OperatorVector apply(const OperatorVector& v) const;
    // Heisenberg image of a basis operator under this map.
    OperatorVector transformed(std::string_view label) const;

private:
    BasisPtr basis_;
    std::size_t n_;
    std::vector<double> m_;
};

// Symmetrized second moments <AB>_sym = <{A,B}>/2 over a basis; diagonal
// entries are <A^2>. Mechanical entries default to zero (the noise metrics
// only count light-quadrature fluctuations) but stay settable.
class CorrelatorMatrix {
public:
    explicit CorrelatorMatrix(BasisPtr basis);

    double at(int i, int j) const { return m_[static_cast<std::size_t>(i) * n_ + static_cast<std::size_t>(j)]; }
    void set(std::string_view a, std::string_view b, double sym_moment);
    double get(std::string_view a, std::string_view b) const;

    const BasisPtr& basis() const { return basis_; }
    std::size_t size() const { return n_; }

    // sum_ij v_i v_j <e_i e_j>_sym
    double quadratic_form(const OperatorVector& v) const;

    // X/Y block from single-mode squeezed moments; ancilla labels (if present)
    // get vacuum variance 1/2 and no cross moments.
    static CorrelatorMatrix single_mode(BasisPtr basis, const SqueezeParams& sq);
    static CorrelatorMatrix two_mode(BasisPtr basis, const SqueezeParams& sq);

private:
    BasisPtr basis_;
    std::size_t n_;
    std::vector<double> m_;
};

// ---------------------------------------------------------------------------
// Kick-drift-kick toy models
// ---------------------------------------------------------------------------

// Single-mode model: interaction strength zeta, free-evolution factor beta,
// homodyne quadrature angle theta (theta = 0 reads the phase quadrature) and
// detection-port loss angle eta (eta^2 ~ loss fraction, eta in [0, pi/2]).
struct ToySingleParams {
    double zeta = 1.0;
    double beta = 1.0;
    double theta = 0.0;
    double eta = 0.0;

    void validate() const;
};

struct ToyTwoParams {
    double zeta1 = 1.0;
    double zeta2 = 1.0;
    double beta = 1.0;
    double theta = 0.0;

    void validate() const;
};

// |cos(theta)| below this is treated as a degenerate (amplitude-quadrature)
// readout and rejected instead of returning a diverging noise.
inline constexpr double degenerate_quadrature_tol = 1e-9;

// Composite kick-drift-kick map; transformed("Y") gives
// Y - 2 zeta x0 - zeta beta p0 + zeta^2 beta X, etc.
AffineMap evolve_single(const ToySingleParams& p);
AffineMap evolve_two(const ToyTwoParams& p);

// X_theta = cos(theta) Y' + sin(theta) X'
OperatorVector measured_quadrature_single(const ToySingleParams& p);
// cos(theta)(Y1'-Y2') + sin(theta)(X1'-X2')
OperatorVector measured_quadrature_two(const ToyTwoParams& p);

// X_theta normalized so the x0 coefficient is exactly 1.
OperatorVector position_estimator_single(const ToySingleParams& p);
OperatorVector position_estimator_two(const ToyTwoParams& p);

// x_E - (x0 + beta p0/2): the fluctuation whose variance is N^2.
OperatorVector noise_residual_single(const ToySingleParams& p);
// Lossy readout keeps the lossless signal normalization -2 zeta cos(theta);
// attenuation enters as cos(eta) on the signal and sin(eta) on the ancilla,
// so the eta = pi/2 limit is the finite ancilla-only variance.
OperatorVector noise_residual_single_lossy(const ToySingleParams& p);
OperatorVector noise_residual_two(const ToyTwoParams& p);

double noise_metric_single(const ToySingleParams& p, const SqueezeParams& sq);
double noise_metric_single_lossy(const ToySingleParams& p, const SqueezeParams& sq);
double noise_metric_two(const ToyTwoParams& p, const SqueezeParams& sq);

// ---------------------------------------------------------------------------
// Physical-parameter helpers
// ---------------------------------------------------------------------------

// zeta = alpha * g / kappa (displacement amplitude alpha, single-photon
// coupling g in Hz, cavity linewidth kappa in Hz).
double zeta_from_physical(double alpha, double g, double kappa);

struct LinearizationCheck {
    double photons = 0.0;         // n = alpha^2
    double vacuum_photons = 0.0;  // sinh^2 r
    double ratio = 0.0;           // n / n_vac (NaN when both vanish)
    bool pass = false;
    bool degenerate = false;      // n = n_vac = 0: passes by convention
};

// Linearized interaction is trusted when the drive photons dominate the
// squeezed-vacuum photons by `margin`.
LinearizationCheck linearization_check(double alpha, const SqueezeParams& sq, double margin = 100.0);

// beta = hbar t / (m lambda^2) with lambda^2 = hbar^2 / (2 m k_B T); the mass
// cancels, leaving 2 k_B T t / hbar.
double beta_from_physical(double t_seconds, double mass_kg, double temperature_K);

}  // namespace qsense
