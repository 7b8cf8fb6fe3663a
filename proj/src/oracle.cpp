#include "qsense/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "qsense/constants.hpp"

namespace qsense {

void OracleConfig::validate() const {
    if (samples < 10'000) throw std::invalid_argument("OracleConfig: samples must be >= 1e4");
}

std::uint64_t SplitMix64::next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

static inline std::uint64_t rotl64(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

Xoshiro256ss::Xoshiro256ss(std::uint64_t seed) {
    SplitMix64 sm{seed};
    for (auto& s : s_) s = sm.next();
}

std::uint64_t Xoshiro256ss::next() {
    const std::uint64_t result = rotl64(s_[1] * 5, 7) * 9;
    const std::uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl64(s_[3], 45);
    return result;
}

double Xoshiro256ss::uniform01() {
    // (0, 1]: keeps log() finite in Box-Muller
    return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
}

double Xoshiro256ss::standard_normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * M_PI * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
}

// ---------------------------------------------------------------------------
// Symmetric eigendecomposition (cyclic Jacobi) for the PSD factor
// ---------------------------------------------------------------------------

namespace {

struct EigenSym {
    std::vector<double> values;
    std::vector<double> vectors;  // column k = eigenvector k, row-major n x n
};

EigenSym jacobi_eigen(std::vector<double> a, std::size_t n) {
    std::vector<double> v(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;

    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
        if (off < 1e-30) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a[p * n + q];
                if (apq == 0.0) continue;
                const double app = a[p * n + p];
                const double aqq = a[q * n + q];
                const double tau = (aqq - app) / (2.0 * apq);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k * n + p];
                    const double akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p * n + k];
                    const double aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k * n + p];
                    const double vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - s * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
    EigenSym out;
    out.values.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.values[i] = a[i * n + i];
    out.vectors = std::move(v);
    return out;
}

// Factor A with A A^T = moments; eigenvalues below the cleanup threshold are
// zeroed, genuinely negative ones are a structural correlator bug.
std::vector<double> psd_factor(const CorrelatorMatrix& moments) {
    const std::size_t n = moments.size();
    std::vector<double> a(n * n);
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            a[i * n + j] = moments.at(static_cast<int>(i), static_cast<int>(j));
            scale = std::max(scale, std::abs(a[i * n + j]));
        }
    EigenSym eig = jacobi_eigen(std::move(a), n);
    const double cleanup = 1e-14 * std::max(scale, 1.0);
    std::vector<double> factor(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double lam = eig.values[k];
        if (lam < -1e-9 * std::max(scale, 1.0))
            throw std::domain_error("oracle: moment matrix is not positive semidefinite");
        if (lam < cleanup) lam = 0.0;
        const double root = std::sqrt(lam);
        for (std::size_t i = 0; i < n; ++i) factor[i * n + k] = eig.vectors[i * n + k] * root;
    }
    return factor;
}

}  // namespace

OracleEstimate estimate_quadratic_form(const OperatorVector& residual,
                                       const CorrelatorMatrix& moments,
                                       const OracleConfig& cfg) {
    cfg.validate();
    if (residual.basis.get() != moments.basis().get())
        throw std::invalid_argument("oracle: residual/moments basis mismatch");
    const std::size_t n = moments.size();
    const std::vector<double> factor = psd_factor(moments);

    // w = A^T v, so the sampled residual v . (A z) is w . z with z iid normal.
    std::vector<double> w(n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i) w[k] += factor[i * n + k] * residual.coeffs[i];

    constexpr std::size_t stream_block = 1u << 16;
    long double sum = 0.0L;
    long double sum_sq = 0.0L;
    std::size_t remaining = cfg.samples;
    std::uint64_t stream = 0;
    std::vector<double> z(n);
    while (remaining > 0) {
        const std::size_t count = std::min(remaining, stream_block);
        Xoshiro256ss rng(cfg.seed + stream * 0x9e3779b97f4a7c15ULL);
        long double part = 0.0L;
        long double part_sq = 0.0L;
        for (std::size_t i = 0; i < count; ++i) {
            for (std::size_t k = 0; k < n; ++k) z[k] = rng.standard_normal();
            double proj = 0.0;
            for (std::size_t k = 0; k < n; ++k) proj += w[k] * z[k];
            const double sample = proj * proj;
            part += sample;
            part_sq += sample * sample;
        }
        sum += part;
        sum_sq += part_sq;
        remaining -= count;
        ++stream;
    }

    const auto count = static_cast<long double>(cfg.samples);
    const long double mean = sum / count;
    const long double var = (sum_sq - count * mean * mean) / (count - 1.0L);
    OracleEstimate est;
    est.mean = static_cast<double>(mean);
    est.stderr_of_mean = static_cast<double>(std::sqrt(std::max(var, 0.0L) / count));
    est.samples = cfg.samples;
    return est;
}

OracleEstimate estimate_noise(const ToySingleParams& p, const SqueezeParams& sq,
                              const OracleConfig& cfg) {
    const OperatorVector res = noise_residual_single(p);
    return estimate_quadratic_form(res, CorrelatorMatrix::single_mode(res.basis, sq), cfg);
}

OracleEstimate estimate_noise_lossy(const ToySingleParams& p, const SqueezeParams& sq,
                                    const OracleConfig& cfg) {
    const OperatorVector res = noise_residual_single_lossy(p);
    return estimate_quadratic_form(res, CorrelatorMatrix::single_mode(res.basis, sq), cfg);
}

OracleEstimate estimate_noise(const ToyTwoParams& p, const SqueezeParams& sq,
                              const OracleConfig& cfg) {
    const OperatorVector res = noise_residual_two(p);
    return estimate_quadratic_form(res, CorrelatorMatrix::two_mode(res.basis, sq), cfg);
}

// ---------------------------------------------------------------------------
// Frequency-domain linear-system solve
// ---------------------------------------------------------------------------

namespace {

using cplx = std::complex<double>;

// In-place Gaussian elimination with partial pivoting, returns x for A x = b.
std::array<cplx, 4> solve4(std::array<std::array<cplx, 4>, 4> a, std::array<cplx, 4> b) {
    for (int col = 0; col < 4; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 4; ++r)
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        if (std::abs(a[pivot][col]) == 0.0)
            throw std::domain_error("oracle: singular frequency-domain system");
        std::swap(a[col], a[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = col + 1; r < 4; ++r) {
            const cplx f = a[r][col] / a[col][col];
            if (f == cplx(0.0)) continue;
            for (int c = col; c < 4; ++c) a[r][c] -= f * a[col][c];
            b[r] -= f * b[col];
        }
    }
    std::array<cplx, 4> x{};
    for (int r = 3; r >= 0; --r) {
        cplx acc = b[r];
        for (int c = r + 1; c < 4; ++c) acc -= a[r][c] * x[c];
        x[r] = acc / a[r][r];
    }
    return x;
}

}  // namespace

OutputCoefficients solve_output_coefficients(const CavityParams& p, const Coupling& coupling,
                                             double nu) {
    p.validate();
    coupling.validate();
    const cplx d(0.0, -nu);  // time derivative in the A(t) = int A(nu) e^{-i nu t} convention
    const double rootk = std::sqrt(p.kappa);

    // unknowns ordered (X, Y, x, p); equations rows in the same order
    std::array<std::array<cplx, 4>, 4> a{};
    // inputs (X_in, Y_in, F_in) -> rhs columns
    std::array<std::array<cplx, 4>, 3> rhs{};

    a[0] = {d + p.kappa / 2.0, 0.0, 0.0, 0.0};
    rhs[0][0] = rootk;
    if (coupling.kind == CouplingKind::position) {
        a[1] = {0.0, d + p.kappa / 2.0, coupling.value, 0.0};
        a[2] = {hbar * coupling.value, 0.0, p.mass * p.omega_m * p.omega_m, d + p.gamma};
        a[3] = {0.0, 0.0, d, cplx(-1.0 / p.mass)};
    } else {
        a[1] = {0.0, d + p.kappa / 2.0, 0.0, coupling.value};
        a[2] = {0.0, 0.0, p.mass * p.omega_m * p.omega_m, d + p.gamma};
        a[3] = {-hbar * coupling.value, 0.0, d, cplx(-1.0 / p.mass)};
    }
    rhs[1][1] = rootk;
    rhs[2][2] = 1.0;

    OutputCoefficients out;
    for (int input = 0; input < 3; ++input) {
        const std::array<cplx, 4> sol = solve4(a, rhs[input]);
        const cplx xout = (input == 0 ? 1.0 : 0.0) - rootk * sol[0];
        const cplx yout = (input == 1 ? 1.0 : 0.0) - rootk * sol[1];
        if (input == 0) {
            out.xout_xin = xout;
            out.yout_xin = yout;
        } else if (input == 1) {
            out.yout_yin = yout;
        } else {
            out.yout_fin = yout;
        }
    }
    return out;
}

}  // namespace qsense
