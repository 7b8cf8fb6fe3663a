#include "qsense/squeeze.hpp"

#include <cmath>
#include <stdexcept>

namespace qsense {

void SqueezeParams::validate() const {
    if (!std::isfinite(r) || r < 0.0)
        throw std::invalid_argument("SqueezeParams: squeezing strength r must be finite and >= 0");
    if (!std::isfinite(phi))
        throw std::invalid_argument("SqueezeParams: squeezing angle phi must be finite");
}

SqueezeParams SqueezeParams::canonical() const {
    validate();
    double p = std::remainder(phi, 2.0 * M_PI);  // (-pi, pi] up to the -pi edge
    if (p <= -M_PI) p = M_PI;
    return {r, p};
}

SingleModeMoments single_mode_moments(const SqueezeParams& sq) {
    sq.validate();
    const double ep = std::exp(2.0 * sq.r);
    const double em = std::exp(-2.0 * sq.r);
    const double c = std::cos(sq.phi);
    const double s = std::sin(sq.phi);
    SingleModeMoments m;
    m.xx = 0.5 * (ep * c * c + em * s * s);
    m.yy = 0.5 * (em * c * c + ep * s * s);
    m.xy_anti = 0.5 * (em - ep) * std::sin(2.0 * sq.phi);
    return m;
}

TwoModeMoments two_mode_moments(const SqueezeParams& sq) {
    sq.validate();
    const double diag = 0.5 * std::cosh(2.0 * sq.r);
    const double sh = 0.5 * std::sinh(2.0 * sq.r);
    const double c2 = std::cos(2.0 * sq.phi);
    const double s2 = std::sin(2.0 * sq.phi);

    TwoModeMoments m;
    for (int i = 0; i < 4; ++i) m.table[i][i] = diag;
    // basis order (X1, Y1, X2, Y2)
    m.table[0][2] = m.table[2][0] = -sh * c2;  // <X1 X2>
    m.table[1][3] = m.table[3][1] = +sh * c2;  // <Y1 Y2>
    m.table[0][3] = m.table[3][0] = sh * s2;   // <X1 Y2>
    m.table[2][1] = m.table[1][2] = sh * s2;   // <X2 Y1>
    m.table[0][1] = m.table[1][0] = 0.0;       // <X1 Y1>
    m.table[2][3] = m.table[3][2] = 0.0;       // <X2 Y2>
    return m;
}

}  // namespace qsense
