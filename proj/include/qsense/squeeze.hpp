#pragma once

#include <array>

namespace qsense {

// Squeezed-vacuum input state: strength r >= 0 and angle phi (radians).
// phi is canonicalized to (-pi, pi]; all second moments are pi-periodic in
// phi, so the canonical branch is only for stable reporting.
struct SqueezeParams {
    double r = 0.0;
    double phi = 0.0;

    static SqueezeParams vacuum() { return {0.0, 0.0}; }

    // Throws std::invalid_argument on negative/non-finite r or non-finite phi.
    void validate() const;
    // Returns a copy with phi wrapped to (-pi, pi].
    SqueezeParams canonical() const;
};

// Second moments of a single squeezed mode, vacuum convention <X^2> = 1/2.
// xy_anti stores the FULL anticommutator expectation <{X,Y}>, i.e. twice the
// symmetrized moment; quadratic forms must weight it by coeff_x*coeff_y once.
struct SingleModeMoments {
    double xx = 0.5;       // <X^2>
    double yy = 0.5;       // <Y^2>
    double xy_anti = 0.0;  // <{X,Y}>

    // xx*yy - (xy_anti/2)^2; equals 1/4 for any pure squeezed state.
    double purity_determinant() const { return xx * yy - 0.25 * xy_anti * xy_anti; }
};

// Full symmetric moment table of a two-mode squeezed vacuum over the basis
// (X1, Y1, X2, Y2). Entries are symmetrized moments <AB>_sym = <{A,B}>/2;
// diagonal entries are <A^2>. The difference-quadrature accessors are derived
// from the table, never stored.
struct TwoModeMoments {
    std::array<std::array<double, 4>, 4> table{};

    double at(int i, int j) const { return table[i][j]; }

    // <(X1-X2)^2>
    double dxx() const { return table[0][0] + table[2][2] - 2.0 * table[0][2]; }
    // <(Y1-Y2)^2>
    double dyy() const { return table[1][1] + table[3][3] - 2.0 * table[1][3]; }
    // <{X1-X2, Y1-Y2}> (full anticommutator, matching SingleModeMoments::xy_anti)
    double dxy_anti() const {
        return 2.0 * (table[0][1] - table[0][3] - table[2][1] + table[2][3]);
    }
};

// <X^2> = (e^{2r} cos^2 phi + e^{-2r} sin^2 phi)/2
// <Y^2> = (e^{-2r} cos^2 phi + e^{2r} sin^2 phi)/2
// <{X,Y}> = (e^{-2r} - e^{2r}) sin(2 phi)/2
SingleModeMoments single_mode_moments(const SqueezeParams& sq);

// Diagonals cosh(2r)/2; <X1X2> = -<Y1Y2> = -sinh(2r)cos(2 phi)/2;
// <X1Y2> = <X2Y1> = sinh(2r)sin(2 phi)/2; same-mode X-Y moments vanish.
TwoModeMoments two_mode_moments(const SqueezeParams& sq);

}  // namespace qsense
