#pragma once

// Quantization conditions for the three kinds of bound state and recovery of
// the matching coefficients.

#include "asw/model.hpp"

#include <array>
#include <complex>

namespace asw {

/// Zero-energy condition f(v0): 2qd cos qb + (1 - q^2 d^2) sin qb
/// + (1 + q^2 d^2) cos qb tanh qb, q = sqrt(v0). Evaluated at geom.v0() > 0.
double f_zero_energy(const PotentialGeometry& geom);

/// Barrier-top condition g(v0): sqrt2 cos sb [qb + qb cos 2qd + 2 sin 2qd]
/// - sin sb [1 - 3 cos 2qd + 2qb sin 2qd], s = q sqrt2. Evaluated at geom.v0() > 0.
double g_barrier_top(const PotentialGeometry& geom);

/// Sum of absolute values of the terms of f and g; the natural size against
/// which a residual is judged.
double f_zero_energy_scale(const PotentialGeometry& geom);
double g_barrier_top_scale(const PotentialGeometry& geom);

/// Matching determinant in the basis sin(kx)/k | sin(px)/p, cos px |
/// sinh(rx)/r, cosh rx, which is an entire real function of E with simple
/// zeros exactly at the eigenvalues, seams included. Defined for E >= -v0.
/// On 0 < E < v0 it equals the generic condition divided by 2 k^2 r p / cosh rb;
/// at the seams it equals cosh(qb) f(v0) / q and g(v0) / (2s).
double characteristic_regularized(double energy, const PotentialGeometry& geom);

/// characteristic_regularized times a positive, E-dependent damping
/// 1 / [(1 + |E| + v0)^{3/2} cosh^2(kappa d) cosh(r b)]. Same zero set and signs.
double characteristic_scaled(double energy, const PotentialGeometry& geom);

/// Generic-state characteristic function used for bracketing. Equal to
/// characteristic_scaled; seams E = 0, E = v0 and E <= -v0 are rejected.
double char_generic(double energy, const PotentialGeometry& geom);

/// The generic condition exactly as written for 0 < E < v0 (the form with
/// tanh rb). Throws outside the open mid band.
double char_printed(double energy, const PotentialGeometry& geom);

/// 4x4 boundary-matching system. Columns are (B, C, D, A') with A' = -A,
/// rows are value and slope at x = -b followed by value and slope at x = b.
/// The generic matrix uses the real continuation of the basis on E < 0 and
/// E > v0 (see CoefficientSet).
struct MatchMatrix {
    std::array<std::array<double, 4>, 4> m{};

    double determinant() const;
    double frobenius_norm() const;
    std::array<double, 4> apply(const CoefficientSet& c) const;
};

/// For ZeroEnergy the energy argument is ignored (E = 0); for BarrierTop E = v0.
MatchMatrix match_matrix(StateKind kind, double energy, const PotentialGeometry& geom);
double det_match(StateKind kind, double energy, const PotentialGeometry& geom);

/// Generic determinant with complex k = sqrt(E), r = sqrt(v0 - E). Real on
/// 0 < E < v0; det_match equals -det on E < 0 and -i det on E > v0.
std::complex<double> det_match_complex(double energy, const PotentialGeometry& geom);

struct CoefficientSolution {
    CoefficientSet coefficients;
    double residual = 0.0;  // ||M v|| / (||M|| ||v||), v = (B, C, D, -A)
};

/// Null vector of the matching system with A pinned to 1, by solving three
/// of the four equations (the choice leaving the smallest fourth-equation
/// residual). Throws DiagnosticError when no consistent null vector exists.
CoefficientSolution coefficients_for(StateKind kind, double energy, const PotentialGeometry& geom);

/// Closed-form coefficients (A = 1) used as a cross-check. Generic states
/// are supported on 0 < E < v0 with sin kd != 0 only.
CoefficientSet printed_coefficients(StateKind kind, double energy, const PotentialGeometry& geom);

/// Un-normalised eigenfunction from matched coefficients.
PiecewiseWavefunction build_wavefunction(StateKind kind, double energy, const CoefficientSet& c,
                                         const PotentialGeometry& geom);

}  // namespace asw
