#pragma once

// Anti-symmetric square well (depth v0 on [-b,0]) and barrier (height v0 on
// [0,b]) between rigid walls at x = -a and x = +a.
//
// Units: 2m = 1 and hbar = 1, so hbar^2/2m = 1 and the free wavenumber is
// k = sqrt(E). There is no runtime unit conversion anywhere in the library.

#include <array>
#include <stdexcept>
#include <string>

namespace asw {

/// Rejected input: out-of-domain energy, position, geometry, or index.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A numerical self-check failed (missed state, spurious root, no convergence).
class DiagnosticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PotentialGeometry {
public:
    /// Throws DomainError unless 0 < b < a and v0 >= 0 (all finite).
    PotentialGeometry(double a, double b, double v0);

    double a() const noexcept { return a_; }
    double b() const noexcept { return b_; }
    double v0() const noexcept { return v0_; }
    double d() const noexcept { return d_; }

    PotentialGeometry with_v0(double v0) const { return {a_, b_, v0}; }

    /// Same walls and block width; v0 may differ.
    bool same_shape(const PotentialGeometry& other) const noexcept
    {
        return a_ == other.a_ && b_ == other.b_;
    }

    friend bool operator==(const PotentialGeometry&, const PotentialGeometry&) = default;

private:
    double a_;
    double b_;
    double v0_;
    double d_;
};

/// Geometry used throughout the reference calculations: a = 6, b = 2.
PotentialGeometry reference_geometry(double v0);

struct PotentialValue {
    bool wall = false;   // |x| >= a, infinite potential
    double value = 0.0;  // meaningful only when !wall
};

/// V(x). V(0) belongs to the well side and equals -v0.
PotentialValue potential_at(double x, const PotentialGeometry& geom);

enum class EnergyBranch { BelowZero, MidBand, AboveBarrier, SeamZero, SeamTop };

std::string to_string(EnergyBranch branch);

/// Seam snap tolerance 1e-9 * max(1, v0).
double seam_tolerance(const PotentialGeometry& geom);

/// Exact classification: seams only for E == 0 or E == v0. Throws for E <= -v0.
EnergyBranch classify_energy(double energy, const PotentialGeometry& geom);

/// Branch-resolved wave numbers. Which of the (k, kappa) and (r, rho) pairs
/// is populated depends on the branch; the other member of each pair is 0.
struct WaveParams {
    EnergyBranch branch;
    double k = 0.0;      // sqrt(E), E >= 0
    double kappa = 0.0;  // sqrt(-E), E < 0
    double p = 0.0;      // sqrt(E + v0), always real for E > -v0
    double r = 0.0;      // sqrt(v0 - E), E <= v0
    double rho = 0.0;    // sqrt(E - v0), E > v0
    double q = 0.0;      // sqrt(v0)
    double s = 0.0;      // sqrt(2 v0) = q sqrt(2)
};

/// Throws DomainError for E <= -v0.
WaveParams wavenumbers(double energy, const PotentialGeometry& geom);

enum class StateKind { Generic, ZeroEnergy, BarrierTop };

std::string to_string(StateKind kind);

/// Matching coefficients in the per-case parametrisation:
///   Generic     A w(x+a) | B r sin px + C cos px | B p sinh rx + C cosh rx | D w(x-a)
///   ZeroEnergy  A (x+a)  | B sin qx + C cos qx   | B sinh qx + C cosh qx   | D (x-a)
///   BarrierTop  A sin q(x+a) | B sin sx + C cos sx | B s x + C           | D sin q(x-a)
/// with w = sin(k .) above zero and sinh(kappa .) below; above the barrier
/// r sin px -> rho sin px and sinh rx -> sin(rho x).
struct CoefficientSet {
    double A = 1.0;
    double B = 0.0;
    double C = 0.0;
    double D = 0.0;
};

enum class Basis { TrigSinCos, HyperSinhCosh, Linear, WallSine, HyperTwoPoint };

/// On [lo, hi], with t = x - origin:
///   TrigSinCos     c1 sin(w t)  + c2 cos(w t)
///   HyperSinhCosh  c1 sinh(w t) + c2 cosh(w t)
///   Linear         c1 t + c2
///   WallSine       c1 sin(w t)              (origin at a wall)
///   HyperTwoPoint  [c1 sinh(w (hi - x)) + c2 sinh(w (x - lo))] / sinh(w (hi - lo)),
///                  i.e. c1 = psi(lo), c2 = psi(hi); origin unused
struct Segment {
    double lo = 0.0;
    double hi = 0.0;
    Basis basis = Basis::Linear;
    double c1 = 0.0;
    double c2 = 0.0;
    double wavenumber = 0.0;
    double origin = 0.0;

    double value(double x) const noexcept;
    double derivative(double x) const noexcept;
};

/// Closed-form eigenfunction: four segments split at -b, 0, b.
class PiecewiseWavefunction {
public:
    PiecewiseWavefunction(const PotentialGeometry& geom, const std::array<Segment, 4>& segments,
                          double norm = 1.0);

    const PotentialGeometry& geometry() const noexcept { return geom_; }
    const std::array<Segment, 4>& segments() const noexcept { return segments_; }

    /// Factor already folded into the segment coefficients by normalisation.
    double norm() const noexcept { return norm_; }

    /// Segment owning x; breakpoints belong to the segment on their right
    /// except x = a.
    std::size_t segment_index(double x) const;

    double value(double x) const;
    double derivative(double x) const;

    /// One-sided limits at a breakpoint (or anywhere inside [-a, a]).
    double value_from_left(double x) const;
    double value_from_right(double x) const;
    double derivative_from_left(double x) const;
    double derivative_from_right(double x) const;

    PiecewiseWavefunction scaled(double factor) const;

private:
    PotentialGeometry geom_;
    std::array<Segment, 4> segments_;
    double norm_;
};

/// psi(x); throws DomainError for |x| > a. Exactly zero at x = +-a.
double evaluate_wavefunction(const PiecewiseWavefunction& psi, double x);

struct Eigenstate {
    int index = 0;
    double energy = 0.0;
    StateKind kind = StateKind::Generic;
    CoefficientSet coefficients;
    PiecewiseWavefunction wavefunction;
};

}  // namespace asw
