#include "asw/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace asw {

PotentialGeometry::PotentialGeometry(double a, double b, double v0) : a_(a), b_(b), v0_(v0), d_(a - b)
{
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(v0)) {
        throw DomainError("geometry parameters must be finite");
    }
    if (!(b > 0.0 && b < a)) {
        std::ostringstream msg;
        msg << "geometry requires 0 < b < a (got a=" << a << ", b=" << b << ")";
        throw DomainError(msg.str());
    }
    if (v0 < 0.0) {
        throw DomainError("v0 must be non-negative");
    }
}

PotentialGeometry reference_geometry(double v0) { return {6.0, 2.0, v0}; }

PotentialValue potential_at(double x, const PotentialGeometry& geom)
{
    if (std::abs(x) >= geom.a()) {
        return {true, 0.0};
    }
    if (x >= -geom.b() && x <= 0.0) {
        return {false, -geom.v0()};
    }
    if (x > 0.0 && x <= geom.b()) {
        return {false, geom.v0()};
    }
    return {false, 0.0};
}

std::string to_string(EnergyBranch branch)
{
    switch (branch) {
    case EnergyBranch::BelowZero: return "BelowZero";
    case EnergyBranch::MidBand: return "MidBand";
    case EnergyBranch::AboveBarrier: return "AboveBarrier";
    case EnergyBranch::SeamZero: return "SeamZero";
    case EnergyBranch::SeamTop: return "SeamTop";
    }
    return "?";
}

std::string to_string(StateKind kind)
{
    switch (kind) {
    case StateKind::Generic: return "Generic";
    case StateKind::ZeroEnergy: return "ZeroEnergy";
    case StateKind::BarrierTop: return "BarrierTop";
    }
    return "?";
}

double seam_tolerance(const PotentialGeometry& geom) { return 1e-9 * std::max(1.0, geom.v0()); }

EnergyBranch classify_energy(double energy, const PotentialGeometry& geom)
{
    const double v0 = geom.v0();
    if (!(energy > -v0)) {
        throw DomainError("energy must exceed the potential minimum -v0");
    }
    if (energy == 0.0) {
        return EnergyBranch::SeamZero;
    }
    if (energy == v0) {
        return EnergyBranch::SeamTop;
    }
    if (energy < 0.0) {
        return EnergyBranch::BelowZero;
    }
    return energy < v0 ? EnergyBranch::MidBand : EnergyBranch::AboveBarrier;
}

WaveParams wavenumbers(double energy, const PotentialGeometry& geom)
{
    const double v0 = geom.v0();
    WaveParams w{classify_energy(energy, geom)};
    if (energy >= 0.0) {
        w.k = std::sqrt(energy);
    } else {
        w.kappa = std::sqrt(-energy);
    }
    w.p = std::sqrt(energy + v0);
    if (energy <= v0) {
        w.r = std::sqrt(v0 - energy);
    } else {
        w.rho = std::sqrt(energy - v0);
    }
    w.q = std::sqrt(v0);
    w.s = std::sqrt(2.0 * v0);
    return w;
}

namespace {

// sinh(w u) / sinh(w L) and cosh(w u) / sinh(w L) for 0 <= u <= L, without overflow.
double sinh_ratio(double w, double u, double len)
{
    return std::exp(-w * (len - u)) * std::expm1(-2.0 * w * u) / std::expm1(-2.0 * w * len);
}

double cosh_ratio(double w, double u, double len)
{
    return -std::exp(-w * (len - u)) * (1.0 + std::exp(-2.0 * w * u)) / std::expm1(-2.0 * w * len);
}

}  // namespace

double Segment::value(double x) const noexcept
{
    const double t = x - origin;
    switch (basis) {
    case Basis::TrigSinCos: return c1 * std::sin(wavenumber * t) + c2 * std::cos(wavenumber * t);
    case Basis::HyperSinhCosh: return c1 * std::sinh(wavenumber * t) + c2 * std::cosh(wavenumber * t);
    case Basis::Linear: return c1 * t + c2;
    case Basis::WallSine: return c1 * std::sin(wavenumber * t);
    case Basis::HyperTwoPoint: {
        const double len = hi - lo;
        return c1 * sinh_ratio(wavenumber, hi - x, len) + c2 * sinh_ratio(wavenumber, x - lo, len);
    }
    }
    return 0.0;
}

double Segment::derivative(double x) const noexcept
{
    const double t = x - origin;
    const double w = wavenumber;
    switch (basis) {
    case Basis::TrigSinCos: return w * (c1 * std::cos(w * t) - c2 * std::sin(w * t));
    case Basis::HyperSinhCosh: return w * (c1 * std::cosh(w * t) + c2 * std::sinh(w * t));
    case Basis::Linear: return c1;
    case Basis::WallSine: return w * c1 * std::cos(w * t);
    case Basis::HyperTwoPoint: {
        const double len = hi - lo;
        return w * (c2 * cosh_ratio(w, x - lo, len) - c1 * cosh_ratio(w, hi - x, len));
    }
    }
    return 0.0;
}

PiecewiseWavefunction::PiecewiseWavefunction(const PotentialGeometry& geom,
                                             const std::array<Segment, 4>& segments, double norm)
    : geom_(geom), segments_(segments), norm_(norm)
{
    const double breaks[5] = {-geom.a(), -geom.b(), 0.0, geom.b(), geom.a()};
    for (std::size_t i = 0; i < 4; ++i) {
        if (segments_[i].lo != breaks[i] || segments_[i].hi != breaks[i + 1]) {
            throw DomainError("wavefunction segments must partition [-a,a] at -b, 0, b");
        }
    }
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw DomainError("wavefunction norm factor must be positive");
    }
}

std::size_t PiecewiseWavefunction::segment_index(double x) const
{
    if (std::abs(x) > geom_.a()) {
        throw DomainError("position outside [-a, a]");
    }
    for (std::size_t i = 0; i < 3; ++i) {
        if (x < segments_[i].hi) {
            return i;
        }
    }
    return 3;
}

double PiecewiseWavefunction::value(double x) const
{
    if (std::abs(x) == geom_.a()) {
        return 0.0;
    }
    return segments_[segment_index(x)].value(x);
}

double PiecewiseWavefunction::derivative(double x) const { return segments_[segment_index(x)].derivative(x); }

namespace {

std::size_t left_segment(const std::array<Segment, 4>& segs, double x)
{
    for (std::size_t i = 0; i < 4; ++i) {
        if (x <= segs[i].hi) {
            return i;
        }
    }
    return 3;
}

}  // namespace

double PiecewiseWavefunction::value_from_left(double x) const
{
    segment_index(x);
    return segments_[left_segment(segments_, x)].value(x);
}

double PiecewiseWavefunction::value_from_right(double x) const { return segments_[segment_index(x)].value(x); }

double PiecewiseWavefunction::derivative_from_left(double x) const
{
    segment_index(x);
    return segments_[left_segment(segments_, x)].derivative(x);
}

double PiecewiseWavefunction::derivative_from_right(double x) const
{
    return segments_[segment_index(x)].derivative(x);
}

PiecewiseWavefunction PiecewiseWavefunction::scaled(double factor) const
{
    if (!(factor > 0.0) || !std::isfinite(factor)) {
        throw DomainError("scale factor must be positive and finite");
    }
    auto segs = segments_;
    for (auto& s : segs) {
        s.c1 *= factor;
        s.c2 *= factor;
    }
    return {geom_, segs, norm_ * factor};
}

double evaluate_wavefunction(const PiecewiseWavefunction& psi, double x) { return psi.value(x); }

}  // namespace asw
