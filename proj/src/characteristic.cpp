#include "asw/characteristic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <optional>

namespace asw {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

void require_positive_v0(const PotentialGeometry& geom)
{
    if (!(geom.v0() > 0.0)) {
        throw DomainError("special-state conditions need v0 > 0");
    }
}

// (cos(sqrt(X) L), sin(sqrt(X) L) / sqrt(X)), continued to X <= 0.
struct CosSinc {
    double c;
    double s;
};

CosSinc cos_sinc(double x_sq, double length)
{
    if (x_sq > 0.0) {
        const double w = std::sqrt(x_sq);
        return {std::cos(w * length), std::sin(w * length) / w};
    }
    if (x_sq < 0.0) {
        const double w = std::sqrt(-x_sq);
        return {std::cosh(w * length), std::sinh(w * length) / w};
    }
    return {1.0, length};
}

}  // namespace

double f_zero_energy(const PotentialGeometry& geom)
{
    require_positive_v0(geom);
    const double q = std::sqrt(geom.v0());
    const double b = geom.b();
    const double d = geom.d();
    const double qd2 = q * q * d * d;
    return 2.0 * q * d * std::cos(q * b) + (1.0 - qd2) * std::sin(q * b)
           + (1.0 + qd2) * std::cos(q * b) * std::tanh(q * b);
}

double f_zero_energy_scale(const PotentialGeometry& geom)
{
    require_positive_v0(geom);
    const double q = std::sqrt(geom.v0());
    const double b = geom.b();
    const double d = geom.d();
    const double qd2 = q * q * d * d;
    return std::abs(2.0 * q * d * std::cos(q * b)) + std::abs((1.0 - qd2) * std::sin(q * b))
           + std::abs((1.0 + qd2) * std::cos(q * b) * std::tanh(q * b));
}

double g_barrier_top(const PotentialGeometry& geom)
{
    require_positive_v0(geom);
    const double q = std::sqrt(geom.v0());
    const double s = q * kSqrt2;
    const double b = geom.b();
    const double d = geom.d();
    const double qb = q * b;
    return kSqrt2 * std::cos(s * b) * (qb + qb * std::cos(2.0 * q * d) + 2.0 * std::sin(2.0 * q * d))
           - std::sin(s * b) * (1.0 - 3.0 * std::cos(2.0 * q * d) + 2.0 * qb * std::sin(2.0 * q * d));
}

double g_barrier_top_scale(const PotentialGeometry& geom)
{
    require_positive_v0(geom);
    const double q = std::sqrt(geom.v0());
    const double s = q * kSqrt2;
    const double b = geom.b();
    const double d = geom.d();
    const double qb = q * b;
    const double cs = std::abs(std::cos(s * b));
    const double sn = std::abs(std::sin(s * b));
    return kSqrt2 * cs * (qb + qb * std::abs(std::cos(2.0 * q * d)) + 2.0 * std::abs(std::sin(2.0 * q * d)))
           + sn * (1.0 + 3.0 * std::abs(std::cos(2.0 * q * d)) + 2.0 * qb * std::abs(std::sin(2.0 * q * d)));
}

double characteristic_regularized(double energy, const PotentialGeometry& geom)
{
    const double v0 = geom.v0();
    if (!(energy >= -v0) || !std::isfinite(energy)) {
        throw DomainError("energy below the potential minimum");
    }
    const double well_sq = energy + v0;     // p^2
    const double barrier_sq = v0 - energy;  // r^2 (negative above the barrier)
    const auto [c, s] = cos_sinc(energy, geom.d());
    const auto [cp, sp] = cos_sinc(well_sq, geom.b());
    const auto [ch, sh] = cos_sinc(-barrier_sq, geom.b());
    const double sc = s * c;
    return ch * ((c * c - well_sq * s * s) * sp + 2.0 * sc * cp)
           + sh * ((barrier_sq - well_sq) * sc * sp + (c * c + barrier_sq * s * s) * cp);
}

double characteristic_scaled(double energy, const PotentialGeometry& geom)
{
    const double v0 = geom.v0();
    const double kappa = std::sqrt(std::max(0.0, -energy));
    const double r = std::sqrt(std::max(0.0, v0 - energy));
    const double outer = std::cosh(kappa * geom.d());
    const double damping =
        std::pow(1.0 + std::abs(energy) + v0, 1.5) * outer * outer * std::cosh(r * geom.b());
    return characteristic_regularized(energy, geom) / damping;
}

double char_generic(double energy, const PotentialGeometry& geom)
{
    const auto branch = classify_energy(energy, geom);
    if (branch == EnergyBranch::SeamZero || branch == EnergyBranch::SeamTop) {
        throw DomainError("seam energies are handled by the zero-energy / barrier-top conditions");
    }
    return characteristic_scaled(energy, geom);
}

double char_printed(double energy, const PotentialGeometry& geom)
{
    if (classify_energy(energy, geom) != EnergyBranch::MidBand) {
        throw DomainError("printed generic condition is defined on 0 < E < v0 only");
    }
    const auto w = wavenumbers(energy, geom);
    const double k = w.k;
    const double p = w.p;
    const double r = w.r;
    const double kd = k * geom.d();
    const double pb = p * geom.b();
    const double ck = std::cos(kd);
    const double sk = std::sin(kd);
    return 2.0 * r * (k * k * ck * ck - p * p * sk * sk) * std::sin(pb)
           + 2.0 * k * p * r * std::cos(pb) * std::sin(2.0 * kd)
           + (k * (r * r - p * p) * std::sin(pb) * std::sin(2.0 * kd)
              + 2.0 * p * (k * k * ck * ck + r * r * sk * sk) * std::cos(pb))
                 * std::tanh(r * geom.b());
}

double MatchMatrix::determinant() const
{
    auto a = m;
    double det = 1.0;
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < 4; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[piv][col])) {
                piv = row;
            }
        }
        if (a[piv][col] == 0.0) {
            return 0.0;
        }
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t row = col + 1; row < 4; ++row) {
            const double factor = a[row][col] / a[col][col];
            for (std::size_t k = col; k < 4; ++k) {
                a[row][k] -= factor * a[col][k];
            }
        }
    }
    return det;
}

double MatchMatrix::frobenius_norm() const
{
    double sum = 0.0;
    for (const auto& row : m) {
        for (double x : row) {
            sum += x * x;
        }
    }
    return std::sqrt(sum);
}

std::array<double, 4> MatchMatrix::apply(const CoefficientSet& c) const
{
    const std::array<double, 4> v{c.B, c.C, c.D, -c.A};
    std::array<double, 4> out{};
    for (std::size_t i = 0; i < 4; ++i) {
        for (std::size_t j = 0; j < 4; ++j) {
            out[i] += m[i][j] * v[j];
        }
    }
    return out;
}

MatchMatrix match_matrix(StateKind kind, double energy, const PotentialGeometry& geom)
{
    const double b = geom.b();
    const double d = geom.d();
    MatchMatrix mm;
    auto& m = mm.m;
    switch (kind) {
    case StateKind::ZeroEnergy: {
        require_positive_v0(geom);
        const double q = std::sqrt(geom.v0());
        const double qb = q * b;
        m[0] = {-std::sin(qb), std::cos(qb), 0.0, d};
        m[1] = {q * std::cos(qb), q * std::sin(qb), 0.0, 1.0};
        m[2] = {std::sinh(qb), std::cosh(qb), d, 0.0};
        m[3] = {q * std::cosh(qb), q * std::sinh(qb), -1.0, 0.0};
        return mm;
    }
    case StateKind::BarrierTop: {
        require_positive_v0(geom);
        const double q = std::sqrt(geom.v0());
        const double s = q * kSqrt2;
        const double sb = s * b;
        const double qd = q * d;
        m[0] = {-std::sin(sb), std::cos(sb), 0.0, std::sin(qd)};
        m[1] = {s * std::cos(sb), s * std::sin(sb), 0.0, q * std::cos(qd)};
        m[2] = {sb, 1.0, std::sin(qd), 0.0};
        m[3] = {s, 0.0, -q * std::cos(qd), 0.0};
        return mm;
    }
    case StateKind::Generic: break;
    }

    const auto branch = classify_energy(energy, geom);
    if (branch == EnergyBranch::SeamZero || branch == EnergyBranch::SeamTop) {
        throw DomainError("generic matching matrix is undefined at the seams");
    }
    const auto w = wavenumbers(energy, geom);
    const double p = w.p;
    const double pb = p * b;

    // Outer solution anchored at the walls: value and slope magnitude at |x| = b.
    double outer_value = 0.0;
    double outer_slope = 0.0;
    if (energy > 0.0) {
        outer_value = std::sin(w.k * d);
        outer_slope = w.k * std::cos(w.k * d);
    } else {
        outer_value = std::sinh(w.kappa * d);
        outer_slope = w.kappa * std::cosh(w.kappa * d);
    }

    // Interior: well side B rt sin px + C cos px, barrier side value/slope at b.
    double rt = 0.0;
    double bv = 0.0;
    double bd = 0.0;
    double cv = 0.0;
    double cd = 0.0;
    if (energy < geom.v0()) {
        const double r = w.r;
        rt = r;
        bv = p * std::sinh(r * b);
        bd = r * p * std::cosh(r * b);
        cv = std::cosh(r * b);
        cd = r * std::sinh(r * b);
    } else {
        const double rho = w.rho;
        rt = rho;
        bv = p * std::sin(rho * b);
        bd = rho * p * std::cos(rho * b);
        cv = std::cos(rho * b);
        cd = -rho * std::sin(rho * b);
    }
    m[0] = {-rt * std::sin(pb), std::cos(pb), 0.0, outer_value};
    m[1] = {rt * p * std::cos(pb), p * std::sin(pb), 0.0, outer_slope};
    m[2] = {bv, cv, outer_value, 0.0};
    m[3] = {bd, cd, -outer_slope, 0.0};
    return mm;
}

double det_match(StateKind kind, double energy, const PotentialGeometry& geom)
{
    return match_matrix(kind, energy, geom).determinant();
}

std::complex<double> det_match_complex(double energy, const PotentialGeometry& geom)
{
    using cplx = std::complex<double>;
    const double v0 = geom.v0();
    const double b = geom.b();
    const double d = geom.d();
    const cplx k = std::sqrt(cplx(energy, 0.0));
    const cplx r = std::sqrt(cplx(v0 - energy, 0.0));
    const cplx p = std::sqrt(cplx(energy + v0, 0.0));
    const cplx spb = std::sin(p * b);
    const cplx cpb = std::cos(p * b);
    const cplx skd = std::sin(k * d);
    const cplx ckd = std::cos(k * d);
    const cplx shr = std::sinh(r * b);
    const cplx chr = std::cosh(r * b);
    const cplx zero{};
    std::array<std::array<cplx, 4>, 4> a{{
        {-r * spb, cpb, zero, skd},
        {r * p * cpb, p * spb, zero, k * ckd},
        {p * shr, chr, skd, zero},
        {r * p * chr, r * shr, -k * ckd, zero},
    }};
    cplx det{1.0, 0.0};
    for (std::size_t col = 0; col < 4; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < 4; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[piv][col])) {
                piv = row;
            }
        }
        if (std::abs(a[piv][col]) == 0.0) {
            return {};
        }
        if (piv != col) {
            std::swap(a[piv], a[col]);
            det = -det;
        }
        det *= a[col][col];
        for (std::size_t row = col + 1; row < 4; ++row) {
            const cplx factor = a[row][col] / a[col][col];
            for (std::size_t j = col; j < 4; ++j) {
                a[row][j] -= factor * a[col][j];
            }
        }
    }
    return det;
}

namespace {

// Solves the 3x3 system by Gaussian elimination with partial pivoting.
std::optional<std::array<double, 3>> solve3(std::array<std::array<double, 4>, 3> aug)
{
    double scale = 0.0;
    for (const auto& row : aug) {
        for (std::size_t j = 0; j < 3; ++j) {
            scale = std::max(scale, std::abs(row[j]));
        }
    }
    if (scale == 0.0) {
        return std::nullopt;
    }
    for (std::size_t col = 0; col < 3; ++col) {
        std::size_t piv = col;
        for (std::size_t row = col + 1; row < 3; ++row) {
            if (std::abs(aug[row][col]) > std::abs(aug[piv][col])) {
                piv = row;
            }
        }
        if (std::abs(aug[piv][col]) <= 1e-14 * scale) {
            return std::nullopt;
        }
        std::swap(aug[piv], aug[col]);
        for (std::size_t row = col + 1; row < 3; ++row) {
            const double factor = aug[row][col] / aug[col][col];
            for (std::size_t j = col; j < 4; ++j) {
                aug[row][j] -= factor * aug[col][j];
            }
        }
    }
    std::array<double, 3> x{};
    for (std::size_t i = 3; i-- > 0;) {
        double acc = aug[i][3];
        for (std::size_t j = i + 1; j < 3; ++j) {
            acc -= aug[i][j] * x[j];
        }
        x[i] = acc / aug[i][i];
    }
    return x;
}

double row_norm(const std::array<double, 4>& row)
{
    double s = 0.0;
    for (double x : row) {
        s += x * x;
    }
    return std::sqrt(s);
}

}  // namespace

CoefficientSolution coefficients_for(StateKind kind, double energy, const PotentialGeometry& geom)
{
    const MatchMatrix mm = match_matrix(kind, energy, geom);
    const auto& m = mm.m;

    // With A' = -1 the unknowns satisfy M[:, 0..2] (B, C, D) = M[:, 3].
    std::optional<CoefficientSet> best;
    double best_dropped = std::numeric_limits<double>::infinity();
    for (std::size_t drop = 0; drop < 4; ++drop) {
        std::array<std::array<double, 4>, 3> aug{};
        std::size_t k = 0;
        for (std::size_t row = 0; row < 4; ++row) {
            if (row == drop) {
                continue;
            }
            aug[k++] = {m[row][0], m[row][1], m[row][2], m[row][3]};
        }
        const auto x = solve3(aug);
        if (!x) {
            continue;
        }
        const CoefficientSet c{1.0, (*x)[0], (*x)[1], (*x)[2]};
        const double vnorm = std::sqrt(1.0 + c.B * c.B + c.C * c.C + c.D * c.D);
        const double dropped = std::abs(mm.apply(c)[drop]) / (row_norm(m[drop]) * vnorm);
        if (dropped < best_dropped) {
            best_dropped = dropped;
            best = c;
        }
    }
    if (!best) {
        throw DiagnosticError("matching system has no null vector with A != 0");
    }
    const auto res = mm.apply(*best);
    const double vnorm = std::sqrt(1.0 + best->B * best->B + best->C * best->C + best->D * best->D);
    const double residual = row_norm(res) / (mm.frobenius_norm() * vnorm);
    if (!(residual <= 1e-9)) {
        throw DiagnosticError("matching residual " + std::to_string(residual) + " at E=" +
                              std::to_string(energy) + ": not an eigenvalue (spurious root)");
    }
    return {*best, residual};
}

CoefficientSet printed_coefficients(StateKind kind, double energy, const PotentialGeometry& geom)
{
    const double b = geom.b();
    const double d = geom.d();
    switch (kind) {
    case StateKind::ZeroEnergy: {
        require_positive_v0(geom);
        const double q = std::sqrt(geom.v0());
        const double qb = q * b;
        const double B = std::cos(qb) / q - d * std::sin(qb);
        const double C = d * std::cos(qb) + std::sin(qb) / q;
        const double D = (std::sinh(qb) * (q * d * std::sin(qb) - std::cos(qb))
                          - std::cosh(qb) * (q * d * std::cos(qb) + std::sin(qb)))
                         / (d * q);
        return {1.0, B, C, D};
    }
    case StateKind::BarrierTop: {
        require_positive_v0(geom);
        const double q = std::sqrt(geom.v0());
        const double s = q * kSqrt2;
        const double sb = s * b;
        const double qd = q * d;
        const double cot = std::cos(qd) / std::sin(qd);
        const double B = std::cos(sb) * std::cos(qd) / kSqrt2 - std::sin(sb) * std::sin(qd);
        const double C = std::sin(sb) * std::cos(qd) / kSqrt2 + std::cos(sb) * std::sin(qd);
        const double D = (2.0 * b * q - cot) * std::sin(sb) / kSqrt2 - (1.0 + b * q * cot) * std::cos(sb);
        return {1.0, B, C, D};
    }
    case StateKind::Generic: break;
    }
    if (classify_energy(energy, geom) != EnergyBranch::MidBand) {
        throw DomainError("closed-form generic coefficients need 0 < E < v0");
    }
    const auto w = wavenumbers(energy, geom);
    const double k = w.k;
    const double p = w.p;
    const double r = w.r;
    const double kd = k * d;
    const double pb = p * b;
    if (std::abs(std::sin(kd)) < 1e-12) {
        throw DomainError("closed-form generic coefficients are singular at sin kd = 0");
    }
    const double cot = std::cos(kd) / std::sin(kd);
    const double B = k * std::cos(pb) * std::cos(kd) / (p * r) - std::sin(pb) * std::sin(kd) / r;
    const double C = k * std::sin(pb) * std::cos(kd) / p + std::cos(pb) * std::sin(kd);
    const double D = -std::sinh(r * b) * (k * std::cos(pb) * cot - p * std::sin(pb)) / r
                     - std::cosh(r * b) * (p * std::cos(pb) + k * cot * std::sin(pb)) / p;
    return {1.0, B, C, D};
}

PiecewiseWavefunction build_wavefunction(StateKind kind, double energy, const CoefficientSet& c,
                                         const PotentialGeometry& geom)
{
    const double a = geom.a();
    const double b = geom.b();
    std::array<Segment, 4> seg;
    seg[0].lo = -a;
    seg[0].hi = -b;
    seg[1].lo = -b;
    seg[1].hi = 0.0;
    seg[2].lo = 0.0;
    seg[2].hi = b;
    seg[3].lo = b;
    seg[3].hi = a;
    seg[0].origin = -a;
    seg[3].origin = a;

    switch (kind) {
    case StateKind::ZeroEnergy: {
        const double q = std::sqrt(geom.v0());
        seg[0].basis = Basis::Linear;
        seg[0].c1 = c.A;
        seg[1].basis = Basis::TrigSinCos;
        seg[1].wavenumber = q;
        seg[1].c1 = c.B;
        seg[1].c2 = c.C;
        seg[2].basis = Basis::HyperSinhCosh;
        seg[2].wavenumber = q;
        seg[2].c1 = c.B;
        seg[2].c2 = c.C;
        seg[3].basis = Basis::Linear;
        seg[3].c1 = c.D;
        break;
    }
    case StateKind::BarrierTop: {
        const double q = std::sqrt(geom.v0());
        const double s = q * kSqrt2;
        seg[0].basis = Basis::WallSine;
        seg[0].wavenumber = q;
        seg[0].c1 = c.A;
        seg[1].basis = Basis::TrigSinCos;
        seg[1].wavenumber = s;
        seg[1].c1 = c.B;
        seg[1].c2 = c.C;
        seg[2].basis = Basis::Linear;
        seg[2].c1 = c.B * s;
        seg[2].c2 = c.C;
        seg[3].basis = Basis::WallSine;
        seg[3].wavenumber = q;
        seg[3].c1 = c.D;
        break;
    }
    case StateKind::Generic: {
        const auto w = wavenumbers(energy, geom);
        if (w.branch == EnergyBranch::SeamZero || w.branch == EnergyBranch::SeamTop) {
            throw DomainError("generic wavefunction requested at a seam energy");
        }
        const Basis outer = energy > 0.0 ? Basis::WallSine : Basis::HyperSinhCosh;
        const double outer_w = energy > 0.0 ? w.k : w.kappa;
        seg[0].basis = outer;
        seg[0].wavenumber = outer_w;
        seg[0].c1 = c.A;
        seg[3].basis = outer;
        seg[3].wavenumber = outer_w;
        seg[3].c1 = c.D;

        const bool below_top = energy < geom.v0();
        const double rt = below_top ? w.r : w.rho;
        seg[1].basis = Basis::TrigSinCos;
        seg[1].wavenumber = w.p;
        seg[1].c1 = c.B * rt;
        seg[1].c2 = c.C;
        seg[2].basis = below_top ? Basis::HyperSinhCosh : Basis::TrigSinCos;
        seg[2].wavenumber = rt;
        seg[2].c1 = c.B * w.p;
        seg[2].c2 = c.C;
        break;
    }
    }
    // Hyperbolic barrier pieces are rewritten through their end values, and
    // D is re-derived from psi(0) and the slope condition at b, which is
    // well conditioned where the 4x4 solve is not.
    if (seg[2].basis == Basis::HyperSinhCosh) {
        const double r = seg[2].wavenumber;
        const double left = seg[1].value(0.0);
        Segment unit = seg[3];
        unit.c1 = 1.0;
        const double wb = unit.value(b);
        const double dwb = unit.derivative(b);
        const double coth = 1.0 / std::tanh(r * b);
        const double csch = 2.0 * std::exp(-r * b) / -std::expm1(-2.0 * r * b);
        const double den = wb * r * coth - dwb;
        if (std::abs(den) > 1e-8 * (std::abs(wb) * r * coth + std::abs(dwb))) {
            seg[3].c1 = left * r * csch / den;
        }
        seg[2].basis = Basis::HyperTwoPoint;
        seg[2].c1 = left;
        seg[2].c2 = seg[3].value(b);
    }
    return {geom, seg};
}

}  // namespace asw
