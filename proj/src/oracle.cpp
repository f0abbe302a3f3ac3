#include "asw/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace asw {

namespace {

// Integral of V over [lo, hi], walls excluded (the grid stays inside).
double potential_integral(const PotentialGeometry& g, double lo, double hi)
{
    auto overlap = [&](double u, double v) { return std::max(0.0, std::min(hi, v) - std::max(lo, u)); };
    return g.v0() * (overlap(0.0, g.b()) - overlap(-g.b(), 0.0));
}

std::string format_energy(double e)
{
    std::ostringstream s;
    s.precision(12);
    s << e;
    return s.str();
}

}  // namespace

int aligned_grid_size(const PotentialGeometry& geom, int requested)
{
    const double frac = (geom.a() - geom.b()) / (2.0 * geom.a());
    for (int n = requested; n < requested + 10000; ++n) {
        const int cells = n + 1;
        if (cells % 2 != 0) {
            continue;
        }
        const double idx = frac * cells;
        if (std::abs(idx - std::round(idx)) < 1e-9 * cells) {
            return n;
        }
    }
    return requested;
}

std::vector<int> aligned_grids(const PotentialGeometry& geom, const std::vector<int>& requested)
{
    std::vector<int> out;
    if (requested.empty()) {
        return out;
    }
    const int base = aligned_grid_size(geom, requested.front());
    for (int n : requested) {
        if (n % requested.front() == 0) {
            out.push_back((base + 1) * (n / requested.front()) - 1);
        } else {
            out.push_back(aligned_grid_size(geom, n));
        }
    }
    return out;
}

TridiagonalOperator build_operator(const PotentialGeometry& geom, int n_points)
{
    if (n_points < 16) {
        throw DomainError("finite-difference grid needs at least 16 points");
    }
    TridiagonalOperator op;
    op.n_points = n_points;
    op.h = 2.0 * geom.a() / (n_points + 1);
    op.offdiag = -1.0 / (op.h * op.h);
    op.diag.resize(static_cast<std::size_t>(n_points));
    for (int i = 0; i < n_points; ++i) {
        const double x = -geom.a() + (i + 1) * op.h;
        const double v = potential_integral(geom, x - 0.5 * op.h, x + 0.5 * op.h) / op.h;
        op.diag[static_cast<std::size_t>(i)] = 2.0 / (op.h * op.h) + v;
    }
    return op;
}

int sturm_count(const TridiagonalOperator& op, double lambda)
{
    const double e2 = op.offdiag * op.offdiag;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < op.diag.size(); ++i) {
        d = op.diag[i] - lambda - (i == 0 ? 0.0 : e2 / d);
        if (d == 0.0) {
            d = -tiny;
        }
        if (d < 0.0) {
            ++count;
        }
    }
    return count;
}

std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int count)
{
    if (count > op.n_points) {
        throw DomainError("more eigenvalues requested than grid points");
    }
    const double spread = 2.0 * std::abs(op.offdiag);
    const double lower = *std::min_element(op.diag.begin(), op.diag.end()) - spread;
    const double upper = *std::max_element(op.diag.begin(), op.diag.end()) + spread;
    std::vector<double> out;
    double floor = lower;
    for (int k = 0; k < count; ++k) {
        double lo = floor;
        double hi = upper;
        // Bisect to double resolution.
        for (;;) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            if (sturm_count(op, mid) > k) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        const double value = 0.5 * (lo + hi);
        out.push_back(value);
        floor = lo;
    }
    return out;
}

double OracleReport::max_abs_deviation() const
{
    double m = 0.0;
    for (double d : deviations) {
        m = std::max(m, std::abs(d));
    }
    return m;
}

OracleReport cross_validate(const SpectrumResult& spectrum, const std::vector<int>& grids, double tolerance)
{
    if (grids.size() < 2) {
        throw DomainError("cross-validation needs at least two grids");
    }
    const auto& geom = spectrum.geometry;
    OracleReport report;
    report.tolerance = tolerance;
    report.grid_sizes = aligned_grids(geom, grids);
    const int n = static_cast<int>(spectrum.states.size());
    for (const auto& st : spectrum.states) {
        report.analytic.push_back(st.energy);
    }
    std::vector<double> spacings;
    for (int size : report.grid_sizes) {
        const auto op = build_operator(geom, size);
        spacings.push_back(op.h);
        report.eigenvalues_per_grid.push_back(lowest_eigenvalues(op, n));
    }

    const std::size_t g = report.grid_sizes.size();
    const double t = spacings[g - 2] / spacings[g - 1];
    const double t2 = t * t;
    for (int i = 0; i < n; ++i) {
        const auto idx = static_cast<std::size_t>(i);
        const double e_mid = report.eigenvalues_per_grid[g - 2][idx];
        const double e_fine = report.eigenvalues_per_grid[g - 1][idx];
        const double extrapolated = (t2 * e_fine - e_mid) / (t2 - 1.0);
        report.extrapolated.push_back(extrapolated);
        report.deviations.push_back(report.analytic[idx] - extrapolated);
        if (g >= 3) {
            const double e_coarse = report.eigenvalues_per_grid[g - 3][idx];
            report.ratios.push_back((e_coarse - e_mid) / (e_mid - e_fine));
        } else {
            report.ratios.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }

    for (int i = 0; i < n; ++i) {
        const double e = report.analytic[static_cast<std::size_t>(i)];
        const bool partnered = std::any_of(report.extrapolated.begin(), report.extrapolated.end(),
                                           [&](double x) { return std::abs(x - e) <= tolerance; });
        if (!partnered || std::abs(report.deviations[static_cast<std::size_t>(i)]) > tolerance) {
            report.failures.push_back("analytic state " + std::to_string(i) + " at E=" + format_energy(e) +
                                      " has no oracle partner");
        }
    }
    for (int i = 0; i < n; ++i) {
        const double x = report.extrapolated[static_cast<std::size_t>(i)];
        const bool partnered = std::any_of(report.analytic.begin(), report.analytic.end(),
                                           [&](double e) { return std::abs(x - e) <= tolerance; });
        if (!partnered) {
            report.failures.push_back("oracle eigenvalue " + std::to_string(i) + " at E=" + format_energy(x) +
                                      " has no analytic partner");
        }
    }
    return report;
}

}  // namespace asw
