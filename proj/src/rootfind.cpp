#include "asw/rootfind.hpp"

#include "asw/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace asw {

double Tolerances::width(double x) const { return std::max(abs_tol, rel_tol * std::abs(x)); }

namespace {

constexpr int kMaxHalvings = 6;
constexpr double kDipFraction = 1e-3;

bool opposite(double a, double b) { return (a < 0.0 && b > 0.0) || (a > 0.0 && b < 0.0); }

struct Sample {
    double x;
    double f;
};

// Halves the window around a local minimum of |F| until a sign change
// appears or kMaxHalvings levels are spent.
void resolve_dip(const ScalarFunction& f, Sample left, Sample mid, Sample right, double scale, ScanReport& out)
{
    for (int level = 0; level < kMaxHalvings; ++level) {
        const Sample ml{0.5 * (left.x + mid.x), f(0.5 * (left.x + mid.x))};
        const Sample mr{0.5 * (mid.x + right.x), f(0.5 * (mid.x + right.x))};
        const Sample s[5] = {left, ml, mid, mr, right};
        bool found = false;
        for (int i = 0; i < 4; ++i) {
            if (s[i].f == 0.0) {
                out.brackets.push_back({s[i].x, s[i].x, 0.0, 0.0});
                found = true;
            } else if (opposite(s[i].f, s[i + 1].f)) {
                out.brackets.push_back({s[i].x, s[i + 1].x, s[i].f, s[i + 1].f});
                found = true;
            }
        }
        if (found) {
            return;
        }
        int best = 1;
        for (int i = 2; i <= 3; ++i) {
            if (std::abs(s[i].f) < std::abs(s[best].f)) {
                best = i;
            }
        }
        left = s[best - 1];
        mid = s[best];
        right = s[best + 1];
    }
    if (std::abs(mid.f) < kDipFraction * scale) {
        out.suspected_double.push_back(mid.x);
    }
}

}  // namespace

ScanReport scan(const ScalarFunction& f, double lo, double hi, double step)
{
    if (!(lo < hi) || !(step > 0.0)) {
        throw DomainError("scan needs lo < hi and step > 0");
    }
    const auto cells = static_cast<std::size_t>(std::ceil((hi - lo) / step));
    const double h = (hi - lo) / static_cast<double>(cells);
    std::vector<Sample> grid(cells + 1);
    for (std::size_t i = 0; i <= cells; ++i) {
        const double x = i == cells ? hi : lo + h * static_cast<double>(i);
        grid[i] = {x, f(x)};
    }

    ScanReport out;
    for (std::size_t i = 0; i <= cells; ++i) {
        if (grid[i].f == 0.0) {
            out.brackets.push_back({grid[i].x, grid[i].x, 0.0, 0.0});
        } else if (i < cells && opposite(grid[i].f, grid[i + 1].f)) {
            out.brackets.push_back({grid[i].x, grid[i + 1].x, grid[i].f, grid[i + 1].f});
        }
    }
    for (std::size_t i = 1; i < cells; ++i) {
        const double fm = std::abs(grid[i].f);
        if (fm == 0.0 || opposite(grid[i - 1].f, grid[i].f) || opposite(grid[i].f, grid[i + 1].f)) {
            continue;
        }
        if (!(fm < std::abs(grid[i - 1].f) && fm <= std::abs(grid[i + 1].f))) {
            continue;
        }
        const std::size_t w0 = i >= 3 ? i - 3 : 0;
        const std::size_t w1 = std::min(cells, i + 4);
        double scale = 0.0;
        for (std::size_t j = w0; j <= w1; ++j) {
            scale = std::max(scale, std::abs(grid[j].f));
        }
        resolve_dip(f, grid[i - 1], grid[i], grid[i + 1], scale, out);
    }

    std::sort(out.brackets.begin(), out.brackets.end(),
              [](const Bracket& x, const Bracket& y) { return x.lo < y.lo; });
    return out;
}

std::vector<Bracket> bracket_scan(const ScalarFunction& f, double lo, double hi, double step)
{
    return scan(f, lo, hi, step).brackets;
}

namespace {

// Bisects a converged bracket down to adjacent doubles.
RootResult polish(const ScalarFunction& f, double b, double fb, double c, double fc, int iter)
{
    double lo = std::min(b, c);
    double hi = std::max(b, c);
    double f_lo = b < c ? fb : fc;
    double f_hi = b < c ? fc : fb;
    for (;;) {
        const double mid = lo + 0.5 * (hi - lo);
        if (!(mid > lo && mid < hi)) {
            break;
        }
        const double fm = f(mid);
        if (fm == 0.0) {
            return {mid, 0.0, iter, 0.0, false};
        }
        if (opposite(f_lo, fm)) {
            hi = mid;
            f_hi = fm;
        } else {
            lo = mid;
            f_lo = fm;
        }
    }
    if (std::abs(f_lo) <= std::abs(f_hi)) {
        return {lo, std::abs(f_lo), iter, hi - lo, false};
    }
    return {hi, std::abs(f_hi), iter, hi - lo, false};
}

}  // namespace

RootResult refine(const ScalarFunction& f, const Bracket& bracket, const Tolerances& tol)
{
    if (bracket.lo == bracket.hi) {
        if (bracket.f_lo != 0.0) {
            throw DomainError("degenerate bracket without an exact zero");
        }
        return {bracket.lo, 0.0, 0, 0.0, false};
    }
    if (!(bracket.lo < bracket.hi) || !opposite(bracket.f_lo, bracket.f_hi)) {
        throw DomainError("refine needs lo < hi and a sign change");
    }

    double a = bracket.lo;
    double b = bracket.hi;
    double fa = bracket.f_lo;
    double fb = bracket.f_hi;
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 1; iter <= tol.max_iterations; ++iter) {
        if (!opposite(fb, fc)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 0.5 * tol.width(b);
        const double xm = 0.5 * (c - b);
        if (fb == 0.0) {
            return {b, 0.0, iter, 0.0, false};
        }
        if (std::abs(xm) <= tol1) {
            return polish(f, b, fb, c, fc, iter);
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic interpolation, or secant when only two points differ.
            const double s = fb / fa;
            double p = 0.0;
            double q = 0.0;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qa = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qa * (qa - r) - (b - a) * (r - 1.0));
                q = (qa - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            }
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : std::copysign(tol1, xm);
        fb = f(b);
    }
    throw DiagnosticError("root refinement did not converge in " + std::to_string(tol.max_iterations) +
                          " iterations on [" + std::to_string(bracket.lo) + ", " +
                          std::to_string(bracket.hi) + "]");
}

std::vector<RootResult> roots_in_range(const ScalarFunction& f, double lo, double hi, double step,
                                       const Tolerances& tol)
{
    const ScanReport report = scan(f, lo, hi, step);
    std::vector<RootResult> roots;
    for (const auto& br : report.brackets) {
        roots.push_back(refine(f, br, tol));
    }
    std::sort(roots.begin(), roots.end(), [](const RootResult& x, const RootResult& y) { return x.root < y.root; });
    std::vector<RootResult> unique;
    for (const auto& r : roots) {
        if (!unique.empty() &&
            std::abs(r.root - unique.back().root) <= 1e-10 * std::max(1.0, std::abs(r.root))) {
            continue;
        }
        unique.push_back(r);
    }
    for (double x : report.suspected_double) {
        RootResult r;
        r.root = x;
        r.residual = std::abs(f(x));
        r.suspected_double = true;
        unique.push_back(r);
    }
    std::stable_sort(unique.begin(), unique.end(),
                     [](const RootResult& x, const RootResult& y) { return x.root < y.root; });
    return unique;
}

}  // namespace asw
