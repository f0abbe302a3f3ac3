#pragma once

// Scalar root location: uniform bracketing scan with local refinement of
// near-tangent dips, then a bracketed Brent iteration.

#include <functional>
#include <vector>

namespace asw {

using ScalarFunction = std::function<double(double)>;

struct Bracket {
    double lo;
    double hi;
    double f_lo;
    double f_hi;
};

struct RootResult {
    double root = 0.0;
    double residual = 0.0;  // |F(root)|
    int iterations = 0;
    double bracket_width_final = 0.0;
    bool suspected_double = false;  // |F| dip without a sign change
};

struct Tolerances {
    double abs_tol = 1e-13;
    double rel_tol = 1e-13;
    int max_iterations = 200;

    double width(double x) const;
};

struct ScanReport {
    std::vector<Bracket> brackets;
    std::vector<double> suspected_double;  // location of the smallest sampled |F|
};

/// Sign-change intervals of F on a uniform grid over [lo, hi]. Cells where
/// |F| falls below 1e-3 of the local scale without changing sign are halved
/// up to six times to split close doublets. Ordered by position.
ScanReport scan(const ScalarFunction& f, double lo, double hi, double step);
std::vector<Bracket> bracket_scan(const ScalarFunction& f, double lo, double hi, double step);

/// Brent iteration inside a sign-change bracket until the bracket is no
/// wider than tol.width(root), then bisection to adjacent doubles. Throws
/// DiagnosticError after max_iterations.
RootResult refine(const ScalarFunction& f, const Bracket& bracket, const Tolerances& tol = {});

/// scan + refine, deduplicated at 1e-10 max(1, |root|), sorted ascending.
/// Suspected double roots are appended with suspected_double set.
std::vector<RootResult> roots_in_range(const ScalarFunction& f, double lo, double hi, double step,
                                       const Tolerances& tol = {});

}  // namespace asw
