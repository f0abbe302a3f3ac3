#pragma once

// Second-order finite-difference oracle on a uniform Dirichlet grid, with
// Sturm-sequence bisection for the low-lying eigenvalues.

#include "asw/model.hpp"
#include "asw/spectrum.hpp"

#include <string>
#include <vector>

namespace asw {

struct TridiagonalOperator {
    std::vector<double> diag;  // 2/h^2 + V averaged over the cell around each node
    double offdiag = 0.0;      // -1/h^2
    double h = 0.0;            // 2a / (N + 1)
    int n_points = 0;
};

/// Smallest N >= requested for which -b, 0 and b are grid nodes. Returns
/// `requested` when b/a admits no such N nearby.
int aligned_grid_size(const PotentialGeometry& geom, int requested);

/// Throws DomainError for N < 16.
TridiagonalOperator build_operator(const PotentialGeometry& geom, int n_points);

/// Number of eigenvalues strictly below lambda (negative pivots of LDL^T).
int sturm_count(const TridiagonalOperator& op, double lambda);

/// The `count` smallest eigenvalues, ascending, bisected to double resolution.
std::vector<double> lowest_eigenvalues(const TridiagonalOperator& op, int count);

struct OracleReport {
    std::vector<int> grid_sizes;                         // as used, after alignment
    std::vector<std::vector<double>> eigenvalues_per_grid;  // [grid][state]
    std::vector<double> analytic;
    std::vector<double> extrapolated;  // Richardson on the two finest grids
    std::vector<double> deviations;    // analytic - extrapolated
    std::vector<double> ratios;        // (E_1 - E_2)/(E_2 - E_3) over the three finest grids; NaN with < 3 grids
    std::vector<std::string> failures;
    double tolerance = 0.0;

    bool ok() const { return failures.empty(); }
    double max_abs_deviation() const;
};

/// Grid sizes are aligned; when one requested size is an integer multiple
/// of the first, the spacings keep exactly that ratio.
std::vector<int> aligned_grids(const PotentialGeometry& geom, const std::vector<int>& requested);

/// Pairs analytic state i with oracle eigenvalue i and reports every state
/// or oracle value without a partner within `tolerance`.
OracleReport cross_validate(const SpectrumResult& spectrum, const std::vector<int>& grids, double tolerance = 1e-3);

}  // namespace asw
