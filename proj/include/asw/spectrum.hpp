#pragma once

// Complete labelled spectrum: generic roots, zero-energy and barrier-top
// states, normalisation and per-state diagnostics, plus catalogs of the
// special v0 values at fixed walls and block width.

#include "asw/model.hpp"

#include <optional>
#include <vector>

namespace asw {

struct SpectrumRequest {
    PotentialGeometry geometry;
    std::optional<int> n_states;
    std::optional<double> e_max;

    static SpectrumRequest first(const PotentialGeometry& geom, int n_states);
    static SpectrumRequest up_to(const PotentialGeometry& geom, double e_max);

    /// Exactly one of n_states (>= 1) / e_max (> -v0) must be set.
    void validate() const;
};

enum class SpecialCondition { ZeroEnergy, BarrierTop, Both };

std::string to_string(SpecialCondition condition);

struct SpecialRoot {
    SpecialCondition condition = SpecialCondition::ZeroEnergy;
    double v0 = 0.0;
    int state_index = -1;  // node count of the special state (zero-energy one for Both)
    int top_index = -1;    // barrier-top index, Both only
    double f_residual = 0.0;  // |f| / scale(f) at v0
    double g_residual = 0.0;  // |g| / scale(g) at v0
};

/// An f root and the g root nearest to it.
struct SpecialPair {
    SpecialRoot zero_root;
    SpecialRoot top_root;
    double separation = 0.0;  // |v0_f - v0_g|
    bool simultaneous = false;
};

struct DiagnosticsReport {
    std::vector<std::vector<double>> overlap_matrix;
    std::vector<int> node_counts;
    std::vector<double> uncertainty_products;
    std::vector<double> c1_residuals;
    std::vector<double> recovered_energies;      // states the scan missed, found by counting
    std::vector<double> suspected_double_roots;  // scan dips without a sign change
    std::optional<double> f_relative;  // |f|/scale at v0 (v0 > 0 only)
    std::optional<double> g_relative;

    double max_offdiagonal_overlap() const;
    double max_diagonal_error() const;
    double min_uncertainty() const;
    double max_c1_residual() const;
};

struct SpectrumResult {
    PotentialGeometry geometry;
    std::vector<Eigenstate> states;
    DiagnosticsReport diagnostics;
};

/// Throws DomainError for invalid requests and DiagnosticError when the
/// node pattern of the assembled spectrum is not 0, 1, 2, ...
SpectrumResult solve_spectrum(const SpectrumRequest& request);

/// Number of eigenvalues strictly below `energy`: the zeros in (-a, a) of
/// the solution that vanishes at the left wall, counted exactly per segment.
int analytic_state_count(double energy, const PotentialGeometry& geom);

/// Normalised eigenstate of the given kind at an energy that satisfies the
/// corresponding quantization condition. `index` is left at -1.
Eigenstate build_state(StateKind kind, double energy, const PotentialGeometry& geom);

/// True when |f| (resp. |g|) at geom.v0() is within 1e-9 of its scale.
bool has_zero_energy_state(const PotentialGeometry& geom);
bool has_barrier_top_state(const PotentialGeometry& geom);

/// First `count` nontrivial roots (q = 0 excluded) of f or g in v0, at the
/// walls and block width of `shape` (its v0 is ignored).
std::vector<SpecialRoot> special_v0_catalog(SpecialCondition condition, int count, const PotentialGeometry& shape);

/// The first `count` f roots, each paired with the nearest g root.
std::vector<SpecialPair> nearest_special_pairs(int count, const PotentialGeometry& shape);

/// v0 in (0, v0_max] where |f| <= 1e-8 and |g| <= 1e-8 hold together.
/// Mere closeness of an f root and a g root does not qualify.
std::vector<SpecialRoot> doubly_special_v0(int count, const PotentialGeometry& shape, double v0_max = 30.0);

/// Closest root of f or g within `window` of geom.v0(), if any.
std::optional<SpecialRoot> nearest_special_root(const PotentialGeometry& geom, double window);

/// Rescaled so that the split Simpson integral of psi^2 is 1.
PiecewiseWavefunction normalize(const PiecewiseWavefunction& psi);

/// Interior zeros on (-a, a). Sign is read from the largest sample between
/// consecutive analytic zeros; lobes below 1e-9 max|psi| do not count.
int count_nodes(const PiecewiseWavefunction& psi);

double overlap(const PiecewiseWavefunction& lhs, const PiecewiseWavefunction& rhs);

/// Delta x * Delta p with <p> = 0 and <p^2> = integral of psi'^2.
double uncertainty_product(const PiecewiseWavefunction& psi);

/// Largest jump of psi or psi' across -b, 0, b, relative to max|psi|.
double c1_residual(const PiecewiseWavefunction& psi);

}  // namespace asw
