#include "asw/spectrum.hpp"

#include "asw/characteristic.hpp"
#include "asw/quadrature.hpp"
#include "asw/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace asw {

namespace {

constexpr double kSpecialTolerance = 1e-9;
constexpr double kSimultaneousTolerance = 1e-8;
constexpr double kNodeThreshold = 1e-9;
constexpr double kParameterStep = 0.005;
constexpr double kParameterWindow = 5.0;
constexpr double kParameterFloor = 1e-6;
constexpr double kParameterCeiling = 1e4;

struct Samples {
    std::vector<double> psi;
    std::vector<double> dpsi;
};

Samples sample(const PiecewiseWavefunction& psi, const QuadratureRule& rule)
{
    Samples out;
    out.psi.resize(rule.nodes.size());
    out.dpsi.resize(rule.nodes.size());
    const std::size_t per_segment = rule.nodes.size() / 4;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const Segment& seg = psi.segments()[i / per_segment];
        out.psi[i] = seg.value(rule.nodes[i]);
        out.dpsi[i] = seg.derivative(rule.nodes[i]);
    }
    return out;
}

double weighted_dot(const std::vector<double>& w, const std::vector<double>& x, const std::vector<double>& y)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i] * x[i] * y[i];
    }
    return acc;
}

double max_abs(const std::vector<double>& v)
{
    double m = 0.0;
    for (double x : v) {
        m = std::max(m, std::abs(x));
    }
    return m;
}

double uncertainty_from_samples(const QuadratureRule& rule, const Samples& s)
{
    double norm = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double p2 = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        const double w = rule.weights[i];
        const double x = rule.nodes[i];
        const double rho = s.psi[i] * s.psi[i];
        norm += w * rho;
        x1 += w * x * rho;
        x2 += w * x * x * rho;
        p2 += w * s.dpsi[i] * s.dpsi[i];
    }
    x1 /= norm;
    x2 /= norm;
    p2 /= norm;
    return std::sqrt(std::max(0.0, x2 - x1 * x1) * p2);
}

// Zeros of one closed-form segment strictly inside (lo, hi).
std::vector<double> segment_zeros(const Segment& s)
{
    std::vector<double> out;
    const double t_lo = s.lo - s.origin;
    const double t_hi = s.hi - s.origin;
    auto keep = [&](double t) {
        const double x = t + s.origin;
        if (x > s.lo && x < s.hi) {
            out.push_back(x);
        }
    };
    switch (s.basis) {
    case Basis::TrigSinCos:
    case Basis::WallSine: {
        const double c2 = s.basis == Basis::WallSine ? 0.0 : s.c2;
        const double w = s.wavenumber;
        if ((s.c1 == 0.0 && c2 == 0.0) || w <= 0.0) {
            break;
        }
        // c1 sin(wt) + c2 cos(wt) = R sin(wt + phi)
        const double phi = std::atan2(c2, s.c1);
        const double pi = std::numbers::pi;
        const auto m_lo = static_cast<long long>(std::ceil((w * t_lo + phi) / pi));
        const auto m_hi = static_cast<long long>(std::floor((w * t_hi + phi) / pi));
        for (long long m = m_lo; m <= m_hi; ++m) {
            keep((static_cast<double>(m) * pi - phi) / w);
        }
        break;
    }
    case Basis::HyperSinhCosh: {
        if (s.c1 == 0.0 || s.wavenumber <= 0.0) {
            break;
        }
        const double ratio = -s.c2 / s.c1;
        if (std::abs(ratio) < 1.0) {
            keep(std::atanh(ratio) / s.wavenumber);
        }
        break;
    }
    case Basis::Linear:
        if (s.c1 != 0.0) {
            keep(-s.c2 / s.c1);
        }
        break;
    case Basis::HyperTwoPoint: {
        if (s.c1 == 0.0 || s.c2 == 0.0 || (s.c1 < 0.0) == (s.c2 < 0.0)) {
            break;
        }
        // Single crossing of a monotone ratio; bisect on the value.
        double lo = s.lo;
        double hi = s.hi;
        for (int i = 0; i < 200 && hi - lo > 0.0; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            ((s.value(mid) < 0.0) == (s.c1 < 0.0) ? lo : hi) = mid;
        }
        keep(0.5 * (lo + hi));
        break;
    }
    }
    return out;
}

// Solution of psi'' = (V - E) psi over one segment of constant potential.
struct Propagated {
    double value;
    double slope;
    int zeros;  // in (0, length]
};

Propagated propagate(double value, double slope, double length, double v_minus_e)
{
    if (v_minus_e < 0.0) {
        const double w = std::sqrt(-v_minus_e);
        const double phi = std::atan2(value, slope / w);
        const double pi = std::numbers::pi;
        const int zeros = static_cast<int>(std::floor((w * length + phi) / pi) - std::floor(phi / pi));
        return {value * std::cos(w * length) + slope / w * std::sin(w * length),
                -value * w * std::sin(w * length) + slope * std::cos(w * length), zeros};
    }
    double end_value = 0.0;
    double end_slope = 0.0;
    if (v_minus_e > 0.0) {
        const double w = std::sqrt(v_minus_e);
        end_value = value * std::cosh(w * length) + slope / w * std::sinh(w * length);
        end_slope = value * w * std::sinh(w * length) + slope * std::cosh(w * length);
    } else {
        end_value = value + slope * length;
        end_slope = slope;
    }
    const bool crosses = value != 0.0 && (end_value == 0.0 || (end_value < 0.0) != (value < 0.0));
    return {end_value, end_slope, crosses ? 1 : 0};
}

double relative_f(const PotentialGeometry& g) { return std::abs(f_zero_energy(g)) / f_zero_energy_scale(g); }
double relative_g(const PotentialGeometry& g) { return std::abs(g_barrier_top(g)) / g_barrier_top_scale(g); }

double scaled_condition(SpecialCondition condition, const PotentialGeometry& g)
{
    return condition == SpecialCondition::ZeroEnergy ? f_zero_energy(g) / f_zero_energy_scale(g)
                                                     : g_barrier_top(g) / g_barrier_top_scale(g);
}

SpecialRoot annotate(SpecialCondition condition, double v0, const PotentialGeometry& shape)
{
    const auto geom = shape.with_v0(v0);
    const StateKind kind = condition == SpecialCondition::ZeroEnergy ? StateKind::ZeroEnergy : StateKind::BarrierTop;
    const double energy = kind == StateKind::ZeroEnergy ? 0.0 : v0;
    SpecialRoot root;
    root.condition = condition;
    root.v0 = v0;
    root.state_index = count_nodes(build_state(kind, energy, geom).wavefunction);
    root.f_residual = relative_f(geom);
    root.g_residual = relative_g(geom);
    return root;
}

// Simple roots of f or g (scaled by their term sums) on [lo, hi].
std::vector<double> condition_roots(SpecialCondition condition, const PotentialGeometry& shape, double lo, double hi,
                                    double step)
{
    const ScalarFunction fn = [&](double v) { return scaled_condition(condition, shape.with_v0(v)); };
    std::vector<double> out;
    for (const auto& r : roots_in_range(fn, lo, hi, step)) {
        if (!r.suspected_double) {
            out.push_back(r.root);
        }
    }
    return out;
}

std::vector<double> first_condition_roots(SpecialCondition condition, const PotentialGeometry& shape, int count)
{
    std::vector<double> roots;
    double lo = kParameterFloor;
    while (static_cast<int>(roots.size()) < count) {
        if (lo > kParameterCeiling) {
            throw DiagnosticError("special-v0 search exceeded v0 = 1e4");
        }
        const double hi = lo + kParameterWindow;
        for (double r : condition_roots(condition, shape, lo, hi, kParameterStep)) {
            if (roots.empty() || r - roots.back() > 1e-10 * std::max(1.0, r)) {
                roots.push_back(r);
            }
        }
        lo = hi;
    }
    roots.resize(static_cast<std::size_t>(count));
    return roots;
}

}  // namespace

SpectrumRequest SpectrumRequest::first(const PotentialGeometry& geom, int n_states)
{
    SpectrumRequest r{geom, n_states, std::nullopt};
    r.validate();
    return r;
}

SpectrumRequest SpectrumRequest::up_to(const PotentialGeometry& geom, double e_max)
{
    SpectrumRequest r{geom, std::nullopt, e_max};
    r.validate();
    return r;
}

void SpectrumRequest::validate() const
{
    if (n_states.has_value() == e_max.has_value()) {
        throw DomainError("set exactly one of n_states / e_max");
    }
    if (n_states && *n_states < 1) {
        throw DomainError("n_states must be at least 1");
    }
    if (e_max && !(*e_max > -geometry.v0())) {
        throw DomainError("e_max must exceed -v0");
    }
}

std::string to_string(SpecialCondition condition)
{
    switch (condition) {
    case SpecialCondition::ZeroEnergy: return "f";
    case SpecialCondition::BarrierTop: return "g";
    case SpecialCondition::Both: return "both";
    }
    return "?";
}

double DiagnosticsReport::max_offdiagonal_overlap() const
{
    double m = 0.0;
    for (std::size_t i = 0; i < overlap_matrix.size(); ++i) {
        for (std::size_t j = 0; j < overlap_matrix.size(); ++j) {
            if (i != j) {
                m = std::max(m, std::abs(overlap_matrix[i][j]));
            }
        }
    }
    return m;
}

double DiagnosticsReport::max_diagonal_error() const
{
    double m = 0.0;
    for (std::size_t i = 0; i < overlap_matrix.size(); ++i) {
        m = std::max(m, std::abs(overlap_matrix[i][i] - 1.0));
    }
    return m;
}

double DiagnosticsReport::min_uncertainty() const
{
    return uncertainty_products.empty() ? 0.0 : *std::min_element(uncertainty_products.begin(), uncertainty_products.end());
}

double DiagnosticsReport::max_c1_residual() const
{
    return c1_residuals.empty() ? 0.0 : *std::max_element(c1_residuals.begin(), c1_residuals.end());
}

int analytic_state_count(double energy, const PotentialGeometry& geom)
{
    const double a = geom.a();
    const double b = geom.b();
    const double v0 = geom.v0();
    const double lengths[4] = {a - b, b, b, a - b};
    const double potentials[4] = {0.0, -v0, v0, 0.0};
    double value = 0.0;
    double slope = 1.0;
    int zeros = 0;
    for (int s = 0; s < 4; ++s) {
        const auto step = propagate(value, slope, lengths[s], potentials[s] - energy);
        zeros += step.zeros;
        const double norm = std::hypot(step.value, step.slope);
        value = step.value / norm;
        slope = step.slope / norm;
    }
    // A zero landing exactly on the right wall is the eigenvalue itself.
    if (value == 0.0) {
        --zeros;
    }
    return zeros;
}

Eigenstate build_state(StateKind kind, double energy, const PotentialGeometry& geom)
{
    const auto solution = coefficients_for(kind, energy, geom);
    auto psi = normalize(build_wavefunction(kind, energy, solution.coefficients, geom));
    return {-1, energy, kind, solution.coefficients, std::move(psi)};
}

bool has_zero_energy_state(const PotentialGeometry& geom)
{
    return geom.v0() > 0.0 && relative_f(geom) <= kSpecialTolerance;
}

bool has_barrier_top_state(const PotentialGeometry& geom)
{
    return geom.v0() > 0.0 && relative_g(geom) <= kSpecialTolerance;
}

SpectrumResult solve_spectrum(const SpectrumRequest& request)
{
    request.validate();
    const PotentialGeometry& geom = request.geometry;
    const double v0 = geom.v0();
    const double a = geom.a();
    const double pi2 = std::numbers::pi * std::numbers::pi;
    const double step = std::min(0.01, pi2 / (8.0 * a * a));
    const double window = 10.0 * pi2 / (4.0 * a * a);

    double e_hi = 0.0;
    if (request.n_states) {
        e_hi = std::max(v0, 0.0) + window;
        while (analytic_state_count(e_hi, geom) < *request.n_states) {
            e_hi += window;
        }
    } else {
        e_hi = *request.e_max;
    }

    DiagnosticsReport diag;
    struct Found {
        double energy;
        StateKind kind;
    };
    std::vector<Found> found;
    if (v0 > 0.0) {
        diag.f_relative = relative_f(geom);
        diag.g_relative = relative_g(geom);
        if (*diag.f_relative <= kSpecialTolerance && 0.0 <= e_hi) {
            found.push_back({0.0, StateKind::ZeroEnergy});
        }
        if (*diag.g_relative <= kSpecialTolerance && v0 <= e_hi) {
            found.push_back({v0, StateKind::BarrierTop});
        }
    }

    // Generic roots, scanned branch by branch with the seams as shared
    // endpoints (the scaled function is continuous there).
    const ScalarFunction fn = [&](double e) { return characteristic_scaled(e, geom); };
    std::vector<std::pair<double, double>> pieces;
    if (v0 > 0.0) {
        pieces.emplace_back(-v0, std::min(0.0, e_hi));
        if (e_hi > 0.0) {
            pieces.emplace_back(0.0, std::min(v0, e_hi));
        }
        if (e_hi > v0) {
            pieces.emplace_back(v0, e_hi);
        }
    } else {
        pieces.emplace_back(0.0, e_hi);
    }
    const double seam_tol = seam_tolerance(geom);
    auto near_special = [&](double e) {
        return std::any_of(found.begin(), found.end(), [&](const Found& f) {
            return f.kind != StateKind::Generic && std::abs(f.energy - e) <= seam_tol;
        });
    };
    std::vector<double> generic;
    for (const auto& [lo, hi] : pieces) {
        if (!(hi > lo)) {
            continue;
        }
        for (const auto& r : roots_in_range(fn, lo, hi, step)) {
            if (r.suspected_double) {
                diag.suspected_double_roots.push_back(r.root);
                continue;
            }
            if (r.root <= -v0 || r.root > e_hi || near_special(r.root)) {
                continue;
            }
            generic.push_back(r.root);
        }
    }
    std::sort(generic.begin(), generic.end());
    for (double e : generic) {
        const bool dup = std::any_of(found.begin(), found.end(), [&](const Found& f) {
            return std::abs(f.energy - e) <= 1e-10 * std::max(1.0, std::abs(e));
        });
        if (!dup) {
            found.push_back({e, StateKind::Generic});
        }
    }
    std::sort(found.begin(), found.end(), [](const Found& x, const Found& y) { return x.energy < y.energy; });

    // Completeness: count eigenvalues between consecutive found energies and
    // isolate any the scan missed by bisecting on the count.
    std::vector<double> recovered;
    std::function<void(double, double, int, int)> isolate = [&](double lo, double hi, int c_lo, int c_hi) {
        if (c_hi <= c_lo) {
            return;
        }
        if (c_hi - c_lo == 1) {
            const double f_lo = fn(lo);
            const double f_hi = fn(hi);
            if ((f_lo < 0.0) != (f_hi < 0.0) && f_lo != 0.0 && f_hi != 0.0) {
                recovered.push_back(refine(fn, {lo, hi, f_lo, f_hi}).root);
                return;
            }
            if (hi - lo <= 1e-13 * std::max(1.0, std::abs(lo))) {
                recovered.push_back(0.5 * (lo + hi));
                return;
            }
        }
        const double mid = 0.5 * (lo + hi);
        const int c_mid = analytic_state_count(mid, geom);
        isolate(lo, mid, c_lo, c_mid);
        isolate(mid, hi, c_mid, c_hi);
    };
    {
        std::vector<double> marks{-v0};
        for (std::size_t i = 0; i + 1 < found.size(); ++i) {
            marks.push_back(0.5 * (found[i].energy + found[i + 1].energy));
        }
        const double top = found.empty() ? e_hi : std::max(e_hi, found.back().energy);
        marks.push_back(top);
        int expected_below = 0;
        for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
            const int c_lo = i == 0 ? 0 : analytic_state_count(marks[i], geom);
            const int c_hi = analytic_state_count(marks[i + 1], geom);
            // Interval i holds found state i (if any) plus whatever is missing.
            const int present = i < found.size() ? 1 : 0;
            if (c_hi - c_lo > present) {
                if (present == 1) {
                    const double e = found[i].energy;
                    const double eps = 1e-9 * std::max(1.0, std::abs(e));
                    isolate(marks[i], e - eps, c_lo, analytic_state_count(e - eps, geom));
                    isolate(e + eps, marks[i + 1], analytic_state_count(e + eps, geom), c_hi);
                } else {
                    isolate(marks[i], marks[i + 1], c_lo, c_hi);
                }
            }
            expected_below = c_hi;
        }
        (void)expected_below;
    }
    for (double e : recovered) {
        if (e > -v0 && e <= e_hi) {
            diag.recovered_energies.push_back(e);
            found.push_back({e, StateKind::Generic});
        }
    }
    std::sort(found.begin(), found.end(), [](const Found& x, const Found& y) { return x.energy < y.energy; });
    if (request.n_states && static_cast<int>(found.size()) > *request.n_states) {
        found.resize(static_cast<std::size_t>(*request.n_states));
    }
    if (request.n_states && static_cast<int>(found.size()) < *request.n_states) {
        throw DiagnosticError("found only " + std::to_string(found.size()) + " of " +
                              std::to_string(*request.n_states) + " requested states");
    }

    SpectrumResult result{geom, {}, {}};
    for (std::size_t i = 0; i < found.size(); ++i) {
        Eigenstate st = build_state(found[i].kind, found[i].energy, geom);
        st.index = static_cast<int>(i);
        const int nodes = count_nodes(st.wavefunction);
        if (nodes != st.index) {
            std::ostringstream msg;
            msg.precision(12);
            msg << "state " << i << " at E=" << st.energy << " has " << nodes << " nodes; a state is missing";
            const double lo = i == 0 ? -v0 : found[i - 1].energy;
            msg << " or spurious in (" << lo << ", " << st.energy << ")";
            throw DiagnosticError(msg.str());
        }
        diag.node_counts.push_back(nodes);
        result.states.push_back(std::move(st));
    }

    const QuadratureRule rule = split_simpson(geom);
    std::vector<Samples> samples;
    samples.reserve(result.states.size());
    for (const auto& st : result.states) {
        samples.push_back(sample(st.wavefunction, rule));
        diag.uncertainty_products.push_back(uncertainty_from_samples(rule, samples.back()));
        diag.c1_residuals.push_back(c1_residual(st.wavefunction));
    }
    const std::size_t n = samples.size();
    diag.overlap_matrix.assign(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double o = weighted_dot(rule.weights, samples[i].psi, samples[j].psi);
            diag.overlap_matrix[i][j] = o;
            diag.overlap_matrix[j][i] = o;
        }
    }
    result.diagnostics = std::move(diag);
    return result;
}

std::vector<SpecialRoot> special_v0_catalog(SpecialCondition condition, int count, const PotentialGeometry& shape)
{
    if (count < 1) {
        throw DomainError("count must be at least 1");
    }
    if (condition == SpecialCondition::Both) {
        return doubly_special_v0(count, shape);
    }
    std::vector<SpecialRoot> out;
    for (double v : first_condition_roots(condition, shape, count)) {
        out.push_back(annotate(condition, v, shape));
    }
    return out;
}

std::vector<SpecialPair> nearest_special_pairs(int count, const PotentialGeometry& shape)
{
    if (count < 1) {
        throw DomainError("count must be at least 1");
    }
    const auto f_roots = first_condition_roots(SpecialCondition::ZeroEnergy, shape, count);
    const double g_hi = f_roots.back() + 1.0;
    std::vector<double> g_roots;
    for (double lo = kParameterFloor; lo < g_hi; lo += kParameterWindow) {
        for (double r : condition_roots(SpecialCondition::BarrierTop, shape, lo, std::min(g_hi, lo + kParameterWindow),
                                        kParameterStep)) {
            if (g_roots.empty() || r - g_roots.back() > 1e-10 * std::max(1.0, r)) {
                g_roots.push_back(r);
            }
        }
    }
    std::vector<SpecialPair> out;
    for (double vf : f_roots) {
        SpecialPair pair;
        pair.zero_root = annotate(SpecialCondition::ZeroEnergy, vf, shape);
        if (g_roots.empty()) {
            out.push_back(pair);
            continue;
        }
        const double vg = *std::min_element(g_roots.begin(), g_roots.end(),
                                            [&](double x, double y) { return std::abs(x - vf) < std::abs(y - vf); });
        pair.top_root = annotate(SpecialCondition::BarrierTop, vg, shape);
        pair.separation = std::abs(vf - vg);
        auto both_small = [&](double v) {
            const auto g = shape.with_v0(v);
            return std::abs(f_zero_energy(g)) <= kSimultaneousTolerance &&
                   std::abs(g_barrier_top(g)) <= kSimultaneousTolerance;
        };
        pair.simultaneous = both_small(vf) || both_small(vg);
        out.push_back(pair);
    }
    return out;
}

std::vector<SpecialRoot> doubly_special_v0(int count, const PotentialGeometry& shape, double v0_max)
{
    if (count < 1) {
        throw DomainError("count must be at least 1");
    }
    std::vector<double> f_roots;
    for (double lo = kParameterFloor; lo < v0_max; lo += kParameterWindow) {
        for (double r : condition_roots(SpecialCondition::ZeroEnergy, shape, lo, std::min(v0_max, lo + kParameterWindow),
                                        kParameterStep)) {
            if (f_roots.empty() || r - f_roots.back() > 1e-10 * std::max(1.0, r)) {
                f_roots.push_back(r);
            }
        }
    }
    std::vector<SpecialRoot> out;
    if (f_roots.empty()) {
        return out;
    }
    const auto pairs = nearest_special_pairs(static_cast<int>(f_roots.size()), shape);
    for (const auto& pair : pairs) {
        if (!pair.simultaneous) {
            continue;
        }
        SpecialRoot root = pair.zero_root;
        root.condition = SpecialCondition::Both;
        root.top_index = pair.top_root.state_index;
        out.push_back(root);
        if (static_cast<int>(out.size()) == count) {
            break;
        }
    }
    return out;
}

std::optional<SpecialRoot> nearest_special_root(const PotentialGeometry& geom, double window)
{
    const double v0 = geom.v0();
    const double lo = std::max(kParameterFloor, v0 - window);
    const double hi = v0 + window;
    if (!(window > 0.0) || !(hi > lo)) {
        return std::nullopt;
    }
    const double step = std::min(kParameterStep, (hi - lo) / 20.0);
    std::optional<SpecialRoot> best;
    for (auto condition : {SpecialCondition::ZeroEnergy, SpecialCondition::BarrierTop}) {
        for (double r : condition_roots(condition, geom, lo, hi, step)) {
            if (std::abs(r - v0) <= window && (!best || std::abs(r - v0) < std::abs(best->v0 - v0))) {
                best = annotate(condition, r, geom);
            }
        }
    }
    return best;
}

PiecewiseWavefunction normalize(const PiecewiseWavefunction& psi)
{
    const QuadratureRule rule = split_simpson(psi.geometry());
    const Samples s = sample(psi, rule);
    const double norm2 = weighted_dot(rule.weights, s.psi, s.psi);
    if (!(norm2 > 0.0) || !std::isfinite(norm2)) {
        throw DomainError("cannot normalise a wavefunction with zero norm");
    }
    return psi.scaled(1.0 / std::sqrt(norm2));
}

int count_nodes(const PiecewiseWavefunction& psi)
{
    const auto& geom = psi.geometry();
    std::vector<double> marks{-geom.a(), -geom.b(), 0.0, geom.b(), geom.a()};
    for (const auto& seg : psi.segments()) {
        const auto z = segment_zeros(seg);
        marks.insert(marks.end(), z.begin(), z.end());
    }
    std::sort(marks.begin(), marks.end());
    marks.erase(std::unique(marks.begin(), marks.end()), marks.end());

    const QuadratureRule rule = split_simpson(geom);
    const double threshold = kNodeThreshold * max_abs(sample(psi, rule).psi);

    int nodes = 0;
    int last_sign = 0;
    for (std::size_t i = 0; i + 1 < marks.size(); ++i) {
        const double u = marks[i];
        const double v = marks[i + 1];
        double best = 0.0;
        for (int j = 1; j <= 9; ++j) {
            const double y = psi.value(u + (v - u) * j / 10.0);
            if (std::abs(y) > std::abs(best)) {
                best = y;
            }
        }
        if (std::abs(best) <= threshold) {
            continue;
        }
        const int sign = best > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) {
            ++nodes;
        }
        last_sign = sign;
    }
    return nodes;
}

double overlap(const PiecewiseWavefunction& lhs, const PiecewiseWavefunction& rhs)
{
    if (!(lhs.geometry() == rhs.geometry())) {
        throw DomainError("overlap of states from different potentials");
    }
    const QuadratureRule rule = split_simpson(lhs.geometry());
    return weighted_dot(rule.weights, sample(lhs, rule).psi, sample(rhs, rule).psi);
}

double uncertainty_product(const PiecewiseWavefunction& psi)
{
    const QuadratureRule rule = split_simpson(psi.geometry());
    return uncertainty_from_samples(rule, sample(psi, rule));
}

double c1_residual(const PiecewiseWavefunction& psi)
{
    const auto& geom = psi.geometry();
    const QuadratureRule rule = split_simpson(geom);
    const double scale = max_abs(sample(psi, rule).psi);
    double worst = 0.0;
    for (double x : {-geom.b(), 0.0, geom.b()}) {
        worst = std::max(worst, std::abs(psi.value_from_left(x) - psi.value_from_right(x)));
        worst = std::max(worst, std::abs(psi.derivative_from_left(x) - psi.derivative_from_right(x)));
    }
    return worst / scale;
}

}  // namespace asw
