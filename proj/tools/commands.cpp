#include "commands.hpp"

#include "asw/oracle.hpp"
#include "asw/output.hpp"
#include "asw/spectrum.hpp"
#include "asw/table1.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>

namespace asw::cli {

namespace {

constexpr double kSnapWindow = 1e-3;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Config {
    double a = 6.0;
    double b = 2.0;
    std::optional<double> v0;
    int n_states = 6;
    std::optional<double> e_max;
    int grid_n = 8000;
    int samples = 1200;
    std::string format = "csv";
    std::string output;
    bool no_snap = false;

    std::string condition;
    int count = 4;
    int index = 0;
};

// Status is the exit code the records come with.
struct Outcome {
    Document doc;
    int status = kExitOk;
    std::vector<std::string> messages;
};

Cell num(double x) { return x; }
Cell integer(long long x) { return static_cast<std::int64_t>(x); }

struct Resolved {
    PotentialGeometry geometry;
    double v0_requested;
    bool snapped;
};

Resolved resolve_geometry(const Config& cfg)
{
    if (!cfg.v0) {
        throw DomainError("--v0 is required for this command");
    }
    PotentialGeometry geom(cfg.a, cfg.b, *cfg.v0);
    bool snapped = false;
    if (!cfg.no_snap && geom.v0() > 0.0) {
        if (auto root = nearest_special_root(geom, kSnapWindow); root && root->v0 != geom.v0()) {
            geom = geom.with_v0(root->v0);
            snapped = true;
        }
    }
    return {geom, *cfg.v0, snapped};
}

RecordTable parameters_table(const Resolved& r)
{
    RecordTable t{"parameters", {"a", "b", "v0_requested", "v0_used", "snapped"}, {}};
    t.add({num(r.geometry.a()), num(r.geometry.b()), num(r.v0_requested), num(r.geometry.v0()), r.snapped});
    return t;
}

SpectrumRequest request_for(const Config& cfg, const PotentialGeometry& geom, int min_states = 0)
{
    if (cfg.e_max) {
        return SpectrumRequest::up_to(geom, *cfg.e_max);
    }
    return SpectrumRequest::first(geom, std::max(cfg.n_states, min_states));
}

Outcome cmd_spectrum(const Config& cfg)
{
    const auto resolved = resolve_geometry(cfg);
    const auto result = solve_spectrum(request_for(cfg, resolved.geometry));
    const auto& d = result.diagnostics;

    Outcome o;
    o.doc.command = "spectrum";
    o.doc.tables.push_back(parameters_table(resolved));
    RecordTable states{"spectrum", {"index", "energy", "kind", "nodes", "U", "c1_residual"}, {}};
    for (std::size_t i = 0; i < result.states.size(); ++i) {
        const auto& s = result.states[i];
        states.add({integer(s.index), num(s.energy), to_string(s.kind), integer(d.node_counts[i]),
                    num(d.uncertainty_products[i]), num(d.c1_residuals[i])});
    }
    o.doc.tables.push_back(std::move(states));
    RecordTable diag{"diagnostics",
                     {"f_relative", "g_relative", "max_offdiagonal_overlap", "max_norm_error", "min_U",
                      "max_c1_residual", "recovered_states", "suspected_double_roots"},
                     {}};
    diag.add({num(d.f_relative.value_or(kNaN)), num(d.g_relative.value_or(kNaN)), num(d.max_offdiagonal_overlap()),
              num(d.max_diagonal_error()), num(d.min_uncertainty()), num(d.max_c1_residual()),
              integer(static_cast<long long>(d.recovered_energies.size())),
              integer(static_cast<long long>(d.suspected_double_roots.size()))});
    o.doc.tables.push_back(std::move(diag));
    return o;
}

RecordTable root_table(const std::vector<SpecialRoot>& roots)
{
    RecordTable t{"special", {"condition", "index", "v0", "state_index", "top_index", "f_residual", "g_residual"}, {}};
    for (std::size_t i = 0; i < roots.size(); ++i) {
        const auto& r = roots[i];
        t.add({to_string(r.condition), integer(static_cast<long long>(i)), num(r.v0), integer(r.state_index),
               integer(r.top_index), num(r.f_residual), num(r.g_residual)});
    }
    return t;
}

Outcome cmd_special(const Config& cfg)
{
    if (cfg.count < 1) {
        throw DomainError("--count must be at least 1");
    }
    const PotentialGeometry shape(cfg.a, cfg.b, cfg.v0.value_or(0.0));
    Outcome o;
    o.doc.command = "special " + cfg.condition;
    if (cfg.condition == "f" || cfg.condition == "g") {
        const auto condition = cfg.condition == "f" ? SpecialCondition::ZeroEnergy : SpecialCondition::BarrierTop;
        o.doc.tables.push_back(root_table(special_v0_catalog(condition, cfg.count, shape)));
        return o;
    }
    const auto found = doubly_special_v0(cfg.count, shape);
    o.doc.tables.push_back(root_table(found));
    RecordTable pairs{"special_pair",
                      {"index", "f_root", "g_root", "separation", "zero_index", "top_index", "f_at_g_root",
                       "g_at_f_root", "simultaneous"},
                      {}};
    const auto nearest = nearest_special_pairs(cfg.count, shape);
    for (std::size_t i = 0; i < nearest.size(); ++i) {
        const auto& p = nearest[i];
        pairs.add({integer(static_cast<long long>(i)), num(p.zero_root.v0), num(p.top_root.v0), num(p.separation),
                   integer(p.zero_root.state_index), integer(p.top_root.state_index), num(p.top_root.f_residual),
                   num(p.zero_root.g_residual), p.simultaneous});
    }
    o.doc.tables.push_back(std::move(pairs));
    if (static_cast<int>(found.size()) < cfg.count) {
        o.status = kExitNumerical;
        o.messages.push_back("found " + std::to_string(found.size()) + " of " + std::to_string(cfg.count) +
                             " simultaneous roots of f and g");
    }
    return o;
}

Outcome cmd_wavefunction(const Config& cfg)
{
    if (cfg.index < 0) {
        throw DomainError("state index must be non-negative");
    }
    if (cfg.samples < 2) {
        throw DomainError("--samples must be at least 2");
    }
    const auto resolved = resolve_geometry(cfg);
    const auto result = solve_spectrum(request_for(cfg, resolved.geometry, cfg.index + 1));
    if (cfg.index >= static_cast<int>(result.states.size())) {
        throw DomainError("state " + std::to_string(cfg.index) + " lies above --e-max");
    }
    const auto i = static_cast<std::size_t>(cfg.index);
    const auto& state = result.states[i];
    const auto& psi = state.wavefunction;

    Outcome o;
    o.doc.command = "wavefunction";
    o.doc.tables.push_back(parameters_table(resolved));
    RecordTable meta{"state", {"index", "energy", "kind", "nodes", "norm", "U"}, {}};
    meta.add({integer(state.index), num(state.energy), to_string(state.kind), integer(result.diagnostics.node_counts[i]),
              num(psi.norm()), num(result.diagnostics.uncertainty_products[i])});
    o.doc.tables.push_back(std::move(meta));
    RecordTable samples{"sample", {"x", "psi"}, {}};
    const double a = resolved.geometry.a();
    for (int j = 0; j < cfg.samples; ++j) {
        const double x = j == cfg.samples - 1 ? a : -a + 2.0 * a * j / (cfg.samples - 1);
        samples.add({num(x), num(evaluate_wavefunction(psi, x))});
    }
    o.doc.tables.push_back(std::move(samples));
    return o;
}

Outcome cmd_oracle(const Config& cfg)
{
    if (cfg.grid_n < 64) {
        throw DomainError("--grid-n must be at least 64");
    }
    const auto resolved = resolve_geometry(cfg);
    const auto spectrum = solve_spectrum(request_for(cfg, resolved.geometry));
    const auto report = cross_validate(spectrum, {cfg.grid_n / 4, cfg.grid_n / 2, cfg.grid_n});

    Outcome o;
    o.doc.command = "oracle";
    o.doc.tables.push_back(parameters_table(resolved));
    RecordTable grid{"oracle_grid", {"N", "index", "eigenvalue"}, {}};
    for (std::size_t g = 0; g < report.grid_sizes.size(); ++g) {
        for (std::size_t i = 0; i < report.eigenvalues_per_grid[g].size(); ++i) {
            grid.add({integer(report.grid_sizes[g]), integer(static_cast<long long>(i)),
                      num(report.eigenvalues_per_grid[g][i])});
        }
    }
    o.doc.tables.push_back(std::move(grid));
    RecordTable rows{"oracle", {"index", "kind", "analytic", "extrapolated", "deviation", "ratio"}, {}};
    for (std::size_t i = 0; i < report.analytic.size(); ++i) {
        rows.add({integer(static_cast<long long>(i)), to_string(spectrum.states[i].kind), num(report.analytic[i]),
                  num(report.extrapolated[i]), num(report.deviations[i]), num(report.ratios[i])});
    }
    o.doc.tables.push_back(std::move(rows));
    if (!report.ok()) {
        o.status = kExitNumerical;
        o.messages = report.failures;
    }
    return o;
}

Outcome cmd_table1(const Config&)
{
    const auto report = reproduce_table1(kSnapWindow);
    Outcome o;
    o.doc.command = "table1";
    const std::vector<std::string> columns{"row",   "v0_printed", "v0_used",   "index",     "published",
                                           "published_value", "computed", "kind", "deviation", "tolerance", "pass"};
    auto fill = [&](const char* name, const std::vector<EntryComparison>& list) {
        RecordTable t{name, columns, {}};
        for (const auto& e : list) {
            t.add({integer(e.serial), num(e.v0_printed), num(e.v0_used), integer(e.index), e.published_text,
                   num(e.published_value), num(e.computed), to_string(e.kind), num(e.deviation), num(e.tolerance), e.pass});
        }
        o.doc.tables.push_back(std::move(t));
    };
    fill("table1", report.entries);
    fill("table1_star", report.star_entries);
    RecordTable summary{"table1_summary", {"entries", "failures", "max_deviation"}, {}};
    summary.add({integer(static_cast<long long>(report.entries.size() + report.star_entries.size())),
                 integer(report.failures()), num(report.max_deviation())});
    o.doc.tables.push_back(std::move(summary));
    // Kept out of the records so output stays byte-for-byte reproducible.
    char timing[64];
    std::snprintf(timing, sizeof timing, "table1 runtime %.3f s", report.runtime_seconds);
    o.messages.emplace_back(timing);
    if (!report.ok()) {
        o.status = kExitNumerical;
        for (const auto* list : {&report.entries, &report.star_entries}) {
            for (const auto& e : *list) {
                if (!e.pass) {
                    o.messages.push_back("row " + std::to_string(e.serial) + " E" + std::to_string(e.index) +
                                         ": published " + e.published_text + ", computed " + format_number(e.computed) +
                                         " (" + to_string(e.kind) + ")");
                }
            }
        }
    }
    return o;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err)
{
    Config cfg;
    CLI::App app{"Bound states of a square well and barrier between rigid walls", "asw"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--a", cfg.a, "Wall position (walls at -a, a)")->capture_default_str();
    app.add_option("--b", cfg.b, "Well and barrier width")->capture_default_str();
    app.add_option("--v0", cfg.v0, "Well depth and barrier height");
    app.add_option("--n-states", cfg.n_states, "Number of lowest states")->capture_default_str();
    app.add_option("--e-max", cfg.e_max, "All states up to this energy (overrides --n-states)");
    app.add_option("--grid-n", cfg.grid_n, "Finest finite-difference grid")->capture_default_str();
    app.add_option("--samples", cfg.samples, "Wavefunction samples over [-a, a]")->capture_default_str();
    app.add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--output", cfg.output, "Write records to this file");
    app.add_flag("--no-snap", cfg.no_snap, "Use --v0 as given, even next to a special value");

    auto* spectrum = app.add_subcommand("spectrum", "Lowest states with kinds and diagnostics");
    auto* special = app.add_subcommand("special", "Special v0 values: f (zero energy), g (barrier top), both");
    special->add_option("condition", cfg.condition)->required()->check(CLI::IsMember({"f", "g", "both"}));
    special->add_option("--count", cfg.count, "Number of roots")->capture_default_str();
    auto* wavefunction = app.add_subcommand("wavefunction", "Sampled normalised eigenfunction");
    wavefunction->add_option("index", cfg.index, "State index")->required();
    auto* oracle = app.add_subcommand("oracle", "Finite-difference cross-check at grid-n/4, grid-n/2, grid-n");
    auto* table1 = app.add_subcommand("table1", "Reproduce the reference table at a=6, b=2");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    Outcome outcome;
    try {
        if (spectrum->parsed()) {
            outcome = cmd_spectrum(cfg);
        } else if (special->parsed()) {
            outcome = cmd_special(cfg);
        } else if (wavefunction->parsed()) {
            outcome = cmd_wavefunction(cfg);
        } else if (oracle->parsed()) {
            outcome = cmd_oracle(cfg);
        } else if (table1->parsed()) {
            outcome = cmd_table1(cfg);
        }
    } catch (const DomainError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }

    const Format format = cfg.format == "json" ? Format::Json : Format::Csv;
    if (cfg.output.empty()) {
        write_document(outcome.doc, format, out);
    } else {
        std::ofstream file(cfg.output);
        if (!file) {
            err << "error: cannot open " << cfg.output << '\n';
            return kExitUsage;
        }
        write_document(outcome.doc, format, file);
    }
    for (const auto& m : outcome.messages) {
        err << m << '\n';
    }
    return outcome.status;
}

}  // namespace asw::cli
