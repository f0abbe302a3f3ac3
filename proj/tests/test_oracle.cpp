#include "asw/oracle.hpp"

#include <doctest.h>

#include <cmath>

using namespace asw;

TEST_CASE("operator layout")
{
    const auto g = reference_geometry(5);
    const auto op = build_operator(g, 2003);
    CHECK(op.n_points == 2003);
    CHECK(op.h == doctest::Approx(12.0 / 2004));
    CHECK(op.offdiag == doctest::Approx(-1 / (op.h * op.h)));
    const double kinetic = 2 / (op.h * op.h);
    for (int i = 0; i < op.n_points; ++i) {
        const double x = -6 + (i + 1) * op.h;
        if (x > 0.01 && x < 1.99) {
            CHECK(op.diag[static_cast<std::size_t>(i)] == doctest::Approx(kinetic + 5));
        } else if (x < -2.01 || x > 2.01) {
            CHECK(op.diag[static_cast<std::size_t>(i)] == doctest::Approx(kinetic));
        }
    }
    // Nodes on the jumps take the mean of the two sides.
    CHECK(op.diag[1001] == doctest::Approx(kinetic));  // x = 0
    CHECK_THROWS_AS(build_operator(g, 15), DomainError);
}

TEST_CASE("aligned grids put -b, 0, b on nodes and keep exact ratios")
{
    const auto g = reference_geometry(1);
    const auto grids = aligned_grids(g, {2000, 4000, 8000, 16000});
    REQUIRE(grids.size() == 4);
    CHECK(grids[0] == 2003);
    for (std::size_t i = 1; i < grids.size(); ++i) {
        CHECK(grids[i] + 1 == 2 * (grids[i - 1] + 1));
    }
    for (int n : grids) {
        const double h = 12.0 / (n + 1);
        for (double x : {-2.0, 0.0, 2.0}) {
            const double idx = (x + 6) / h;
            CHECK(std::abs(idx - std::round(idx)) < 1e-9);
        }
    }
}

TEST_CASE("Sturm count and bisection on the free box")
{
    const auto op = build_operator(reference_geometry(0), 4000);
    const auto ev = lowest_eigenvalues(op, 6);
    for (int n = 1; n <= 6; ++n) {
        CHECK(std::abs(ev[static_cast<std::size_t>(n - 1)] - n * n * M_PI * M_PI / 144) < 1e-4);
    }
    CHECK(sturm_count(op, 0.0) == 0);
    CHECK(sturm_count(op, 0.5 * (ev[2] + ev[3])) == 3);
    CHECK_THROWS_AS(lowest_eigenvalues(build_operator(reference_geometry(0), 16), 17), DomainError);
}

TEST_CASE("tabulated levels from the grid alone")
{
    CHECK(std::abs(lowest_eigenvalues(build_operator(reference_geometry(5), 8000), 1)[0] - (-3.7338)) < 1e-3);
    const auto small = lowest_eigenvalues(build_operator(reference_geometry(0.0001), 8000), 6);
    const double row1[6] = {0.0685, 0.2741, 0.6169, 1.0966, 1.7135, 2.4674};
    for (int i = 0; i < 6; ++i) {
        CHECK(std::abs(small[static_cast<std::size_t>(i)] - row1[i]) < 1e-3);
    }
    const auto deep = lowest_eigenvalues(build_operator(reference_geometry(26.31113), 16000), 4);
    const double row10[4] = {-24.5023, -19.1399, -10.4840, 0.0};
    for (int i = 0; i < 4; ++i) {
        CHECK(std::abs(deep[static_cast<std::size_t>(i)] - row10[i]) < 1e-2);
    }
}

TEST_CASE("cross-validation at v0 = 5")
{
    const auto spectrum = solve_spectrum(SpectrumRequest::first(reference_geometry(5), 6));
    const auto report = cross_validate(spectrum, {2000, 4000, 8000});
    CHECK(report.ok());
    CHECK(report.max_abs_deviation() <= 1e-3);
    CHECK(report.ratios[0] >= 3.5);
    CHECK(report.ratios[0] <= 4.5);
    // Extrapolation improves on the finest grid.
    for (std::size_t i = 0; i < report.analytic.size(); ++i) {
        const double finest = std::abs(report.eigenvalues_per_grid.back()[i] - report.analytic[i]);
        CHECK(std::abs(report.deviations[i]) < finest);
    }
}

TEST_CASE("cross-validation partners the zero-energy state")
{
    const auto shape = reference_geometry(1);
    const double v0 = special_v0_catalog(SpecialCondition::ZeroEnergy, 2, shape)[1].v0;
    const auto spectrum = solve_spectrum(SpectrumRequest::first(reference_geometry(v0), 6));
    REQUIRE(spectrum.states[1].kind == StateKind::ZeroEnergy);
    const auto report = cross_validate(spectrum, {2000, 4000, 8000});
    CHECK(report.ok());
    CHECK(std::abs(report.extrapolated[1]) < 1e-6);
}

TEST_CASE("cross-validation on the free box")
{
    const auto spectrum = solve_spectrum(SpectrumRequest::first(reference_geometry(0), 6));
    const auto report = cross_validate(spectrum, {2000, 4000, 8000});
    CHECK(report.ok());
    CHECK(report.max_abs_deviation() <= 1e-5);
}

TEST_CASE("a dropped state is reported on both sides")
{
    auto spectrum = solve_spectrum(SpectrumRequest::first(reference_geometry(5), 6));
    spectrum.states.erase(spectrum.states.begin() + 2);
    const auto report = cross_validate(spectrum, {2000, 4000, 8000});
    CHECK_FALSE(report.ok());
    bool analytic_side = false;
    bool oracle_side = false;
    for (const auto& f : report.failures) {
        analytic_side |= f.find("no oracle partner") != std::string::npos;
        oracle_side |= f.find("no analytic partner") != std::string::npos;
    }
    CHECK(analytic_side);
    CHECK(oracle_side);
}

TEST_CASE("Sturm counts agree with the analytic count")
{
    for (double v0 : {0.7, 9.0, 21.0}) {
        const auto g = reference_geometry(v0);
        const auto spectrum = solve_spectrum(SpectrumRequest::first(g, 8));
        const auto op = build_operator(g, aligned_grid_size(g, 8000));
        for (std::size_t i = 0; i + 1 < spectrum.states.size(); ++i) {
            const double mid = 0.5 * (spectrum.states[i].energy + spectrum.states[i + 1].energy);
            CAPTURE(v0);
            CAPTURE(mid);
            CHECK(sturm_count(op, mid) == analytic_state_count(mid, g));
        }
    }
}
