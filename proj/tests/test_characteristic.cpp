#include "asw/characteristic.hpp"
#include "asw/spectrum.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace asw;

namespace {

double rel_f(double v0)
{
    const auto g = reference_geometry(v0);
    return f_zero_energy(g) / f_zero_energy_scale(g);
}

double rel_g(double v0)
{
    const auto g = reference_geometry(v0);
    return g_barrier_top(g) / g_barrier_top_scale(g);
}

bool sign_change(double lhs, double rhs) { return (lhs < 0) != (rhs < 0); }

}  // namespace

TEST_CASE("zero-energy condition vanishes at its tabulated roots")
{
    for (double v0 : {0.3333, 4.09982, 12.7396, 26.31113}) {
        CAPTURE(v0);
        CHECK(std::abs(rel_f(v0)) < 1e-3);
        CHECK(sign_change(rel_f(v0 - 1e-3), rel_f(v0 + 1e-3)));
    }
    CHECK(std::abs(rel_f(2.0)) > 1e-2);
    CHECK_THROWS_AS(f_zero_energy(reference_geometry(0)), DomainError);
}

TEST_CASE("zero-energy condition near q = 0 behaves like q (2d + 2b)")
{
    const double v0 = 1e-10;
    const double q = std::sqrt(v0);
    CHECK(f_zero_energy(reference_geometry(v0)) == doctest::Approx(q * (2 * 4 + 2 * 2)).epsilon(1e-6));
}

TEST_CASE("barrier-top condition vanishes at its tabulated roots")
{
    for (double v0 : {0.0655, 0.2981, 0.5816, 1.3322}) {
        CAPTURE(v0);
        CHECK(std::abs(rel_g(v0)) < 1e-3);
        CHECK(sign_change(rel_g(v0 - 2e-4), rel_g(v0 + 2e-4)));
    }
    // Degenerate root at q = 0: g vanishes linearly in q.
    const double g1 = g_barrier_top(reference_geometry(1e-12));
    const double g2 = g_barrier_top(reference_geometry(1e-14));
    CHECK(std::abs(g1) < 1e-4);
    CHECK(g1 / g2 == doctest::Approx(10).epsilon(1e-4));
}

TEST_CASE("generic condition vanishes at tabulated levels")
{
    struct Case {
        double v0;
        double e;
        double window;
    };
    for (const auto& c : {Case{5, -3.733845, 1e-5}, Case{0.0001, 0.0685, 2e-4}, Case{5, 0.4972, 2e-4}}) {
        CAPTURE(c.e);
        const auto g = reference_geometry(c.v0);
        CHECK(sign_change(char_generic(c.e - c.window, g), char_generic(c.e + c.window, g)));
    }
}

TEST_CASE("free box: zeros exactly at n^2 pi^2 / 144")
{
    const auto g = reference_geometry(0);
    for (int n = 1; n <= 6; ++n) {
        const double e = n * n * M_PI * M_PI / 144;
        CAPTURE(n);
        CHECK(sign_change(char_generic(e * (1 - 1e-9), g), char_generic(e * (1 + 1e-9), g)));
    }
}

TEST_CASE("char_generic rejects seam energies")
{
    const auto g = reference_geometry(3);
    CHECK_THROWS_AS(char_generic(0.0, g), DomainError);
    CHECK_THROWS_AS(char_generic(3.0, g), DomainError);
    CHECK_THROWS_AS(char_generic(-3.0, g), DomainError);
    CHECK_NOTHROW(characteristic_scaled(0.0, g));
}

TEST_CASE("regularized form is the printed mid-band form up to a positive factor")
{
    const auto g = reference_geometry(3);
    for (double e : {0.1, 0.7, 1.5, 2.2, 2.9}) {
        const auto w = wavenumbers(e, g);
        const double factor = 2 * w.k * w.k * w.r * w.p / std::cosh(w.r * g.b());
        CAPTURE(e);
        CHECK(char_printed(e, g) == doctest::Approx(factor * characteristic_regularized(e, g)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(char_printed(-1, g), DomainError);
    CHECK_THROWS_AS(char_printed(4, g), DomainError);
}

TEST_CASE("seam limits of the regularized form")
{
    for (double v0 : {0.2, 1.0, 7.5}) {
        const auto g = reference_geometry(v0);
        const double q = std::sqrt(v0);
        const double s = q * std::sqrt(2.0);
        const double at_zero = std::cosh(q * g.b()) * f_zero_energy(g) / q;
        const double at_top = g_barrier_top(g) / (2 * s);
        CAPTURE(v0);
        CHECK(characteristic_regularized(0.0, g) == doctest::Approx(at_zero).epsilon(1e-12));
        CHECK(characteristic_regularized(v0, g) == doctest::Approx(at_top).epsilon(1e-12));
        for (double h : {1e-7, -1e-7}) {
            CHECK(characteristic_regularized(h, g) == doctest::Approx(at_zero).epsilon(1e-5));
            CHECK(characteristic_regularized(v0 + h, g) == doctest::Approx(at_top).epsilon(1e-5));
        }
    }
}

TEST_CASE("matching determinant at special roots")
{
    const auto shape = reference_geometry(1);
    const double vf = special_v0_catalog(SpecialCondition::ZeroEnergy, 1, shape)[0].v0;
    const auto mf = match_matrix(StateKind::ZeroEnergy, 0, shape.with_v0(vf));
    CHECK(std::abs(mf.determinant()) <= 1e-9 * mf.frobenius_norm());

    const double vg = special_v0_catalog(SpecialCondition::BarrierTop, 1, shape)[0].v0;
    const auto mg = match_matrix(StateKind::BarrierTop, vg, shape.with_v0(vg));
    CHECK(std::abs(mg.determinant()) <= 1e-9 * mg.frobenius_norm());

    const auto off = match_matrix(StateKind::ZeroEnergy, 0, shape.with_v0(2.0));
    CHECK(std::abs(off.determinant()) > 1e-3 * off.frobenius_norm());
}

TEST_CASE("real matching determinant against the complex one")
{
    const auto g = reference_geometry(4);
    for (double e : {-3.5, -1.0, -0.2}) {
        CAPTURE(e);
        const auto z = det_match_complex(e, g);
        CHECK(det_match(StateKind::Generic, e, g) == doctest::Approx(-z.real()).epsilon(1e-9));
        CHECK(std::abs(z.imag()) <= 1e-9 * std::abs(z));
    }
    for (double e : {0.3, 2.0, 3.7}) {
        CAPTURE(e);
        const auto z = det_match_complex(e, g);
        CHECK(det_match(StateKind::Generic, e, g) == doctest::Approx(z.real()).epsilon(1e-9));
    }
    for (double e : {4.5, 6.0}) {
        CAPTURE(e);
        const auto z = det_match_complex(e, g);
        const auto rotated = std::complex<double>(0, -1) * z;
        CHECK(det_match(StateKind::Generic, e, g) == doctest::Approx(rotated.real()).epsilon(1e-9));
        CHECK(std::abs(rotated.imag()) <= 1e-9 * std::abs(z));
    }
}

TEST_CASE("matching determinant and characteristic share their sign changes")
{
    const auto g = reference_geometry(2.5);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> pick(0.01, 2.49);
    int checked = 0;
    for (int i = 0; i < 200; ++i) {
        const double e = pick(rng);
        const double e2 = e + 0.003;
        if (e2 >= 2.5) {
            continue;
        }
        const bool det_changes = sign_change(det_match(StateKind::Generic, e, g), det_match(StateKind::Generic, e2, g));
        const bool char_changes = sign_change(char_generic(e, g), char_generic(e2, g));
        CHECK(det_changes == char_changes);
        ++checked;
    }
    CHECK(checked > 100);
}

TEST_CASE("coefficients: solve agrees with the closed forms")
{
    SUBCASE("zero energy")
    {
        const auto g = reference_geometry(special_v0_catalog(SpecialCondition::ZeroEnergy, 2, reference_geometry(1))[1].v0);
        const auto solved = coefficients_for(StateKind::ZeroEnergy, 0, g).coefficients;
        const auto closed = printed_coefficients(StateKind::ZeroEnergy, 0, g);
        CHECK(solved.B == doctest::Approx(closed.B).epsilon(1e-8));
        CHECK(solved.C == doctest::Approx(closed.C).epsilon(1e-8));
        CHECK(solved.D == doctest::Approx(closed.D).epsilon(1e-8));
    }
    SUBCASE("barrier top")
    {
        const double v0 = special_v0_catalog(SpecialCondition::BarrierTop, 3, reference_geometry(1))[2].v0;
        const auto g = reference_geometry(v0);
        const auto solved = coefficients_for(StateKind::BarrierTop, v0, g).coefficients;
        const auto closed = printed_coefficients(StateKind::BarrierTop, v0, g);
        CHECK(solved.B == doctest::Approx(closed.B).epsilon(1e-8));
        CHECK(solved.C == doctest::Approx(closed.C).epsilon(1e-8));
        CHECK(solved.D == doctest::Approx(closed.D).epsilon(1e-8));
    }
    SUBCASE("generic mid band")
    {
        const auto g = reference_geometry(5);
        const auto spectrum = solve_spectrum(SpectrumRequest::first(g, 5));
        for (int i = 2; i < 5; ++i) {
            const double e = spectrum.states[static_cast<std::size_t>(i)].energy;
            CAPTURE(e);
            const auto solved = coefficients_for(StateKind::Generic, e, g).coefficients;
            const auto closed = printed_coefficients(StateKind::Generic, e, g);
            CHECK(solved.B == doctest::Approx(closed.B).epsilon(1e-7));
            CHECK(solved.C == doctest::Approx(closed.C).epsilon(1e-7));
            CHECK(solved.D == doctest::Approx(closed.D).epsilon(1e-7));
        }
    }
}

TEST_CASE("coefficients: spurious energies are refused")
{
    const auto g = reference_geometry(5);
    CHECK_THROWS_AS(coefficients_for(StateKind::Generic, 0.3, g), DiagnosticError);
    CHECK_THROWS_AS(coefficients_for(StateKind::ZeroEnergy, 0, g), DiagnosticError);
}

TEST_CASE("built wavefunctions vanish at the walls and are C1")
{
    const auto g = reference_geometry(5);
    const auto spectrum = solve_spectrum(SpectrumRequest::first(g, 8));
    for (const auto& st : spectrum.states) {
        const auto psi = build_wavefunction(st.kind, st.energy, coefficients_for(st.kind, st.energy, g).coefficients, g);
        CAPTURE(st.energy);
        CHECK(psi.value(-6) == doctest::Approx(0).scale(1));
        CHECK(psi.value(6) == 0);
        CHECK(std::abs(psi.segments()[0].value(-6)) < 1e-12);
        CHECK(c1_residual(psi) < 1e-10);
    }
}
