#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "tll/corpus.hpp"
#include "tll/errors.hpp"
#include "tll/fft.hpp"
#include "tll/multiplier.hpp"
#include "tll/operators.hpp"

namespace {

using tll::cplx;

tll::GridField random_real(int res, int index)
{
    tll::CorpusSpec spec;
    spec.dim = 2;
    spec.band = 4;
    spec.seed = 31;
    return tll::random_field(spec, res, index);
}

double max_abs_diff(const tll::GridField& a, const tll::GridField& b)
{
    return tll::grid_linf_norm(a - b);
}

std::string captured_warning;
void capture_warning(const std::string& message) { captured_warning = message; }

} // namespace

TEST_SUITE("operators") {

TEST_CASE("resolvent solves (lambda - Laplace) v = u")
{
    const tll::GridField u = random_real(32, 0);
    for (cplx lambda : {cplx{2.0, 0.0}, cplx{2.0, 1.0}, cplx{0.5, -3.0}}) {
        const tll::GridField v = tll::laplace_resolvent(u, lambda);
        const tll::GridField neg_lap_v = tll::apply_multiplier(v, tll::laplacian_symbol());
        double worst = 0.0;
        for (std::size_t i = 0; i < u.data().size(); ++i) {
            const cplx residual = lambda * v.data()[i] + neg_lap_v.data()[i] - u.data()[i];
            worst = std::max(worst, std::abs(residual));
        }
        CHECK(worst <= 1e-11 * tll::grid_linf_norm(u));
    }
}

TEST_CASE("resolvent difference identity")
{
    const tll::GridField u = random_real(32, 1);
    const double lambda = 2.0, mu = 5.0;
    const tll::GridField lhs =
        tll::laplace_resolvent(u, lambda) - tll::laplace_resolvent(u, mu);
    const tll::GridField rhs =
        tll::scaled(tll::laplace_resolvent(tll::laplace_resolvent(u, mu), lambda), mu - lambda);
    CHECK(max_abs_diff(lhs, rhs) <= 1e-12 * tll::grid_linf_norm(u));
}

TEST_CASE("heat flow composes and starts at the identity")
{
    const tll::GridField u = random_real(32, 2);
    const tll::GridField two_step = tll::heat_semigroup(tll::heat_semigroup(u, 0.3), 0.4);
    CHECK(max_abs_diff(two_step, tll::heat_semigroup(u, 0.7)) <= 1e-12);
    CHECK(max_abs_diff(tll::heat_semigroup(u, 0.0), u) <= 1e-13);
    CHECK_THROWS_AS(tll::heat_semigroup(u, -0.1), tll::invalid_argument);
}

TEST_CASE("heat flow commutes with the smoothing scale")
{
    const tll::GridField u = random_real(32, 3);
    const tll::GridField a = tll::bessel_potential(tll::heat_semigroup(u, 0.25), 1.5);
    const tll::GridField b = tll::heat_semigroup(tll::bessel_potential(u, 1.5), 0.25);
    CHECK(max_abs_diff(a, b) <= 1e-12 * tll::grid_linf_norm(u));
}

TEST_CASE("integer and split fractional powers agree with direct forms")
{
    const tll::GridField u = random_real(32, 4);
    const tll::GridField direct = u + tll::apply_multiplier(u, tll::laplacian_symbol());
    CHECK(max_abs_diff(tll::fractional_power(u, 1.0), direct) <=
          1e-12 * tll::grid_linf_norm(direct));

    const tll::GridField split = tll::fractional_power(tll::fractional_power(u, 0.5), 1.0);
    CHECK(max_abs_diff(tll::fractional_power(u, 1.5), split) <=
          1e-12 * tll::grid_linf_norm(split));

    CHECK_THROWS_AS(tll::fractional_power(u, -0.5), tll::invalid_argument);
}

TEST_CASE("holomorphic calculus matches closed-form operator routes")
{
    const tll::GridField u = random_real(32, 5);
    const double linf = tll::grid_linf_norm(u);

    tll::HolomorphicSymbol cayley{"z/(1+z)", [](cplx z) { return z / (1.0 + z); }};
    CHECK(max_abs_diff(tll::hinfty_apply(u, cayley), u - tll::laplace_resolvent(u, 1.0)) <=
          1e-12 * linf);

    const double t = 0.7;
    tll::HolomorphicSymbol decay{"exp(-tz)", [t](cplx z) { return std::exp(-t * z); }};
    CHECK(max_abs_diff(tll::hinfty_apply(u, decay), tll::heat_semigroup(u, t)) <= 1e-12 * linf);

    tll::HolomorphicSymbol shift{"2/(2+z)", [](cplx z) { return 2.0 / (2.0 + z); }};
    CHECK(max_abs_diff(tll::hinfty_apply(u, shift),
                       tll::scaled(tll::laplace_resolvent(u, 2.0), 2.0)) <= 1e-12 * linf);
}

TEST_CASE("calibration family carries finite sup bounds")
{
    const std::vector<tll::HolomorphicSymbol> fam = tll::hinfty_test_family();
    CHECK(fam.size() == 5);
    for (const tll::HolomorphicSymbol& f : fam) {
        CHECK(f.sup_bound > 0.0);
        CHECK(std::isfinite(f.sup_bound));
        // the sector sup dominates any interior point, e.g. z = 1
        CHECK(f.sup_bound >= std::abs(f.eval(cplx{1.0, 0.0})) * (1.0 - 1e-9));
    }
    CHECK_THROWS_AS(tll::hinfty_test_family(0.0), tll::invalid_argument);
    CHECK_THROWS_AS(tll::hinfty_test_family(1.0, cplx{-1.0, 0.0}), tll::invalid_argument);
}

TEST_CASE("derivatives act as monomials on pure modes")
{
    const tll::GridField u = tll::pure_mode(2, 32, {2, 1, 0});

    const int dx[2] = {1, 0};
    tll::GridField expected = u;
    for (cplx& v : expected.data()) v *= cplx{0.0, 2.0};
    CHECK(max_abs_diff(tll::derivative(u, dx), expected) <= 1e-13);

    const int dyy[2] = {0, 2};
    tll::GridField expected2 = u;
    for (cplx& v : expected2.data()) v *= -1.0;
    CHECK(max_abs_diff(tll::derivative(u, dyy), expected2) <= 1e-13);
}

TEST_CASE("gradient and divergence compose to the spectral Laplacian")
{
    const tll::GridField u = random_real(32, 6);
    tll::SpectralField uh = tll::forward_transform(u);
    const tll::SpectralField lap = tll::spectral_divergence(tll::spectral_gradient(uh));
    tll::SpectralField neg = tll::forward_transform(
        tll::apply_multiplier(u, tll::laplacian_symbol()));
    double worst = 0.0;
    for (std::size_t i = 0; i < lap.data().size(); ++i)
        worst = std::max(worst, std::abs(lap.data()[i] + neg.data()[i]));
    CHECK(worst <= 1e-12);
}

TEST_CASE("discrete time norms have exact values on constants")
{
    const double dt = 0.1;
    tll::TimeSignal sig(dt, 11, 1);
    for (std::size_t j = 0; j < 11; ++j) sig.at(j, 0) = cplx{2.0, 0.0};
    CHECK(sig.l_eta_norm(4.0) == doctest::Approx(2.0 * std::pow(dt * 11, 0.25)).epsilon(1e-14));
    CHECK(sig.duration() == doctest::Approx(1.0));
    CHECK_THROWS_AS(sig.l_eta_norm(0.0), tll::invalid_argument);
}

TEST_CASE("signals built from states give them back unchanged")
{
    const tll::GridField a = tll::taylor_green(8);
    const tll::GridField b = tll::scaled(a, 0.5);
    const tll::TimeSignal sig = tll::TimeSignal::from_states(0.01, {a, b, a});
    REQUIRE(sig.state_shape().has_value());
    CHECK(sig.samples() == 3);
    CHECK(max_abs_diff(sig.state(1), b) == 0.0);

    const tll::TimeSignal tail = sig.restricted(1, 2);
    CHECK(tail.samples() == 2);
    CHECK(max_abs_diff(tail.state(0), b) == 0.0);
    CHECK_THROWS_AS(sig.restricted(2, 2), tll::invalid_argument);

    tll::TimeSignal scalar(0.1, 4, 1);
    CHECK_THROWS_AS(scalar.state(0), tll::invalid_argument);
}

TEST_CASE("even reflection mirrors samples exactly and stays bounded")
{
    const std::size_t N = 8;
    const double dt = 0.05;
    tll::TimeSignal sig(dt, N + 1, 1);
    for (std::size_t j = 0; j <= N; ++j) {
        const double s = std::sin(std::numbers::pi * double(j) / (2.0 * double(N)));
        sig.at(j, 0) = cplx{s * s, 0.0};
    }

    const tll::TimeSignal ext = tll::extend_even_reflection(sig);
    CHECK(ext.samples() == 4 * N);
    for (std::size_t j = 0; j <= N; ++j) CHECK(ext.at(j, 0) == sig.at(j, 0));
    CHECK(ext.at(2 * N - 3, 0) == sig.at(3, 0));
    CHECK(std::abs(ext.at(2 * N + 1, 0)) == 0.0);
    CHECK(std::abs(ext.at(4 * N - 1, 0)) == 0.0);

    const double eta = 4.0;
    CHECK(ext.l_eta_norm(eta) <= std::pow(2.0, 1.0 / eta) * sig.l_eta_norm(eta) * (1.0 + 1e-12));
}

TEST_CASE("nonzero initial trace triggers a warning")
{
    tll::TimeSignal sig(0.1, 5, 1);
    for (std::size_t j = 0; j < 5; ++j) sig.at(j, 0) = cplx{1.0, 0.0};
    captured_warning.clear();
    tll::warn_sink previous = tll::set_warn_sink(&capture_warning);
    const tll::TimeSignal ext = tll::extend_even_reflection(sig);
    tll::set_warn_sink(previous);
    CHECK(ext.samples() == 16);
    CHECK(captured_warning.find("t=0") != std::string::npos);
}

TEST_CASE("time symbols reduce to the identity plus derivative at power one")
{
    const std::size_t N = 8;
    tll::TimeSignal sig(0.05, N + 1, 1);
    for (std::size_t j = 0; j <= N; ++j) {
        const double s = std::sin(std::numbers::pi * double(j) / (2.0 * double(N)));
        sig.at(j, 0) = cplx{s * s, 0.0};
    }
    const tll::TimeSignal ext = tll::extend_even_reflection(sig);
    const tll::TimeSignal whole = tll::time_fractional_power(ext, 1.0);
    const tll::TimeSignal deriv = tll::time_derivative(ext);
    for (std::size_t j = 0; j < ext.samples(); ++j)
        CHECK(std::abs(whole.at(j, 0) - (ext.at(j, 0) + deriv.at(j, 0))) <= 1e-12);
}

TEST_CASE("time symbols act diagonally on periodic modes")
{
    const std::size_t n = 16;
    const double dt = 0.25;
    tll::TimeSignal constant(dt, n, 1);
    for (std::size_t j = 0; j < n; ++j) constant.at(j, 0) = cplx{3.0, 0.0};
    const tll::TimeSignal dc = tll::time_derivative(constant);
    const tll::TimeSignal hc = tll::time_fractional_power(constant, 0.5);
    for (std::size_t j = 0; j < n; ++j) {
        CHECK(std::abs(dc.at(j, 0)) <= 1e-13);
        CHECK(std::abs(hc.at(j, 0) - constant.at(j, 0)) <= 1e-13);
    }

    const int m = 3;
    const double omega = 2.0 * std::numbers::pi * m / (dt * double(n));
    tll::TimeSignal wave(dt, n, 1);
    for (std::size_t j = 0; j < n; ++j)
        wave.at(j, 0) = std::exp(cplx{0.0, 2.0 * std::numbers::pi * m * double(j) / double(n)});
    const tll::TimeSignal dw = tll::time_derivative(wave);
    for (std::size_t j = 0; j < n; ++j)
        CHECK(std::abs(dw.at(j, 0) - cplx{0.0, omega} * wave.at(j, 0)) <= 1e-12);
}

} // TEST_SUITE
