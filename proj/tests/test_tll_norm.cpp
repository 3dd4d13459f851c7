#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "tll/corpus.hpp"
#include "tll/tll_norm.hpp"

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

tll::GridField random_real(int res, int index)
{
    tll::CorpusSpec spec;
    spec.dim = 2;
    spec.band = 4;
    spec.seed = 23;
    return tll::random_field(spec, res, index);
}

// For e^{i<xi0,x>} every block is that same mode scaled by phi_k(xi0), so the
// pointwise l^s_q value is constant and the Lorentz factor is the one of an
// indicator of the whole torus.
double pure_mode_norm_oracle(const tll::DyadicFamily& fam, int res,
                             const std::array<int, 3>& xi0, const tll::TLLParams& tp, int dim)
{
    const double rho = std::sqrt(double(xi0[0]) * xi0[0] + double(xi0[1]) * xi0[1] +
                                 double(xi0[2]) * xi0[2]);
    const int cap = std::min(fam.max_block(), tll::block_cap(res));
    double c = 0.0;
    for (int k = 0; k <= cap; ++k) {
        const double w = std::pow(2.0, k * tp.s) * fam.block_radial(k, rho);
        if (tp.q == inf) c = std::max(c, w);
        else c += std::pow(w, tp.q);
    }
    if (tp.q != inf) c = std::pow(c, 1.0 / tp.q);
    const double measure = tll::torus_measure(dim);
    const double lorentz_factor = tp.r == inf ? 1.0 : std::pow(tp.p / tp.r, 1.0 / tp.r);
    return c * std::pow(measure, 1.0 / tp.p) * lorentz_factor;
}

} // namespace

TEST_SUITE("tll_norm") {

TEST_CASE("pure modes have closed-form norms")
{
    const int res = 32;
    const tll::DyadicFamily fam = tll::build_standard_family(2, tll::block_cap(res));
    const std::array<int, 3> xi0{2, 1, 0};
    const tll::GridField u = tll::pure_mode(2, res, xi0);
    for (const tll::TLLParams tp : {tll::TLLParams{0.0, 2.0, 2.0, 2.0},
                                    {0.5, 2.5, 2.0, 2.0},
                                    {1.0, 2.0, inf, 2.0},
                                    {-0.5, 3.0, 2.0, inf},
                                    {0.75, 2.0, 1.0, 1.5}}) {
        const double expected = pure_mode_norm_oracle(fam, res, xi0, tp, 2);
        CHECK(tll::tll_norm(u, tp, fam) == doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("the single-shell field sits between the L2 bracket endpoints")
{
    // All four modes of (sin x cos y, -cos x sin y) lie on |xi| = sqrt(2), so
    // the s = 0, p = q = r = 2 norm is exactly sqrt(phi_0^2 + phi_1^2) at
    // that radius times the L2 norm, a value strictly inside [sqrt(1/2), 1].
    const int res = 32;
    const tll::DyadicFamily fam = tll::build_standard_family(2, tll::block_cap(res));
    const tll::GridField u = tll::taylor_green(res);
    const double l2 = tll::grid_l2_norm(u);
    CHECK(l2 == doctest::Approx(std::numbers::pi * std::sqrt(2.0)).epsilon(1e-12));

    const double rho = std::sqrt(2.0);
    const double shell = std::hypot(fam.block_radial(0, rho), fam.block_radial(1, rho));
    const double norm = tll::tll_norm(u, {0.0, 2.0, 2.0, 2.0}, fam);
    CHECK(norm == doctest::Approx(shell * l2).epsilon(1e-10));
    CHECK(norm >= std::sqrt(0.5) * l2 * (1.0 - 1e-12));
    CHECK(norm <= l2 * (1.0 + 1e-12));
}

TEST_CASE("sequence norm handles the sup case and grows with s")
{
    const double a[3] = {1.0, 0.5, 0.25};
    CHECK(tll::sequence_norm_lsq(a, 0.0, inf) == doctest::Approx(1.0));
    CHECK(tll::sequence_norm_lsq(a, 2.0, inf) == doctest::Approx(4.0)); // 2^{2k} a_k peaks at k=2
    const double q2 = std::sqrt(1.0 + 0.25 + 1.0 / 16.0);
    CHECK(tll::sequence_norm_lsq(a, 0.0, 2.0) == doctest::Approx(q2).epsilon(1e-14));
    CHECK(tll::sequence_norm_lsq(a, 1.0, 1.0) == doctest::Approx(1.0 + 1.0 + 1.0));
}

TEST_CASE("the norm is nondecreasing in s")
{
    const tll::GridField u = random_real(32, 0);
    const tll::DyadicFamily fam = tll::build_standard_family(2, tll::block_cap(32));
    double prev = 0.0;
    for (double s : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
        const double n = tll::tll_norm(u, {s, 2.5, 2.0, 2.0}, fam);
        CHECK(n >= prev * (1.0 - 1e-12));
        prev = n;
    }
}

TEST_CASE("triangle inequality holds for q >= 1 and r <= p")
{
    const tll::DyadicFamily fam = tll::build_standard_family(2, tll::block_cap(32));
    for (int trial = 0; trial < 5; ++trial) {
        const tll::GridField u = random_real(32, 2 * trial);
        const tll::GridField v = random_real(32, 2 * trial + 1);
        for (const tll::TLLParams tp : {tll::TLLParams{0.5, 2.5, 2.0, 2.0},
                                        {0.0, 3.0, 1.0, 1.5},
                                        {1.0, 2.0, 2.0, 2.0}}) {
            const double lhs = tll::tll_norm(u + v, tp, fam);
            const double rhs = tll::tll_norm(u, tp, fam) + tll::tll_norm(v, tp, fam);
            CHECK(lhs <= rhs * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("norms are absolutely homogeneous")
{
    const tll::GridField u = random_real(32, 9);
    const tll::DyadicFamily fam = tll::build_standard_family(2, tll::block_cap(32));
    const tll::TLLParams tp{0.5, 2.5, 2.0, 2.0};
    CHECK(tll::tll_norm(tll::scaled(u, -3.5), tp, fam) ==
          doctest::Approx(3.5 * tll::tll_norm(u, tp, fam)).epsilon(1e-12));
}

TEST_CASE("bessel shift has a closed form on pure modes")
{
    const int res = 32;
    const tll::DyadicFamily fam = tll::build_standard_family(2, tll::block_cap(res));
    const std::array<int, 3> xi0{3, -1, 0};
    const tll::GridField u = tll::pure_mode(2, res, xi0);
    const tll::TLLParams tp{0.5, 2.5, 2.0, 2.0};
    const double rho2 = 10.0;
    for (double sigma : {1.0, -0.5, 2.0}) {
        const double expected = std::pow(1.0 + rho2, sigma / 2.0) *
                                pure_mode_norm_oracle(fam, res, xi0, tp.with_s(tp.s - sigma), 2);
        CHECK(tll::bessel_shift_norm(u, tp, sigma, fam) ==
              doctest::Approx(expected).epsilon(1e-10));
    }
}

TEST_CASE("derivative form has a closed form on pure modes")
{
    const int res = 32;
    const tll::DyadicFamily fam = tll::build_standard_family(2, tll::block_cap(res));
    const std::array<int, 3> xi0{2, -3, 0};
    const tll::GridField u = tll::pure_mode(2, res, xi0);
    const tll::TLLParams tp{0.25, 2.0, 2.0, 2.0};
    const double base = pure_mode_norm_oracle(fam, res, xi0, tp, 2);
    // |alpha| <= 1 contributes 1, |xi_1|, |xi_2|
    const double expected = base * (1.0 + 2.0 + 3.0);
    CHECK(tll::derivative_equiv_norm(u, tp, 1, fam) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("K profile interpolates between the endpoint norms")
{
    const tll::GridField u = random_real(32, 4);
    const tll::DyadicFamily fam = tll::build_standard_family(2, tll::block_cap(32));
    const tll::TLLParams tp{0.5, 2.5, 2.0, 2.0};
    const tll::KProfile prof = tll::k_profile(u, tp, fam);
    CHECK(prof.full_s > 0.0);
    CHECK(prof.full_s2 > prof.full_s); // two extra orders of smoothness weigh more

    double prev = 0.0;
    for (double t : {1e-4, 1e-3, 1e-2, 0.1, 1.0, 10.0}) {
        const double k = prof.at(t);
        CHECK(k <= prof.full_s * (1.0 + 1e-12));
        CHECK(k <= t * prof.full_s2 * (1.0 + 1e-12));
        CHECK(k >= prev * (1.0 - 1e-12));
        prev = k;
        CHECK(tll::k_functional(u, tp, t, fam) == doctest::Approx(k).epsilon(1e-12));
    }
    CHECK_THROWS_AS(prof.at(0.0), tll::invalid_argument);
}

TEST_CASE("trace norm is homogeneous and positive")
{
    const tll::GridField u = random_real(32, 6);
    const tll::DyadicFamily fam = tll::build_standard_family(2, tll::block_cap(32));
    const tll::TLLParams tp{0.5, 2.5, 2.0, 2.0};
    const tll::TraceParams trp{4.0, 4};
    const double base = tll::trace_norm(u, tp, trp, fam);
    CHECK(base > 0.0);
    CHECK(tll::trace_norm(tll::scaled(u, 2.0), tp, trp, fam) ==
          doctest::Approx(2.0 * base).epsilon(1e-12));
}

TEST_CASE("repeated evaluation is bitwise deterministic")
{
    const tll::GridField u = random_real(32, 7);
    const tll::DyadicFamily fam = tll::build_standard_family(2, tll::block_cap(32));
    const tll::TLLParams tp{0.5, 2.5, 2.0, 2.0};
    const double first = tll::tll_norm(u, tp, fam);
    tll::clear_block_cache();
    const double second = tll::tll_norm(u, tp, fam);
    CHECK(first == second);
}

TEST_CASE("parameter validation rejects out-of-range exponents")
{
    CHECK_THROWS_AS(tll::validate_tll({0.0, 0.0, 2.0, 2.0}), tll::invalid_argument);
    CHECK_THROWS_AS(tll::validate_tll({0.0, inf, 2.0, 2.0}), tll::invalid_argument);
    CHECK_THROWS_AS(tll::validate_tll({0.0, 2.0, 0.0, 2.0}), tll::invalid_argument);
    CHECK_THROWS_AS(tll::validate_tll({0.0, 2.0, 2.0, -1.0}), tll::invalid_argument);
    CHECK_THROWS_AS(tll::validate_tll({inf, 2.0, 2.0, 2.0}), tll::invalid_argument);
    CHECK_NOTHROW(tll::validate_tll({-2.0, 2.0, inf, inf}));
    CHECK_NOTHROW(tll::validate_tll({0.0, 2.0, 0.5, 0.5})); // quasinorm range is (0, inf]
}

} // TEST_SUITE
