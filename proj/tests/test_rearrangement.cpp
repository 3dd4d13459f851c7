#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "tll/rearrangement.hpp"

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

tll::GridField scalar_field(int dim, int res, const std::vector<double>& values)
{
    tll::GridField u(tll::Shape{dim, res, 1}, true);
    REQUIRE(values.size() <= u.shape().points());
    for (std::size_t i = 0; i < values.size(); ++i) u.at(0, i) = values[i];
    return u;
}

std::vector<double> random_values(std::size_t n, unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    std::vector<double> v(n);
    for (double& x : v) x = dist(rng);
    return v;
}

// Layer-cake form of the quasinorm: integrating alpha over the jumps of the
// distribution function instead of t over the steps of the rearrangement.
// || f ||^r = p * sum_k mu_k^{r/p} (v_k^r - v_{k+1}^r) / r with mu_k the
// measure of { |f| > alpha } for alpha just below v_k.
double layer_cake_quasinorm(std::vector<double> mags, double cell, double p, double r)
{
    std::sort(mags.begin(), mags.end(), std::greater<>());
    while (!mags.empty() && mags.back() == 0.0) mags.pop_back();
    double sum = 0.0;
    for (std::size_t k = 0; k < mags.size(); ++k) {
        const double vk = mags[k];
        const double vnext = k + 1 < mags.size() ? mags[k + 1] : 0.0;
        const double mu = (k + 1) * cell;
        sum += std::pow(mu, r / p) * (std::pow(vk, r) - std::pow(vnext, r));
    }
    return std::pow(sum * p / r, 1.0 / r);
}

} // namespace

TEST_SUITE("rearrangement") {

TEST_CASE("indicator fields have the closed-form quasinorm")
{
    const tll::Shape s{2, 16, 1};
    const double cell = tll::cell_measure(s);
    const int cells = 37;
    const double c = 2.5;
    std::vector<double> values(cells, c);
    const tll::GridField u = scalar_field(2, 16, values);
    const double m = cells * cell;

    for (const auto& [p, r] : {std::pair{2.0, 2.0}, {2.5, 1.5}, {3.0, 1.0}, {1.5, 4.0}}) {
        const double expected = c * std::pow(m, 1.0 / p) * std::pow(p / r, 1.0 / r);
        CHECK(tll::lorentz_quasinorm(u, {p, r}) == doctest::Approx(expected).epsilon(1e-12));
    }
    const double weak = c * std::pow(m, 1.0 / 2.5);
    CHECK(tll::lorentz_quasinorm(u, {2.5, inf}) == doctest::Approx(weak).epsilon(1e-12));
}

TEST_CASE("r = p recovers the L_p norm exactly")
{
    const auto values = random_values(256, 11);
    const tll::GridField u = scalar_field(2, 16, values);
    const double cell = tll::cell_measure(u.shape());
    for (double p : {1.0, 2.0, 2.5, 4.0}) {
        double lp = 0.0;
        for (double v : values) lp += std::pow(v, p) * cell;
        lp = std::pow(lp, 1.0 / p);
        CHECK(tll::lorentz_quasinorm(u, {p, p}) == doctest::Approx(lp).epsilon(1e-13));
    }
}

TEST_CASE("quasinorm is permutation invariant")
{
    auto values = random_values(200, 7);
    const double before = tll::lorentz_quasinorm(scalar_field(2, 16, values), {2.5, 1.5});
    std::shuffle(values.begin(), values.end(), std::mt19937_64(99));
    const double after = tll::lorentz_quasinorm(scalar_field(2, 16, values), {2.5, 1.5});
    CHECK(before == after);
}

TEST_CASE("step integral agrees with the layer-cake form")
{
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u}) {
        auto values = random_values(128, seed);
        values.resize(160, 0.0); // trailing zeros must not change anything
        const tll::GridField u = scalar_field(1, 256, values);
        const double cell = tll::cell_measure(u.shape());
        for (const auto& [p, r] : {std::pair{2.0, 2.0}, {2.5, 1.5}, {3.0, 1.0}, {1.25, 3.0}}) {
            const double direct = tll::lorentz_quasinorm(u, {p, r});
            const double dual = layer_cake_quasinorm(values, cell, p, r);
            CHECK(direct == doctest::Approx(dual).epsilon(1e-12));
        }
    }
}

TEST_CASE("distribution function counts strictly greater cells")
{
    const tll::GridField u = scalar_field(1, 8, {3.0, 1.0, 1.0, 0.5});
    const double cell = tll::cell_measure(u.shape());
    CHECK(tll::distribution_function(u, 1.0) == doctest::Approx(cell));       // only 3.0
    CHECK(tll::distribution_function(u, 0.99) == doctest::Approx(3 * cell));
    CHECK(tll::distribution_function(u, 0.0) == doctest::Approx(4 * cell));
    CHECK(tll::distribution_function(u, 3.0) == 0.0);
}

TEST_CASE("rearrangement is sorted and drops trailing zeros")
{
    const tll::GridField u = scalar_field(1, 8, {0.0, 2.0, 0.0, 1.0, 5.0});
    const tll::StepRearrangement f = tll::decreasing_rearrangement(u);
    REQUIRE(f.values.size() == 3);
    CHECK(f.values[0] == 5.0);
    CHECK(f.values[1] == 2.0);
    CHECK(f.values[2] == 1.0);
    CHECK(f.at(0.0) == 5.0);
    CHECK(f.at(10.0 * f.step_measure) == 0.0);
}

TEST_CASE("triangle inequality holds for r <= p")
{
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(0.0, 5.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> a(128), b(128), ab(128);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = dist(rng);
            b[i] = dist(rng);
            ab[i] = a[i] + b[i];
        }
        for (const auto& [p, r] : {std::pair{2.0, 2.0}, {2.5, 2.0}, {3.0, 1.0}}) {
            const tll::LorentzParams lp{p, r};
            const double lhs = tll::lorentz_quasinorm(scalar_field(2, 16, ab), lp);
            const double rhs = tll::lorentz_quasinorm(scalar_field(2, 16, a), lp) +
                               tll::lorentz_quasinorm(scalar_field(2, 16, b), lp);
            CHECK(lhs <= rhs * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("weak quasinorm is the sup of t^{1/p} f*")
{
    const auto values = random_values(100, 17);
    const tll::GridField u = scalar_field(1, 128, values);
    const tll::StepRearrangement f = tll::decreasing_rearrangement(u);
    double expected = 0.0;
    for (std::size_t k = 0; k < f.values.size(); ++k)
        expected = std::max(expected, f.values[k] * std::pow((k + 1) * f.step_measure, 1.0 / 2.5));
    CHECK(tll::lorentz_quasinorm(u, {2.5, inf}) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("vector fields rearrange the pointwise Euclidean magnitude")
{
    tll::GridField u(tll::Shape{1, 8, 2}, true);
    u.at(0, 0) = 3.0;
    u.at(1, 0) = 4.0;
    const tll::StepRearrangement f = tll::decreasing_rearrangement(u);
    REQUIRE(f.values.size() == 1);
    CHECK(f.values[0] == doctest::Approx(5.0));
}

TEST_CASE("invalid exponents are rejected")
{
    CHECK_THROWS_AS(tll::validate_lorentz({0.0, 2.0}), tll::invalid_argument);
    CHECK_THROWS_AS(tll::validate_lorentz({-1.0, 2.0}), tll::invalid_argument);
    CHECK_THROWS_AS(tll::validate_lorentz({inf, 2.0}), tll::invalid_argument);
    CHECK_THROWS_AS(tll::validate_lorentz({2.0, 0.0}), tll::invalid_argument);
    CHECK_NOTHROW(tll::validate_lorentz({2.0, inf}));
}

} // TEST_SUITE
