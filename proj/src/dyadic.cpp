#include "tll/dyadic.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

namespace tll {

double smooth_step(double t)
{
    if (t <= 0.0) return 0.0;
    if (t >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / t);
    const double b = std::exp(-1.0 / (1.0 - t));
    return a / (a + b);
}

double bump_profile(double rho)
{
    return smooth_step(2.0 * (1.0 - std::abs(rho)));
}

DyadicFamily::DyadicFamily(std::string id, int dim, int max_block, int width,
                           bool partition_of_unity, BlockFn block)
    : id_(std::move(id)), dim_(dim), max_block_(max_block), width_(width),
      partition_of_unity_(partition_of_unity), block_(std::move(block))
{
    if (dim_ < 1 || dim_ > 3) throw invalid_argument("dyadic family: dim must be 1..3");
    if (max_block_ < 1) throw invalid_argument("dyadic family: need at least blocks 0 and 1");
    if (width_ < 1) throw invalid_argument("dyadic family: width must be >= 1");
    if (!block_) throw invalid_argument("dyadic family: missing block evaluator");
}

double DyadicFamily::block(int k, std::span<const double> xi) const
{
    if (k < 0 || k > max_block_)
        throw invalid_argument("dyadic family: block index " + std::to_string(k) + " out of range");
    return block_(k, xi);
}

double DyadicFamily::block_radial(int k, double rho) const
{
    std::array<double, 3> xi{rho, 0.0, 0.0};
    return block(k, std::span<const double>(xi.data(), dim_));
}

double DyadicFamily::support_lower(int k) const
{
    return k == 0 ? 0.0 : std::exp2(k - width_);
}

double DyadicFamily::support_upper(int k) const
{
    return std::exp2(k + width_);
}

double DyadicFamily::partition_sum(std::span<const double> xi) const
{
    double s = 0.0;
    for (int k = 0; k <= max_block_; ++k) s += block_(k, xi);
    return s;
}

int block_cap(int res)
{
    if (res < 2 || (res & (res - 1)) != 0)
        throw invalid_argument("block_cap: res must be a power of two >= 2");
    const int half = res / 2;
    int k = 0;
    while ((1 << k) < half) ++k; // ceil(log2(res/2)), exact for powers of two
    return k + 1;
}

namespace {

double radius(std::span<const double> xi)
{
    double s = 0.0;
    for (double v : xi) s += v * v;
    return std::sqrt(s);
}

} // namespace

DyadicFamily build_standard_family(int dim, int max_block)
{
    auto block = [](int k, std::span<const double> xi) {
        const double rho = radius(xi);
        if (k == 0) return bump_profile(rho / 2.0);
        return bump_profile(rho * std::exp2(-(k + 1))) - bump_profile(rho * std::exp2(-k));
    };
    return DyadicFamily("standard:K=" + std::to_string(max_block), dim, max_block, 1, true,
                        std::move(block));
}

DyadicFamily build_smoothed_variant(int dim, int max_block, double transition_sharpness)
{
    if (!(transition_sharpness > 0.0))
        throw invalid_argument("build_smoothed_variant: transition_sharpness must be > 0");
    const double a = transition_sharpness;
    constexpr double rho_in = 0.25;
    constexpr double rho_out = 2.0;

    // Wide plateau bump: 1 for rho <= rho_in, 0 for rho >= rho_out.
    auto chi = [a](double rho) {
        double t = (rho_out - std::abs(rho)) / (rho_out - rho_in);
        t = std::clamp(t, 0.0, 1.0);
        return smooth_step(std::pow(t, a));
    };
    // Smooth ridge in log |xi|, supported on one octave either side of 2^k.
    auto ridge = [](double v) {
        if (std::abs(v) >= 1.0) return 0.0;
        return std::exp(1.0 - 1.0 / (1.0 - v * v));
    };

    auto block = [chi, ridge](int k, std::span<const double> xi) {
        const double rho = radius(xi);
        if (k == 0) return chi(rho / 2.0);
        const double base = chi(rho * std::exp2(-(k + 1))) - chi(rho * std::exp2(-k));
        if (base == 0.0 || rho <= 0.0) return base;
        const double mod = 1.0 + 0.2 * ridge(std::log2(rho) - k);
        return base * mod;
    };
    return DyadicFamily("smoothed:K=" + std::to_string(max_block) +
                            ":a=" + std::to_string(transition_sharpness),
                        dim, max_block, 2, false, std::move(block));
}

bool FamilyValidation::admissible(double d1_floor) const
{
    if (!support_violations.empty() || !negativity_violations.empty()) return false;
    if (!(d1_measured > d1_floor)) return false;
    for (const auto& e : alpha_estimates)
        if (!std::isfinite(e.estimate)) return false;
    return true;
}

FamilyValidation validate_family(const DyadicFamily& family, const FamilySampling& sampling)
{
    const int dim = family.dim();
    const int K = family.max_block();
    const int N = family.width();
    const double log2_max =
        sampling.log2_max != 0.0 ? sampling.log2_max : static_cast<double>(K + N + 2);

    FamilyValidation rep;
    rep.family_id = family.id();
    rep.dim = dim;
    rep.max_block = K;
    rep.width = N;
    rep.alpha_estimates.resize(1u << dim);
    for (unsigned mask = 0; mask < (1u << dim); ++mask)
        for (int d = 0; d < dim; ++d)
            rep.alpha_estimates[mask].alpha[d] = (mask >> d) & 1 ? 1 : 0;

    const auto dirs = sphere_directions(dim, sampling.directions);
    const int n_rad =
        std::max(2, static_cast<int>((log2_max - sampling.log2_min) * sampling.per_octave) + 1);
    const double resolved = std::exp2(K - 1);
    double d1 = std::numeric_limits<double>::infinity();

    std::array<double, 3> xi{};
    for (int j = 0; j < n_rad; ++j) {
        const double rho =
            std::exp2(sampling.log2_min + (log2_max - sampling.log2_min) * j / (n_rad - 1));
        for (const auto& dir : dirs) {
            for (int d = 0; d < dim; ++d) xi[d] = rho * dir[d];
            std::span<const double> xis(xi.data(), dim);
            ++rep.sample_count;

            double sum = 0.0;
            for (int k = 0; k <= K; ++k) {
                std::function<cplx(std::span<const double>)> fk =
                    [&family, k](std::span<const double> x) {
                        return cplx{family.block(k, x), 0.0};
                    };
                const double value = family.block(k, xis);
                sum += value;

                if (value < -1e-14)
                    rep.negativity_violations.push_back({k, xi, value});
                if ((rho < family.support_lower(k) || rho > family.support_upper(k)) &&
                    std::abs(value) > 1e-14)
                    rep.support_violations.push_back({k, xi, value});

                // |xi|^{|alpha|} |d^alpha phi_k|, the dyadic Mikhlin functional.
                for (unsigned mask = 0; mask < (1u << dim); ++mask) {
                    const int order = std::popcount(mask);
                    const double weight = std::pow(rho, order);
                    const cplx der = mask == 0 ? fk(xis)
                                               : fd_partial(fk, xis, mask, sampling.fd_rel_step);
                    const double val = weight * std::abs(der);
                    auto& est = rep.alpha_estimates[mask];
                    if (val > est.estimate) {
                        est.estimate = val;
                        est.argmax_xi = xi;
                    }
                }
            }

            rep.d2_measured = std::max(rep.d2_measured, sum);
            if (rho <= resolved) {
                d1 = std::min(d1, sum);
                rep.partition_max_deviation =
                    std::max(rep.partition_max_deviation, std::abs(sum - 1.0));
            }
        }
    }
    rep.d1_measured = std::isfinite(d1) ? d1 : 0.0;
    return rep;
}

nlohmann::json FamilyValidation::to_json() const
{
    auto viol = [](const std::vector<SupportViolation>& v) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& s : v)
            arr.push_back({{"k", s.k}, {"xi", {s.xi[0], s.xi[1], s.xi[2]}}, {"value", s.value}});
        return arr;
    };
    nlohmann::json alphas = nlohmann::json::array();
    for (const auto& e : alpha_estimates)
        alphas.push_back({{"alpha", {e.alpha[0], e.alpha[1], e.alpha[2]}},
                          {"estimate", e.estimate},
                          {"argmax_xi", {e.argmax_xi[0], e.argmax_xi[1], e.argmax_xi[2]}}});
    return {
        {"family_id", family_id},
        {"dim", dim},
        {"max_block", max_block},
        {"width", width},
        {"alpha_estimates", alphas},
        {"d1_measured", d1_measured},
        {"d2_measured", d2_measured},
        {"partition_max_deviation", partition_max_deviation},
        {"support_violations", viol(support_violations)},
        {"negativity_violations", viol(negativity_violations)},
        {"sample_count", sample_count},
    };
}

} // namespace tll
