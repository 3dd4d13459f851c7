#include "tll/rearrangement.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace tll {

void validate_lorentz(const LorentzParams& lp)
{
    if (!(lp.p > 0.0) || std::isinf(lp.p))
        throw invalid_argument("lorentz: p must be finite and > 0");
    if (!(lp.r > 0.0))
        throw invalid_argument("lorentz: r must be > 0 (inf allowed)");
}

double StepRearrangement::at(double t) const
{
    if (t < 0.0 || step_measure <= 0.0) return 0.0;
    const auto k = static_cast<std::size_t>(t / step_measure);
    return k < values.size() ? values[k] : 0.0;
}

double distribution_function(const GridField& u, double alpha)
{
    if (alpha < 0.0) throw invalid_argument("distribution_function: alpha must be >= 0");
    const auto mag = pointwise_magnitude(u);
    std::size_t count = 0;
    for (double m : mag)
        if (m > alpha) ++count;
    return static_cast<double>(count) * cell_measure(u.shape());
}

StepRearrangement rearrange_magnitudes(std::vector<double> magnitudes, double cell)
{
    std::sort(magnitudes.begin(), magnitudes.end(), std::greater<>());
    while (!magnitudes.empty() && magnitudes.back() == 0.0) magnitudes.pop_back();
    return StepRearrangement{std::move(magnitudes), cell};
}

StepRearrangement decreasing_rearrangement(const GridField& u)
{
    return rearrange_magnitudes(pointwise_magnitude(u), cell_measure(u.shape()));
}

double lorentz_quasinorm(const StepRearrangement& f, const LorentzParams& lp)
{
    validate_lorentz(lp);
    if (f.values.empty()) return 0.0;

    const double p = lp.p;
    if (std::isinf(lp.r)) {
        // sup over [t_k, t_{k+1}) of t^{1/p} v_k is attained at the right edge.
        double best = 0.0;
        for (std::size_t k = 0; k < f.values.size(); ++k) {
            const double tr = static_cast<double>(k + 1) * f.step_measure;
            best = std::max(best, f.values[k] * std::pow(tr, 1.0 / p));
        }
        return best;
    }

    const double r = lp.r;
    const double e = r / p;
    // factor step^{r/p} out of t_k^{r/p} so the k-powers stay O(points).
    double sum = 0.0;
    double prev_pow = 0.0; // k^{r/p}
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        const double next_pow = std::pow(static_cast<double>(k + 1), e);
        sum += std::pow(f.values[k], r) * (next_pow - prev_pow);
        prev_pow = next_pow;
    }
    sum *= (p / r) * std::pow(f.step_measure, e);
    return std::pow(sum, 1.0 / r);
}

double lorentz_quasinorm(const GridField& u, const LorentzParams& lp)
{
    return lorentz_quasinorm(decreasing_rearrangement(u), lp);
}

} // namespace tll
