#include "tll/tll_norm.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "tll/threads.hpp"

namespace tll {

void validate_tll(const TLLParams& tp)
{
    if (!std::isfinite(tp.s)) throw invalid_argument("tll params: s must be finite");
    if (!(tp.p > 0.0) || std::isinf(tp.p)) throw invalid_argument("tll params: p must be finite and > 0");
    if (!(tp.q > 0.0)) throw invalid_argument("tll params: q must be > 0 (inf allowed)");
    if (!(tp.r > 0.0)) throw invalid_argument("tll params: r must be > 0 (inf allowed)");
}

double sequence_norm_lsq(std::span<const double> a, double s, double q)
{
    if (std::isinf(q)) {
        double best = 0.0;
        for (std::size_t k = 0; k < a.size(); ++k)
            best = std::max(best, std::exp2(s * k) * a[k]);
        return best;
    }
    double sum = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k)
        sum += std::pow(std::exp2(s * k) * a[k], q);
    return std::pow(sum, 1.0 / q);
}

namespace {

// phi_k sampled at the grid frequencies, cached per (family id, dim, res).
class BlockCache {
public:
    const std::vector<std::vector<double>>& get(const DyadicFamily& fam, const Shape& s)
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::tuple{fam.id(), s.dim, s.res};
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;

        const int K = std::min(fam.max_block(), block_cap(s.res));
        std::vector<std::vector<double>> blocks(K + 1);
        std::array<double, 3> xid{};
        for (int k = 0; k <= K; ++k) {
            blocks[k].assign(s.points(), 0.0);
            auto& grid = blocks[k];
            for_each_mode(s, [&](std::size_t flat, const std::array<int, 3>& xi) {
                for (int d = 0; d < s.dim; ++d) xid[d] = static_cast<double>(xi[d]);
                grid[flat] = fam.block(k, std::span<const double>(xid.data(), s.dim));
            });
        }
        return cache_.emplace(key, std::move(blocks)).first->second;
    }

    void clear()
    {
        std::lock_guard<std::mutex> lock(mu_);
        cache_.clear();
    }

private:
    std::mutex mu_;
    std::map<std::tuple<std::string, int, int>, std::vector<std::vector<double>>> cache_;
};

BlockCache& block_cache()
{
    static BlockCache c;
    return c;
}

// Frequency ball radius actually present on the grid.
double grid_band_radius(const Shape& s)
{
    return 0.5 * s.res * std::sqrt(static_cast<double>(s.dim));
}

// Pointwise l^s_q of the block pieces of uh. Returns the scalar grid values.
std::vector<double> pointwise_lsq(const SpectralField& uh, const TLLParams& tp,
                                  const DyadicFamily& fam)
{
    const Shape& s = uh.shape();
    const auto& blocks = block_cache().get(fam, s);
    const std::size_t pts = s.points();
    const double band = grid_band_radius(s);
    const bool sup_q = std::isinf(tp.q);

    std::vector<double> acc(pts, 0.0);
    SpectralField piece(s, false);
    for (int k = 0; k < static_cast<int>(blocks.size()); ++k) {
        if (fam.support_lower(k) > band) continue; // identically zero on the grid
        const auto& sym = blocks[k];
        for (int c = 0; c < s.comps; ++c) {
            auto in = uh.component(c);
            auto out = piece.component(c);
            for (std::size_t i = 0; i < pts; ++i) out[i] = sym[i] * in[i];
        }
        GridField b = inverse_transform(piece);
        const double w = std::exp2(tp.s * k);
        parallel_for(pts, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) {
                double m2 = 0.0;
                for (int c = 0; c < s.comps; ++c) m2 += std::norm(b.at(c, i));
                const double a = w * std::sqrt(m2);
                if (sup_q)
                    acc[i] = std::max(acc[i], a);
                else
                    acc[i] += std::pow(a, tp.q);
            }
        });
    }
    if (!sup_q) {
        const double inv_q = 1.0 / tp.q;
        parallel_for(pts, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t i = lo; i < hi; ++i) acc[i] = std::pow(acc[i], inv_q);
        });
    }
    return acc;
}

void check_family_dim(const DyadicFamily& fam, const Shape& s)
{
    if (fam.dim() != s.dim)
        throw invalid_argument("tll_norm: family dim " + std::to_string(fam.dim()) +
                               " does not match field dim " + std::to_string(s.dim));
}

} // namespace

double tll_norm(const SpectralField& u, const TLLParams& tp, const DyadicFamily& family)
{
    validate_tll(tp);
    check_family_dim(family, u.shape());
    auto g = pointwise_lsq(u, tp, family);
    return lorentz_quasinorm(rearrange_magnitudes(std::move(g), cell_measure(u.shape())),
                             tp.lorentz());
}

double tll_norm(const GridField& u, const TLLParams& tp, const DyadicFamily& family)
{
    return tll_norm(forward_transform(u), tp, family);
}

namespace {

void enumerate_multi_indices(int dim, int order_left, std::vector<int>& cur,
                             const std::function<void(std::span<const int>)>& fn)
{
    if (static_cast<int>(cur.size()) == dim) {
        fn(cur);
        return;
    }
    for (int v = 0; v <= order_left; ++v) {
        cur.push_back(v);
        enumerate_multi_indices(dim, order_left - v, cur, fn);
        cur.pop_back();
    }
}

} // namespace

double derivative_equiv_norm(const GridField& u, const TLLParams& tp, int k,
                             const DyadicFamily& family)
{
    if (k < 0) throw invalid_argument("derivative_equiv_norm: k must be >= 0");
    validate_tll(tp);
    const SpectralField uh = forward_transform(u);
    double total = 0.0;
    std::vector<int> cur;
    enumerate_multi_indices(u.shape().dim, k, cur, [&](std::span<const int> alpha) {
        int order = 0;
        for (int v : alpha) order += v;
        if (order == 0) {
            total += tll_norm(uh, tp, family);
            return;
        }
        total += tll_norm(apply_multiplier(uh, derivative_symbol(alpha)), tp, family);
    });
    return total;
}

double bessel_shift_norm(const GridField& u, const TLLParams& tp, double sigma,
                         const DyadicFamily& family)
{
    validate_tll(tp);
    return tll_norm(apply_multiplier(forward_transform(u), bessel_symbol(sigma)),
                    tp.with_s(tp.s - sigma), family);
}

double KProfile::at(double t) const
{
    if (!(t > 0.0)) throw invalid_argument("k_functional: t must be > 0");
    double best = std::min(full_s, t * full_s2);
    for (std::size_t j = 0; j < high_norm.size(); ++j)
        best = std::min(best, high_norm[j] + t * low_norm[j]);
    return best;
}

KProfile k_profile(const GridField& u, const TLLParams& tp, const DyadicFamily& family)
{
    validate_tll(tp);
    check_family_dim(family, u.shape());
    const Shape& s = u.shape();
    const SpectralField uh = forward_transform(u);
    const int K = std::min(family.max_block(), block_cap(s.res));
    const TLLParams tp2 = tp.with_s(tp.s + 2.0);

    KProfile prof;
    prof.max_block = K;
    prof.full_s = tll_norm(uh, tp, family);
    prof.full_s2 = tll_norm(uh, tp2, family);

    std::vector<double> rho2(s.points());
    for_each_mode(s, [&](std::size_t flat, const std::array<int, 3>& xi) {
        double r2 = 0.0;
        for (int d = 0; d < s.dim; ++d) r2 += static_cast<double>(xi[d]) * xi[d];
        rho2[flat] = r2;
    });

    SpectralField low(s, false), high(s, false);
    for (int j = 0; j <= K; ++j) {
        const double R2 = std::exp2(2.0 * j);
        for (int c = 0; c < s.comps; ++c) {
            auto in = uh.component(c);
            auto lo = low.component(c);
            auto hi = high.component(c);
            for (std::size_t i = 0; i < in.size(); ++i) {
                const bool keep = rho2[i] <= R2;
                lo[i] = keep ? in[i] : cplx{0.0, 0.0};
                hi[i] = keep ? cplx{0.0, 0.0} : in[i];
            }
        }
        prof.high_norm.push_back(tll_norm(high, tp, family));
        prof.low_norm.push_back(tll_norm(low, tp2, family));
    }
    return prof;
}

double k_functional(const GridField& u, const TLLParams& tp, double t, const DyadicFamily& family)
{
    return k_profile(u, tp, family).at(t);
}

double trace_norm(const GridField& u, const TLLParams& tp, const TraceParams& trp,
                  const DyadicFamily& family)
{
    if (!(trp.eta > 1.0) || std::isinf(trp.eta))
        throw invalid_argument("trace_norm: eta must be finite and > 1");
    if (trp.per_octave < 1) throw invalid_argument("trace_norm: per_octave must be >= 1");

    const KProfile prof = k_profile(u, tp, family);
    const double theta = 1.0 - 1.0 / trp.eta;
    const double log_lo = -2.0 * prof.max_block * std::numbers::ln2;
    const double log_hi = 2.0 * std::numbers::ln2;
    const int count = (2 * prof.max_block + 2) * trp.per_octave + 1;
    const double dlog = (log_hi - log_lo) / (count - 1);

    double sum = 0.0;
    for (int j = 0; j + 1 < count; ++j) {
        const double t = std::exp(log_lo + j * dlog);
        const double integrand = std::pow(t, -theta) * prof.at(t);
        sum += std::pow(integrand, trp.eta) * dlog;
    }
    return std::pow(sum, 1.0 / trp.eta);
}

void clear_block_cache() { block_cache().clear(); }

} // namespace tll
