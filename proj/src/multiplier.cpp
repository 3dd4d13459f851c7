#include "tll/multiplier.hpp"

#include <cmath>

#include "tll/fft.hpp"

namespace tll {

bool Sector::contains(cplx z) const
{
    if (z == cplx{0.0, 0.0}) return false;
    return std::abs(std::arg(z)) < angle;
}

cplx MultiplierSymbol::operator()(std::span<const double> xi) const
{
    bool zero = true;
    for (double v : xi)
        if (v != 0.0) zero = false;
    if (zero && at_zero) return *at_zero;
    return eval(xi);
}

bool SymbolFamily::bound_real_even(cplx lambda) const
{
    return lambda.imag() == 0.0 && lambda.real() > 0.0;
}

MultiplierSymbol SymbolFamily::bind(cplx lambda) const
{
    if (!lambda_domain.contains(lambda))
        throw invalid_argument("symbol family " + name + ": lambda outside its sector");
    auto f = eval;
    return MultiplierSymbol{
        name + "(lambda bound)",
        [f, lambda](std::span<const double> xi) { return f(xi, lambda); },
        std::nullopt,
        bound_real_even(lambda),
    };
}

namespace {

std::string format_xi(std::span<const double> xi)
{
    std::string s = "(";
    for (std::size_t i = 0; i < xi.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(xi[i]);
    }
    return s + ")";
}

} // namespace

SpectralField apply_multiplier(const SpectralField& u, const MultiplierSymbol& m)
{
    const Shape& s = u.shape();
    std::vector<cplx> sym(s.points());
    std::array<double, 3> xid{};
    for_each_mode(s, [&](std::size_t flat, const std::array<int, 3>& xi) {
        for (int d = 0; d < s.dim; ++d) xid[d] = static_cast<double>(xi[d]);
        const cplx v = m(std::span<const double>(xid.data(), s.dim));
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw numerical_error("symbol " + m.name + ": non-finite value at xi=" +
                                  format_xi(std::span<const double>(xid.data(), s.dim)));
        sym[flat] = v;
    });

    SpectralField out(s, u.from_real() && m.real_even);
    for (int c = 0; c < s.comps; ++c) {
        auto in = u.component(c);
        auto o = out.component(c);
        for (std::size_t i = 0; i < in.size(); ++i) o[i] = sym[i] * in[i];
    }
    return out;
}

GridField apply_multiplier(const GridField& u, const MultiplierSymbol& m)
{
    return inverse_transform(apply_multiplier(forward_transform(u), m));
}

std::vector<std::array<double, 3>> sphere_directions(int dim, int count)
{
    if (dim < 1 || dim > 3) throw invalid_argument("sphere_directions: dim must be 1..3");
    if (count < 1) throw invalid_argument("sphere_directions: count must be >= 1");
    std::vector<std::array<double, 3>> dirs;
    if (dim == 1) {
        dirs.push_back({1.0, 0.0, 0.0});
        dirs.push_back({-1.0, 0.0, 0.0});
    } else if (dim == 2) {
        for (int i = 0; i < count; ++i) {
            const double a = 2.0 * std::numbers::pi * i / count;
            dirs.push_back({std::cos(a), std::sin(a), 0.0});
        }
    } else {
        // Fibonacci sphere: quasi-uniform, deterministic.
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        for (int i = 0; i < count; ++i) {
            const double z = 1.0 - 2.0 * (i + 0.5) / count;
            const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
            const double a = golden * i;
            dirs.push_back({rho * std::cos(a), rho * std::sin(a), z});
        }
    }
    return dirs;
}

std::vector<cplx> sector_samples(const Sector& s, int per_ray, double log2_min, double log2_max)
{
    // Rays at fractions of the opening angle, staying strictly inside.
    const double fractions[] = {0.0, 0.5, 0.999999};
    std::vector<cplx> out;
    for (double f : fractions) {
        for (int sign : {+1, -1}) {
            if (f == 0.0 && sign < 0) continue;
            const double a = sign * f * s.angle;
            for (int j = 0; j < per_ray; ++j) {
                const double t = per_ray == 1 ? 0.5 : static_cast<double>(j) / (per_ray - 1);
                const double mod = std::exp2(log2_min + t * (log2_max - log2_min));
                out.push_back(std::polar(mod, a));
            }
        }
    }
    return out;
}

cplx fd_partial(const std::function<cplx(std::span<const double>)>& f,
                std::span<const double> xi, unsigned alpha_mask, double rel_step)
{
    if (alpha_mask == 0) return f(xi);
    double norm = 0.0;
    for (double v : xi) norm += v * v;
    norm = std::sqrt(norm);
    const double h = rel_step * (norm > 0.0 ? norm : 1.0);

    // Recurse on the lowest set axis; 2^{|alpha|} evaluations total.
    const int axis = std::countr_zero(alpha_mask);
    const unsigned rest = alpha_mask & (alpha_mask - 1);
    std::vector<double> plus(xi.begin(), xi.end()), minus(xi.begin(), xi.end());
    plus[axis] += h;
    minus[axis] -= h;
    const cplx fp = fd_partial(f, plus, rest, rel_step);
    const cplx fm = fd_partial(f, minus, rest, rel_step);
    return (fp - fm) / (2.0 * h);
}

namespace {

struct RangeEstimate {
    std::vector<AlphaEstimate> estimates;
    std::size_t samples = 0;
};

RangeEstimate estimate_over_range(const SymbolFamily& fam, bool use_lambda, int dim,
                                  const MikhlinSampling& sp, double lo, double hi)
{
    const auto dirs = sphere_directions(dim, sp.directions);
    const int n_rad = std::max(2, static_cast<int>((hi - lo) * sp.per_octave) + 1);
    std::vector<cplx> lambdas;
    if (use_lambda)
        lambdas = sector_samples(fam.lambda_domain, sp.lambda_per_ray, -8.0, 8.0);
    else
        lambdas = {cplx{1.0, 0.0}};

    RangeEstimate out;
    out.estimates.resize(1u << dim);
    for (unsigned mask = 0; mask < (1u << dim); ++mask)
        for (int d = 0; d < dim; ++d)
            out.estimates[mask].alpha[d] = (mask >> d) & 1 ? 1 : 0;

    std::array<double, 3> xi{};
    for (const cplx lambda : lambdas) {
        std::function<cplx(std::span<const double>)> f =
            [&fam, lambda](std::span<const double> x) { return fam.eval(x, lambda); };
        for (int j = 0; j < n_rad; ++j) {
            const double rho = std::exp2(lo + (hi - lo) * j / (n_rad - 1));
            for (const auto& dir : dirs) {
                for (int d = 0; d < dim; ++d) xi[d] = rho * dir[d];
                std::span<const double> xis(xi.data(), dim);
                ++out.samples;
                for (unsigned mask = 0; mask < (1u << dim); ++mask) {
                    double weight = 1.0;
                    for (int d = 0; d < dim; ++d)
                        if ((mask >> d) & 1) weight *= std::abs(xi[d]);
                    if (weight == 0.0 && mask != 0) continue;
                    const cplx der = fd_partial(f, xis, mask, sp.fd_rel_step);
                    const double val = weight * std::abs(der);
                    auto& est = out.estimates[mask];
                    if (val > est.estimate) {
                        est.estimate = val;
                        est.argmax_xi = xi;
                        est.argmax_lambda = lambda;
                    }
                }
            }
        }
    }
    return out;
}

MikhlinReport run_mikhlin(const SymbolFamily& fam, bool use_lambda, int dim,
                          const MikhlinSampling& sp)
{
    if (dim < 1 || dim > 3) throw invalid_argument("mikhlin_constants: dim must be 1..3");
    auto base = estimate_over_range(fam, use_lambda, dim, sp, sp.log2_min, sp.log2_max);
    auto wide = estimate_over_range(fam, use_lambda, dim, sp, 2.0 * sp.log2_min, 2.0 * sp.log2_max);

    MikhlinReport rep;
    rep.symbol = fam.name;
    rep.dim = dim;
    rep.estimates = base.estimates;
    rep.sample_count = base.samples;
    for (const auto& e : base.estimates) rep.max_estimate = std::max(rep.max_estimate, e.estimate);
    for (std::size_t i = 0; i < base.estimates.size(); ++i) {
        const double b = base.estimates[i].estimate;
        const double w = wide.estimates[i].estimate;
        if (w > 1.5 * b && w > 1e-12) rep.divergence_flag = true;
    }
    return rep;
}

} // namespace

MikhlinReport mikhlin_constants(const MultiplierSymbol& m, int dim, const MikhlinSampling& sampling)
{
    SymbolFamily fam{m.name,
                     [&m](std::span<const double> xi, cplx) { return m.eval(xi); },
                     Sector{std::numbers::pi}};
    return run_mikhlin(fam, false, dim, sampling);
}

MikhlinReport mikhlin_constants(const SymbolFamily& m, int dim, const MikhlinSampling& sampling)
{
    return run_mikhlin(m, true, dim, sampling);
}

nlohmann::json MikhlinReport::to_json() const
{
    nlohmann::json alphas = nlohmann::json::array();
    for (const auto& e : estimates) {
        alphas.push_back({
            {"alpha", {e.alpha[0], e.alpha[1], e.alpha[2]}},
            {"estimate", e.estimate},
            {"argmax_xi", {e.argmax_xi[0], e.argmax_xi[1], e.argmax_xi[2]}},
            {"argmax_lambda", {e.argmax_lambda.real(), e.argmax_lambda.imag()}},
        });
    }
    return {
        {"symbol", symbol},       {"dim", dim},
        {"estimates", alphas},    {"max_estimate", max_estimate},
        {"divergence_flag", divergence_flag},
        {"sample_count", sample_count},
    };
}

namespace {
double abs2(std::span<const double> xi)
{
    double s = 0.0;
    for (double v : xi) s += v * v;
    return s;
}
} // namespace

MultiplierSymbol identity_symbol()
{
    return {"identity", [](std::span<const double>) { return cplx{1.0, 0.0}; }, std::nullopt, true};
}

MultiplierSymbol bessel_symbol(double sigma)
{
    return {"bessel(sigma=" + std::to_string(sigma) + ")",
            [sigma](std::span<const double> xi) {
                return cplx{std::pow(1.0 + abs2(xi), 0.5 * sigma), 0.0};
            },
            std::nullopt, true};
}

MultiplierSymbol heat_symbol(double t)
{
    if (!(t >= 0.0)) throw invalid_argument("heat_symbol: t must be >= 0");
    return {"heat(t=" + std::to_string(t) + ")",
            [t](std::span<const double> xi) { return cplx{std::exp(-t * abs2(xi)), 0.0}; },
            std::nullopt, true};
}

MultiplierSymbol resolvent_symbol(cplx lambda)
{
    if (lambda.imag() == 0.0 && lambda.real() <= 0.0)
        throw invalid_argument("resolvent_symbol: lambda on the cut (-inf, 0]");
    const bool re = lambda.imag() == 0.0 && lambda.real() > 0.0;
    return {"resolvent(lambda=" + std::to_string(lambda.real()) + "+" +
                std::to_string(lambda.imag()) + "i)",
            [lambda](std::span<const double> xi) { return 1.0 / (lambda + abs2(xi)); },
            std::nullopt, re};
}

MultiplierSymbol laplacian_symbol()
{
    return {"laplacian", [](std::span<const double> xi) { return cplx{abs2(xi), 0.0}; },
            std::nullopt, true};
}

MultiplierSymbol fractional_power_symbol(double alpha)
{
    return {"fractional_power(alpha=" + std::to_string(alpha) + ")",
            [alpha](std::span<const double> xi) {
                return cplx{std::pow(1.0 + abs2(xi), alpha), 0.0};
            },
            std::nullopt, true};
}

MultiplierSymbol derivative_symbol(std::span<const int> alpha)
{
    std::vector<int> a(alpha.begin(), alpha.end());
    int order = 0;
    for (int v : a) {
        if (v < 0) throw invalid_argument("derivative_symbol: multi-index must be >= 0");
        order += v;
    }
    std::string name = "derivative(alpha=";
    for (std::size_t i = 0; i < a.size(); ++i) name += (i ? "," : "") + std::to_string(a[i]);
    name += ")";
    return {std::move(name),
            [a](std::span<const double> xi) {
                cplx v{1.0, 0.0};
                for (std::size_t d = 0; d < a.size() && d < xi.size(); ++d)
                    for (int j = 0; j < a[d]; ++j) v *= cplx{0.0, xi[d]};
                return v;
            },
            std::nullopt, order % 2 == 0};
}

MultiplierSymbol coordinate_symbol(int axis)
{
    if (axis < 0 || axis > 2) throw invalid_argument("coordinate_symbol: axis must be 0..2");
    return {"coordinate(axis=" + std::to_string(axis) + ")",
            [axis](std::span<const double> xi) {
                return cplx{axis < static_cast<int>(xi.size()) ? xi[axis] : 0.0, 0.0};
            },
            std::nullopt, false};
}

SymbolFamily lambda_resolvent_family()
{
    return {"lambda_resolvent",
            [](std::span<const double> xi, cplx lambda) { return lambda / (lambda + abs2(xi)); },
            Sector{0.75 * std::numbers::pi}};
}

} // namespace tll
