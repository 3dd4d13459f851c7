#include "tll/operators.hpp"

#include <algorithm>
#include <cmath>

#include "tll/fft.hpp"

namespace tll {

GridField bessel_potential(const GridField& u, double sigma)
{
    if (!std::isfinite(sigma)) throw invalid_argument("bessel_potential: sigma must be finite");
    return apply_multiplier(u, bessel_symbol(sigma));
}

GridField laplace_resolvent(const GridField& u, cplx lambda)
{
    return apply_multiplier(u, resolvent_symbol(lambda));
}

GridField heat_semigroup(const GridField& u, double t)
{
    return apply_multiplier(u, heat_symbol(t));
}

GridField fractional_power(const GridField& u, double alpha)
{
    if (!(alpha >= 0.0)) throw invalid_argument("fractional_power: alpha must be >= 0");
    return apply_multiplier(u, fractional_power_symbol(alpha));
}

GridField derivative(const GridField& u, std::span<const int> alpha)
{
    return apply_multiplier(u, derivative_symbol(alpha));
}

SpectralField spectral_gradient(const SpectralField& u)
{
    const Shape& s = u.shape();
    if (s.comps != 1) throw invalid_argument("spectral_gradient: expects a scalar field");
    SpectralField out({s.dim, s.res, s.dim}, false);
    for_each_mode(s, [&](std::size_t flat, const std::array<int, 3>& xi) {
        const cplx v = u.at(0, flat);
        for (int d = 0; d < s.dim; ++d)
            out.at(d, flat) = cplx{0.0, static_cast<double>(xi[d])} * v;
    });
    return out;
}

SpectralField spectral_divergence(const SpectralField& u)
{
    const Shape& s = u.shape();
    if (s.comps != s.dim) throw invalid_argument("spectral_divergence: expects comps == dim");
    SpectralField out({s.dim, s.res, 1}, false);
    for_each_mode(s, [&](std::size_t flat, const std::array<int, 3>& xi) {
        cplx acc{0.0, 0.0};
        for (int d = 0; d < s.dim; ++d)
            acc += cplx{0.0, static_cast<double>(xi[d])} * u.at(d, flat);
        out.at(0, flat) = acc;
    });
    return out;
}

double estimate_sup(const HolomorphicSymbol& f, int samples_per_ray)
{
    // By the maximum principle the sup over the sector is approached on its
    // boundary rays; sample those plus the positive reals.
    double best = std::abs(f.eval(cplx{0.0, 0.0}));
    const double angles[] = {0.0, f.domain.angle * (1.0 - 1e-9), -f.domain.angle * (1.0 - 1e-9)};
    for (double a : angles) {
        for (int j = 0; j < samples_per_ray; ++j) {
            const double t = static_cast<double>(j) / (samples_per_ray - 1);
            const double mod = std::exp2(-16.0 + 32.0 * t);
            best = std::max(best, std::abs(f.eval(std::polar(mod, a))));
        }
    }
    return best;
}

GridField hinfty_apply(const GridField& u, const HolomorphicSymbol& f)
{
    MultiplierSymbol m{"hinfty(" + f.name + ")",
                       [&f](std::span<const double> xi) {
                           double r2 = 0.0;
                           for (double v : xi) r2 += v * v;
                           return f.eval(cplx{r2, 0.0});
                       },
                       std::nullopt, f.real_on_reals};
    return apply_multiplier(u, m);
}

std::vector<HolomorphicSymbol> hinfty_test_family(double t, cplx lambda)
{
    if (!(t > 0.0)) throw invalid_argument("hinfty_test_family: t must be > 0");
    Sector quarter{std::numbers::pi / 4.0};
    if (lambda.imag() == 0.0 && lambda.real() <= 0.0)
        throw invalid_argument("hinfty_test_family: lambda must avoid the cut (-inf, 0]");

    std::vector<HolomorphicSymbol> fam;
    fam.push_back({"z/(1+z)^2",
                   [](cplx z) { return z / ((1.0 + z) * (1.0 + z)); },
                   quarter, 0.0, true});
    fam.push_back({"(z/(1+z)^2)^2",
                   [](cplx z) {
                       const cplx g = z / ((1.0 + z) * (1.0 + z));
                       return g * g;
                   },
                   quarter, 0.0, true});
    fam.push_back({"z/(1+z)", [](cplx z) { return z / (1.0 + z); }, quarter, 0.0, true});
    fam.push_back({"exp(-t z)", [t](cplx z) { return std::exp(-t * z); }, quarter, 0.0, true});
    fam.push_back({"lambda/(lambda+z)",
                   [lambda](cplx z) { return lambda / (lambda + z); },
                   quarter, 0.0, lambda.imag() == 0.0});
    for (auto& f : fam) f.sup_bound = estimate_sup(f);
    return fam;
}

TimeSignal::TimeSignal(double dt, std::size_t n_samples, std::size_t slots)
    : dt_(dt), n_samples_(n_samples), slots_(slots)
{
    if (!(dt > 0.0)) throw invalid_argument("time signal: dt must be > 0");
    if (n_samples < 2) throw invalid_argument("time signal: need at least 2 samples");
    if (slots < 1) throw invalid_argument("time signal: slots must be >= 1");
    data_.assign(n_samples_ * slots_, cplx{0.0, 0.0});
}

TimeSignal TimeSignal::from_states(double dt, const std::vector<GridField>& states)
{
    if (states.size() < 2) throw invalid_argument("time signal: need at least 2 states");
    const Shape shape = states.front().shape();
    TimeSignal sig(dt, states.size(), shape.size());
    sig.state_shape_ = shape;
    sig.state_real_ = states.front().real_valued();
    for (std::size_t j = 0; j < states.size(); ++j) {
        if (!(states[j].shape() == shape))
            throw invalid_argument("time signal: states have mismatched shapes");
        std::copy(states[j].data().begin(), states[j].data().end(),
                  sig.data_.begin() + static_cast<std::ptrdiff_t>(j * sig.slots_));
    }
    return sig;
}

double TimeSignal::sample_magnitude(std::size_t sample) const
{
    double s = 0.0;
    for (std::size_t i = 0; i < slots_; ++i) s += std::norm(at(sample, i));
    return std::sqrt(s);
}

double TimeSignal::l_eta_norm(double eta) const
{
    return l_eta_norm(eta, [this](std::size_t j) { return sample_magnitude(j); });
}

double TimeSignal::l_eta_norm(double eta, const std::function<double(std::size_t)>& state_norm) const
{
    if (!(eta > 0.0) || std::isinf(eta)) throw invalid_argument("l_eta_norm: eta must be finite and > 0");
    double sum = 0.0;
    for (std::size_t j = 0; j < n_samples_; ++j) sum += std::pow(state_norm(j), eta);
    return std::pow(sum * dt_, 1.0 / eta);
}

TimeSignal TimeSignal::restricted(std::size_t first, std::size_t count) const
{
    if (first + count > n_samples_) throw invalid_argument("time signal: restriction out of range");
    TimeSignal out(dt_, count, slots_);
    out.state_shape_ = state_shape_;
    out.state_real_ = state_real_;
    std::copy(data_.begin() + static_cast<std::ptrdiff_t>(first * slots_),
              data_.begin() + static_cast<std::ptrdiff_t>((first + count) * slots_),
              out.data_.begin());
    return out;
}

GridField TimeSignal::state(std::size_t sample) const
{
    if (!state_shape_) throw invalid_argument("time signal: not built from grid states");
    GridField u(*state_shape_, state_real_);
    std::copy(data_.begin() + static_cast<std::ptrdiff_t>(sample * slots_),
              data_.begin() + static_cast<std::ptrdiff_t>((sample + 1) * slots_), u.data().begin());
    return u;
}

TimeSignal extend_even_reflection(const TimeSignal& u)
{
    const std::size_t N = u.n_samples_ - 1; // intervals; T = N*dt
    if (N < 1) throw invalid_argument("extend_even_reflection: need at least one interval");

    double peak = 0.0;
    for (std::size_t j = 0; j <= N; ++j) peak = std::max(peak, u.sample_magnitude(j));
    if (peak > 0.0 && u.sample_magnitude(0) > 1e-8 * peak)
        warn("extend_even_reflection: trace at t=0 is " +
             std::to_string(u.sample_magnitude(0) / peak) +
             " of the signal peak; zero-trace estimates assume it vanishes");

    TimeSignal out(u.dt_, 4 * N, u.slots_);
    out.state_shape_ = u.state_shape_;
    out.state_real_ = u.state_real_;
    for (std::size_t j = 0; j < 4 * N; ++j) {
        std::size_t src;
        if (j <= N)
            src = j;
        else if (j < 2 * N)
            src = 2 * N - j; // u(2T - tau), exact on the grid
        else
            continue; // zero tail
        for (std::size_t i = 0; i < u.slots_; ++i) out.at(j, i) = u.at(src, i);
    }
    return out;
}

TimeSignal apply_time_symbol(const TimeSignal& u, const std::function<cplx(double)>& symbol,
                             const std::string& name)
{
    const int n = static_cast<int>(u.n_samples_);
    const double period = u.dt_ * n;
    std::vector<cplx> sym(n);
    for (int m = 0; m < n; ++m) {
        const double omega = 2.0 * std::numbers::pi * freq_of(m, n) / period;
        sym[m] = symbol(omega);
        if (!std::isfinite(sym[m].real()) || !std::isfinite(sym[m].imag()))
            throw numerical_error("time symbol " + name + ": non-finite value at omega=" +
                                  std::to_string(omega));
    }

    TimeSignal out = u;
    std::vector<cplx> series(n);
    const double scale = 1.0 / n;
    for (std::size_t slot = 0; slot < u.slots_; ++slot) {
        for (int j = 0; j < n; ++j) series[j] = u.at(j, slot);
        fft_1d_forward(series.data(), n);
        for (int j = 0; j < n; ++j) series[j] *= sym[j] * scale;
        fft_1d_backward(series.data(), n);
        for (int j = 0; j < n; ++j) out.at(j, slot) = series[j];
    }
    return out;
}

TimeSignal time_fractional_power(const TimeSignal& u, double alpha)
{
    if (!std::isfinite(alpha)) throw invalid_argument("time_fractional_power: alpha must be finite");
    return apply_time_symbol(
        u, [alpha](double omega) { return std::pow(cplx{1.0, omega}, alpha); },
        "(1+i omega)^alpha");
}

TimeSignal time_derivative(const TimeSignal& u)
{
    return apply_time_symbol(u, [](double omega) { return cplx{0.0, omega}; }, "i omega");
}

} // namespace tll
