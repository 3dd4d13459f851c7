#pragma once

#include <optional>

#include "tll/multiplier.hpp"

namespace tll {

// ---- spatial calculus, all Fourier multipliers on the torus ----

// B^sigma = (1 - Laplace)^{sigma/2}.
GridField bessel_potential(const GridField& u, double sigma);

// (lambda + A_L)^{-1} with A_L = -Laplace; lambda off the cut (-inf, 0].
GridField laplace_resolvent(const GridField& u, cplx lambda);

// e^{t Laplace}, t >= 0.
GridField heat_semigroup(const GridField& u, double t);

// (1 - Laplace)^alpha, alpha >= 0. Direct symbol evaluation; composing an
// integer power with the remaining fraction gives the same values to
// roundoff, which tests assert.
GridField fractional_power(const GridField& u, double alpha);

// d^alpha u via (i xi)^alpha.
GridField derivative(const GridField& u, std::span<const int> alpha);

// Gradient of a scalar (comps == 1) and divergence of a vector
// (comps == dim), coefficient-side.
SpectralField spectral_gradient(const SpectralField& u);
SpectralField spectral_divergence(const SpectralField& u);

// ---- H-infinity functional calculus for A_L ----

// A bounded holomorphic function on a sector containing [0, inf). sup_bound
// is the declared sup over the sector (estimate_sup measures it on the
// boundary rays); real_on_reals marks functions real on the spectrum, which
// preserve realness of fields.
struct HolomorphicSymbol {
    std::string name;
    std::function<cplx(cplx)> eval;
    Sector domain{std::numbers::pi / 4.0};
    double sup_bound = 0.0;
    bool real_on_reals = true;
};

double estimate_sup(const HolomorphicSymbol& f, int samples_per_ray = 257);

// f(A_L) u = F^{-1} f(|xi|^2) F u.
GridField hinfty_apply(const GridField& u, const HolomorphicSymbol& f);

// The calibration family: z/(1+z)^2, its square, z/(1+z), e^{-tz},
// lambda/(lambda+z). sup bounds filled in by estimate_sup.
std::vector<HolomorphicSymbol> hinfty_test_family(double t = 1.0, cplx lambda = {2.0, 1.0});

// ---- signals on a uniform time grid over [0, T] ----

// n_steps intervals, n_steps+1 samples at t_k = k*dt, T = n_steps*dt. Each
// sample holds `slots` complex values (1 for scalar signals; comps * M^n
// when built from grid states). Discrete L_eta norms use the rectangle sum
// over all stored samples.
class TimeSignal {
public:
    TimeSignal() = default;
    TimeSignal(double dt, std::size_t n_samples, std::size_t slots);
    static TimeSignal from_states(double dt, const std::vector<GridField>& states);

    double dt() const { return dt_; }
    std::size_t samples() const { return n_samples_; }
    std::size_t slots() const { return slots_; }
    double duration() const { return dt_ * static_cast<double>(n_samples_ - 1); }

    cplx& at(std::size_t sample, std::size_t slot) { return data_[sample * slots_ + slot]; }
    const cplx& at(std::size_t sample, std::size_t slot) const { return data_[sample * slots_ + slot]; }

    // Euclidean magnitude across slots at one sample.
    double sample_magnitude(std::size_t sample) const;

    // ( dt * sum_j ||u_j||^eta )^{1/eta} with the slot-Euclidean magnitude,
    // or a caller-supplied per-sample norm.
    double l_eta_norm(double eta) const;
    double l_eta_norm(double eta, const std::function<double(std::size_t)>& state_norm) const;

    TimeSignal restricted(std::size_t first, std::size_t count) const;

    // For signals built from grid states: the state at one sample.
    GridField state(std::size_t sample) const;
    const std::optional<Shape>& state_shape() const { return state_shape_; }

private:
    double dt_ = 0.0;
    std::size_t n_samples_ = 0;
    std::size_t slots_ = 1;
    std::optional<Shape> state_shape_;
    bool state_real_ = true;
    std::vector<cplx> data_;

    friend TimeSignal extend_even_reflection(const TimeSignal&);
    friend TimeSignal apply_time_symbol(const TimeSignal&, const std::function<cplx(double)>&,
                                        const std::string&);
};

// E_T: u on [0,T], the mirror u(2T - tau) on (T, 2T), zero on [2T, 4T).
// Output has 4*n_steps samples covering one period of length 4T. Warns when
// the t = 0 trace is not small (the zero-trace spaces assume it vanishes).
TimeSignal extend_even_reflection(const TimeSignal& u);

// B^alpha = (1 + d/dt)^alpha through the time DFT: coefficient at frequency
// omega scales by (1 + i omega)^alpha, principal branch. The signal is
// treated as one period.
TimeSignal time_fractional_power(const TimeSignal& u, double alpha);

// (d/dt) u, spectrally in time.
TimeSignal time_derivative(const TimeSignal& u);

} // namespace tll
