#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>

#include <json.hpp>

#include "tll/grid.hpp"

namespace tll {

// Open sector { z != 0 : |arg z| < angle }, angle in (0, pi].
struct Sector {
    double angle = std::numbers::pi;
    bool contains(cplx z) const;
};

// A Fourier multiplier m(xi). at_zero overrides the evaluator at the mean
// mode, which is how symbols with a removable 0/0 there (homogeneous degree
// zero) declare their value. real_even marks symbols with m(-xi) = m(xi)
// real, which preserve realness of fields; factories set it.
struct MultiplierSymbol {
    std::string name;
    std::function<cplx(std::span<const double>)> eval;
    std::optional<cplx> at_zero;
    bool real_even = false;

    cplx operator()(std::span<const double> xi) const;
};

// lambda-parameterized symbol family with a sector domain, e.g. the
// sectoriality family lambda/(lambda + |xi|^2). bind() fixes lambda.
struct SymbolFamily {
    std::string name;
    std::function<cplx(std::span<const double>, cplx)> eval;
    Sector lambda_domain;
    bool bound_real_even(cplx lambda) const; // realness of the bound symbol
    MultiplierSymbol bind(cplx lambda) const;
};

// Coefficient-wise application. The symbol is evaluated at every resolved
// integer frequency; a NaN/Inf value is a hard error naming the frequency.
SpectralField apply_multiplier(const SpectralField& u, const MultiplierSymbol& m);

// Convenience: F^{-1} m F on grid data.
GridField apply_multiplier(const GridField& u, const MultiplierSymbol& m);

struct MikhlinSampling {
    double log2_min = -10.0;
    double log2_max = 10.0;
    int per_octave = 4;
    int directions = 64;
    double fd_rel_step = 1e-5;
    int lambda_per_ray = 9; // sector sampling for families
};

struct AlphaEstimate {
    std::array<int, 3> alpha{0, 0, 0};
    double estimate = 0.0;          // sup over samples of |xi^alpha d^alpha m|
    std::array<double, 3> argmax_xi{0.0, 0.0, 0.0};
    cplx argmax_lambda{0.0, 0.0};   // meaningful for families only
};

struct MikhlinReport {
    std::string symbol;
    int dim = 0;
    std::vector<AlphaEstimate> estimates; // alpha over {0,1}^dim
    double max_estimate = 0.0;
    bool divergence_flag = false;  // estimates keep growing as the range doubles
    std::size_t sample_count = 0;
    nlohmann::json to_json() const;
};

// Empirical Mikhlin constants sup |xi^alpha d^alpha m(xi)|, alpha in {0,1}^n,
// over log-spaced radii and quasi-uniform directions. Derivatives are nested
// central differences with relative step fd_rel_step * |xi|. For families the
// sup also runs over sector samples of lambda.
MikhlinReport mikhlin_constants(const MultiplierSymbol& m, int dim,
                                const MikhlinSampling& sampling = {});
MikhlinReport mikhlin_constants(const SymbolFamily& m, int dim,
                                const MikhlinSampling& sampling = {});

// Shared sampling utilities (also used by dyadic family validation).
std::vector<std::array<double, 3>> sphere_directions(int dim, int count);
std::vector<cplx> sector_samples(const Sector& s, int per_ray, double log2_min, double log2_max);

// Nested central difference d^alpha f at xi; bit i of alpha_mask requests one
// derivative along axis i. step_i = rel_step * |xi| on every involved axis.
cplx fd_partial(const std::function<cplx(std::span<const double>)>& f,
                std::span<const double> xi, unsigned alpha_mask, double rel_step);

// Built-in scalar symbols.
MultiplierSymbol identity_symbol();
MultiplierSymbol bessel_symbol(double sigma);          // (1+|xi|^2)^{sigma/2}
MultiplierSymbol heat_symbol(double t);                // e^{-t|xi|^2}
MultiplierSymbol resolvent_symbol(cplx lambda);        // 1/(lambda+|xi|^2), lambda off (-inf,0]
MultiplierSymbol laplacian_symbol();                   // |xi|^2
MultiplierSymbol fractional_power_symbol(double alpha);// (1+|xi|^2)^alpha
MultiplierSymbol derivative_symbol(std::span<const int> alpha); // (i xi)^alpha
MultiplierSymbol coordinate_symbol(int axis);          // xi_axis, a Mikhlin negative control
SymbolFamily lambda_resolvent_family();                // lambda/(lambda+|xi|^2), Sigma_{3pi/4}

} // namespace tll
