#pragma once

#include <array>

#include "tll/grid.hpp"

namespace tll {

// Deterministic test fields. Random draws assign coefficients to a fixed
// frequency band in a resolution-independent order, so one (seed, index)
// names one continuum function realizable at every resolution that resolves
// the band (res >= 2 * (band + 1)).
struct CorpusSpec {
    int dim = 2;
    int comps = 1;
    int band = 8;                // coefficients drawn for max_i |xi_i| <= band
    double decay = 2.0;          // amplitudes damped by (1 + |xi|^2)^{-decay}
    bool solenoidal = false;     // project the draw (needs comps == dim >= 2)
    unsigned long long seed = 1;
};

// The index selects an independent draw from the stream; real-valued output
// is enforced by Hermitian symmetrization of the coefficients.
GridField random_field(const CorpusSpec& spec, int res, int index);

// e^{i <xi0, x>} in every component; complex-valued unless xi0 = 0.
GridField pure_mode(int dim, int res, std::array<int, 3> xi0, int comps = 1);

// amplitude * cos(<xi0, x>), real scalar.
GridField cosine_mode(int dim, int res, std::array<int, 3> xi0, double amplitude = 1.0);

// Periodized Gaussian, product over axes of wrapped exp(-(x-c)^2 / (2 w^2)).
GridField gaussian_bump(int dim, int res, double width, std::array<double, 3> center);

// The classical 2d solenoidal field (sin x cos y, -cos x sin y). Its
// nonlinearity is a pure gradient, so the projected equation evolves it as
// exp(-2t) times itself.
GridField taylor_green(int res);

} // namespace tll
