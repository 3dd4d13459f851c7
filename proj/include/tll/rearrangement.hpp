#pragma once

#include <vector>

#include "tll/grid.hpp"

namespace tll {

// Lorentz exponents for L_{p,r}. r may be infinite (weak type); p may not.
struct LorentzParams {
    double p = 2.0;
    double r = 2.0;
};

void validate_lorentz(const LorentzParams& lp);

// The decreasing rearrangement of a grid function is a right-open step
// function: f*(t) = values[k] on [k*step_measure, (k+1)*step_measure), and 0
// beyond. values is sorted non-increasing; step_measure is the cell measure
// of the originating grid, so sum of steps is the torus measure.
struct StepRearrangement {
    std::vector<double> values;
    double step_measure = 0.0;

    double at(double t) const; // f*(t), 0 for t past the last step
};

// mu{ x : |f(x)| > alpha } with the pointwise Euclidean magnitude for vector
// fields. Right-continuous and non-increasing in alpha.
double distribution_function(const GridField& u, double alpha);

StepRearrangement decreasing_rearrangement(const GridField& u);
StepRearrangement rearrange_magnitudes(std::vector<double> magnitudes, double cell);

// || f ||_{L_{p,r}} = ( int_0^inf [ t^{1/p} f*(t) ]^r dt/t )^{1/r}, and
// sup_t t^{1/p} f*(t) for r = inf. On step functions the integral has the
// exact closed form sum_k v_k^r (p/r) (t_{k+1}^{r/p} - t_k^{r/p}); no
// quadrature is involved. r = p recovers the L_p norm exactly.
double lorentz_quasinorm(const StepRearrangement& f, const LorentzParams& lp);
double lorentz_quasinorm(const GridField& u, const LorentzParams& lp);

} // namespace tll
