#pragma once

#include "tll/multiplier.hpp"

namespace tll {

// P = I - grad div / Laplace on nonzero modes, identity on the mean mode
// (constants are solenoidal; periodic potentials cannot produce them).
// Vector fields only, comps == dim, dim in {2,3}.
SpectralField helmholtz_project(const SpectralField& u);
GridField helmholtz_project(const GridField& u);

struct HelmholtzSplit {
    GridField solenoidal; // P u
    GridField gradient;   // (I - P) u
    GridField potential;  // scalar p with grad p = gradient part, mean zero
};

HelmholtzSplit helmholtz_split(const GridField& u);

// Scale-invariant solenoidality defect: l2 of xi . uhat over l2 of |xi| uhat.
// Zero for fields with no nonzero modes.
double relative_divergence(const SpectralField& u);
double relative_divergence(const GridField& u);

// The Stokes operators are the Laplace ones restricted to solenoidal fields:
// inputs must be divergence-free to 1e-10, outputs are re-projected so their
// defect stays at roundoff.
GridField stokes_resolvent(const GridField& u, cplx lambda);
GridField stokes_semigroup(const GridField& u, double t);

// Matrix entry (i,j) of the projection symbol, delta_ij - xi_i xi_j / |xi|^2,
// for multiplier diagnostics.
MultiplierSymbol helmholtz_entry_symbol(int i, int j);

} // namespace tll
