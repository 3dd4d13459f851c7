#pragma once

#include "tll/grid.hpp"

namespace tll {

// Fourier-series convention: forward divides by M^n so that
// u(x) = sum_xi uhat(xi) e^{i<xi,x>} holds exactly on the grid. A pure mode
// e^{i<xi0,x>} therefore has a single coefficient of value 1. Round trip is
// the identity to machine precision and Parseval holds in the form
// grid_l2_norm(u) == spectral_l2_norm(F u).
SpectralField forward_transform(const GridField& u);
GridField inverse_transform(const SpectralField& s);

// In-time transforms for TimeSignal live in operators.cpp and share this
// backend through fft_1d_*.
void fft_1d_forward(cplx* data, int n);   // no scaling, sign -1
void fft_1d_backward(cplx* data, int n);  // no scaling, sign +1

} // namespace tll
