#pragma once

#include "tll/dyadic.hpp"
#include "tll/fft.hpp"
#include "tll/rearrangement.hpp"

namespace tll {

// Exponents of F^{s,r}_{p,q}: Lorentz L_{p,r} outside, weighted l^s_q over
// the block index inside. q and r may be infinite.
struct TLLParams {
    double s = 0.0;
    double p = 2.0;
    double q = 2.0;
    double r = 2.0;

    TLLParams with_s(double new_s) const { return {new_s, p, q, r}; }
    LorentzParams lorentz() const { return {p, r}; }
};

void validate_tll(const TLLParams& tp);

// ( sum_k [2^{ks} a_k]^q )^{1/q}, sup_k for q = inf. The weight grows with k;
// raising s can only raise the norm.
double sequence_norm_lsq(std::span<const double> a, double s, double q);

// || u ||_{F^{s,r}_{p,q}}: pointwise l^s_q of the Littlewood-Paley pieces
// phi_k * u (Euclidean magnitude across components), then the Lorentz
// L_{p,r} quasinorm of the resulting scalar grid function. Blocks beyond
// block_cap(res) or with support entirely above the grid's frequency ball
// vanish on the grid and are skipped.
double tll_norm(const GridField& u, const TLLParams& tp, const DyadicFamily& family);
double tll_norm(const SpectralField& u, const TLLParams& tp, const DyadicFamily& family);

// sum_{|alpha| <= k} || d^alpha u ||_{F^{s,r}_{p,q}}, the derivative form of
// the norm on F^{s+k,r}_{p,q}.
double derivative_equiv_norm(const GridField& u, const TLLParams& tp, int k,
                             const DyadicFamily& family);

// || B^sigma u ||_{F^{s-sigma,r}_{p,q}} with B^sigma = (1-Laplace)^{sigma/2};
// equivalent to || u ||_{F^{s,r}_{p,q}}.
double bessel_shift_norm(const GridField& u, const TLLParams& tp, double sigma,
                         const DyadicFamily& family);

// K(t, u) between F^{s,r}_{p,q} and F^{s+2,r}_{p,q}, minimized over sharp
// spectral splits at cutoffs R = 2^j plus the degenerate splits (u,0) and
// (0,u). The cutoff norms depend only on u, so they are computed once and
// reused across t.
struct KProfile {
    std::vector<double> high_norm; // || highpass_R u ||_{F^s}, R = 2^j
    std::vector<double> low_norm;  // || lowpass_R u ||_{F^{s+2}}
    double full_s = 0.0;           // || u ||_{F^s}
    double full_s2 = 0.0;          // || u ||_{F^{s+2}}
    int max_block = 0;

    double at(double t) const;
};

KProfile k_profile(const GridField& u, const TLLParams& tp, const DyadicFamily& family);
double k_functional(const GridField& u, const TLLParams& tp, double t, const DyadicFamily& family);

// Real-interpolation trace-space proxy (X, D)_{1-1/eta, eta}:
// ( sum_j [ t_j^{-theta} K(t_j, u) ]^eta  dlog t )^{1/eta}, theta = 1 - 1/eta,
// t_j log-spaced on [2^{-2K}, 4] with per_octave points per octave.
struct TraceParams {
    double eta = 2.0;
    int per_octave = 4;
};

double trace_norm(const GridField& u, const TLLParams& tp, const TraceParams& trp,
                  const DyadicFamily& family);

// Block symbol values cached per (family id, dim, res). Families with equal
// ids must evaluate identically.
void clear_block_cache();

} // namespace tll
