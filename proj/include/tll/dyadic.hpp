#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tll/multiplier.hpp"

namespace tll {

// Smooth transition h(t) = g(t)/(g(t)+g(1-t)) with g(t) = e^{-1/t} for t > 0:
// exactly 0 for t <= 0, exactly 1 for t >= 1, C-infinity in between.
double smooth_step(double t);

// Radial plateau bump: 1 for |x| <= 1/2, 0 for |x| >= 1, built from smooth_step.
double bump_profile(double rho);

// A finite dyadic frequency decomposition (phi_k)_{k=0..max_block}. Blocks
// are analytic radial-or-not closures, evaluated exactly at any frequency;
// grids only ever see sampled values. width N fixes the support envelope:
// spt phi_0 in {|xi| <= 2^N}, spt phi_k in {2^{k-N} <= |xi| <= 2^{k+N}}.
class DyadicFamily {
public:
    using BlockFn = std::function<double(int k, std::span<const double> xi)>;

    DyadicFamily(std::string id, int dim, int max_block, int width,
                 bool partition_of_unity, BlockFn block);

    const std::string& id() const { return id_; }
    int dim() const { return dim_; }
    int max_block() const { return max_block_; }
    int width() const { return width_; }
    bool partition_of_unity() const { return partition_of_unity_; }

    double block(int k, std::span<const double> xi) const;
    double block_radial(int k, double rho) const; // evaluates along the first axis

    double support_lower(int k) const; // 0 for k = 0, else 2^{k-N}
    double support_upper(int k) const; // 2^{k+N}

    // Partition sum over all blocks on this family.
    double partition_sum(std::span<const double> xi) const;

private:
    std::string id_;
    int dim_;
    int max_block_;
    int width_;
    bool partition_of_unity_;
    BlockFn block_;
};

// Largest block index resolvable on an M-point grid: ceil(log2(M/2)) + 1.
// Blocks beyond it vanish on every resolved frequency and are dropped from
// norm sums.
int block_cap(int res);

// The telescoped bump family: phi_0(xi) = bump(|xi|/2),
// phi_k(xi) = bump(|xi|/2^{k+1}) - bump(|xi|/2^k). Exact partition of unity
// for |xi| <= 2^K, width 1, scale covariant: phi_k(xi) = phi_1(2^{1-k} xi).
DyadicFamily build_standard_family(int dim, int max_block);

// Width-2 variant with a three-octave transition (plateau |x| <= 1/4,
// support |x| <= 2, shaped by transition_sharpness) and a ridge modulation
// on blocks k >= 1 that lifts the partition sum into [1, 1.2]. Deliberately
// not a partition of unity, so decomposition-independence checks compare
// genuinely different families.
DyadicFamily build_smoothed_variant(int dim, int max_block, double transition_sharpness = 2.0);

struct FamilySampling {
    double log2_min = -4.0;
    double log2_max = 0.0;  // 0 means "max_block + width + 2"
    int per_octave = 8;
    int directions = 32;
    double fd_rel_step = 1e-5;
};

struct SupportViolation {
    int k = 0;
    std::array<double, 3> xi{0.0, 0.0, 0.0};
    double value = 0.0;
};

struct FamilyValidation {
    std::string family_id;
    int dim = 0;
    int max_block = 0;
    int width = 0;
    // sup over k, xi of |xi|^{|alpha|} |d^alpha phi_k(xi)| per alpha in {0,1}^n.
    std::vector<AlphaEstimate> alpha_estimates;
    double d1_measured = 0.0; // min partition sum on the resolved band
    double d2_measured = 0.0; // max partition sum anywhere sampled
    double partition_max_deviation = 0.0; // max |sum - 1| on the resolved band
    std::vector<SupportViolation> support_violations;
    std::vector<SupportViolation> negativity_violations;
    std::size_t sample_count = 0;
    bool admissible(double d1_floor = 0.0) const;
    nlohmann::json to_json() const;
};

// Samples the family densely (log-spaced radii, quasi-uniform directions)
// and reports every measured property. Never throws on violations; they are
// returned as records.
FamilyValidation validate_family(const DyadicFamily& family, const FamilySampling& sampling = {});

} // namespace tll
