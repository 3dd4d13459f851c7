#pragma once

#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "tll/helmholtz.hpp"
#include "tll/tll_norm.hpp"

namespace tll {

// du/dt - Laplace u + P (u . grad) u = f on the torus, unit viscosity,
// integrated in spectral space with the nonlinearity in divergence form
// G(u) = -P div(u u^T), dealiased by the two-thirds rule.

enum class Scheme { etd, imex2 };
enum class Verdict { completed, threshold_exceeded, step_rejected };

const char* to_string(Scheme s);
const char* to_string(Verdict v);
Scheme scheme_from_string(const std::string& name);

struct SolverConfig {
    int dim = 2;
    int res = 64;
    double dt = 1e-3;
    double t_end = 1.0;
    Scheme scheme = Scheme::etd;

    int sample_stride = 10; // sample records every this many steps
    double blowup_threshold = std::numeric_limits<double>::infinity();
    TLLParams norm_params{0.5, 2.5, 2.0, 2.0};
    TraceParams trace{4.0, 4};

    int checkpoint_stride = 0; // steps between checkpoints; 0 disables
    std::string checkpoint_prefix;

    bool store_states = false; // keep sampled states in memory
    unsigned long long seed = 0; // recorded in manifests, not used by stepping

    // Throws on structural problems; warns (only) when the well-posedness
    // constraint n/(2p) + 1/eta < 1 or the stricter blow-up dichotomy
    // constraint n/(2p) + 2/eta < 1 fails.
    void validate() const;
    long long steps() const; // t_end / dt, exact to 1e-9 or throws
    nlohmann::json to_json() const;
};

struct SampleRecord {
    long long step = 0;
    double t = 0.0;
    double l2 = 0.0;
    double trace_proxy = 0.0;
    double divergence = 0.0;
};

struct BlowupReport {
    Verdict verdict = Verdict::completed;
    double t_halt = 0.0; // first threshold crossing, rejection time, or t_end
    double threshold = std::numeric_limits<double>::infinity();
    std::vector<SampleRecord> history;
    nlohmann::json to_json() const;
};

struct Trajectory {
    std::vector<SampleRecord> samples;
    std::vector<double> state_times; // filled when store_states
    std::vector<GridField> states;
    GridField final_state;
    double final_time = 0.0;
    Verdict verdict = Verdict::completed;
    BlowupReport report;
};

// Zeroes every coefficient with some |xi_i| > floor(M/3).
void dealias_mask(SpectralField& u);

// G(u). Input comps == dim; output is solenoidal and dealiased. A non-finite
// value in the assembled term is a hard error.
SpectralField nonlinear_term(const SpectralField& u);

// Integrates from u0 (projected with a warning if its solenoidality defect
// exceeds 1e-12). The optional forcing is constant in time and projected the
// same way. Blow-up is monitored at sample times against the trace proxy.
Trajectory solve(const SolverConfig& cfg, const GridField& u0, const GridField* forcing = nullptr);

struct Checkpoint {
    double t = 0.0;
    long long step = 0;
    SpectralField state;
    std::optional<SpectralField> prev_nonlinear; // imex2 history
};

void write_checkpoint(const std::string& prefix, const Checkpoint& ck, const SolverConfig& cfg);
Checkpoint read_checkpoint(const std::string& prefix, const SolverConfig& cfg);

// Continues a run from a checkpoint to cfg.t_end. Sample times stay on the
// same stride grid, and the resumed tail reproduces the uninterrupted run
// exactly (same state bits, same operation order).
Trajectory resume(const SolverConfig& cfg, const std::string& checkpoint_prefix,
                  const GridField* forcing = nullptr);

// Applies the threshold to the trace proxy along recorded states. times must
// be strictly increasing.
BlowupReport blowup_monitor(std::span<const double> times, std::span<const GridField> states,
                            const TLLParams& tp, const TraceParams& trace, double threshold);

} // namespace tll
