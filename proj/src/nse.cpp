#include "tll/nse.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <utility>

#include "tll/fft.hpp"
#include "tll/io.hpp"

namespace tll {

const char* to_string(Scheme s)
{
    return s == Scheme::etd ? "etd" : "imex2";
}

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::completed: return "completed";
    case Verdict::threshold_exceeded: return "threshold_exceeded";
    default: return "step_rejected";
    }
}

Scheme scheme_from_string(const std::string& name)
{
    if (name == "etd") return Scheme::etd;
    if (name == "imex2") return Scheme::imex2;
    throw invalid_argument("scheme must be etd or imex2, got \"" + name + "\"");
}

void SolverConfig::validate() const
{
    Shape s{dim, res, dim};
    validate_shape(s);
    if (dim < 2) throw invalid_argument("solver: dim must be 2 or 3");
    if (!(dt > 0.0) || !std::isfinite(dt)) throw invalid_argument("solver: dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end))
        throw invalid_argument("solver: t_end must be positive");
    if (sample_stride < 1) throw invalid_argument("solver: sample_stride must be >= 1");
    if (checkpoint_stride < 0) throw invalid_argument("solver: checkpoint_stride must be >= 0");
    if (checkpoint_stride > 0 && checkpoint_prefix.empty())
        throw invalid_argument("solver: checkpointing requires a checkpoint_prefix");
    if (!(blowup_threshold > 0.0)) throw invalid_argument("solver: blowup_threshold must be positive");
    validate_tll(norm_params);
    if (!(trace.eta > 1.0) || !std::isfinite(trace.eta))
        throw invalid_argument("solver: trace eta must be finite and > 1");
    if (trace.per_octave < 1) throw invalid_argument("solver: trace per_octave must be >= 1");
    steps();

    const double base = dim / (2.0 * norm_params.p);
    if (base + 1.0 / trace.eta >= 1.0) {
        warn("solver: n/(2p) + 1/eta = " + std::to_string(base + 1.0 / trace.eta) +
             " >= 1; the trace-space setting is outside the well-posedness range");
    } else if (base + 2.0 / trace.eta >= 1.0) {
        warn("solver: n/(2p) + 2/eta = " + std::to_string(base + 2.0 / trace.eta) +
             " >= 1; blow-up monitoring is heuristic in this range");
    }
}

long long SolverConfig::steps() const
{
    const long long n = std::llround(t_end / dt);
    if (n < 1 || std::abs(n * dt - t_end) > 1e-9 * std::max(1.0, t_end))
        throw invalid_argument("solver: t_end must be a positive multiple of dt");
    return n;
}

nlohmann::json SolverConfig::to_json() const
{
    return {
        {"dim", dim},
        {"res", res},
        {"dt", dt},
        {"t_end", t_end},
        {"scheme", to_string(scheme)},
        {"sample_stride", sample_stride},
        {"blowup_threshold", blowup_threshold},
        {"norm", {{"s", norm_params.s}, {"p", norm_params.p}, {"q", norm_params.q}, {"r", norm_params.r}}},
        {"trace", {{"eta", trace.eta}, {"per_octave", trace.per_octave}}},
        {"checkpoint_stride", checkpoint_stride},
        {"checkpoint_prefix", checkpoint_prefix},
        {"store_states", store_states},
        {"seed", seed},
    };
}

nlohmann::json BlowupReport::to_json() const
{
    nlohmann::json hist = nlohmann::json::array();
    for (const auto& rec : history) {
        hist.push_back({{"step", rec.step},
                        {"t", rec.t},
                        {"l2", rec.l2},
                        {"trace_proxy", rec.trace_proxy},
                        {"divergence", rec.divergence}});
    }
    return {{"verdict", to_string(verdict)},
            {"t_halt", t_halt},
            {"threshold", threshold},
            {"history", std::move(hist)}};
}

void dealias_mask(SpectralField& u)
{
    const Shape& s = u.shape();
    const int cut = s.res / 3;
    std::vector<unsigned char> keep(s.points());
    for_each_mode(Shape{s.dim, s.res, 1}, [&](std::size_t flat, const std::array<int, 3>& xi) {
        bool ok = true;
        for (int d = 0; d < s.dim; ++d)
            if (std::abs(xi[d]) > cut) ok = false;
        keep[flat] = ok ? 1 : 0;
    });
    for (int c = 0; c < s.comps; ++c) {
        auto span = u.component(c);
        for (std::size_t i = 0; i < span.size(); ++i)
            if (!keep[i]) span[i] = 0.0;
    }
}

namespace {

int pair_index(int dim, int i, int j)
{
    if (i > j) std::swap(i, j);
    return i * dim + j - i * (i + 1) / 2;
}

} // namespace

SpectralField nonlinear_term(const SpectralField& u)
{
    const Shape& s = u.shape();
    if (s.comps != s.dim || s.dim < 2)
        throw invalid_argument("nonlinear term: velocity field must have comps == dim >= 2");

    SpectralField masked = u;
    dealias_mask(masked);
    GridField ug = inverse_transform(masked);

    const int npairs = s.dim * (s.dim + 1) / 2;
    GridField prod(Shape{s.dim, s.res, npairs}, ug.real_valued());
    for (int i = 0; i < s.dim; ++i) {
        for (int j = i; j < s.dim; ++j) {
            auto a = ug.component(i);
            auto b = ug.component(j);
            auto out = prod.component(pair_index(s.dim, i, j));
            for (std::size_t k = 0; k < out.size(); ++k) out[k] = a[k] * b[k];
        }
    }

    SpectralField tensor = forward_transform(prod);
    SpectralField div(Shape{s.dim, s.res, s.dim}, tensor.from_real());
    for_each_mode(Shape{s.dim, s.res, 1}, [&](std::size_t flat, const std::array<int, 3>& xi) {
        for (int i = 0; i < s.dim; ++i) {
            cplx acc = 0.0;
            for (int j = 0; j < s.dim; ++j)
                acc += cplx(0.0, xi[j]) * tensor.at(pair_index(s.dim, i, j), flat);
            div.at(i, flat) = -acc;
        }
    });
    dealias_mask(div);
    SpectralField g = helmholtz_project(div);

    for (const cplx& v : g.data()) {
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw numerical_error("nonlinear term: non-finite value (state may have blown up)");
    }
    return g;
}

namespace {

double phi1(double a)
{
    return a == 0.0 ? 1.0 : -std::expm1(-a) / a;
}

bool all_finite(const SpectralField& u)
{
    for (const cplx& v : u.data())
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

struct StepFactors {
    // etd: u <- e u + p (G + f); imex2: u <- den (num u + dt (1.5 G - 0.5 G_prev + f))
    std::vector<double> e, p;
    std::vector<double> num, den;

    StepFactors(const SolverConfig& cfg)
    {
        const Shape one{cfg.dim, cfg.res, 1};
        const std::size_t n = one.points();
        std::vector<double> rho2(n);
        for_each_mode(one, [&](std::size_t flat, const std::array<int, 3>& xi) {
            rho2[flat] = double(xi[0]) * xi[0] + double(xi[1]) * xi[1] + double(xi[2]) * xi[2];
        });
        if (cfg.scheme == Scheme::etd) {
            e.resize(n);
            p.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double a = cfg.dt * rho2[i];
                e[i] = std::exp(-a);
                p[i] = cfg.dt * phi1(a);
            }
        } else {
            num.resize(n);
            den.resize(n);
            for (std::size_t i = 0; i < n; ++i) {
                const double a = cfg.dt * rho2[i];
                num[i] = 1.0 - 0.5 * a;
                den[i] = 1.0 / (1.0 + 0.5 * a);
            }
        }
    }
};

std::string checkpoint_file(const std::string& prefix, long long step)
{
    return prefix + ".step" + std::to_string(step);
}

// The integration core shared by solve and resume. Starts at step k0 with
// state uhat (already projected) and, for imex2 past its first step, the
// previous nonlinear term.
Trajectory integrate(const SolverConfig& cfg, SpectralField uhat,
                     std::optional<SpectralField> gprev, long long k0,
                     const std::optional<SpectralField>& fhat)
{
    const long long n_steps = cfg.steps();
    const StepFactors fac(cfg);
    const DyadicFamily family = build_standard_family(cfg.dim, block_cap(cfg.res));
    const std::size_t points = Shape{cfg.dim, cfg.res, 1}.points();

    Trajectory traj;
    traj.report.threshold = cfg.blowup_threshold;

    long long k = k0;
    bool halted = false;

    auto sample = [&](long long step) -> bool {
        GridField state = inverse_transform(uhat);
        SampleRecord rec;
        rec.step = step;
        rec.t = step * cfg.dt;
        rec.l2 = grid_l2_norm(state);
        rec.trace_proxy = trace_norm(state, cfg.norm_params, cfg.trace, family);
        rec.divergence = relative_divergence(uhat);
        traj.samples.push_back(rec);
        if (cfg.store_states) {
            traj.state_times.push_back(rec.t);
            traj.states.push_back(std::move(state));
        }
        if (rec.trace_proxy > cfg.blowup_threshold) {
            traj.verdict = Verdict::threshold_exceeded;
            traj.report.t_halt = rec.t;
            return false;
        }
        return true;
    };

    auto checkpoint = [&](long long step) {
        if (cfg.checkpoint_stride <= 0 || step <= 0 || step % cfg.checkpoint_stride != 0) return;
        Checkpoint ck;
        ck.t = step * cfg.dt;
        ck.step = step;
        ck.state = uhat;
        if (cfg.scheme == Scheme::imex2 && gprev) ck.prev_nonlinear = *gprev;
        write_checkpoint(checkpoint_file(cfg.checkpoint_prefix, step), ck, cfg);
    };

    if (k0 % cfg.sample_stride == 0 && !sample(k0)) halted = true;

    while (!halted && k < n_steps) {
        SpectralField g;
        try {
            g = nonlinear_term(uhat);
        } catch (const numerical_error&) {
            traj.verdict = Verdict::step_rejected;
            traj.report.t_halt = k * cfg.dt;
            break;
        }

        SpectralField next(uhat.shape(), uhat.from_real() && (!fhat || fhat->from_real()));
        if (cfg.scheme == Scheme::etd) {
            for (int c = 0; c < cfg.dim; ++c) {
                auto uc = uhat.component(c);
                auto gc = g.component(c);
                auto nc = next.component(c);
                for (std::size_t i = 0; i < points; ++i) {
                    cplx rhs = gc[i];
                    if (fhat) rhs += fhat->at(c, i);
                    nc[i] = fac.e[i] * uc[i] + fac.p[i] * rhs;
                }
            }
        } else {
            const SpectralField& gp = gprev ? *gprev : g;
            for (int c = 0; c < cfg.dim; ++c) {
                auto uc = uhat.component(c);
                auto gc = g.component(c);
                auto gpc = gp.component(c);
                auto nc = next.component(c);
                for (std::size_t i = 0; i < points; ++i) {
                    cplx rhs = 1.5 * gc[i] - 0.5 * gpc[i];
                    if (fhat) rhs += fhat->at(c, i);
                    nc[i] = fac.den[i] * (fac.num[i] * uc[i] + cfg.dt * rhs);
                }
            }
        }
        next = helmholtz_project(next);

        if (!all_finite(next)) {
            traj.verdict = Verdict::step_rejected;
            traj.report.t_halt = k * cfg.dt;
            break;
        }

        uhat = std::move(next);
        gprev = std::move(g);
        ++k;
        checkpoint(k);
        if ((k % cfg.sample_stride == 0 || k == n_steps) && !sample(k)) halted = true;
    }

    traj.final_state = inverse_transform(uhat);
    traj.final_time = k * cfg.dt;
    if (traj.verdict == Verdict::completed) traj.report.t_halt = traj.final_time;
    traj.report.verdict = traj.verdict;
    traj.report.history = traj.samples;
    return traj;
}

SpectralField project_input(const GridField& u, const SolverConfig& cfg, const char* what)
{
    if (!(u.shape() == Shape{cfg.dim, cfg.res, cfg.dim}))
        throw invalid_argument(std::string("solver: ") + what + " shape does not match the config");
    SpectralField uhat = forward_transform(u);
    const double defect = relative_divergence(uhat);
    if (defect > 1e-12)
        warn(std::string("solver: ") + what + " projected, relative divergence was " +
             std::to_string(defect));
    return helmholtz_project(uhat);
}

} // namespace

Trajectory solve(const SolverConfig& cfg, const GridField& u0, const GridField* forcing)
{
    cfg.validate();
    SpectralField uhat = project_input(u0, cfg, "initial state");
    std::optional<SpectralField> fhat;
    if (forcing) fhat = project_input(*forcing, cfg, "forcing");
    return integrate(cfg, std::move(uhat), std::nullopt, 0, fhat);
}

void write_checkpoint(const std::string& prefix, const Checkpoint& ck, const SolverConfig& cfg)
{
    const std::filesystem::path parent = std::filesystem::path(prefix).parent_path();
    if (!parent.empty()) std::filesystem::create_directories(parent);

    write_spectral(prefix + ".state.tllf", ck.state);
    if (ck.prev_nonlinear) write_spectral(prefix + ".hist.tllf", *ck.prev_nonlinear);

    nlohmann::json meta = {
        {"format", "tll-checkpoint"},
        {"version", 1},
        {"step", ck.step},
        {"t", ck.t},
        {"dt", cfg.dt},
        {"scheme", to_string(cfg.scheme)},
        {"dim", cfg.dim},
        {"res", cfg.res},
        {"has_history", ck.prev_nonlinear.has_value()},
    };
    std::ofstream out(prefix + ".json");
    if (!out) throw invalid_argument("cannot write checkpoint metadata: " + prefix + ".json");
    out << meta.dump(2) << "\n";
}

Checkpoint read_checkpoint(const std::string& prefix, const SolverConfig& cfg)
{
    std::ifstream in(prefix + ".json");
    if (!in) throw invalid_argument("cannot open checkpoint metadata: " + prefix + ".json");
    nlohmann::json meta;
    try {
        in >> meta;
    } catch (const nlohmann::json::exception& e) {
        throw invalid_argument("malformed checkpoint metadata " + prefix + ".json: " + e.what());
    }
    if (meta.value("format", "") != "tll-checkpoint" || meta.value("version", 0) != 1)
        throw invalid_argument("not a version-1 checkpoint: " + prefix + ".json");
    if (meta.at("dim").get<int>() != cfg.dim || meta.at("res").get<int>() != cfg.res ||
        meta.at("dt").get<double>() != cfg.dt ||
        meta.at("scheme").get<std::string>() != to_string(cfg.scheme))
        throw invalid_argument("checkpoint " + prefix + " does not match the solver config");

    Checkpoint ck;
    ck.step = meta.at("step").get<long long>();
    ck.t = ck.step * cfg.dt;
    ck.state = read_spectral(prefix + ".state.tllf");
    if (meta.at("has_history").get<bool>())
        ck.prev_nonlinear = read_spectral(prefix + ".hist.tllf");
    return ck;
}

Trajectory resume(const SolverConfig& cfg, const std::string& checkpoint_prefix,
                  const GridField* forcing)
{
    cfg.validate();
    Checkpoint ck = read_checkpoint(checkpoint_prefix, cfg);
    if (ck.step >= cfg.steps())
        throw invalid_argument("checkpoint is already at or past t_end");
    std::optional<SpectralField> fhat;
    if (forcing) fhat = project_input(*forcing, cfg, "forcing");
    return integrate(cfg, std::move(ck.state), std::move(ck.prev_nonlinear), ck.step, fhat);
}

BlowupReport blowup_monitor(std::span<const double> times, std::span<const GridField> states,
                            const TLLParams& tp, const TraceParams& trace, double threshold)
{
    if (times.size() != states.size() || times.empty())
        throw invalid_argument("blowup monitor: need equally many times and states");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw invalid_argument("blowup monitor: times must be strictly increasing");
    if (!(threshold > 0.0)) throw invalid_argument("blowup monitor: threshold must be positive");

    const Shape& s = states[0].shape();
    const DyadicFamily family = build_standard_family(s.dim, block_cap(s.res));

    BlowupReport rep;
    rep.threshold = threshold;
    rep.t_halt = times.back();
    for (std::size_t i = 0; i < states.size(); ++i) {
        if (!(states[i].shape() == s))
            throw invalid_argument("blowup monitor: states must share one shape");
        SpectralField uhat = forward_transform(states[i]);
        SampleRecord rec;
        rec.step = static_cast<long long>(i);
        rec.t = times[i];
        rec.l2 = grid_l2_norm(states[i]);
        rec.trace_proxy = trace_norm(states[i], tp, trace, family);
        rec.divergence = relative_divergence(uhat);
        rep.history.push_back(rec);
        if (rec.trace_proxy > threshold) {
            rep.verdict = Verdict::threshold_exceeded;
            rep.t_halt = times[i];
            break;
        }
    }
    return rep;
}

} // namespace tll
