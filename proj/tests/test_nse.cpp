#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "tll/corpus.hpp"
#include "tll/errors.hpp"
#include "tll/fft.hpp"
#include "tll/nse.hpp"

namespace {

using tll::cplx;

tll::GridField random_solenoidal(int res, int index)
{
    tll::CorpusSpec spec;
    spec.dim = 2;
    spec.comps = 2;
    spec.band = 4;
    spec.solenoidal = true;
    spec.seed = 61;
    return tll::random_field(spec, res, index);
}

std::string captured_warning;
void capture_warning(const std::string& message) { captured_warning = message; }

void remove_checkpoint(const std::string& base)
{
    for (const char* ext : {".json", ".state.tllf", ".hist.tllf"})
        std::remove((base + ext).c_str());
}

} // namespace

TEST_SUITE("nse") {

TEST_CASE("dealiasing removes exactly the upper third of the spectrum")
{
    const int res = 16; // cut at 5
    tll::SpectralField u({2, res, 1}, false);
    for (cplx& v : u.data()) v = cplx{1.0, -1.0};

    tll::dealias_mask(u);
    tll::for_each_mode(u.shape(), [&](std::size_t flat, const std::array<int, 3>& xi) {
        const bool kept = std::abs(xi[0]) <= 5 && std::abs(xi[1]) <= 5;
        CHECK(u.at(0, flat) == (kept ? cplx{1.0, -1.0} : cplx{0.0, 0.0}));
    });

    const tll::SpectralField once = u;
    tll::dealias_mask(u);
    for (std::size_t i = 0; i < u.data().size(); ++i) CHECK(u.data()[i] == once.data()[i]);
}

TEST_CASE("the nonlinearity vanishes on the vortex pair and has exact zero mean")
{
    const tll::SpectralField tg = tll::forward_transform(tll::taylor_green(32));
    const tll::SpectralField g = tll::nonlinear_term(tg);
    CHECK(tll::spectral_l2_norm(g) <= 1e-12 * tll::spectral_l2_norm(tg));

    const tll::SpectralField uh = tll::forward_transform(random_solenoidal(32, 0));
    const tll::SpectralField gu = tll::nonlinear_term(uh);
    CHECK(gu.at(0, 0) == cplx{0.0, 0.0});
    CHECK(gu.at(1, 0) == cplx{0.0, 0.0});
    CHECK(tll::relative_divergence(gu) <= 1e-13);

    CHECK_THROWS_AS(tll::nonlinear_term(tll::SpectralField({2, 16, 1}, false)),
                    tll::invalid_argument);
}

TEST_CASE("the exponential integrator is exact on the decaying vortex")
{
    tll::SolverConfig cfg;
    cfg.res = 32;
    cfg.dt = 1e-3;
    cfg.t_end = 0.1;
    const tll::GridField u0 = tll::taylor_green(32);

    const tll::Trajectory traj = tll::solve(cfg, u0);
    CHECK(traj.verdict == tll::Verdict::completed);
    CHECK(traj.final_time == doctest::Approx(0.1));
    CHECK(traj.samples.size() == 11);
    CHECK(traj.samples.front().t == 0.0);

    const tll::GridField exact = tll::scaled(u0, std::exp(-0.2));
    const double rel = tll::grid_l2_norm(traj.final_state - exact) / tll::grid_l2_norm(exact);
    CHECK(rel <= 1e-8);
    for (const tll::SampleRecord& rec : traj.samples) CHECK(rec.divergence <= 1e-12);
}

TEST_CASE("discrete energy never increases without forcing")
{
    for (tll::Scheme scheme : {tll::Scheme::etd, tll::Scheme::imex2}) {
        tll::SolverConfig cfg;
        cfg.res = 16;
        cfg.dt = 1e-3;
        cfg.t_end = 0.05;
        cfg.sample_stride = 1;
        cfg.scheme = scheme;
        const tll::Trajectory traj = tll::solve(cfg, random_solenoidal(16, 1));
        REQUIRE(traj.verdict == tll::Verdict::completed);
        for (std::size_t k = 1; k < traj.samples.size(); ++k)
            CHECK(traj.samples[k].l2 <= traj.samples[k - 1].l2 + 1e-10);
    }
}

TEST_CASE("the two-step scheme converges at second order")
{
    const tll::GridField u0 = tll::scaled(random_solenoidal(32, 2), 0.5);
    auto run = [&](double dt) {
        tll::SolverConfig cfg;
        cfg.res = 32;
        cfg.dt = dt;
        cfg.t_end = 0.08;
        cfg.scheme = tll::Scheme::imex2;
        cfg.sample_stride = 100000;
        return tll::solve(cfg, u0).final_state;
    };
    const tll::GridField ref = run(5e-4);
    const double coarse = tll::grid_l2_norm(run(4e-3) - ref);
    const double fine = tll::grid_l2_norm(run(2e-3) - ref);
    REQUIRE(fine > 0.0);
    CHECK(coarse / fine >= 3.5);
}

TEST_CASE("checkpoints restart the run bitwise")
{
    const std::string prefix =
        (std::filesystem::temp_directory_path() / "tll_test_ck").string();
    for (tll::Scheme scheme : {tll::Scheme::etd, tll::Scheme::imex2}) {
        tll::SolverConfig cfg;
        cfg.res = 16;
        cfg.dt = 1e-3;
        cfg.t_end = 0.04;
        cfg.scheme = scheme;
        cfg.checkpoint_stride = 20;
        cfg.checkpoint_prefix = prefix;

        const tll::GridField u0 = random_solenoidal(16, 3);
        const tll::Trajectory full = tll::solve(cfg, u0);
        REQUIRE(full.verdict == tll::Verdict::completed);

        const tll::Trajectory tail = tll::resume(cfg, prefix + ".step20");
        CHECK(tail.final_time == full.final_time);
        REQUIRE(tail.final_state.data().size() == full.final_state.data().size());
        for (std::size_t i = 0; i < full.final_state.data().size(); ++i)
            CHECK(tail.final_state.data()[i] == full.final_state.data()[i]);

        // overlapping sample records agree exactly as well
        REQUIRE(tail.samples.size() == 3);
        for (const tll::SampleRecord& rec : tail.samples) {
            bool matched = false;
            for (const tll::SampleRecord& ref : full.samples)
                if (ref.step == rec.step) {
                    matched = true;
                    CHECK(ref.l2 == rec.l2);
                    CHECK(ref.trace_proxy == rec.trace_proxy);
                }
            CHECK(matched);
        }

        CHECK_THROWS_AS(tll::resume(cfg, prefix + ".step40"), tll::invalid_argument);

        tll::SolverConfig other = cfg;
        other.dt = 2e-3;
        other.t_end = 0.08;
        CHECK_THROWS_AS(tll::read_checkpoint(prefix + ".step20", other), tll::invalid_argument);

        remove_checkpoint(prefix + ".step20");
        remove_checkpoint(prefix + ".step40");
    }
}

TEST_CASE("a tiny threshold halts the run at the first crossing")
{
    tll::SolverConfig cfg;
    cfg.res = 16;
    cfg.dt = 1e-3;
    cfg.t_end = 0.02;
    cfg.blowup_threshold = 1e-9;
    const tll::Trajectory traj = tll::solve(cfg, tll::taylor_green(16));
    CHECK(traj.verdict == tll::Verdict::threshold_exceeded);
    CHECK(traj.report.t_halt <= cfg.t_end);
    CHECK(traj.final_time == traj.report.t_halt);
    CHECK_FALSE(traj.report.history.empty());
    CHECK(traj.report.history.back().trace_proxy > cfg.blowup_threshold);
}

TEST_CASE("a run that leaves double range is rejected at the last finite state")
{
    tll::SolverConfig cfg;
    cfg.res = 8;
    cfg.dt = 1.0;
    cfg.t_end = 10.0;
    cfg.sample_stride = 1;
    tll::CorpusSpec spec;
    spec.dim = 2;
    spec.comps = 2;
    spec.band = 3;
    spec.solenoidal = true;
    spec.seed = 61;
    const tll::GridField u0 = tll::scaled(tll::random_field(spec, 8, 4), 1e8);

    const tll::Trajectory traj = tll::solve(cfg, u0);
    CHECK(traj.verdict == tll::Verdict::step_rejected);
    CHECK(traj.final_time < cfg.t_end);
    CHECK(std::isfinite(tll::grid_linf_norm(traj.final_state)));
}

TEST_CASE("the offline monitor reproduces threshold crossings")
{
    tll::SolverConfig cfg;
    cfg.res = 16;
    cfg.dt = 1e-3;
    cfg.t_end = 0.02;
    cfg.sample_stride = 5;
    cfg.store_states = true;
    const tll::Trajectory traj = tll::solve(cfg, tll::taylor_green(16));
    REQUIRE(traj.states.size() == 5);

    const tll::BlowupReport clear = tll::blowup_monitor(
        traj.state_times, traj.states, cfg.norm_params, cfg.trace, 1e12);
    CHECK(clear.verdict == tll::Verdict::completed);
    CHECK(clear.t_halt == traj.state_times.back());
    CHECK(clear.history.size() == traj.states.size());

    const tll::BlowupReport hit = tll::blowup_monitor(
        traj.state_times, traj.states, cfg.norm_params, cfg.trace, 1e-9);
    CHECK(hit.verdict == tll::Verdict::threshold_exceeded);
    CHECK(hit.t_halt == traj.state_times.front());
    CHECK(hit.history.size() == 1);

    const std::vector<double> bad_times{0.0, 0.0};
    const std::vector<tll::GridField> two{traj.states[0], traj.states[1]};
    CHECK_THROWS_AS(tll::blowup_monitor(bad_times, two, cfg.norm_params, cfg.trace, 1.0),
                    tll::invalid_argument);
}

TEST_CASE("mean modes track a constant force exactly")
{
    for (tll::Scheme scheme : {tll::Scheme::etd, tll::Scheme::imex2}) {
        tll::SolverConfig cfg;
        cfg.res = 16;
        cfg.dt = 1e-3;
        cfg.t_end = 0.01;
        cfg.scheme = scheme;

        tll::GridField u0({2, 16, 2}, true);
        tll::GridField f({2, 16, 2}, true);
        for (cplx& v : f.component(0)) v = cplx{1.0, 0.0};

        const tll::Trajectory traj = tll::solve(cfg, u0, &f);
        tll::GridField expected({2, 16, 2}, true);
        for (cplx& v : expected.component(0)) v = cplx{0.01, 0.0};
        CHECK(tll::grid_linf_norm(traj.final_state - expected) <= 1e-14);
    }
}

TEST_CASE("configs are validated and schemes are named")
{
    tll::SolverConfig cfg;
    cfg.t_end = 0.0105;
    CHECK_THROWS_AS(cfg.steps(), tll::invalid_argument);
    cfg.t_end = 1.0;
    cfg.dim = 1;
    CHECK_THROWS_AS(cfg.validate(), tll::invalid_argument);

    tll::SolverConfig warned;
    warned.trace.eta = 1.5; // n/(2p) + 1/eta = 1.07, outside the validated range
    captured_warning.clear();
    tll::warn_sink previous = tll::set_warn_sink(&capture_warning);
    warned.validate();
    CHECK(captured_warning.find("n/(2p)") != std::string::npos);

    warned.trace.eta = 3.0; // well posed but outside the dichotomy range
    captured_warning.clear();
    warned.validate();
    CHECK(captured_warning.find("n/(2p)") != std::string::npos);

    warned.trace.eta = 4.0;
    captured_warning.clear();
    warned.validate();
    CHECK(captured_warning.empty());
    tll::set_warn_sink(previous);

    CHECK(tll::scheme_from_string("etd") == tll::Scheme::etd);
    CHECK(tll::scheme_from_string("imex2") == tll::Scheme::imex2);
    CHECK_THROWS_AS(tll::scheme_from_string("rk4"), tll::invalid_argument);
    CHECK(std::string(tll::to_string(tll::Verdict::step_rejected)) == "step_rejected");
}

TEST_CASE("unprojected initial data is admitted with a warning")
{
    tll::CorpusSpec spec;
    spec.dim = 2;
    spec.comps = 2;
    spec.band = 3;
    spec.seed = 62;
    const tll::GridField u0 = tll::random_field(spec, 16, 0);

    tll::SolverConfig cfg;
    cfg.res = 16;
    cfg.dt = 1e-3;
    cfg.t_end = 0.002;
    captured_warning.clear();
    tll::warn_sink previous = tll::set_warn_sink(&capture_warning);
    const tll::Trajectory traj = tll::solve(cfg, u0);
    tll::set_warn_sink(previous);
    CHECK(captured_warning.find("projected") != std::string::npos);
    CHECK(traj.verdict == tll::Verdict::completed);
}

} // TEST_SUITE
