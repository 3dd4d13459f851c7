#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>

#include <CLI11.hpp>
#include <json.hpp>

#include "tll/corpus.hpp"
#include "tll/dyadic.hpp"
#include "tll/io.hpp"
#include "tll/nse.hpp"
#include "tll/operators.hpp"
#include "tll/threads.hpp"
#include "tll/verify.hpp"
#include "tll/version.hpp"

using nlohmann::json;

namespace {

std::string timestamp()
{
    std::time_t t = std::time(nullptr);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

// "inf" is a valid value for the q and r exponents.
double parse_exponent(const std::string& text, const char* what)
{
    if (text == "inf" || text == "INF" || text == "infinity")
        return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used == text.size()) return v;
    } catch (const std::exception&) {
    }
    throw tll::invalid_argument(std::string(what) + ": cannot parse \"" + text + "\"");
}

std::map<std::string, std::string> read_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw tll::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const auto strip = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            if (a == std::string::npos) return std::string();
            const auto b = s.find_last_not_of(" \t\r");
            return s.substr(a, b - a + 1);
        };
        if (strip(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw tll::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key = value");
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));
        if (key.empty())
            throw tll::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
        kv[key] = value;
    }
    return kv;
}

bool parse_bool(const std::string& v, const std::string& key)
{
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw tll::invalid_argument("config key " + key + ": expected a boolean, got \"" + v + "\"");
}

tll::SolverConfig parse_solver_config(const std::string& path)
{
    tll::SolverConfig cfg;
    for (const auto& [key, value] : read_config(path)) {
        if (key == "dim") cfg.dim = std::stoi(value);
        else if (key == "res") cfg.res = std::stoi(value);
        else if (key == "dt") cfg.dt = std::stod(value);
        else if (key == "t_end") cfg.t_end = std::stod(value);
        else if (key == "scheme") cfg.scheme = tll::scheme_from_string(value);
        else if (key == "sample_stride") cfg.sample_stride = std::stoi(value);
        else if (key == "blowup_threshold") cfg.blowup_threshold = parse_exponent(value, "blowup_threshold");
        else if (key == "s") cfg.norm_params.s = std::stod(value);
        else if (key == "p") cfg.norm_params.p = std::stod(value);
        else if (key == "q") cfg.norm_params.q = parse_exponent(value, "q");
        else if (key == "r") cfg.norm_params.r = parse_exponent(value, "r");
        else if (key == "eta") cfg.trace.eta = std::stod(value);
        else if (key == "per_octave") cfg.trace.per_octave = std::stoi(value);
        else if (key == "checkpoint_stride") cfg.checkpoint_stride = std::stoi(value);
        else if (key == "checkpoint_prefix") cfg.checkpoint_prefix = value;
        else if (key == "store_states") cfg.store_states = parse_bool(value, key);
        else if (key == "seed") cfg.seed = std::stoull(value);
        else throw tll::invalid_argument("config key \"" + key + "\" is not a solver setting");
    }
    return cfg;
}

json manifest_base(const std::string& command)
{
    return {{"tool", "tll"},
            {"version", tll::version_string},
            {"command", command},
            {"threads", tll::thread_count()},
            {"generated_at", timestamp()}};
}

void write_manifest(const std::string& anchor, const json& manifest)
{
    std::ofstream out(anchor + ".manifest.json");
    if (!out) throw tll::invalid_argument("cannot write manifest: " + anchor + ".manifest.json");
    out << manifest.dump(2) << "\n";
}

void emit(const json& result, const std::string& out_path, const std::string& command,
          const json& params, const std::vector<std::string>& outputs)
{
    if (out_path.empty()) {
        std::cout << result.dump(2) << "\n";
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw tll::invalid_argument("cannot write output: " + out_path);
    out << result.dump(2) << "\n";
    json manifest = manifest_base(command);
    manifest["params"] = params;
    manifest["outputs"] = outputs;
    write_manifest(out_path, manifest);
}

tll::DyadicFamily family_by_name(const std::string& name, int dim, int max_block)
{
    if (name == "standard") return tll::build_standard_family(dim, max_block);
    if (name == "smoothed") return tll::build_smoothed_variant(dim, max_block);
    throw tll::invalid_argument("family must be standard or smoothed, got \"" + name + "\"");
}

struct NormOpts {
    std::string field, family = "standard", q = "2", r = "2", out;
    double s = 0.0, p = 2.0;
};

int cmd_norm(const NormOpts& o)
{
    const tll::GridField u = tll::read_field(o.field);
    const tll::TLLParams tp{o.s, o.p, parse_exponent(o.q, "q"), parse_exponent(o.r, "r")};
    const tll::DyadicFamily family =
        family_by_name(o.family, u.shape().dim, tll::block_cap(u.shape().res));
    const double value = tll::tll_norm(u, tp, family);
    json result{{"norm", value},
                {"params", {{"s", tp.s}, {"p", tp.p}, {"q", tp.q}, {"r", tp.r}}},
                {"family", family.id()},
                {"field", o.field},
                {"grid", {{"dim", u.shape().dim}, {"res", u.shape().res}, {"comps", u.shape().comps}}}};
    emit(result, o.out, "norm", result["params"], {});
    return 0;
}

struct RearrangeOpts {
    std::string field, out, csv;
    double p = 2.0;
    std::string r = "2";
};

int cmd_rearrange(const RearrangeOpts& o)
{
    const tll::GridField u = tll::read_field(o.field);
    const tll::LorentzParams lp{o.p, parse_exponent(o.r, "r")};
    tll::validate_lorentz(lp);
    const tll::StepRearrangement rear = tll::decreasing_rearrangement(u);
    const double value = tll::lorentz_quasinorm(rear, lp);

    if (!o.csv.empty()) {
        std::ofstream csv(o.csv);
        if (!csv) throw tll::invalid_argument("cannot write csv: " + o.csv);
        csv << "t,value\n";
        csv.precision(17);
        for (std::size_t k = 0; k < rear.values.size(); ++k)
            csv << k * rear.step_measure << "," << rear.values[k] << "\n";
    }

    json result{{"quasinorm", value},
                {"p", lp.p},
                {"r", lp.r},
                {"nonzero_measure", rear.values.size() * rear.step_measure},
                {"steps", rear.values.size()},
                {"max_value", rear.values.empty() ? 0.0 : rear.values.front()},
                {"field", o.field}};
    std::vector<std::string> outputs;
    if (!o.csv.empty()) outputs.push_back(o.csv);
    emit(result, o.out, "rearrange", {{"p", lp.p}, {"r", lp.r}}, outputs);
    return 0;
}

struct MultOpts {
    std::string symbol, family, out, entry;
    int dim = 2, blocks = 0;
    double time = 1.0, sigma = 1.0, alpha = 1.0;
    double lambda_re = 2.0, lambda_im = 0.0;
    std::vector<int> alpha_index;
};

int cmd_multiplier_check(const MultOpts& o)
{
    if (o.symbol.empty() == o.family.empty())
        throw tll::invalid_argument("multiplier-check: give exactly one of --symbol or --family");

    if (!o.family.empty()) {
        const int blocks = o.blocks > 0 ? o.blocks : 6;
        const tll::DyadicFamily fam = family_by_name(o.family, o.dim, blocks);
        const tll::FamilyValidation val = tll::validate_family(fam);
        json result = val.to_json();
        const bool ok = val.admissible(0.5) && val.support_violations.empty() &&
                        val.negativity_violations.empty();
        result["admissible"] = ok;
        emit(result, o.out, "multiplier-check", {{"family", o.family}, {"blocks", blocks}}, {});
        return ok ? 0 : 1;
    }

    tll::MultiplierSymbol sym;
    const tll::cplx lambda{o.lambda_re, o.lambda_im};
    if (o.symbol == "identity") sym = tll::identity_symbol();
    else if (o.symbol == "bessel") sym = tll::bessel_symbol(o.sigma);
    else if (o.symbol == "heat") sym = tll::heat_symbol(o.time);
    else if (o.symbol == "resolvent") sym = tll::resolvent_symbol(lambda);
    else if (o.symbol == "laplacian") sym = tll::laplacian_symbol();
    else if (o.symbol == "fractional") sym = tll::fractional_power_symbol(o.alpha);
    else if (o.symbol == "coordinate") sym = tll::coordinate_symbol(0);
    else if (o.symbol == "derivative") {
        std::vector<int> idx = o.alpha_index;
        if (idx.empty()) idx.assign(static_cast<std::size_t>(o.dim), 0);
        if (static_cast<int>(idx.size()) != o.dim)
            throw tll::invalid_argument("--alpha-index must have dim entries");
        sym = tll::derivative_symbol(idx);
    } else if (o.symbol == "projection") {
        if (o.entry.empty()) throw tll::invalid_argument("projection needs --entry i,j");
        const auto comma = o.entry.find(',');
        if (comma == std::string::npos) throw tll::invalid_argument("--entry expects i,j");
        const int i = std::stoi(o.entry.substr(0, comma));
        const int j = std::stoi(o.entry.substr(comma + 1));
        sym = tll::helmholtz_entry_symbol(i, j);
    } else {
        throw tll::invalid_argument("unknown symbol \"" + o.symbol + "\"");
    }

    const tll::MikhlinReport rep = tll::mikhlin_constants(sym, o.dim);
    emit(rep.to_json(), o.out, "multiplier-check", {{"symbol", sym.name}, {"dim", o.dim}}, {});
    return rep.divergence_flag ? 1 : 0;
}

struct HelmholtzOpts {
    std::string field, out_prefix, out;
};

int cmd_helmholtz(const HelmholtzOpts& o)
{
    const tll::GridField u = tll::read_field(o.field);
    const tll::HelmholtzSplit split = tll::helmholtz_split(u);
    std::vector<std::string> outputs;
    if (!o.out_prefix.empty()) {
        tll::write_field(o.out_prefix + ".solenoidal.tllf", split.solenoidal);
        tll::write_field(o.out_prefix + ".gradient.tllf", split.gradient);
        tll::write_field(o.out_prefix + ".potential.tllf", split.potential);
        outputs = {o.out_prefix + ".solenoidal.tllf", o.out_prefix + ".gradient.tllf",
                   o.out_prefix + ".potential.tllf"};
    }
    json result{{"field", o.field},
                {"relative_divergence", tll::relative_divergence(u)},
                {"solenoidal_divergence", tll::relative_divergence(split.solenoidal)},
                {"solenoidal_l2", tll::grid_l2_norm(split.solenoidal)},
                {"gradient_l2", tll::grid_l2_norm(split.gradient)},
                {"potential_l2", tll::grid_l2_norm(split.potential)}};
    if (!o.out_prefix.empty()) result["outputs"] = outputs;
    emit(result, o.out, "helmholtz", {{"field", o.field}}, outputs);
    if (!o.out_prefix.empty()) {
        json manifest = manifest_base("helmholtz");
        manifest["params"] = {{"field", o.field}};
        manifest["outputs"] = outputs;
        write_manifest(o.out_prefix, manifest);
    }
    return 0;
}

struct FlowOpts {
    std::string field, out;
    double time = 0.0;
    double lambda_re = 0.0, lambda_im = 0.0;
    bool has_lambda = false;
};

int cmd_heat(const FlowOpts& o)
{
    const tll::GridField u = tll::read_field(o.field);
    const tll::GridField v = tll::heat_semigroup(u, o.time);
    tll::write_field(o.out, v);
    json result{{"field", o.field}, {"out", o.out}, {"t", o.time},
                {"l2_before", tll::grid_l2_norm(u)}, {"l2_after", tll::grid_l2_norm(v)}};
    std::cout << result.dump(2) << "\n";
    json manifest = manifest_base("heat");
    manifest["params"] = {{"t", o.time}, {"field", o.field}};
    manifest["outputs"] = {o.out};
    write_manifest(o.out, manifest);
    return 0;
}

int cmd_stokes(const FlowOpts& o)
{
    const tll::GridField u = tll::read_field(o.field);
    tll::GridField v;
    json params;
    if (o.has_lambda) {
        v = tll::stokes_resolvent(u, {o.lambda_re, o.lambda_im});
        params = {{"lambda_re", o.lambda_re}, {"lambda_im", o.lambda_im}};
    } else {
        v = tll::stokes_semigroup(u, o.time);
        params = {{"t", o.time}};
    }
    tll::write_field(o.out, v);
    json result{{"field", o.field}, {"out", o.out},
                {"l2_before", tll::grid_l2_norm(u)}, {"l2_after", tll::grid_l2_norm(v)},
                {"relative_divergence", tll::relative_divergence(v)}};
    result.update(params);
    std::cout << result.dump(2) << "\n";
    json manifest = manifest_base("stokes");
    manifest["params"] = params;
    manifest["params"]["field"] = o.field;
    manifest["outputs"] = {o.out};
    write_manifest(o.out, manifest);
    return 0;
}

struct SampleOpts {
    std::string kind = "random", out;
    int dim = 2, res = 32, comps = 1, band = 8, index = 0;
    unsigned long long seed = 1;
    double decay = 2.0, width = 0.5, amplitude = 1.0;
    std::vector<double> center;
    std::vector<int> xi;
};

int cmd_sample(const SampleOpts& o)
{
    std::array<int, 3> xi{0, 0, 0};
    for (std::size_t d = 0; d < o.xi.size() && d < 3; ++d) xi[d] = o.xi[d];
    std::array<double, 3> center{std::numbers::pi, std::numbers::pi, std::numbers::pi};
    for (std::size_t d = 0; d < o.center.size() && d < 3; ++d) center[d] = o.center[d];

    tll::GridField u;
    if (o.kind == "random" || o.kind == "solenoidal") {
        tll::CorpusSpec spec;
        spec.dim = o.dim;
        spec.comps = o.kind == "solenoidal" ? o.dim : o.comps;
        spec.band = o.band;
        spec.decay = o.decay;
        spec.solenoidal = o.kind == "solenoidal";
        spec.seed = o.seed;
        u = tll::random_field(spec, o.res, o.index);
    } else if (o.kind == "taylor-green") {
        u = tll::taylor_green(o.res);
    } else if (o.kind == "bump") {
        u = tll::gaussian_bump(o.dim, o.res, o.width, center);
    } else if (o.kind == "mode") {
        u = tll::cosine_mode(o.dim, o.res, xi, o.amplitude);
    } else {
        throw tll::invalid_argument("unknown sample kind \"" + o.kind + "\"");
    }

    tll::write_field(o.out, u);
    json manifest = manifest_base("sample");
    manifest["params"] = {{"kind", o.kind}, {"dim", u.shape().dim}, {"res", u.shape().res},
                          {"comps", u.shape().comps}, {"seed", o.seed}, {"index", o.index},
                          {"band", o.band}, {"decay", o.decay}};
    manifest["outputs"] = {o.out};
    write_manifest(o.out, manifest);
    std::cout << json{{"out", o.out}, {"kind", o.kind}, {"l2", tll::grid_l2_norm(u)}}.dump(2)
              << "\n";
    return 0;
}

struct NseOpts {
    std::string config, initial, init_kind, forcing, resume_prefix, out_prefix = "nse_run";
    std::string format = "json";
    double init_scale = 1.0;
    int band = 8;
    unsigned long long seed = 0;
    bool has_seed = false;
};

void write_samples(const std::string& path, const std::vector<tll::SampleRecord>& samples,
                   const std::string& format)
{
    std::ofstream out(path);
    if (!out) throw tll::invalid_argument("cannot write samples: " + path);
    if (format == "csv") {
        out << "step,t,l2,trace_proxy,divergence\n";
        out.precision(17);
        for (const auto& rec : samples)
            out << rec.step << "," << rec.t << "," << rec.l2 << "," << rec.trace_proxy << ","
                << rec.divergence << "\n";
        return;
    }
    json arr = json::array();
    for (const auto& rec : samples)
        arr.push_back({{"step", rec.step}, {"t", rec.t}, {"l2", rec.l2},
                       {"trace_proxy", rec.trace_proxy}, {"divergence", rec.divergence}});
    out << arr.dump(2) << "\n";
}

int cmd_nse(const NseOpts& o)
{
    if (o.format != "json" && o.format != "csv")
        throw tll::invalid_argument("--format must be json or csv");
    tll::SolverConfig cfg = parse_solver_config(o.config);
    if (o.has_seed) cfg.seed = o.seed;

    std::optional<tll::GridField> forcing;
    if (!o.forcing.empty()) forcing = tll::read_field(o.forcing);

    tll::Trajectory traj;
    if (!o.resume_prefix.empty()) {
        if (!o.initial.empty() || !o.init_kind.empty())
            throw tll::invalid_argument("--resume excludes --initial and --init-kind");
        traj = tll::resume(cfg, o.resume_prefix, forcing ? &*forcing : nullptr);
    } else {
        if (o.initial.empty() == o.init_kind.empty())
            throw tll::invalid_argument("give exactly one of --initial or --init-kind");
        tll::GridField u0;
        if (!o.initial.empty()) {
            u0 = tll::read_field(o.initial);
        } else if (o.init_kind == "taylor-green") {
            if (cfg.dim != 2) throw tll::invalid_argument("taylor-green initial data needs dim = 2");
            u0 = tll::taylor_green(cfg.res);
        } else if (o.init_kind == "random-solenoidal") {
            tll::CorpusSpec spec;
            spec.dim = cfg.dim;
            spec.comps = cfg.dim;
            spec.band = o.band;
            spec.solenoidal = true;
            spec.seed = cfg.seed;
            u0 = tll::random_field(spec, cfg.res, 0);
        } else {
            throw tll::invalid_argument("unknown init kind \"" + o.init_kind + "\"");
        }
        if (o.init_scale != 1.0) u0 = tll::scaled(u0, o.init_scale);
        traj = tll::solve(cfg, u0, forcing ? &*forcing : nullptr);
    }

    const std::string final_path = o.out_prefix + ".final.tllf";
    const std::string samples_path =
        o.out_prefix + ".samples." + (o.format == "csv" ? "csv" : "json");
    const std::string report_path = o.out_prefix + ".report.json";
    tll::write_field(final_path, traj.final_state);
    write_samples(samples_path, traj.samples, o.format);
    {
        std::ofstream rep(report_path);
        if (!rep) throw tll::invalid_argument("cannot write report: " + report_path);
        rep << traj.report.to_json().dump(2) << "\n";
    }

    json manifest = manifest_base("nse");
    manifest["params"] = cfg.to_json();
    manifest["params"]["config_file"] = o.config;
    if (!o.initial.empty()) manifest["params"]["initial"] = o.initial;
    if (!o.init_kind.empty()) manifest["params"]["init_kind"] = o.init_kind;
    if (!o.forcing.empty()) manifest["params"]["forcing"] = o.forcing;
    if (!o.resume_prefix.empty()) manifest["params"]["resumed_from"] = o.resume_prefix;
    manifest["outputs"] = {final_path, samples_path, report_path};
    write_manifest(o.out_prefix, manifest);

    std::cout << json{{"verdict", tll::to_string(traj.verdict)},
                      {"final_time", traj.final_time},
                      {"samples", traj.samples.size()},
                      {"final_l2", tll::grid_l2_norm(traj.final_state)},
                      {"outputs", {final_path, samples_path, report_path}}}
                     .dump(2)
              << "\n";
    return 0;
}

struct VerifyOpts {
    std::string suite = "all", out, q = "2", r = "2";
    tll::SuiteConfig cfg;
    std::vector<int> resolutions;
};

int cmd_verify(const VerifyOpts& o)
{
    tll::SuiteConfig cfg = o.cfg;
    cfg.tp.q = parse_exponent(o.q, "q");
    cfg.tp.r = parse_exponent(o.r, "r");
    if (!o.resolutions.empty()) cfg.resolutions = o.resolutions;

    std::vector<tll::BracketReport> reports;
    if (o.suite == "all") {
        reports = tll::run_all_suites(cfg);
    } else {
        reports.push_back(tll::run_suite(o.suite, cfg));
    }

    bool all_ok = true;
    json arr = json::array();
    for (const auto& rep : reports) {
        arr.push_back(rep.to_json());
        const char* status = rep.skipped ? "SKIP" : (rep.passed ? "PASS" : "FAIL");
        std::cout << "suite " << rep.name << ": " << status;
        if (rep.skipped) {
            std::cout << " (" << rep.reason << ")";
        } else {
            std::cout << " (stability " << rep.stability_factor << ", limit "
                      << rep.stability_limit << ")";
        }
        std::cout << "\n";
        if (!rep.passed) all_ok = false;
    }

    if (!o.out.empty()) {
        std::ofstream out(o.out);
        if (!out) throw tll::invalid_argument("cannot write report: " + o.out);
        out << json{{"suites", arr}}.dump(2) << "\n";
        json manifest = manifest_base("verify");
        manifest["params"] = {{"suite", o.suite}, {"dim", cfg.dim}};
        manifest["outputs"] = {o.out};
        write_manifest(o.out, manifest);
    }
    return all_ok ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectral torus calculus: Lorentz rearrangements, dyadic norms, "
                 "multiplier diagnostics, Stokes flows, and a projected spectral solver"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", tll::version_string);

    int threads = 0;
    app.add_option("--threads", threads, "worker threads (TLL_THREADS otherwise)");

    NormOpts norm;
    auto* norm_cmd = app.add_subcommand("norm", "dyadic Lorentz norm of a field");
    norm_cmd->add_option("--field", norm.field, "input field (.tllf)")->required();
    norm_cmd->add_option("--s", norm.s, "smoothness exponent");
    norm_cmd->add_option("--p", norm.p, "Lorentz primary exponent");
    norm_cmd->add_option("--q", norm.q, "block exponent, number or inf");
    norm_cmd->add_option("--r", norm.r, "Lorentz secondary exponent, number or inf");
    norm_cmd->add_option("--family", norm.family, "standard or smoothed");
    norm_cmd->add_option("--out", norm.out, "write the result JSON here");

    RearrangeOpts rearr;
    auto* rearr_cmd = app.add_subcommand("rearrange", "decreasing rearrangement and Lorentz quasinorm");
    rearr_cmd->add_option("--field", rearr.field)->required();
    rearr_cmd->add_option("--p", rearr.p);
    rearr_cmd->add_option("--r", rearr.r);
    rearr_cmd->add_option("--out", rearr.out);
    rearr_cmd->add_option("--csv", rearr.csv, "write the step function as CSV");

    MultOpts mult;
    auto* mult_cmd = app.add_subcommand("multiplier-check", "empirical Mikhlin constants or family validation");
    mult_cmd->add_option("--symbol", mult.symbol,
                         "identity|bessel|heat|resolvent|laplacian|fractional|derivative|coordinate|projection");
    mult_cmd->add_option("--family", mult.family, "standard or smoothed");
    mult_cmd->add_option("--dim", mult.dim);
    mult_cmd->add_option("--blocks", mult.blocks, "family blocks to validate");
    mult_cmd->add_option("--time", mult.time, "t for the heat symbol");
    mult_cmd->add_option("--sigma", mult.sigma, "order for the bessel symbol");
    mult_cmd->add_option("--alpha", mult.alpha, "order for the fractional symbol");
    mult_cmd->add_option("--lambda-re", mult.lambda_re);
    mult_cmd->add_option("--lambda-im", mult.lambda_im);
    mult_cmd->add_option("--alpha-index", mult.alpha_index, "derivative multi-index")->delimiter(',');
    mult_cmd->add_option("--entry", mult.entry, "projection entry i,j");
    mult_cmd->add_option("--out", mult.out);

    HelmholtzOpts helm;
    auto* helm_cmd = app.add_subcommand("helmholtz", "project and split a vector field");
    helm_cmd->add_option("--field", helm.field)->required();
    helm_cmd->add_option("--out-prefix", helm.out_prefix, "write split parts as tllf files");
    helm_cmd->add_option("--out", helm.out);

    FlowOpts heat;
    auto* heat_cmd = app.add_subcommand("heat", "heat semigroup applied to a field");
    heat_cmd->add_option("--field", heat.field)->required();
    heat_cmd->add_option("--time", heat.time)->required();
    heat_cmd->add_option("--out", heat.out)->required();

    FlowOpts stokes;
    auto* stokes_cmd = app.add_subcommand("stokes", "Stokes semigroup or resolvent on a solenoidal field");
    stokes_cmd->add_option("--field", stokes.field)->required();
    auto* stokes_t = stokes_cmd->add_option("--time", stokes.time);
    auto* stokes_lre = stokes_cmd->add_option("--lambda-re", stokes.lambda_re);
    stokes_cmd->add_option("--lambda-im", stokes.lambda_im);
    stokes_cmd->add_option("--out", stokes.out)->required();

    SampleOpts sample;
    auto* sample_cmd = app.add_subcommand("sample", "generate a deterministic test field");
    sample_cmd->add_option("--kind", sample.kind, "random|solenoidal|taylor-green|bump|mode");
    sample_cmd->add_option("--dim", sample.dim);
    sample_cmd->add_option("--res", sample.res)->required();
    sample_cmd->add_option("--comps", sample.comps);
    sample_cmd->add_option("--band", sample.band);
    sample_cmd->add_option("--decay", sample.decay);
    sample_cmd->add_option("--seed", sample.seed);
    sample_cmd->add_option("--index", sample.index);
    sample_cmd->add_option("--width", sample.width, "bump width");
    sample_cmd->add_option("--center", sample.center, "bump center")->delimiter(',');
    sample_cmd->add_option("--xi", sample.xi, "mode frequency")->delimiter(',');
    sample_cmd->add_option("--amplitude", sample.amplitude, "mode amplitude");
    sample_cmd->add_option("--out", sample.out)->required();

    NseOpts nse;
    auto* nse_cmd = app.add_subcommand("nse", "projected spectral solver");
    nse_cmd->add_option("--config", nse.config, "key = value solver settings")->required();
    nse_cmd->add_option("--initial", nse.initial, "initial state (.tllf)");
    nse_cmd->add_option("--init-kind", nse.init_kind, "taylor-green or random-solenoidal");
    nse_cmd->add_option("--init-scale", nse.init_scale, "scale factor for the initial state");
    nse_cmd->add_option("--band", nse.band, "band for random-solenoidal initial data");
    nse_cmd->add_option("--forcing", nse.forcing, "constant forcing (.tllf)");
    nse_cmd->add_option("--resume", nse.resume_prefix, "checkpoint prefix to resume from");
    nse_cmd->add_option("--out-prefix", nse.out_prefix);
    nse_cmd->add_option("--format", nse.format, "samples format, json or csv");
    auto* nse_seed = nse_cmd->add_option("--seed", nse.seed, "override the config seed");

    VerifyOpts verify;
    auto* verify_cmd = app.add_subcommand("verify", "bracket suites across resolutions");
    verify_cmd->add_option("--suite", verify.suite, "suite name or all");
    verify_cmd->add_option("--dim", verify.cfg.dim);
    verify_cmd->add_option("--fields", verify.cfg.fields);
    verify_cmd->add_option("--band", verify.cfg.band);
    verify_cmd->add_option("--seed", verify.cfg.seed);
    verify_cmd->add_option("--resolutions", verify.resolutions)->delimiter(',');
    verify_cmd->add_option("--s", verify.cfg.tp.s);
    verify_cmd->add_option("--p", verify.cfg.tp.p);
    verify_cmd->add_option("--q", verify.q);
    verify_cmd->add_option("--r", verify.r);
    verify_cmd->add_option("--eta", verify.cfg.eta);
    verify_cmd->add_option("--stability-limit", verify.cfg.stability_limit);
    verify_cmd->add_option("--out", verify.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    if (threads > 0) {
        tll::set_thread_count(threads);
    } else if (const char* env = std::getenv("TLL_THREADS")) {
        tll::set_thread_count(std::atoi(env));
    }

    try {
        if (app.got_subcommand(norm_cmd)) return cmd_norm(norm);
        if (app.got_subcommand(rearr_cmd)) return cmd_rearrange(rearr);
        if (app.got_subcommand(mult_cmd)) return cmd_multiplier_check(mult);
        if (app.got_subcommand(helm_cmd)) return cmd_helmholtz(helm);
        if (app.got_subcommand(heat_cmd)) return cmd_heat(heat);
        if (app.got_subcommand(stokes_cmd)) {
            FlowOpts o = stokes;
            o.has_lambda = stokes_lre->count() > 0;
            if (o.has_lambda == (stokes_t->count() > 0))
                throw tll::invalid_argument("stokes: give exactly one of --time or --lambda-re");
            return cmd_stokes(o);
        }
        if (app.got_subcommand(sample_cmd)) return cmd_sample(sample);
        if (app.got_subcommand(nse_cmd)) {
            NseOpts o = nse;
            o.has_seed = nse_seed->count() > 0;
            return cmd_nse(o);
        }
        if (app.got_subcommand(verify_cmd)) return cmd_verify(verify);
    } catch (const tll::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const tll::numerical_error& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 2;
}
