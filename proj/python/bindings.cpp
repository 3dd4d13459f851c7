#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tll/corpus.hpp"
#include "tll/io.hpp"
#include "tll/nse.hpp"
#include "tll/operators.hpp"
#include "tll/verify.hpp"
#include "tll/version.hpp"

namespace py = pybind11;

namespace {

// Fields cross the boundary as complex128 arrays shaped (comps, M, ..., M)
// or (M, ..., M) for scalars, axis 0 slowest, matching GridField storage.
tll::GridField field_from_array(const py::array& arr_in, int dim)
{
    auto arr = py::array_t<tll::cplx, py::array::c_style | py::array::forcecast>::ensure(arr_in);
    if (!arr) throw tll::invalid_argument("expected an array convertible to complex128");
    const int nd = static_cast<int>(arr.ndim());
    if (nd != dim && nd != dim + 1)
        throw tll::invalid_argument("array rank must be dim or dim + 1 (leading component axis)");
    const int comps = nd == dim ? 1 : static_cast<int>(arr.shape(0));
    const int offset = nd - dim;
    const int res = static_cast<int>(arr.shape(offset));
    for (int d = 0; d < dim; ++d)
        if (arr.shape(offset + d) != res)
            throw tll::invalid_argument("spatial axes must have equal length");

    tll::Shape shape{dim, res, comps};
    tll::validate_shape(shape);
    tll::GridField u(shape, false);
    const tll::cplx* src = arr.data();
    std::copy(src, src + shape.size(), u.data().begin());
    u.set_real_valued(tll::max_imag(u) == 0.0);
    return u;
}

py::array field_to_array(const tll::GridField& u)
{
    const tll::Shape& s = u.shape();
    std::vector<py::ssize_t> dims;
    if (s.comps > 1) dims.push_back(s.comps);
    for (int d = 0; d < s.dim; ++d) dims.push_back(s.res);
    py::array_t<tll::cplx> arr(dims);
    std::copy(u.data().begin(), u.data().end(), arr.mutable_data());
    return arr;
}

tll::TLLParams make_params(double s, double p, double q, double r)
{
    tll::TLLParams tp{s, p, q, r};
    tll::validate_tll(tp);
    return tp;
}

tll::DyadicFamily family_for(const std::string& name, int dim, int res)
{
    if (name == "standard") return tll::build_standard_family(dim, tll::block_cap(res));
    if (name == "smoothed") return tll::build_smoothed_variant(dim, tll::block_cap(res));
    throw tll::invalid_argument("family must be standard or smoothed");
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "spectral torus calculus core";
    m.attr("__version__") = tll::version_string;

    py::register_exception<tll::invalid_argument>(m, "InvalidArgument", PyExc_ValueError);
    py::register_exception<tll::numerical_error>(m, "NumericalError", PyExc_ArithmeticError);

    m.def("norm",
          [](const py::array& u, int dim, double s, double p, double q, double r,
             const std::string& family) {
              const tll::GridField g = field_from_array(u, dim);
              return tll::tll_norm(g, make_params(s, p, q, r),
                                   family_for(family, dim, g.shape().res));
          },
          py::arg("u"), py::arg("dim"), py::arg("s") = 0.0, py::arg("p") = 2.0,
          py::arg("q") = 2.0, py::arg("r") = 2.0, py::arg("family") = "standard");

    m.def("lorentz",
          [](const py::array& u, int dim, double p, double r) {
              return tll::lorentz_quasinorm(field_from_array(u, dim), tll::LorentzParams{p, r});
          },
          py::arg("u"), py::arg("dim"), py::arg("p") = 2.0, py::arg("r") = 2.0);

    m.def("rearrangement",
          [](const py::array& u, int dim) {
              const tll::StepRearrangement f =
                  tll::decreasing_rearrangement(field_from_array(u, dim));
              py::array_t<double> values(static_cast<py::ssize_t>(f.values.size()));
              std::copy(f.values.begin(), f.values.end(), values.mutable_data());
              return py::make_tuple(values, f.step_measure);
          },
          py::arg("u"), py::arg("dim"));

    m.def("trace_norm",
          [](const py::array& u, int dim, double s, double p, double q, double r, double eta,
             int per_octave, const std::string& family) {
              const tll::GridField g = field_from_array(u, dim);
              return tll::trace_norm(g, make_params(s, p, q, r), tll::TraceParams{eta, per_octave},
                                     family_for(family, dim, g.shape().res));
          },
          py::arg("u"), py::arg("dim"), py::arg("s") = 0.5, py::arg("p") = 2.5,
          py::arg("q") = 2.0, py::arg("r") = 2.0, py::arg("eta") = 4.0,
          py::arg("per_octave") = 4, py::arg("family") = "standard");

    m.def("project",
          [](const py::array& u, int dim) {
              return field_to_array(tll::helmholtz_project(field_from_array(u, dim)));
          },
          py::arg("u"), py::arg("dim"));

    m.def("split",
          [](const py::array& u, int dim) {
              const tll::HelmholtzSplit s = tll::helmholtz_split(field_from_array(u, dim));
              return py::make_tuple(field_to_array(s.solenoidal), field_to_array(s.gradient),
                                    field_to_array(s.potential));
          },
          py::arg("u"), py::arg("dim"));

    m.def("relative_divergence",
          [](const py::array& u, int dim) {
              return tll::relative_divergence(field_from_array(u, dim));
          },
          py::arg("u"), py::arg("dim"));

    m.def("heat",
          [](const py::array& u, int dim, double t) {
              return field_to_array(tll::heat_semigroup(field_from_array(u, dim), t));
          },
          py::arg("u"), py::arg("dim"), py::arg("t"));

    m.def("bessel",
          [](const py::array& u, int dim, double sigma) {
              return field_to_array(tll::bessel_potential(field_from_array(u, dim), sigma));
          },
          py::arg("u"), py::arg("dim"), py::arg("sigma"));

    m.def("stokes_semigroup",
          [](const py::array& u, int dim, double t) {
              return field_to_array(tll::stokes_semigroup(field_from_array(u, dim), t));
          },
          py::arg("u"), py::arg("dim"), py::arg("t"));

    m.def("stokes_resolvent",
          [](const py::array& u, int dim, tll::cplx lam) {
              return field_to_array(tll::stokes_resolvent(field_from_array(u, dim), lam));
          },
          py::arg("u"), py::arg("dim"), py::arg("lam"));

    m.def("derivative",
          [](const py::array& u, int dim, const std::vector<int>& alpha) {
              return field_to_array(tll::derivative(field_from_array(u, dim), alpha));
          },
          py::arg("u"), py::arg("dim"), py::arg("alpha"));

    m.def("taylor_green", [](int res) { return field_to_array(tll::taylor_green(res)); },
          py::arg("res"));

    m.def("random_field",
          [](int dim, int comps, int res, int band, double decay, bool solenoidal,
             unsigned long long seed, int index) {
              tll::CorpusSpec spec;
              spec.dim = dim;
              spec.comps = comps;
              spec.band = band;
              spec.decay = decay;
              spec.solenoidal = solenoidal;
              spec.seed = seed;
              return field_to_array(tll::random_field(spec, res, index));
          },
          py::arg("dim"), py::arg("comps"), py::arg("res"), py::arg("band") = 8,
          py::arg("decay") = 2.0, py::arg("solenoidal") = false, py::arg("seed") = 1,
          py::arg("index") = 0);

    m.def("write_field",
          [](const std::string& path, const py::array& u, int dim) {
              tll::write_field(path, field_from_array(u, dim));
          },
          py::arg("path"), py::arg("u"), py::arg("dim"));

    m.def("read_field",
          [](const std::string& path) { return field_to_array(tll::read_field(path)); },
          py::arg("path"));

    m.def("solve_nse",
          [](const py::array& u0, int dim, int res, double dt, double t_end,
             const std::string& scheme, int sample_stride, double blowup_threshold, double s,
             double p, double q, double r, double eta) {
              tll::SolverConfig cfg;
              cfg.dim = dim;
              cfg.res = res;
              cfg.dt = dt;
              cfg.t_end = t_end;
              cfg.scheme = tll::scheme_from_string(scheme);
              cfg.sample_stride = sample_stride;
              cfg.blowup_threshold = blowup_threshold;
              cfg.norm_params = tll::TLLParams{s, p, q, r};
              cfg.trace.eta = eta;
              const tll::Trajectory traj = tll::solve(cfg, field_from_array(u0, dim));
              py::list samples;
              for (const auto& rec : traj.samples) {
                  py::dict d;
                  d["step"] = rec.step;
                  d["t"] = rec.t;
                  d["l2"] = rec.l2;
                  d["trace_proxy"] = rec.trace_proxy;
                  d["divergence"] = rec.divergence;
                  samples.append(d);
              }
              py::dict out;
              out["verdict"] = tll::to_string(traj.verdict);
              out["final_time"] = traj.final_time;
              out["samples"] = samples;
              out["final_state"] = field_to_array(traj.final_state);
              return out;
          },
          py::arg("u0"), py::arg("dim"), py::arg("res"), py::arg("dt") = 1e-3,
          py::arg("t_end") = 0.1, py::arg("scheme") = "etd", py::arg("sample_stride") = 10,
          py::arg("blowup_threshold") = std::numeric_limits<double>::infinity(),
          py::arg("s") = 0.5, py::arg("p") = 2.5, py::arg("q") = 2.0, py::arg("r") = 2.0,
          py::arg("eta") = 4.0);

    m.def("run_suite",
          [](const std::string& name, int dim, const std::vector<int>& resolutions, int fields,
             unsigned long long seed) {
              tll::SuiteConfig cfg;
              cfg.dim = dim;
              if (!resolutions.empty()) cfg.resolutions = resolutions;
              cfg.fields = fields;
              cfg.seed = seed;
              return tll::run_suite(name, cfg).to_json().dump();
          },
          py::arg("name"), py::arg("dim") = 2,
          py::arg("resolutions") = std::vector<int>{32, 64}, py::arg("fields") = 8,
          py::arg("seed") = 20240001);

    m.def("suite_names", [] { return tll::suite_names(); });
}
