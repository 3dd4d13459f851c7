#include "tll/helmholtz.hpp"

#include <cmath>

#include "tll/fft.hpp"

namespace tll {

namespace {

void check_vector_shape(const Shape& s, const char* who)
{
    if (s.dim < 2)
        throw invalid_argument(std::string(who) + ": needs dim >= 2");
    if (s.comps != s.dim)
        throw invalid_argument(std::string(who) + ": expects comps == dim, got " +
                               std::to_string(s.comps) + " components in dim " +
                               std::to_string(s.dim));
}

constexpr double solenoidal_admission = 1e-10;

} // namespace

SpectralField helmholtz_project(const SpectralField& u)
{
    check_vector_shape(u.shape(), "helmholtz_project");
    const Shape& s = u.shape();
    SpectralField out = u;
    for_each_mode(s, [&](std::size_t flat, const std::array<int, 3>& xi) {
        double r2 = 0.0;
        for (int d = 0; d < s.dim; ++d) r2 += static_cast<double>(xi[d]) * xi[d];
        if (r2 == 0.0) return; // mean mode passes through
        cplx dot{0.0, 0.0};
        for (int d = 0; d < s.dim; ++d) dot += static_cast<double>(xi[d]) * u.at(d, flat);
        dot /= r2;
        for (int d = 0; d < s.dim; ++d) out.at(d, flat) -= static_cast<double>(xi[d]) * dot;
    });
    return out;
}

GridField helmholtz_project(const GridField& u)
{
    return inverse_transform(helmholtz_project(forward_transform(u)));
}

HelmholtzSplit helmholtz_split(const GridField& u)
{
    check_vector_shape(u.shape(), "helmholtz_split");
    const Shape& s = u.shape();
    const SpectralField uh = forward_transform(u);
    const SpectralField sol = helmholtz_project(uh);

    SpectralField grad(s, uh.from_real());
    for (std::size_t i = 0; i < grad.data().size(); ++i)
        grad.data()[i] = uh.data()[i] - sol.data()[i];

    // p with grad p = (I-P)u: p_hat = (xi . uhat) / (i |xi|^2), zero mean.
    SpectralField pot({s.dim, s.res, 1}, uh.from_real());
    for_each_mode(s, [&](std::size_t flat, const std::array<int, 3>& xi) {
        double r2 = 0.0;
        for (int d = 0; d < s.dim; ++d) r2 += static_cast<double>(xi[d]) * xi[d];
        if (r2 == 0.0) return;
        cplx dot{0.0, 0.0};
        for (int d = 0; d < s.dim; ++d) dot += static_cast<double>(xi[d]) * uh.at(d, flat);
        pot.at(0, flat) = dot / cplx{0.0, r2};
    });

    return {inverse_transform(sol), inverse_transform(grad), inverse_transform(pot)};
}

double relative_divergence(const SpectralField& u)
{
    check_vector_shape(u.shape(), "relative_divergence");
    const Shape& s = u.shape();
    double num = 0.0, den = 0.0;
    for_each_mode(s, [&](std::size_t flat, const std::array<int, 3>& xi) {
        double r2 = 0.0;
        cplx dot{0.0, 0.0};
        double mag2 = 0.0;
        for (int d = 0; d < s.dim; ++d) {
            const double x = static_cast<double>(xi[d]);
            r2 += x * x;
            dot += x * u.at(d, flat);
            mag2 += std::norm(u.at(d, flat));
        }
        num += std::norm(dot);
        den += r2 * mag2;
    });
    return den > 0.0 ? std::sqrt(num / den) : 0.0;
}

double relative_divergence(const GridField& u)
{
    return relative_divergence(forward_transform(u));
}

namespace {

GridField stokes_apply(const GridField& u, const MultiplierSymbol& m, const char* who)
{
    check_vector_shape(u.shape(), who);
    SpectralField uh = forward_transform(u);
    const double defect = relative_divergence(uh);
    if (defect > solenoidal_admission)
        throw invalid_argument(std::string(who) + ": input has solenoidality defect " +
                               std::to_string(defect) + ", admission is 1e-10");
    return inverse_transform(helmholtz_project(apply_multiplier(uh, m)));
}

} // namespace

GridField stokes_resolvent(const GridField& u, cplx lambda)
{
    return stokes_apply(u, resolvent_symbol(lambda), "stokes_resolvent");
}

GridField stokes_semigroup(const GridField& u, double t)
{
    return stokes_apply(u, heat_symbol(t), "stokes_semigroup");
}

MultiplierSymbol helmholtz_entry_symbol(int i, int j)
{
    if (i < 0 || i > 2 || j < 0 || j > 2)
        throw invalid_argument("helmholtz_entry_symbol: indices must be 0..2");
    const double delta = i == j ? 1.0 : 0.0;
    return {"helmholtz(" + std::to_string(i) + "," + std::to_string(j) + ")",
            [i, j, delta](std::span<const double> xi) {
                double r2 = 0.0;
                for (double v : xi) r2 += v * v;
                const double xi_i = i < static_cast<int>(xi.size()) ? xi[i] : 0.0;
                const double xi_j = j < static_cast<int>(xi.size()) ? xi[j] : 0.0;
                return cplx{delta - xi_i * xi_j / r2, 0.0};
            },
            cplx{delta, 0.0}, true};
}

} // namespace tll
