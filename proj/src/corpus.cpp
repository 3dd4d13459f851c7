#include "tll/corpus.hpp"

#include <cmath>
#include <random>

#include "tll/fft.hpp"
#include "tll/helmholtz.hpp"

namespace tll {

namespace {

std::size_t band_flat(const Shape& s, const std::array<int, 3>& xi)
{
    std::size_t flat = 0;
    for (int d = 0; d < s.dim; ++d) {
        const int idx = xi[d] >= 0 ? xi[d] : xi[d] + s.res;
        flat = flat * static_cast<std::size_t>(s.res) + static_cast<std::size_t>(idx);
    }
    return flat;
}

// Visits the band lattice in a fixed order independent of the resolution.
template <class F>
void for_each_band_mode(int dim, int band, F&& fn)
{
    std::array<int, 3> xi{0, 0, 0};
    for (int a = -band; a <= band; ++a) {
        xi[0] = a;
        if (dim == 1) {
            fn(xi);
            continue;
        }
        for (int b = -band; b <= band; ++b) {
            xi[1] = b;
            if (dim == 2) {
                fn(xi);
                continue;
            }
            for (int c = -band; c <= band; ++c) {
                xi[2] = c;
                fn(xi);
            }
        }
    }
}

} // namespace

GridField random_field(const CorpusSpec& spec, int res, int index)
{
    const Shape s{spec.dim, res, spec.comps};
    validate_shape(s);
    if (spec.band < 1) throw invalid_argument("corpus: band must be >= 1");
    if (res < 2 * (spec.band + 1))
        throw invalid_argument("corpus: res must be >= 2 * (band + 1) to hold the band");
    if (!(spec.decay >= 0.0)) throw invalid_argument("corpus: decay must be >= 0");
    if (spec.solenoidal && (spec.comps != spec.dim || spec.dim < 2))
        throw invalid_argument("corpus: solenoidal draws need comps == dim >= 2");
    if (index < 0) throw invalid_argument("corpus: index must be >= 0");

    std::seed_seq seq{static_cast<unsigned>(spec.seed), static_cast<unsigned>(spec.seed >> 32),
                      static_cast<unsigned>(index), 0x7f4a7c15u};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);

    SpectralField draw(s, false);
    for (int c = 0; c < s.comps; ++c) {
        for_each_band_mode(s.dim, spec.band, [&](const std::array<int, 3>& xi) {
            const double re = gauss(rng);
            const double im = gauss(rng);
            const double rho2 = double(xi[0]) * xi[0] + double(xi[1]) * xi[1] + double(xi[2]) * xi[2];
            const double amp = std::pow(1.0 + rho2, -spec.decay);
            draw.at(c, band_flat(s, xi)) = amp * cplx(re, im);
        });
    }

    SpectralField sym(s, true);
    for (int c = 0; c < s.comps; ++c) {
        for_each_band_mode(s.dim, spec.band, [&](const std::array<int, 3>& xi) {
            const std::array<int, 3> neg{-xi[0], -xi[1], -xi[2]};
            sym.at(c, band_flat(s, xi)) =
                0.5 * (draw.at(c, band_flat(s, xi)) + std::conj(draw.at(c, band_flat(s, neg))));
        });
    }

    if (spec.solenoidal) sym = helmholtz_project(sym);
    GridField out = inverse_transform(sym);
    out.set_real_valued(true);
    return out;
}

GridField pure_mode(int dim, int res, std::array<int, 3> xi0, int comps)
{
    const Shape s{dim, res, comps};
    validate_shape(s);
    bool zero = true;
    for (int d = 0; d < dim; ++d) {
        if (xi0[d] != 0) zero = false;
        if (xi0[d] < -res / 2 + 1 || xi0[d] > res / 2)
            throw invalid_argument("pure mode: frequency outside the grid range");
    }
    SpectralField coef(s, zero);
    for (int c = 0; c < comps; ++c) coef.at(c, band_flat(s, xi0)) = 1.0;
    GridField out = inverse_transform(coef);
    out.set_real_valued(zero);
    return out;
}

GridField cosine_mode(int dim, int res, std::array<int, 3> xi0, double amplitude)
{
    const Shape s{dim, res, 1};
    validate_shape(s);
    for (int d = 0; d < dim; ++d)
        if (std::abs(xi0[d]) > res / 2 - 1)
            throw invalid_argument("cosine mode: frequency too close to the grid edge");
    SpectralField coef(s, true);
    const std::array<int, 3> neg{-xi0[0], -xi0[1], -xi0[2]};
    coef.at(0, band_flat(s, xi0)) += 0.5 * amplitude;
    coef.at(0, band_flat(s, neg)) += 0.5 * amplitude;
    GridField out = inverse_transform(coef);
    out.set_real_valued(true);
    return out;
}

GridField gaussian_bump(int dim, int res, double width, std::array<double, 3> center)
{
    const Shape s{dim, res, 1};
    validate_shape(s);
    if (!(width > 0.0)) throw invalid_argument("gaussian bump: width must be positive");

    const double two_pi = 2.0 * std::numbers::pi;
    auto wrapped = [&](double y) {
        double acc = 0.0;
        for (int m = -3; m <= 3; ++m) {
            const double d = y - two_pi * m;
            acc += std::exp(-d * d / (2.0 * width * width));
        }
        return acc;
    };

    GridField out(s, true);
    for_each_point(s, [&](std::size_t flat, const std::array<double, 3>& x) {
        double v = 1.0;
        for (int d = 0; d < dim; ++d) v *= wrapped(x[d] - center[d]);
        out.at(0, flat) = v;
    });
    return out;
}

GridField taylor_green(int res)
{
    const Shape s{2, res, 2};
    validate_shape(s);
    GridField out(s, true);
    for_each_point(s, [&](std::size_t flat, const std::array<double, 3>& x) {
        out.at(0, flat) = std::sin(x[0]) * std::cos(x[1]);
        out.at(1, flat) = -std::cos(x[0]) * std::sin(x[1]);
    });
    return out;
}

} // namespace tll
