#include "tll/grid.hpp"

#include <algorithm>
#include <cmath>

namespace tll {

void validate_shape(const Shape& s)
{
    if (s.dim < 1 || s.dim > 3)
        throw invalid_argument("shape: dim must be 1, 2 or 3, got " + std::to_string(s.dim));
    if (s.res < 2 || (s.res & (s.res - 1)) != 0)
        throw invalid_argument("shape: res must be a power of two >= 2, got " + std::to_string(s.res));
    if (s.comps < 1)
        throw invalid_argument("shape: comps must be >= 1, got " + std::to_string(s.comps));
}

GridField::GridField(Shape shape, bool real_valued)
    : shape_(shape), real_valued_(real_valued)
{
    validate_shape(shape_);
    data_.assign(shape_.size(), cplx{0.0, 0.0});
}

SpectralField::SpectralField(Shape shape, bool from_real)
    : shape_(shape), from_real_(from_real)
{
    validate_shape(shape_);
    coef_.assign(shape_.size(), cplx{0.0, 0.0});
}

std::vector<double> pointwise_magnitude(const GridField& u)
{
    const std::size_t pts = u.shape().points();
    std::vector<double> mag(pts, 0.0);
    for (int c = 0; c < u.shape().comps; ++c) {
        auto comp = u.component(c);
        for (std::size_t i = 0; i < pts; ++i) mag[i] += std::norm(comp[i]);
    }
    for (auto& v : mag) v = std::sqrt(v);
    return mag;
}

double grid_l2_norm(const GridField& u)
{
    double s = 0.0;
    for (const auto& v : u.data()) s += std::norm(v);
    return std::sqrt(s * cell_measure(u.shape()));
}

double spectral_l2_norm(const SpectralField& u)
{
    double s = 0.0;
    for (const auto& v : u.data()) s += std::norm(v);
    return std::sqrt(s * torus_measure(u.shape().dim));
}

double grid_linf_norm(const GridField& u)
{
    double m = 0.0;
    for (const auto& v : u.data()) m = std::max(m, std::abs(v));
    return m;
}

double max_imag(const GridField& u)
{
    double m = 0.0;
    for (const auto& v : u.data()) m = std::max(m, std::abs(v.imag()));
    return m;
}

namespace {
void require_same_shape(const GridField& a, const GridField& b)
{
    if (!(a.shape() == b.shape()))
        throw invalid_argument("grid fields have mismatched shapes");
}
}

GridField operator+(const GridField& a, const GridField& b)
{
    require_same_shape(a, b);
    GridField out(a.shape(), a.real_valued() && b.real_valued());
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
    return out;
}

GridField operator-(const GridField& a, const GridField& b)
{
    require_same_shape(a, b);
    GridField out(a.shape(), a.real_valued() && b.real_valued());
    for (std::size_t i = 0; i < out.data().size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
    return out;
}

GridField scaled(const GridField& a, double factor)
{
    GridField out = a;
    for (auto& v : out.data()) v *= factor;
    return out;
}

} // namespace tll
