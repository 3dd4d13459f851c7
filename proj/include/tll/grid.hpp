#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "tll/errors.hpp"

namespace tll {

using cplx = std::complex<double>;

// All fields live on the torus [0,2pi)^n sampled at M points per axis,
// x_j = 2*pi*j/M. Storage is component-major; within a component axis 0 is
// slowest and axis n-1 fastest.
struct Shape {
    int dim = 1;   // n in {1,2,3}
    int res = 0;   // M, a power of two
    int comps = 1;

    bool operator==(const Shape&) const = default;

    std::size_t points() const
    {
        std::size_t p = 1;
        for (int d = 0; d < dim; ++d) p *= static_cast<std::size_t>(res);
        return p;
    }
    std::size_t size() const { return points() * static_cast<std::size_t>(comps); }
};

void validate_shape(const Shape& s);

inline double cell_measure(const Shape& s)
{
    double m = 1.0;
    for (int d = 0; d < s.dim; ++d) m *= 2.0 * std::numbers::pi / s.res;
    return m;
}

inline double torus_measure(int dim)
{
    double m = 1.0;
    for (int d = 0; d < dim; ++d) m *= 2.0 * std::numbers::pi;
    return m;
}

// Physical-space samples. real_valued marks fields whose imaginary parts are
// zero by construction; it selects the dtype on disk and is asserted by I/O.
class GridField {
public:
    GridField() = default;
    GridField(Shape shape, bool real_valued);

    const Shape& shape() const { return shape_; }
    bool real_valued() const { return real_valued_; }
    void set_real_valued(bool v) { real_valued_ = v; }

    cplx& at(int comp, std::size_t flat) { return data_[comp * shape_.points() + flat]; }
    const cplx& at(int comp, std::size_t flat) const { return data_[comp * shape_.points() + flat]; }

    std::span<cplx> component(int comp)
    {
        return {data_.data() + comp * shape_.points(), shape_.points()};
    }
    std::span<const cplx> component(int comp) const
    {
        return {data_.data() + comp * shape_.points(), shape_.points()};
    }

    std::vector<cplx>& data() { return data_; }
    const std::vector<cplx>& data() const { return data_; }

private:
    Shape shape_;
    bool real_valued_ = true;
    std::vector<cplx> data_;
};

// Fourier coefficients in FFT index order: axis index a holds frequency
// a <= M/2 ? a : a - M, so xi_i ranges over (-M/2, M/2].
class SpectralField {
public:
    SpectralField() = default;
    SpectralField(Shape shape, bool from_real);

    const Shape& shape() const { return shape_; }
    bool from_real() const { return from_real_; }
    void set_from_real(bool v) { from_real_ = v; }

    cplx& at(int comp, std::size_t flat) { return coef_[comp * shape_.points() + flat]; }
    const cplx& at(int comp, std::size_t flat) const { return coef_[comp * shape_.points() + flat]; }

    std::span<cplx> component(int comp)
    {
        return {coef_.data() + comp * shape_.points(), shape_.points()};
    }
    std::span<const cplx> component(int comp) const
    {
        return {coef_.data() + comp * shape_.points(), shape_.points()};
    }

    std::vector<cplx>& data() { return coef_; }
    const std::vector<cplx>& data() const { return coef_; }

private:
    Shape shape_;
    bool from_real_ = true;
    std::vector<cplx> coef_;
};

inline int freq_of(int index, int M) { return index <= M / 2 ? index : index - M; }

// Visits every mode of one component: fn(flat, xi) with xi zero-padded to
// length 3. dim > 3 is rejected at shape validation.
template <class F>
void for_each_mode(const Shape& s, F&& fn)
{
    const int M = s.res;
    std::array<int, 3> xi{0, 0, 0};
    std::size_t flat = 0;
    switch (s.dim) {
    case 1:
        for (int a = 0; a < M; ++a) {
            xi[0] = freq_of(a, M);
            fn(flat++, xi);
        }
        break;
    case 2:
        for (int a = 0; a < M; ++a) {
            xi[0] = freq_of(a, M);
            for (int b = 0; b < M; ++b) {
                xi[1] = freq_of(b, M);
                fn(flat++, xi);
            }
        }
        break;
    default:
        for (int a = 0; a < M; ++a) {
            xi[0] = freq_of(a, M);
            for (int b = 0; b < M; ++b) {
                xi[1] = freq_of(b, M);
                for (int c = 0; c < M; ++c) {
                    xi[2] = freq_of(c, M);
                    fn(flat++, xi);
                }
            }
        }
        break;
    }
}

// Grid-point visitor: fn(flat, x) with x in [0,2pi)^n zero-padded to length 3.
template <class F>
void for_each_point(const Shape& s, F&& fn)
{
    const int M = s.res;
    const double h = 2.0 * std::numbers::pi / M;
    std::array<double, 3> x{0.0, 0.0, 0.0};
    std::size_t flat = 0;
    switch (s.dim) {
    case 1:
        for (int a = 0; a < M; ++a) {
            x[0] = a * h;
            fn(flat++, x);
        }
        break;
    case 2:
        for (int a = 0; a < M; ++a) {
            x[0] = a * h;
            for (int b = 0; b < M; ++b) {
                x[1] = b * h;
                fn(flat++, x);
            }
        }
        break;
    default:
        for (int a = 0; a < M; ++a) {
            x[0] = a * h;
            for (int b = 0; b < M; ++b) {
                x[1] = b * h;
                for (int c = 0; c < M; ++c) {
                    x[2] = c * h;
                    fn(flat++, x);
                }
            }
        }
        break;
    }
}

// Pointwise Euclidean magnitude across components (|.| for scalars).
std::vector<double> pointwise_magnitude(const GridField& u);

// L2(torus) norm: sqrt(cell_measure * sum |u|^2) over all components.
double grid_l2_norm(const GridField& u);

// Coefficient-side L2 norm, (2pi)^{n/2} * l2 of coefficients. Equals
// grid_l2_norm of the synthesis to 1e-12 (Parseval).
double spectral_l2_norm(const SpectralField& u);

double grid_linf_norm(const GridField& u);

// Largest imaginary magnitude, for realness assertions.
double max_imag(const GridField& u);

GridField operator+(const GridField& a, const GridField& b);
GridField operator-(const GridField& a, const GridField& b);
GridField scaled(const GridField& a, double factor);

} // namespace tll
