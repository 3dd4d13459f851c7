#include "tll/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace tll {

namespace {

// Plans are created once per (rank, size, direction) with FFTW_ESTIMATE so
// planning never runs timing experiments (deterministic plan choice) and
// FFTW_UNALIGNED so they execute on any buffer.
class PlanCache {
public:
    fftw_plan get(int rank, int n, int sign, bool inplace)
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::tuple{rank, n, sign, inplace};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;

        std::vector<int> dims(rank, n);
        std::size_t total = 1;
        for (int d = 0; d < rank; ++d) total *= static_cast<std::size_t>(n);
        std::vector<cplx> a(total), b(inplace ? 0 : total);
        auto* in = reinterpret_cast<fftw_complex*>(a.data());
        auto* out = inplace ? in : reinterpret_cast<fftw_complex*>(b.data());
        fftw_plan p = fftw_plan_dft(rank, dims.data(), in, out, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::tuple<int, int, int, bool>, fftw_plan> plans_;
};

PlanCache& cache()
{
    static PlanCache c;
    return c;
}

void execute(fftw_plan p, const cplx* in, cplx* out)
{
    fftw_execute_dft(p, reinterpret_cast<fftw_complex*>(const_cast<cplx*>(in)),
                     reinterpret_cast<fftw_complex*>(out));
}

} // namespace

SpectralField forward_transform(const GridField& u)
{
    const Shape& s = u.shape();
    SpectralField out(s, u.real_valued());
    fftw_plan p = cache().get(s.dim, s.res, FFTW_FORWARD, false);
    const double scale = 1.0 / static_cast<double>(s.points());
    for (int c = 0; c < s.comps; ++c) {
        execute(p, u.component(c).data(), out.component(c).data());
        for (auto& v : out.component(c)) v *= scale;
    }
    return out;
}

GridField inverse_transform(const SpectralField& sf)
{
    const Shape& s = sf.shape();
    GridField out(s, sf.from_real());
    fftw_plan p = cache().get(s.dim, s.res, FFTW_BACKWARD, false);
    for (int c = 0; c < s.comps; ++c)
        execute(p, sf.component(c).data(), out.component(c).data());
    return out;
}

void fft_1d_forward(cplx* data, int n)
{
    fftw_plan p = cache().get(1, n, FFTW_FORWARD, true);
    execute(p, data, data);
}

void fft_1d_backward(cplx* data, int n)
{
    fftw_plan p = cache().get(1, n, FFTW_BACKWARD, true);
    execute(p, data, data);
}

} // namespace tll
