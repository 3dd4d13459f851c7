#include "tll/io.hpp"

#include <bit>
#include <cstdint>
#include <cstdio>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "field files are little-endian; big-endian hosts are unsupported");

namespace tll {

namespace {

constexpr char magic[4] = {'T', 'L', 'L', 'F'};

void put_u32(std::ostream& os, std::uint32_t v)
{
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& is, const std::string& path)
{
    std::uint32_t v = 0;
    if (!is.read(reinterpret_cast<char*>(&v), sizeof v))
        throw invalid_argument("field file " + path + ": truncated header");
    return v;
}

struct Header {
    Shape shape;
    bool complex_dtype;
};

void write_header(std::ostream& os, const Shape& s, bool complex_dtype)
{
    os.write(magic, 4);
    put_u32(os, field_format_version);
    put_u32(os, static_cast<std::uint32_t>(s.dim));
    put_u32(os, static_cast<std::uint32_t>(s.res));
    put_u32(os, static_cast<std::uint32_t>(s.comps));
    const std::uint8_t dtype = complex_dtype ? 1 : 0;
    os.write(reinterpret_cast<const char*>(&dtype), 1);
}

Header read_header(std::istream& is, const std::string& path)
{
    char m[4];
    if (!is.read(m, 4) || m[0] != magic[0] || m[1] != magic[1] || m[2] != magic[2] || m[3] != magic[3])
        throw invalid_argument("field file " + path + ": bad magic");
    const auto version = get_u32(is, path);
    if (version != field_format_version)
        throw invalid_argument("field file " + path + ": unsupported version " + std::to_string(version));
    Header h;
    h.shape.dim = static_cast<int>(get_u32(is, path));
    h.shape.res = static_cast<int>(get_u32(is, path));
    h.shape.comps = static_cast<int>(get_u32(is, path));
    std::uint8_t dtype = 0;
    if (!is.read(reinterpret_cast<char*>(&dtype), 1))
        throw invalid_argument("field file " + path + ": truncated header");
    if (dtype > 1)
        throw invalid_argument("field file " + path + ": unknown dtype " + std::to_string(dtype));
    h.complex_dtype = dtype == 1;
    validate_shape(h.shape);
    return h;
}

void write_samples(std::ostream& os, const std::vector<cplx>& data, bool complex_dtype)
{
    if (complex_dtype) {
        os.write(reinterpret_cast<const char*>(data.data()),
                 static_cast<std::streamsize>(data.size() * sizeof(cplx)));
    } else {
        std::vector<double> re(data.size());
        for (std::size_t i = 0; i < data.size(); ++i) re[i] = data[i].real();
        os.write(reinterpret_cast<const char*>(re.data()),
                 static_cast<std::streamsize>(re.size() * sizeof(double)));
    }
}

void read_samples(std::istream& is, const std::string& path, std::vector<cplx>& data, bool complex_dtype)
{
    if (complex_dtype) {
        if (!is.read(reinterpret_cast<char*>(data.data()),
                     static_cast<std::streamsize>(data.size() * sizeof(cplx))))
            throw invalid_argument("field file " + path + ": truncated samples");
    } else {
        std::vector<double> re(data.size());
        if (!is.read(reinterpret_cast<char*>(re.data()),
                     static_cast<std::streamsize>(re.size() * sizeof(double))))
            throw invalid_argument("field file " + path + ": truncated samples");
        for (std::size_t i = 0; i < data.size(); ++i) data[i] = cplx{re[i], 0.0};
    }
    is.peek();
    if (!is.eof())
        throw invalid_argument("field file " + path + ": trailing bytes after samples");
}

std::ofstream open_out(const std::string& path)
{
    std::ofstream os(path, std::ios::binary);
    if (!os) throw invalid_argument("cannot open " + path + " for writing");
    return os;
}

std::ifstream open_in(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is) throw invalid_argument("cannot open " + path);
    return is;
}

} // namespace

void write_field(const std::string& path, const GridField& u)
{
    if (u.real_valued() && max_imag(u) > 1e-9)
        throw numerical_error("write_field: field marked real has imaginary parts up to " +
                              std::to_string(max_imag(u)));
    auto os = open_out(path);
    write_header(os, u.shape(), !u.real_valued());
    write_samples(os, u.data(), !u.real_valued());
    if (!os) throw numerical_error("write_field: short write to " + path);
}

GridField read_field(const std::string& path)
{
    auto is = open_in(path);
    Header h = read_header(is, path);
    GridField u(h.shape, !h.complex_dtype);
    read_samples(is, path, u.data(), h.complex_dtype);
    return u;
}

void write_spectral(const std::string& path, const SpectralField& u)
{
    auto os = open_out(path);
    write_header(os, u.shape(), true);
    write_samples(os, u.data(), true);
    if (!os) throw numerical_error("write_spectral: short write to " + path);
}

SpectralField read_spectral(const std::string& path)
{
    auto is = open_in(path);
    Header h = read_header(is, path);
    if (!h.complex_dtype)
        throw invalid_argument("field file " + path + ": spectral states must be complex128");
    SpectralField u(h.shape, false);
    read_samples(is, path, u.data(), true);
    return u;
}

void export_csv(const std::string& path, const GridField& u)
{
    std::ofstream os(path);
    if (!os) throw invalid_argument("cannot open " + path + " for writing");
    const Shape& s = u.shape();
    const int M = s.res;
    const double h = 2.0 * std::numbers::pi / M;
    const bool re_only = u.real_valued();

    os << "x";
    if (s.dim >= 2) os << ",y";
    for (int c = 0; c < s.comps; ++c) {
        os << ",c" << c << "_re";
        if (!re_only) os << ",c" << c << "_im";
    }
    os << "\n";
    os.precision(17);

    auto row = [&](std::size_t flat, double x, double y, bool with_y) {
        os << x;
        if (with_y) os << "," << y;
        for (int c = 0; c < s.comps; ++c) {
            const cplx v = u.at(c, flat);
            os << "," << v.real();
            if (!re_only) os << "," << v.imag();
        }
        os << "\n";
    };

    if (s.dim == 1) {
        for (int a = 0; a < M; ++a) row(static_cast<std::size_t>(a), a * h, 0.0, false);
    } else {
        // dim 3 exports the z = 0 slice; flat index of (a,b,0) is (a*M+b)*M.
        const std::size_t stride = s.dim == 3 ? static_cast<std::size_t>(M) : 1;
        for (int a = 0; a < M; ++a)
            for (int b = 0; b < M; ++b)
                row((static_cast<std::size_t>(a) * M + b) * stride, a * h, b * h, true);
    }
    if (!os) throw numerical_error("export_csv: short write to " + path);
}

} // namespace tll
