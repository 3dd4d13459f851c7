#pragma once

#include <string>

#include "tll/grid.hpp"

namespace tll {

// Field files: magic "TLLF", then little-endian u32 version (currently 1),
// u32 dim, u32 res, u32 components, u8 dtype (0 = float64, 1 = complex128),
// then the samples component-major, each component row-major (axis 0
// slowest). dtype 0 stores real parts only and is valid only for fields
// whose imaginary parts vanish.
inline constexpr unsigned field_format_version = 1;

void write_field(const std::string& path, const GridField& u);
GridField read_field(const std::string& path);

// Spectral states reuse the same container with dtype complex128; the
// coefficients are stored in FFT index order. Callers record the domain in
// their run manifests (the solver does this for checkpoints).
void write_spectral(const std::string& path, const SpectralField& u);
SpectralField read_spectral(const std::string& path);

// CSV with a header row: dim 1 writes x and one column pair per component,
// dim 2 writes x,y,..., dim 3 writes the z = 0 slice. Real fields omit the
// imaginary columns.
void export_csv(const std::string& path, const GridField& u);

} // namespace tll
