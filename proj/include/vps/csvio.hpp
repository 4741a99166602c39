#pragma once

#include <filesystem>
#include <fstream>
#include <iosfwd>

#include "vps/field.hpp"
#include "vps/radial.hpp"

namespace vps {

// Flat CSV layout for box fields: a two-line header (L,n) followed by one
// value per line in row-major order with the last index fastest.
void write_scalar_field_csv(std::ostream& os, const ScalarField& f);
ScalarField read_scalar_field_csv(std::istream& is);

// Radial profile table: columns r,Q,R,S,H1,H.
void write_radial_csv(std::ostream& os, const RadialSolution& sol);

// Creates parent directories and opens for writing; throws on failure.
std::ofstream open_output(const std::filesystem::path& p);

}  // namespace vps
