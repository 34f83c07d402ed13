#pragma once

#include <filesystem>
#include <variant>

#include "iflow/grid.hpp"

namespace iflow {

// Field files carry one text header line
//   IFLOW1 <kind> <n> <length-as-decimal>
// with kind "scalar" or "vector", followed by row-major little-endian
// IEEE-754 float64 samples (the u block then the v block for vectors).
// write/read round-trips are bitwise exact.

void write_field(const ScalarField& f, const std::filesystem::path& path);
void write_field(const VectorField& f, const std::filesystem::path& path);

using AnyField = std::variant<ScalarField, VectorField>;

/// Throws FormatError on bad magic, kind, shape, payload size, or
/// non-finite samples.
AnyField read_field(const std::filesystem::path& path);

ScalarField read_scalar_field(const std::filesystem::path& path);
VectorField read_vector_field(const std::filesystem::path& path);

/// 8-bit grayscale PGM of the discrete divergence, linearly mapped from
/// [min, max]; a constant field renders as uniform 128. The actual min and
/// max go to a JSON sidecar next to the image (same stem, .json).
void write_divergence_image(const VectorField& v, const std::filesystem::path& pgm_path);

/// Plain-text inspection export: one "x,y,u,v" row per node.
void write_field_csv(const VectorField& f, const std::filesystem::path& path);

}  // namespace iflow
