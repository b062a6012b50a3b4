#pragma once

#include <filesystem>

#include "slipstream/field.hpp"

namespace slipstream {

/// Field snapshot file: one text header line
///   SLIPSTREAM-FIELD 1 <n_r> <n_s> <time> <tag>
/// followed by n_r * n_s row-major 64-bit little-endian floats.
void write_snapshot(const std::filesystem::path& path, const ScalarField& f, double time);

struct Snapshot {
    ScalarField field;
    double time = 0.0;
};

Snapshot read_snapshot(const std::filesystem::path& path);

} // namespace slipstream
