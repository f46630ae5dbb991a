#pragma once

#include <filesystem>

#include "rqk/dataset.hpp"

namespace rqk {

// Container layout: <dir>/manifest.txt with key=value lines (task,
// n_samples, rows, cols, labels, clip_ids / window_indices when present,
// seed, config echo) plus one sample_<index>.bin per sample holding
// rows*cols row-major IEEE 754 binary32 little-endian values.
void write_container(const std::filesystem::path& dir, const Dataset& dataset);
Dataset load_container(const std::filesystem::path& dir);

}  // namespace rqk
