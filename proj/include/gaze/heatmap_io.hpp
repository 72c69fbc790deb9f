#pragma once

#include <filesystem>
#include <string>

#include "gaze/heatmap.hpp"

namespace gaze {

// GHM1 container: 4-byte magic "GHM1", u32 LE width, u32 LE height, then
// width*height f32 LE cell values, row-major.

/// Serializes a heatmap into GHM1 bytes.
std::string encode_ghm1(const Heatmap& h);

/// Parses GHM1 bytes. Throws data_error on wrong magic, truncated or
/// oversized payload, zero dimensions, or non-finite values.
Heatmap decode_ghm1(const std::string& bytes);

Heatmap read_ghm1(const std::filesystem::path& path);
void write_ghm1(const Heatmap& h, const std::filesystem::path& path);

/// 8-bit binary PGM, pixel = round(value * 255) clamped to [0, 255].
std::string encode_pgm(const Heatmap& h);
void write_pgm(const Heatmap& h, const std::filesystem::path& path);

/// Writes bytes through a temp file in the same directory plus rename, so an
/// interrupted run never leaves a partial file under the final name.
void atomic_write(const std::filesystem::path& path, const std::string& bytes);

} // namespace gaze
