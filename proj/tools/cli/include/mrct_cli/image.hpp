#pragma once

// Heat-map rendering of matrix files to PGM, PPM and (optionally) PNG.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "mrct_cli/matrix_file.hpp"

namespace mrct::cli {

enum class Colormap { gray, viridis };

Colormap parse_colormap(const std::string& name);

struct Image {
    std::size_t width = 0;
    std::size_t height = 0;
    std::size_t channels = 1;  ///< 1 (gray) or 3 (RGB)
    std::vector<std::uint8_t> pixels;

    const std::uint8_t* at(std::size_t row, std::size_t col) const { return &pixels[(row * width + col) * channels]; }
};

/// Magnitude in dB relative to the maximum, clipped at -db_floor and mapped
/// through the colormap. Frequency increases upward, time to the right; an
/// all-zero matrix renders uniformly in the floor color.
Image render_image(const MatrixFile& m, Colormap cmap, double db_floor);

/// True when this build can write PNG files.
bool png_supported();

/// Format from the extension: .pgm (gray only), .ppm or .png.
void write_image(const std::filesystem::path& path, const Image& image);

}  // namespace mrct::cli
