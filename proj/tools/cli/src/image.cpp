#include "mrct_cli/image.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

#ifdef MRCT_HAVE_PNG
#include <png.h>
#endif

namespace mrct::cli {

namespace {

constexpr std::array<std::array<double, 3>, 9> kViridis{{
    {68, 1, 84},
    {71, 44, 122},
    {59, 81, 139},
    {44, 113, 142},
    {33, 144, 141},
    {39, 173, 129},
    {92, 200, 99},
    {170, 220, 50},
    {253, 231, 37},
}};

std::array<std::uint8_t, 3> viridis(double x) {
    const double pos = std::clamp(x, 0.0, 1.0) * static_cast<double>(kViridis.size() - 1);
    const std::size_t i = std::min(static_cast<std::size_t>(pos), kViridis.size() - 2);
    const double f = pos - static_cast<double>(i);
    std::array<std::uint8_t, 3> rgb{};
    for (std::size_t c = 0; c < 3; ++c) {
        rgb[c] = static_cast<std::uint8_t>(std::lround(kViridis[i][c] + f * (kViridis[i + 1][c] - kViridis[i][c])));
    }
    return rgb;
}

std::string lower_extension(const std::filesystem::path& path) {
    std::string ext = path.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

void write_pnm(const std::filesystem::path& path, const Image& image, bool color) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << (color ? "P6" : "P5") << '\n' << image.width << ' ' << image.height << "\n255\n";
    if (color == (image.channels == 3)) {
        out.write(reinterpret_cast<const char*>(image.pixels.data()), static_cast<std::streamsize>(image.pixels.size()));
    } else {
        // Gray image to PPM: replicate the channel.
        for (std::uint8_t v : image.pixels) {
            const char px[3] = {static_cast<char>(v), static_cast<char>(v), static_cast<char>(v)};
            out.write(px, 3);
        }
    }
    out.close();
    if (!out) throw IoError("error while writing " + path.string());
}

#ifdef MRCT_HAVE_PNG
void write_png(const std::filesystem::path& path, const Image& image) {
    png_image png{};
    png.version = PNG_IMAGE_VERSION;
    png.width = static_cast<png_uint_32>(image.width);
    png.height = static_cast<png_uint_32>(image.height);
    png.format = image.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
    const auto stride = static_cast<png_int_32>(image.width * image.channels);
    if (png_image_write_to_file(&png, path.string().c_str(), 0, image.pixels.data(), stride, nullptr) == 0) {
        const std::string msg = png.message;
        png_image_free(&png);
        throw IoError("cannot write " + path.string() + ": " + msg);
    }
}
#endif

}  // namespace

Colormap parse_colormap(const std::string& name) {
    if (name == "gray") return Colormap::gray;
    if (name == "viridis") return Colormap::viridis;
    throw ValidationError("unknown colormap '" + name + "' (expected gray or viridis)");
}

Image render_image(const MatrixFile& m, Colormap cmap, double db_floor) {
    if (!(db_floor > 0.0) || !std::isfinite(db_floor)) throw ValidationError("db_floor must be a positive number");
    Image img;
    img.width = m.cols;
    img.height = m.rows;
    img.channels = cmap == Colormap::gray ? 1 : 3;
    img.pixels.assign(img.width * img.height * img.channels, 0);

    double peak = 0.0;
    for (std::size_t k = 0; k < m.rows; ++k) {
        for (std::size_t n = 0; n < m.cols; ++n) peak = std::max(peak, m.abs(k, n));
    }
    for (std::size_t k = 0; k < m.rows; ++k) {
        const std::size_t row = m.rows - 1 - k;
        for (std::size_t n = 0; n < m.cols; ++n) {
            double x = 0.0;
            const double v = m.abs(k, n);
            if (peak > 0.0 && v > 0.0) {
                const double db = 20.0 * std::log10(v / peak);
                x = std::clamp(1.0 + db / db_floor, 0.0, 1.0);
            }
            std::uint8_t* px = &img.pixels[(row * img.width + n) * img.channels];
            if (cmap == Colormap::gray) {
                px[0] = static_cast<std::uint8_t>(std::lround(255.0 * x));
            } else {
                const auto rgb = viridis(x);
                std::copy(rgb.begin(), rgb.end(), px);
            }
        }
    }
    return img;
}

bool png_supported() {
#ifdef MRCT_HAVE_PNG
    return true;
#else
    return false;
#endif
}

void write_image(const std::filesystem::path& path, const Image& image) {
    const std::string ext = lower_extension(path);
    if (ext == ".pgm") {
        if (image.channels != 1) throw ValidationError("PGM output needs the gray colormap");
        write_pnm(path, image, false);
    } else if (ext == ".ppm") {
        write_pnm(path, image, true);
    } else if (ext == ".png") {
#ifdef MRCT_HAVE_PNG
        write_png(path, image);
#else
        throw ValidationError("this build has no PNG support; write .pgm or .ppm instead");
#endif
    } else {
        throw ValidationError("unsupported image extension '" + ext + "' (expected .pgm, .ppm or .png)");
    }
}

}  // namespace mrct::cli
