#pragma once

// Matrix files: a 64-byte ASCII header
//
//   TFM1 <rows> <cols> <dtype> <dt> <df> <t0> <f0>
//
// padded with spaces and terminated by '\n', followed by row-major
// little-endian float32 data, rows = frequency bins. dtype is mag, real or
// complex (interleaved re, im pairs). Axis values are in s and Hz; for CFT
// matrices the column axis is the chirp rate in Hz/s (dt, t0 hold its step
// and start).

#include <cstddef>
#include <filesystem>
#include <vector>

#include <mrct/mrct.hpp>

namespace mrct::cli {

inline constexpr std::size_t kMatrixHeaderBytes = 64;

struct MatrixFile {
    enum class DType { magnitude, real, complex };

    std::size_t rows = 0;
    std::size_t cols = 0;
    DType dtype = DType::magnitude;
    double dt = 1.0;
    double df = 1.0;
    double t0 = 0.0;
    double f0 = 0.0;
    /// rows * cols floats, or 2 * rows * cols for complex.
    std::vector<float> data;

    /// Modulus of entry (row, col).
    double abs(std::size_t row, std::size_t col) const;
};

/// Magnitude, real or complex export of a TF matrix; `keep_complex` only
/// applies to complex matrices.
MatrixFile to_matrix_file(const TFMatrix& m, bool keep_complex = false);

/// CFT magnitudes with rows = frequencies and columns = chirp rates.
MatrixFile to_matrix_file(const CRSpectrum& spectrum);

void write_matrix_file(const std::filesystem::path& path, const MatrixFile& m);

/// Throws IoError for unreadable or corrupt files.
MatrixFile read_matrix_file(const std::filesystem::path& path);

}  // namespace mrct::cli
