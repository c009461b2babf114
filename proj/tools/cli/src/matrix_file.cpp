#include "mrct_cli/matrix_file.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

namespace mrct::cli {

namespace {

const char* dtype_token(MatrixFile::DType d) {
    switch (d) {
        case MatrixFile::DType::magnitude: return "mag";
        case MatrixFile::DType::real: return "real";
        case MatrixFile::DType::complex: return "complex";
    }
    return "mag";
}

std::size_t values_per_entry(MatrixFile::DType d) { return d == MatrixFile::DType::complex ? 2 : 1; }

std::string format_header(const MatrixFile& m) {
    for (int prec = 17; prec >= 6; --prec) {
        char buf[160];
        const int len = std::snprintf(buf, sizeof buf, "TFM1 %zu %zu %s %.*g %.*g %.*g %.*g", m.rows, m.cols,
                                      dtype_token(m.dtype), prec, m.dt, prec, m.df, prec, m.t0, prec, m.f0);
        if (len > 0 && static_cast<std::size_t>(len) < kMatrixHeaderBytes) {
            std::string h(buf, static_cast<std::size_t>(len));
            h.resize(kMatrixHeaderBytes - 1, ' ');
            h.push_back('\n');
            return h;
        }
    }
    throw ValidationError("matrix header does not fit in 64 bytes");
}

std::uint32_t to_little(std::uint32_t v) {
    if constexpr (std::endian::native == std::endian::big) {
        v = ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
    }
    return v;
}

}  // namespace

double MatrixFile::abs(std::size_t row, std::size_t col) const {
    const std::size_t i = row * cols + col;
    switch (dtype) {
        case DType::magnitude: return static_cast<double>(data[i]);
        case DType::real: return std::abs(static_cast<double>(data[i]));
        case DType::complex: return std::hypot(static_cast<double>(data[2 * i]), static_cast<double>(data[2 * i + 1]));
    }
    return 0.0;
}

MatrixFile to_matrix_file(const TFMatrix& m, bool keep_complex) {
    const TFGrid& g = m.grid();
    MatrixFile f;
    f.rows = m.rows();
    f.cols = m.cols();
    f.dt = g.dt();
    f.df = rad_to_hz(g.domega());
    f.t0 = g.time(0);
    f.f0 = rad_to_hz(g.freq(0));
    if (m.is_complex() && keep_complex) {
        f.dtype = MatrixFile::DType::complex;
        f.data.reserve(2 * f.rows * f.cols);
        for (const cplx& z : m.complex_values()) {
            f.data.push_back(static_cast<float>(z.real()));
            f.data.push_back(static_cast<float>(z.imag()));
        }
        return f;
    }
    if (m.kind() == TFMatrix::Kind::real) {
        f.dtype = MatrixFile::DType::real;
        for (double v : m.real_values()) f.data.push_back(static_cast<float>(v));
        return f;
    }
    f.dtype = MatrixFile::DType::magnitude;
    f.data.reserve(f.rows * f.cols);
    for (std::size_t k = 0; k < f.rows; ++k) {
        for (std::size_t n = 0; n < f.cols; ++n) f.data.push_back(static_cast<float>(m.abs(k, n)));
    }
    return f;
}

MatrixFile to_matrix_file(const CRSpectrum& spectrum) {
    MatrixFile f;
    f.rows = spectrum.freqs.count;
    f.cols = spectrum.crs.count;
    f.dtype = MatrixFile::DType::magnitude;
    f.dt = rad_to_hz(spectrum.crs.step);
    f.t0 = rad_to_hz(spectrum.crs.start);
    f.df = rad_to_hz(spectrum.freqs.step);
    f.f0 = rad_to_hz(spectrum.freqs.start);
    f.data.resize(f.rows * f.cols);
    for (std::size_t k = 0; k < f.rows; ++k) {
        for (std::size_t q = 0; q < f.cols; ++q) f.data[k * f.cols + q] = static_cast<float>(spectrum.at(q, k));
    }
    return f;
}

void write_matrix_file(const std::filesystem::path& path, const MatrixFile& m) {
    if (m.data.size() != m.rows * m.cols * values_per_entry(m.dtype)) {
        throw ValidationError("matrix data size does not match its shape");
    }
    const std::string header = format_header(m);
    std::vector<std::uint32_t> words(m.data.size());
    for (std::size_t i = 0; i < m.data.size(); ++i) words[i] = to_little(std::bit_cast<std::uint32_t>(m.data[i]));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(reinterpret_cast<const char*>(words.data()), static_cast<std::streamsize>(words.size() * 4));
    out.close();
    if (!out) throw IoError("error while writing " + path.string());
}

MatrixFile read_matrix_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::string header(kMatrixHeaderBytes, '\0');
    in.read(header.data(), static_cast<std::streamsize>(kMatrixHeaderBytes));
    if (in.gcount() != static_cast<std::streamsize>(kMatrixHeaderBytes) || header.back() != '\n') {
        throw IoError(path.string() + ": truncated or missing matrix header");
    }
    std::istringstream hs(header);
    std::string magic, dtype;
    MatrixFile m;
    if (!(hs >> magic >> m.rows >> m.cols >> dtype >> m.dt >> m.df >> m.t0 >> m.f0) || magic != "TFM1") {
        throw IoError(path.string() + ": malformed matrix header");
    }
    if (dtype == "mag") {
        m.dtype = MatrixFile::DType::magnitude;
    } else if (dtype == "real") {
        m.dtype = MatrixFile::DType::real;
    } else if (dtype == "complex") {
        m.dtype = MatrixFile::DType::complex;
    } else {
        throw IoError(path.string() + ": unknown matrix dtype '" + dtype + "'");
    }
    if (m.rows == 0 || m.cols == 0) throw IoError(path.string() + ": empty matrix");
    const std::size_t count = m.rows * m.cols * values_per_entry(m.dtype);
    std::vector<std::uint32_t> words(count);
    in.read(reinterpret_cast<char*>(words.data()), static_cast<std::streamsize>(count * 4));
    if (in.gcount() != static_cast<std::streamsize>(count * 4)) throw IoError(path.string() + ": truncated matrix data");
    if (in.peek() != std::char_traits<char>::eof()) throw IoError(path.string() + ": trailing bytes after matrix data");
    m.data.resize(count);
    for (std::size_t i = 0; i < count; ++i) {
        m.data[i] = std::bit_cast<float>(to_little(words[i]));
        if (!std::isfinite(m.data[i])) throw IoError(path.string() + ": non-finite matrix value");
    }
    return m;
}

}  // namespace mrct::cli
