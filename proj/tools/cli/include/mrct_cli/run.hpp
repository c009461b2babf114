#pragma once

// Batch runs: configuration, validation and execution.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <mrct/mrct.hpp>

#include "mrct_cli/image.hpp"
#include "mrct_cli/matrix_file.hpp"

namespace mrct::cli {

/// Validation error attributed to one configuration field.
class ConfigError : public ValidationError {
public:
    ConfigError(std::string field, const std::string& what)
        : ValidationError(field + ": " + what), field_(std::move(field)) {}
    const std::string& field() const { return field_; }

private:
    std::string field_;
};

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitValidation = 2, kExitIo = 3 };

/// Everything a run needs, in CLI units (s, Hz, Hz/s).
struct RunConfig {
    // Input: a generator with its seed, or a signal CSV.
    std::optional<std::string> generator;
    std::optional<std::uint64_t> seed;
    std::optional<double> snr_db;
    std::optional<std::filesystem::path> input;
    bool keep_real = false;

    std::string method;

    // Window parameters.
    std::vector<double> sigmas;
    std::vector<double> betas_hz_s;
    std::optional<double> sigma1;
    std::string schedule = "multiplicative";
    double delta = 0.0;
    std::size_t m = 3;
    double c_sigma = 1.0;

    // Extraction.
    double gamma_rel = 1e-2;
    std::string tolerance_mode = "scaled";
    double half_width_bins = 0.5;
    std::optional<double> tolerance;

    // Grids.
    std::size_t bins = 128;
    std::optional<double> fmax_hz;
    double cr_min_hz_s = -200.0;
    double cr_max_hz_s = 200.0;
    std::size_t cr_bins = 201;

    // Outputs.
    std::filesystem::path out;
    bool complex_output = false;
    std::optional<std::filesystem::path> png;
    std::optional<std::filesystem::path> pgm;
    std::optional<std::filesystem::path> ppm;
    std::string colormap = "gray";
    double db_floor = 60.0;
    std::vector<double> slice_times;
    std::vector<double> slice_freqs_hz;
    std::optional<std::pair<double, double>> slice_band_hz;
    std::optional<std::pair<double, double>> slice_window_s;

    unsigned threads = 0;
};

inline const std::vector<std::string>& generator_names() {
    static const std::vector<std::string> names{"example1", "example2", "chirps-and-pulses", "chirp", "impulse"};
    return names;
}

inline const std::vector<std::string>& method_names() {
    static const std::vector<std::string> names{"stft", "ct", "rotation-ct", "wvd", "cft", "mrct", "mrsect"};
    return names;
}

/// Throws ConfigError naming the first offending field.
void validate(const RunConfig& cfg);

/// The signal a configuration describes (analytic form for real input).
Signal load_signal(const RunConfig& cfg);

/// The time-frequency grid for `signal` under `cfg`.
TFGrid make_grid(const RunConfig& cfg, const Signal& signal);

/// Window parameters for ct-family methods, in rad/s^2 internally.
ParameterSet resolve_parameters(const RunConfig& cfg, const Signal& signal, const TFGrid& grid);

struct SliceReport {
    std::string label;
    std::filesystem::path file;
    /// Peak positions in s (frequency slices) or Hz (time slices).
    std::vector<double> peaks;
};

struct RunResult {
    MatrixFile matrix;
    std::optional<ParameterSet> params;
    std::vector<std::filesystem::path> written;
    std::vector<SliceReport> slices;
    double seconds = 0.0;
    /// One-line summary.
    std::string summary;
};

/// Validates, computes and writes every requested artifact.
RunResult run(const RunConfig& cfg);

/// Renders an existing matrix file to an image.
void render(const std::filesystem::path& matrix_path, const std::filesystem::path& image_path, Colormap cmap,
            double db_floor);

}  // namespace mrct::cli
