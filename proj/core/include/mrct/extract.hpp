#pragma once

// Combined instantaneous-frequency equation (MrIF), synchroextraction
// (MrSECT) and ridge tracking.

#include <cstddef>
#include <optional>
#include <vector>

#include "mrct/combine.hpp"
#include "mrct/types.hpp"

namespace mrct {

/// How the default extraction tolerance is derived from the grid.
enum class ToleranceMode {
    /// sigma_bar^2 * half_width_bins * dw, sigma_bar^2 the geometric mean of
    /// the sigma_i^2. Near a chirp ridge MrIF ~ sigma^2 |w - IF|, so this
    /// keeps bins within half_width_bins frequency steps of the ridge.
    scaled,
    /// dw / 2 compared with MrIF directly.
    literal,
};

struct ExtractionConfig {
    /// gamma = gamma_rel * max |MrC|.
    double gamma_rel = 1e-2;
    /// Explicit tolerance; overrides `mode` when set.
    std::optional<double> tolerance;
    ToleranceMode mode = ToleranceMode::scaled;
    /// Ridge half-width in frequency bins for the scaled mode.
    double half_width_bins = 0.5;
};

/// Tolerance actually applied for `params` on `grid`.
double extraction_tolerance(const ExtractionConfig& cfg, const ParameterSet& params, const TFGrid& grid);

/// MrIF values over a grid; excluded bins (|MrC| <= gamma) hold +inf.
class MrifMatrix {
public:
    MrifMatrix(TFGrid grid, std::vector<double> values, double gamma);

    const TFGrid& grid() const { return grid_; }
    std::size_t rows() const { return grid_.n_freqs(); }
    std::size_t cols() const { return grid_.n_times(); }
    double operator()(std::size_t k, std::size_t n) const { return values_[k * cols() + n]; }
    bool excluded(std::size_t k, std::size_t n) const;
    std::span<const double> values() const { return values_; }
    double gamma() const { return gamma_; }

private:
    TFGrid grid_;
    std::vector<double> values_;
    double gamma_;
};

/// (prod |C^th_i|)^(1/m) / (prod |C_i|)^(1/m) where |MrC| > gamma, in
/// seconds. Magnitudes are floored with the MrCT floor.
MrifMatrix mrif(const Signal& signal, const ParameterSet& params, const TFGrid& grid, const ExtractionConfig& cfg);

/// MrIF from an existing MrCT and the matching t-weighted CTs.
MrifMatrix mrif(const MrctResult& combined, std::span<const TFMatrix> t_weighted, const ExtractionConfig& cfg);

/// MrCT magnitude where MrIF < tolerance, 0 elsewhere.
TFMatrix mrsect(const Signal& signal, const ParameterSet& params, const TFGrid& grid, const ExtractionConfig& cfg);

/// MrSECT from an existing MrCT and its MrIF.
TFMatrix mrsect(const MrctResult& combined, const MrifMatrix& if_map, double tolerance);

struct RidgeTrack {
    /// Per time bin: extracted frequency in rad/s, or none.
    std::vector<std::optional<double>> freq;
    /// Per time bin: magnitude on the ridge (0 where none).
    std::vector<double> amplitude;
};

/// Extracts ridges one at a time as the maximum-energy path whose bin moves
/// by at most 2 between consecutive frames; each extracted ridge is notched
/// out (3 bins) before the next pass. Frames where the path carries no
/// energy report none.
std::vector<RidgeTrack> ridge_extract(const TFMatrix& tf, std::size_t n_ridges);

}  // namespace mrct
