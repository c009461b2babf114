#pragma once

// Slices, main-lobe widths, peak counting and concentration measures.

#include <cstddef>
#include <filesystem>
#include <vector>

#include "mrct/types.hpp"

namespace mrct {

struct SliceCurve {
    std::vector<double> axis;    ///< seconds or rad/s
    std::vector<double> values;  ///< magnitudes
};

/// Magnitude column of the frame nearest t.
SliceCurve slice_at_time(const TFMatrix& tf, double t);

/// Magnitude row of the bin nearest omega (rad/s).
SliceCurve slice_at_freq(const TFMatrix& tf, double omega);

/// Width of the contiguous region around the maximum that stays at or above
/// level * max, with linearly interpolated crossings.
double mainlobe_width(const SliceCurve& curve, double level);

struct CurvePeak {
    std::size_t index = 0;
    double position = 0.0;
    double value = 0.0;
    double prominence = 0.0;
};

struct PeakRule {
    double rel_prominence = 0.5;     ///< fraction of the band maximum
    std::size_t min_separation = 3;  ///< bins
};

/// Local maxima with axis value in [lo, hi] whose prominence within the band
/// reaches rel_prominence of the band maximum; of two peaks closer than
/// min_separation only the larger is kept. Sorted by position.
std::vector<CurvePeak> find_peaks(const SliceCurve& curve, double lo, double hi, const PeakRule& rule = {});

/// (1 / (1 - alpha)) log2 sum p^alpha, p = |tf|^2 / sum |tf|^2.
double renyi_entropy(const TFMatrix& tf, double alpha);

/// Two-column CSV (axis,value).
void write_curve_csv(const std::filesystem::path& path, const SliceCurve& curve);

}  // namespace mrct
