#pragma once

// Multi-resolution CT: parameter selection from CFT peaks, sigma schedules,
// geometric-mean combination and the generalized KL objective it minimizes.

#include <cstddef>
#include <span>
#include <vector>

#include "mrct/transforms.hpp"
#include "mrct/types.hpp"

namespace mrct {

struct Peak {
    double omega = 0.0;  ///< rad/s
    double beta = 0.0;   ///< rad/s^2
    double mag = 0.0;
};

/// Peaks sorted by descending magnitude.
struct PeakList {
    std::vector<Peak> peaks;
};

struct Selection {
    ParameterSet params;
    PeakList peaks;
    /// Fewer than the requested number of distinct chirp rates were found.
    bool incomplete = false;
};

/// Exclusion rectangle around each detected CFT peak, in bins.
inline constexpr std::size_t kPeakExclusionFreqBins = 3;
inline constexpr std::size_t kPeakExclusionCrBins = 3;

/// Picks the m largest CFT peaks by iterative argmax with a +-3 x +-3 bin
/// exclusion rectangle. Peaks repeating an already selected chirp rate are
/// skipped. Each peak maps to (C_sigma / sqrt(2 pi |beta|), beta) with
/// sigma capped at duration / 4; |beta| within half a chirp-rate step of 0
/// takes the cap.
Selection select_parameters(const Signal& signal, std::size_t m, double C_sigma, const UniformAxis& freq_axis,
                            const UniformAxis& cr_axis);

enum class SigmaMode { multiplicative, additive };

/// i * sigma1 (multiplicative) or sigma1 + i * delta (additive), i = 1..m.
std::vector<double> sigma_schedule(double sigma1, std::size_t m, SigmaMode mode, double delta = 0.0);

/// Floor applied to CT magnitudes before taking logs: 1e-12 of the largest
/// magnitude over all matrices (0 if they are all zero).
double magnitude_floor(std::span<const TFMatrix> cts);

struct MrctResult {
    /// (prod_i max(|C_i|, floor))^(1/m); exactly |C_1| when m = 1.
    TFMatrix magnitude;
    /// One complex CT per parameter-set entry, in order.
    std::vector<TFMatrix> cts;
    double floor = 0.0;
};

MrctResult mrct(const Signal& signal, const ParameterSet& params, const TFGrid& grid);

/// Geometric mean of magnitude matrices sharing one grid.
TFMatrix geometric_mean(std::span<const TFMatrix> mags, double floor);

struct GklValue {
    double value = 0.0;
    /// Some entry had C_i = 0 (after flooring) while P > 0.
    bool infinite = false;
};

/// sum_i sum_{t,w} [P ln(P / C_i) - P + C_i] dt dw, with 0 ln 0 = 0 and each
/// C_i floored by magnitude_floor(cts).
GklValue gkl_objective(const TFMatrix& P, std::span<const TFMatrix> cts);

}  // namespace mrct
