#include "mrct/combine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mrct/parallel.hpp"

namespace mrct {

Selection select_parameters(const Signal& signal, std::size_t m, double C_sigma, const UniformAxis& freq_axis,
                            const UniformAxis& cr_axis) {
    if (m < 1) throw ValidationError("m must be at least 1");
    if (!(C_sigma > 0.0) || !std::isfinite(C_sigma)) throw ValidationError("C_sigma must be finite and > 0");

    const CRSpectrum spec = cft(signal, freq_axis, cr_axis);
    const std::size_t K = freq_axis.count;
    const std::size_t Q = cr_axis.count;
    std::vector<char> masked(K * Q, 0);
    const double sigma_max = signal.duration() / 4.0;
    const double zero_band = cr_axis.count > 1 ? 0.5 * cr_axis.step : 0.0;

    PeakList found;
    std::vector<WindowParams> entries;
    while (entries.size() < m) {
        double best = 0.0;
        std::size_t bq = 0, bk = 0;
        bool any = false;
        for (std::size_t q = 0; q < Q; ++q) {
            for (std::size_t k = 0; k < K; ++k) {
                if (masked[q * K + k]) continue;
                const double v = spec.at(q, k);
                if (v > best) {
                    best = v;
                    bq = q;
                    bk = k;
                    any = true;
                }
            }
        }
        if (!any) break;

        const std::size_t q_lo = bq >= kPeakExclusionCrBins ? bq - kPeakExclusionCrBins : 0;
        const std::size_t q_hi = std::min(Q - 1, bq + kPeakExclusionCrBins);
        const std::size_t k_lo = bk >= kPeakExclusionFreqBins ? bk - kPeakExclusionFreqBins : 0;
        const std::size_t k_hi = std::min(K - 1, bk + kPeakExclusionFreqBins);
        for (std::size_t q = q_lo; q <= q_hi; ++q) {
            for (std::size_t k = k_lo; k <= k_hi; ++k) masked[q * K + k] = 1;
        }

        const double beta = cr_axis[bq];
        const bool repeat = std::any_of(entries.begin(), entries.end(), [&](const WindowParams& w) { return w.beta() == beta; });
        if (repeat) continue;

        found.peaks.push_back({freq_axis[bk], beta, best});
        double sigma = sigma_max;
        if (std::abs(beta) > zero_band) {
            sigma = std::min(sigma_max, C_sigma / std::sqrt(kTwoPi * std::abs(beta)));
        }
        entries.emplace_back(sigma, beta);
    }
    if (entries.empty()) throw ValidationError("CFT has no nonzero peak; signal is silent on the given axes");
    const bool incomplete = entries.size() < m;
    return Selection{ParameterSet(std::move(entries)), std::move(found), incomplete};
}

std::vector<double> sigma_schedule(double sigma1, std::size_t m, SigmaMode mode, double delta) {
    if (!(sigma1 > 0.0) || !std::isfinite(sigma1)) throw ValidationError("sigma1 must be finite and > 0");
    if (m < 1) throw ValidationError("m must be at least 1");
    if (mode == SigmaMode::additive && (!(delta > 0.0) || !std::isfinite(delta))) {
        throw ValidationError("additive schedule needs delta > 0");
    }
    std::vector<double> out(m);
    for (std::size_t i = 1; i <= m; ++i) {
        const double di = static_cast<double>(i);
        out[i - 1] = mode == SigmaMode::multiplicative ? di * sigma1 : sigma1 + di * delta;
    }
    return out;
}

double magnitude_floor(std::span<const TFMatrix> cts) {
    double peak = 0.0;
    for (const auto& c : cts) peak = std::max(peak, c.max_abs());
    return 1e-12 * peak;
}

TFMatrix geometric_mean(std::span<const TFMatrix> mags, double floor) {
    if (mags.empty()) throw ValidationError("geometric mean of an empty list");
    const TFGrid& grid = mags.front().grid();
    for (const auto& c : mags) {
        if (!(c.grid() == grid)) throw ValidationError("matrices do not share one grid");
    }
    const std::size_t size = grid.n_freqs() * grid.n_times();
    const std::size_t cols = grid.n_times();
    std::vector<double> out(size);
    if (mags.size() == 1) {
        for (std::size_t i = 0; i < size; ++i) out[i] = mags.front().abs(i / cols, i % cols);
        return TFMatrix::magnitude(grid, std::move(out));
    }
    if (floor <= 0.0) {
        // Every input is identically zero.
        return TFMatrix::magnitude(grid, std::move(out));
    }
    const double inv_m = 1.0 / static_cast<double>(mags.size());
    parallel_for(size, [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double acc = 0.0;
            for (const auto& c : mags) acc += std::log(std::max(c.abs(i / cols, i % cols), floor));
            out[i] = std::exp(acc * inv_m);
        }
    });
    return TFMatrix::magnitude(grid, std::move(out));
}

MrctResult mrct(const Signal& signal, const ParameterSet& params, const TFGrid& grid) {
    std::vector<TFMatrix> cts;
    cts.reserve(params.size());
    for (const auto& wp : params) cts.push_back(ct(signal, wp, grid));
    const double floor = magnitude_floor(cts);
    TFMatrix mag = geometric_mean(cts, floor);
    return MrctResult{std::move(mag), std::move(cts), floor};
}

GklValue gkl_objective(const TFMatrix& P, std::span<const TFMatrix> cts) {
    for (const auto& c : cts) {
        if (!(c.grid() == P.grid())) throw ValidationError("gkl_objective: matrices do not share one grid");
    }
    const double floor = magnitude_floor(cts);
    const TFGrid& grid = P.grid();
    const double cell = grid.dt() * grid.domega();
    GklValue result;
    double acc = 0.0;
    for (std::size_t k = 0; k < grid.n_freqs(); ++k) {
        for (std::size_t n = 0; n < grid.n_times(); ++n) {
            const double p = P.abs(k, n);
            for (const auto& c : cts) {
                const double ci = std::max(c.abs(k, n), floor);
                if (ci == 0.0) {
                    if (p > 0.0) result.infinite = true;
                    continue;
                }
                acc += (p > 0.0 ? p * std::log(p / ci) : 0.0) - p + ci;
            }
        }
    }
    result.value = result.infinite ? std::numeric_limits<double>::infinity() : acc * cell;
    return result;
}

}  // namespace mrct
