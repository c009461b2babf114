#include "mrct/extract.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace mrct {

namespace {

constexpr long kRidgeJump = 2;
constexpr long kNotchHalfWidth = 1;

}  // namespace

double extraction_tolerance(const ExtractionConfig& cfg, const ParameterSet& params, const TFGrid& grid) {
    if (cfg.tolerance) {
        if (!(*cfg.tolerance > 0.0)) throw ValidationError("extraction tolerance must be > 0");
        return *cfg.tolerance;
    }
    if (cfg.mode == ToleranceMode::literal) return 0.5 * grid.domega();
    if (!(cfg.half_width_bins > 0.0)) throw ValidationError("half_width_bins must be > 0");
    double log_s2 = 0.0;
    for (const auto& wp : params) log_s2 += 2.0 * std::log(wp.sigma());
    return std::exp(log_s2 / static_cast<double>(params.size())) * cfg.half_width_bins * grid.domega();
}

MrifMatrix::MrifMatrix(TFGrid grid, std::vector<double> values, double gamma)
    : grid_(std::move(grid)), values_(std::move(values)), gamma_(gamma) {
    if (values_.size() != grid_.n_freqs() * grid_.n_times()) {
        throw ValidationError("MrIF size does not match its grid");
    }
    for (double v : values_) {
        if (std::isnan(v) || v < 0.0) throw ValidationError("MrIF values must be >= 0 or +inf");
    }
}

bool MrifMatrix::excluded(std::size_t k, std::size_t n) const { return std::isinf((*this)(k, n)); }

MrifMatrix mrif(const MrctResult& combined, std::span<const TFMatrix> t_weighted, const ExtractionConfig& cfg) {
    if (!(cfg.gamma_rel > 0.0 && cfg.gamma_rel < 1.0)) throw ValidationError("gamma_rel must lie in (0, 1)");
    if (t_weighted.size() != combined.cts.size()) {
        throw ValidationError("need one t-weighted CT per parameter-set entry");
    }
    const TFMatrix& M = combined.magnitude;
    const TFGrid& grid = M.grid();
    for (const auto& c : t_weighted) {
        if (!(c.grid() == grid)) throw ValidationError("t-weighted CTs do not share the MrCT grid");
    }
    const double gamma = cfg.gamma_rel * M.max_abs();
    const double floor = combined.floor;
    const double inv_m = 1.0 / static_cast<double>(t_weighted.size());
    const std::size_t K = grid.n_freqs();
    const std::size_t T = grid.n_times();
    std::vector<double> values(K * T, std::numeric_limits<double>::infinity());
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t n = 0; n < T; ++n) {
            const double den = M.real_value(k, n);
            if (!(den > gamma)) continue;
            double acc = 0.0;
            for (const auto& c : t_weighted) acc += std::log(std::max(c.abs(k, n), floor));
            values[k * T + n] = std::exp(acc * inv_m) / den;
        }
    }
    return MrifMatrix(grid, std::move(values), gamma);
}

MrifMatrix mrif(const Signal& signal, const ParameterSet& params, const TFGrid& grid, const ExtractionConfig& cfg) {
    const MrctResult combined = mrct(signal, params, grid);
    std::vector<TFMatrix> tw;
    tw.reserve(params.size());
    for (const auto& wp : params) tw.push_back(ct_t_weighted(signal, wp, grid));
    return mrif(combined, tw, cfg);
}

TFMatrix mrsect(const MrctResult& combined, const MrifMatrix& if_map, double tolerance) {
    if (!(tolerance > 0.0)) throw ValidationError("extraction tolerance must be > 0");
    const TFMatrix& M = combined.magnitude;
    if (!(if_map.grid() == M.grid())) throw ValidationError("MrIF and MrCT grids differ");
    const std::size_t K = M.rows();
    const std::size_t T = M.cols();
    std::vector<double> values(K * T, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t n = 0; n < T; ++n) {
            if (if_map(k, n) < tolerance) values[k * T + n] = M.real_value(k, n);
        }
    }
    return TFMatrix::magnitude(M.grid(), std::move(values));
}

TFMatrix mrsect(const Signal& signal, const ParameterSet& params, const TFGrid& grid, const ExtractionConfig& cfg) {
    const double tol = extraction_tolerance(cfg, params, grid);
    const MrctResult combined = mrct(signal, params, grid);
    std::vector<TFMatrix> tw;
    tw.reserve(params.size());
    for (const auto& wp : params) tw.push_back(ct_t_weighted(signal, wp, grid));
    const MrifMatrix if_map = mrif(combined, tw, cfg);
    return mrsect(combined, if_map, tol);
}

std::vector<RidgeTrack> ridge_extract(const TFMatrix& tf, std::size_t n_ridges) {
    if (n_ridges < 1) throw ValidationError("n_ridges must be at least 1");
    const TFGrid& grid = tf.grid();
    const long K = static_cast<long>(grid.n_freqs());
    const std::size_t T = grid.n_times();
    std::vector<double> work(static_cast<std::size_t>(K) * T);
    for (long k = 0; k < K; ++k) {
        for (std::size_t n = 0; n < T; ++n) work[static_cast<std::size_t>(k) * T + n] = tf.abs(static_cast<std::size_t>(k), n);
    }
    auto at = [&](long k, std::size_t n) -> double& { return work[static_cast<std::size_t>(k) * T + n]; };

    std::vector<RidgeTrack> ridges;
    std::vector<double> score(static_cast<std::size_t>(K)), next(static_cast<std::size_t>(K));
    std::vector<long> back(static_cast<std::size_t>(K) * T);
    for (std::size_t r = 0; r < n_ridges; ++r) {
        for (long k = 0; k < K; ++k) score[static_cast<std::size_t>(k)] = at(k, 0);
        for (std::size_t n = 1; n < T; ++n) {
            for (long k = 0; k < K; ++k) {
                long arg = k;
                double best = score[static_cast<std::size_t>(k)];
                for (long d = -kRidgeJump; d <= kRidgeJump; ++d) {
                    const long j = k + d;
                    if (j < 0 || j >= K) continue;
                    if (score[static_cast<std::size_t>(j)] > best) {
                        best = score[static_cast<std::size_t>(j)];
                        arg = j;
                    }
                }
                next[static_cast<std::size_t>(k)] = best + at(k, n);
                back[static_cast<std::size_t>(k) * T + n] = arg;
            }
            std::swap(score, next);
        }
        long k = static_cast<long>(std::max_element(score.begin(), score.end()) - score.begin());
        std::vector<long> path(T);
        for (std::size_t n = T; n-- > 0;) {
            path[n] = k;
            if (n > 0) k = back[static_cast<std::size_t>(k) * T + n];
        }

        RidgeTrack track;
        track.freq.resize(T);
        track.amplitude.assign(T, 0.0);
        for (std::size_t n = 0; n < T; ++n) {
            const long kb = path[n];
            const double v = at(kb, n);
            if (v > 0.0) {
                track.freq[n] = grid.freq(static_cast<std::size_t>(kb));
                track.amplitude[n] = v;
            }
            for (long d = -kNotchHalfWidth; d <= kNotchHalfWidth; ++d) {
                if (kb + d >= 0 && kb + d < K) at(kb + d, n) = 0.0;
            }
        }
        ridges.push_back(std::move(track));
    }
    return ridges;
}

}  // namespace mrct
