#include "mrct/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace mrct {

SliceCurve slice_at_time(const TFMatrix& tf, double t) {
    const TFGrid& grid = tf.grid();
    if (!grid.times().contains(t)) throw ValidationError("slice time lies outside the grid");
    const std::size_t n = grid.time_index(t);
    SliceCurve c{grid.freqs().values(), std::vector<double>(grid.n_freqs())};
    for (std::size_t k = 0; k < grid.n_freqs(); ++k) c.values[k] = tf.abs(k, n);
    return c;
}

SliceCurve slice_at_freq(const TFMatrix& tf, double omega) {
    const TFGrid& grid = tf.grid();
    if (!grid.freqs().contains(omega)) throw ValidationError("slice frequency lies outside the grid");
    const std::size_t k = grid.freq_index(omega);
    SliceCurve c{grid.times().values(), std::vector<double>(grid.n_times())};
    for (std::size_t n = 0; n < grid.n_times(); ++n) c.values[n] = tf.abs(k, n);
    return c;
}

double mainlobe_width(const SliceCurve& curve, double level) {
    if (!(level > 0.0 && level < 1.0)) throw ValidationError("level must lie in (0, 1)");
    const auto& v = curve.values;
    if (v.size() != curve.axis.size() || v.size() < 3) throw ValidationError("curve needs at least 3 points");
    const std::size_t peak = static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
    const double thr = level * v[peak];
    if (!(v[peak] > 0.0)) throw ValidationError("curve has no positive maximum");

    auto crossing = [&](std::size_t inside, std::size_t outside) {
        const double f = (v[inside] - thr) / (v[inside] - v[outside]);
        return curve.axis[inside] + f * (curve.axis[outside] - curve.axis[inside]);
    };
    std::size_t i = peak;
    while (i > 0 && v[i - 1] >= thr) --i;
    if (i == 0) throw ValidationError("main lobe extends past the start of the axis");
    const double left = crossing(i, i - 1);
    std::size_t j = peak;
    while (j + 1 < v.size() && v[j + 1] >= thr) ++j;
    if (j + 1 == v.size()) throw ValidationError("main lobe extends past the end of the axis");
    const double right = crossing(j, j + 1);
    return right - left;
}

std::vector<CurvePeak> find_peaks(const SliceCurve& curve, double lo, double hi, const PeakRule& rule) {
    const auto& v = curve.values;
    const auto& x = curve.axis;
    std::vector<CurvePeak> candidates;
    std::size_t first = v.size(), last = 0;
    double band_max = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (x[i] < lo || x[i] > hi) continue;
        first = std::min(first, i);
        last = i;
        band_max = std::max(band_max, v[i]);
    }
    if (!(band_max > 0.0) || first == last) return candidates;

    for (std::size_t i = std::max<std::size_t>(first, 1); i <= last && i + 1 < v.size(); ++i) {
        if (!(v[i] > v[i - 1] && v[i] >= v[i + 1])) continue;
        // Prominence: height above the higher of the two lowest points reached
        // before meeting higher ground (or the band edge) on either side.
        double left_min = v[i];
        for (std::size_t j = i; j-- > first;) {
            if (v[j] > v[i]) break;
            left_min = std::min(left_min, v[j]);
        }
        double right_min = v[i];
        for (std::size_t j = i + 1; j <= last; ++j) {
            if (v[j] > v[i]) break;
            right_min = std::min(right_min, v[j]);
        }
        const double prominence = v[i] - std::max(left_min, right_min);
        if (prominence >= rule.rel_prominence * band_max) candidates.push_back({i, x[i], v[i], prominence});
    }
    std::sort(candidates.begin(), candidates.end(), [](const CurvePeak& a, const CurvePeak& b) { return a.value > b.value; });
    std::vector<CurvePeak> kept;
    for (const auto& c : candidates) {
        const bool close = std::any_of(kept.begin(), kept.end(), [&](const CurvePeak& k) {
            const std::size_t d = k.index > c.index ? k.index - c.index : c.index - k.index;
            return d < rule.min_separation;
        });
        if (!close) kept.push_back(c);
    }
    std::sort(kept.begin(), kept.end(), [](const CurvePeak& a, const CurvePeak& b) { return a.index < b.index; });
    return kept;
}

double renyi_entropy(const TFMatrix& tf, double alpha) {
    if (!(alpha > 0.0) || alpha == 1.0 || !std::isfinite(alpha)) {
        throw ValidationError("Renyi order must be > 0 and != 1");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < tf.rows(); ++k) {
        for (std::size_t n = 0; n < tf.cols(); ++n) total += std::norm(tf.value(k, n));
    }
    if (!(total > 0.0)) throw ValidationError("Renyi entropy of an all-zero matrix");
    double acc = 0.0;
    for (std::size_t k = 0; k < tf.rows(); ++k) {
        for (std::size_t n = 0; n < tf.cols(); ++n) {
            const double p = std::norm(tf.value(k, n)) / total;
            if (p > 0.0) acc += std::pow(p, alpha);
        }
    }
    return std::log2(acc) / (1.0 - alpha);
}

void write_curve_csv(const std::filesystem::path& path, const SliceCurve& curve) {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (f == nullptr) throw IoError("cannot write " + path.string());
    for (std::size_t i = 0; i < curve.axis.size(); ++i) std::fprintf(f, "%.17g,%.17g\n", curve.axis[i], curve.values[i]);
    const bool failed = std::ferror(f) != 0;
    if (std::fclose(f) != 0 || failed) throw IoError("error while writing " + path.string());
}

}  // namespace mrct
