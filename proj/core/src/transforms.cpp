#include "mrct/transforms.hpp"

#include <cmath>
#include <functional>

#include "lag_spectrum.hpp"
#include "mrct/parallel.hpp"
#include "mrct/window_geometry.hpp"

namespace mrct {

namespace {

constexpr double kTruncation = 5.0;

long half_support(double sigma, double fs) {
    if (2.0 * kTruncation * sigma * fs < 3.0) {
        throw ValidationError("window sigma is too small for the sample rate (support under 3 samples)");
    }
    return static_cast<long>(std::floor(kTruncation * sigma * fs));
}

std::vector<std::size_t> frame_centres(const Signal& signal, const TFGrid& grid) {
    std::vector<std::size_t> idx(grid.n_times());
    for (std::size_t n = 0; n < idx.size(); ++n) idx[n] = signal.index_of_instant(grid.time(n));
    return idx;
}

// values[k][n] = sum_m s[c_n + m] taps[m] exp(-j w_k m / fs), m in [-M, M].
TFMatrix correlate(const Signal& signal, const SampledWindow& taps, const TFGrid& grid) {
    const auto centres = frame_centres(signal, grid);
    const long M = taps.half_length;
    const detail::LagSpectrum spectrum(grid.freqs(), 1.0 / signal.fs(), -M, M);
    const std::size_t K = grid.n_freqs();
    const std::size_t T = grid.n_times();
    const long N = static_cast<long>(signal.size());
    std::vector<cplx> values(K * T);

    parallel_for(T, [&](std::size_t begin, std::size_t end) {
        auto ws = spectrum.make_workspace();
        std::vector<cplx> x(spectrum.length());
        std::vector<cplx> col(K);
        for (std::size_t n = begin; n < end; ++n) {
            const long c = static_cast<long>(centres[n]);
            for (long m = -M; m <= M; ++m) {
                const long i = c + m;
                x[static_cast<std::size_t>(m + M)] = (i >= 0 && i < N) ? signal[static_cast<std::size_t>(i)] * taps.at(m) : cplx{};
            }
            spectrum.evaluate(x, col, ws);
            for (std::size_t k = 0; k < K; ++k) values[k * T + n] = col[k];
        }
    });
    return TFMatrix::complex(grid, std::move(values));
}

// Taps of the CT kernel g(u) exp(-j beta u^2 / 2) w(u) / fs at u = m / fs.
SampledWindow ct_taps(const WindowParams& wp, double fs, const std::function<double(double)>& weight) {
    const long M = half_support(wp.sigma(), fs);
    SampledWindow w;
    w.half_length = M;
    w.fs = fs;
    w.samples.resize(static_cast<std::size_t>(2 * M + 1));
    for (long m = -M; m <= M; ++m) {
        const double u = static_cast<double>(m) / fs;
        w.samples[static_cast<std::size_t>(m + M)] = std::conj(chirp_window(wp, u)) * (weight(u) / fs);
    }
    return w;
}

}  // namespace

cplx chirp_window(const WindowParams& wp, double t) {
    const double s = wp.sigma();
    const double norm = 1.0 / std::sqrt(std::sqrt(kTwoPi) * s);
    return std::polar(norm * std::exp(-t * t / (2.0 * s * s)), 0.5 * wp.beta() * t * t);
}

TFMatrix ct(const Signal& signal, const WindowParams& wp, const TFGrid& grid) {
    return correlate(signal, ct_taps(wp, signal.fs(), [](double) { return 1.0; }), grid);
}

TFMatrix stft(const Signal& signal, double sigma, const TFGrid& grid) {
    return ct(signal, WindowParams(sigma, 0.0), grid);
}

TFMatrix ct_t_weighted(const Signal& signal, const WindowParams& wp, const TFGrid& grid) {
    return correlate(signal, ct_taps(wp, signal.fs(), [](double u) { return u; }), grid);
}

SampledWindow rotation_window(const WindowParams& wp, double fs) {
    if (!(fs > 0.0) || !std::isfinite(fs)) throw ValidationError("sample rate must be finite and > 0");
    const WindowParams rot = rotated_params(wp);
    const long M = half_support(rot.sigma(), fs);
    SampledWindow w;
    w.half_length = M;
    w.fs = fs;
    w.samples.resize(static_cast<std::size_t>(2 * M + 1));
    // Evaluated from the rotation formula itself rather than through rot.
    const double s = wp.sigma();
    const double b = wp.beta();
    const double q = 1.0 + s * s * b * b;
    const double var = q / (s * (1.0 + b * b));
    const double norm = 1.0 / std::sqrt(std::sqrt(kTwoPi) * std::sqrt(var));
    const double decay = s * (1.0 + b * b) / (2.0 * q);
    const double sweep = b * (1.0 - s * s) / (2.0 * q);
    for (long m = -M; m <= M; ++m) {
        const double t = static_cast<double>(m) / fs;
        w.samples[static_cast<std::size_t>(m + M)] = std::polar(norm * std::exp(-decay * t * t), sweep * t * t);
    }
    return w;
}

TFMatrix rotation_ct(const Signal& signal, const WindowParams& wp, const TFGrid& grid) {
    SampledWindow taps = rotation_window(wp, signal.fs());
    for (auto& v : taps.samples) v = std::conj(v) / signal.fs();
    return correlate(signal, taps, grid);
}

TFMatrix wvd(const Signal& signal, const TFGrid& grid) {
    if (signal.size() < 8) throw ValidationError("WVD needs at least 8 samples");
    const auto centres = frame_centres(signal, grid);
    const long N = static_cast<long>(signal.size());
    long L = 0;
    for (std::size_t c : centres) {
        const long lc = static_cast<long>(c);
        L = std::max(L, std::min(lc, N - 1 - lc));
    }
    const double fs = signal.fs();
    const detail::LagSpectrum spectrum(grid.freqs(), 2.0 / fs, -L, L);
    const std::size_t K = grid.n_freqs();
    const std::size_t T = grid.n_times();
    std::vector<double> values(K * T);

    parallel_for(T, [&](std::size_t begin, std::size_t end) {
        auto ws = spectrum.make_workspace();
        std::vector<cplx> x(spectrum.length());
        std::vector<cplx> col(K);
        for (std::size_t n = begin; n < end; ++n) {
            const long c = static_cast<long>(centres[n]);
            const long lc = std::min(c, N - 1 - c);
            std::fill(x.begin(), x.end(), cplx{});
            for (long m = -lc; m <= lc; ++m) {
                x[static_cast<std::size_t>(m + L)] =
                    signal[static_cast<std::size_t>(c + m)] * std::conj(signal[static_cast<std::size_t>(c - m)]) * (2.0 / fs);
            }
            spectrum.evaluate(x, col, ws);
            for (std::size_t k = 0; k < K; ++k) values[k * T + n] = col[k].real();
        }
    });
    return TFMatrix::real(grid, std::move(values));
}

CRSpectrum cft(const Signal& signal, const UniformAxis& freq_axis, const UniformAxis& cr_axis) {
    if (freq_axis.count == 0 || cr_axis.count == 0) throw ValidationError("CFT axes must be non-empty");
    if (!(freq_axis.step > 0.0) || !(cr_axis.step > 0.0 || cr_axis.count == 1)) {
        throw ValidationError("CFT axes need positive steps");
    }
    const double fs = signal.fs();
    const long N = static_cast<long>(signal.size());
    const detail::LagSpectrum spectrum(freq_axis, 1.0 / fs, 0, N - 1);
    const std::size_t K = freq_axis.count;
    CRSpectrum out{freq_axis, cr_axis, std::vector<double>(K * cr_axis.count)};

    parallel_for(cr_axis.count, [&](std::size_t begin, std::size_t end) {
        auto ws = spectrum.make_workspace();
        std::vector<cplx> x(spectrum.length());
        std::vector<cplx> row(K);
        for (std::size_t q = begin; q < end; ++q) {
            const double beta = cr_axis[q];
            for (long n = 0; n < N; ++n) {
                const double t = signal.time(static_cast<std::size_t>(n));
                x[static_cast<std::size_t>(n)] = signal[static_cast<std::size_t>(n)] * std::polar(1.0 / fs, -0.5 * beta * t * t);
            }
            spectrum.evaluate(x, row, ws);
            // exp(-j w t0) is a unit-modulus factor per column, so it drops out of |.|.
            for (std::size_t k = 0; k < K; ++k) out.mag[q * K + k] = std::abs(row[k]);
        }
    });
    return out;
}

TFMatrix closed_form_chirp_ct(double A, double a, double b, const WindowParams& wp, const TFGrid& grid) {
    const double s2 = wp.sigma() * wp.sigma();
    const cplx D(1.0, s2 * (wp.beta() - b));
    const cplx gain = std::sqrt(std::sqrt(kTwoPi) * wp.sigma() / D);
    const std::size_t K = grid.n_freqs();
    const std::size_t T = grid.n_times();
    std::vector<cplx> values(K * T);
    for (std::size_t n = 0; n < T; ++n) {
        const double t = grid.time(n);
        const cplx f = A * std::polar(1.0, a * t + 0.5 * b * t * t);
        const double inst = a + b * t;
        for (std::size_t k = 0; k < K; ++k) {
            const double d = grid.freq(k) - inst;
            values[k * T + n] = f * gain * std::exp(-s2 * d * d / (2.0 * D));
        }
    }
    return TFMatrix::complex(grid, std::move(values));
}

}  // namespace mrct
