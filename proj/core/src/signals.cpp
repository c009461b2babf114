#include "mrct/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "fft.hpp"

namespace mrct {

namespace {

std::size_t sample_count(double fs, double duration) {
    if (!(fs > 0.0) || !std::isfinite(fs)) {
        throw ValidationError("sample rate must be finite and > 0");
    }
    if (!(duration > 0.0) || !std::isfinite(duration)) {
        throw ValidationError("duration must be finite and > 0");
    }
    const double n = std::round(duration * fs);
    if (n < 1.0) {
        throw ValidationError("duration is shorter than one sample");
    }
    return static_cast<std::size_t>(n);
}

bool in_support(double t, double lo, double hi, double fs) {
    const double eps = 1e-9 / fs;
    return t >= lo - eps && t <= hi + eps;
}

std::vector<cplx> white_noise(std::size_t n, bool real, double power, std::uint64_t seed) {
    std::vector<cplx> w(n);
    if (power == 0.0) return w;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    for (auto& z : w) {
        const double re = normal(rng);
        z = real ? cplx(re, 0.0) : cplx(re, normal(rng));
    }
    const double p = mean_power(w);
    const double scale = std::sqrt(power / p);
    for (auto& z : w) z *= scale;
    return w;
}

Signal sum_of(const std::vector<Signal>& parts) {
    std::vector<cplx> acc(parts.front().size());
    for (const auto& s : parts) {
        for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += s[i];
    }
    return Signal(std::move(acc), parts.front().fs(), parts.front().t0());
}

Mixture make_mixture(std::vector<Signal> components, std::vector<ComponentTruth> truth,
                     std::uint64_t seed, const NoiseOptions& opts) {
    Signal clean = sum_of(components);
    double ref = 0.0;
    if (opts.reference == SnrReference::mixture) {
        ref = mean_power(clean.samples());
    } else {
        for (const auto& c : components) ref += mean_power(c.samples());
        ref /= static_cast<double>(components.size());
    }
    std::vector<cplx> noise;
    if (std::isinf(opts.snr_db) && opts.snr_db > 0.0) {
        noise.assign(clean.size(), cplx{});
    } else {
        if (!std::isfinite(opts.snr_db)) throw ValidationError("snr_db must be finite or +inf");
        noise = white_noise(clean.size(), clean.is_real(), ref / std::pow(10.0, opts.snr_db / 10.0), seed);
    }
    std::vector<cplx> noisy(clean.size());
    for (std::size_t i = 0; i < noisy.size(); ++i) noisy[i] = clean[i] + noise[i];
    Signal noisy_sig(std::move(noisy), clean.fs(), clean.t0());
    return Mixture{std::move(noisy_sig), std::move(clean), std::move(noise), std::move(components),
                   std::move(truth)};
}

Signal real_samples(std::size_t n, double fs, const std::function<double(double)>& f) {
    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = f(static_cast<double>(i) / fs);
    return Signal(std::move(x), fs);
}

}  // namespace

ChirpSpec ChirpSpec::constant(double amplitude, double a, double b, double t_start, double t_end) {
    ChirpSpec s;
    s.amp = [amplitude](double) { return amplitude; };
    s.a = a;
    s.b = b;
    s.t_start = t_start;
    s.t_end = t_end;
    return s;
}

double mean_power(std::span<const cplx> x) {
    if (x.empty()) return 0.0;
    double acc = 0.0;
    for (cplx z : x) acc += std::norm(z);
    return acc / static_cast<double>(x.size());
}

Signal synth_chirp(const ChirpSpec& spec, double fs, double duration) {
    const std::size_t n = sample_count(fs, duration);
    if (!(spec.t_start < spec.t_end)) {
        throw ValidationError("chirp support needs t_start < t_end");
    }
    if (!std::isfinite(spec.a) || !std::isfinite(spec.b)) {
        throw ValidationError("chirp a and b must be finite");
    }
    if (!spec.amp) throw ValidationError("chirp amplitude envelope is empty");

    const double last = static_cast<double>(n - 1) / fs;
    const double lo = std::max(spec.t_start, 0.0);
    const double hi = std::min(spec.t_end, last);
    if (lo <= hi) {
        const double peak_if = std::max(std::abs(spec.a + spec.b * lo), std::abs(spec.a + spec.b * hi));
        if (!(peak_if < kPi * fs)) {
            throw ValidationError("chirp instantaneous frequency reaches the Nyquist limit pi*fs");
        }
    }

    std::vector<cplx> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = static_cast<double>(i) / fs;
        if (!in_support(t, spec.t_start, spec.t_end, fs)) continue;
        const double amp = spec.amp(t);
        if (!std::isfinite(amp)) throw ValidationError("chirp amplitude is not finite on its support");
        x[i] = std::polar(amp, spec.a * t + 0.5 * spec.b * t * t);
    }
    return Signal(std::move(x), fs);
}

Signal synth_impulse(const ImpulseSpec& spec, double fs, double duration) {
    const std::size_t n = sample_count(fs, duration);
    if (!std::isfinite(spec.amp)) throw ValidationError("impulse amplitude must be finite");
    if (!(spec.t0 >= 0.0 && spec.t0 < duration)) {
        throw ValidationError("impulse time lies outside the record");
    }
    const auto idx = std::min(static_cast<std::size_t>(std::llround(spec.t0 * fs)), n - 1);
    std::vector<cplx> x(n);
    x[idx] = spec.amp * fs;
    return Signal(std::move(x), fs);
}

std::vector<cplx> awgn(const Signal& signal, double snr_db, std::uint64_t seed) {
    if (std::isinf(snr_db) && snr_db > 0.0) {
        return std::vector<cplx>(signal.size());
    }
    if (!std::isfinite(snr_db)) throw ValidationError("snr_db must be finite or +inf");
    const double p = mean_power(signal.samples());
    if (p == 0.0) throw ValidationError("SNR is undefined for an all-zero signal");
    return white_noise(signal.size(), signal.is_real(), p / std::pow(10.0, snr_db / 10.0), seed);
}

Signal add_awgn(const Signal& signal, double snr_db, std::uint64_t seed) {
    const auto w = awgn(signal, snr_db, seed);
    std::vector<cplx> y(signal.size());
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = signal[i] + w[i];
    return Signal(std::move(y), signal.fs(), signal.t0());
}

Signal analytic(const Signal& signal) {
    if (!signal.is_real()) {
        throw ValidationError("analytic() needs a real-valued signal");
    }
    const std::size_t n = signal.size();
    auto spec = detail::dft(signal.samples(), detail::FftPlan::Direction::forward);
    const std::size_t half = n / 2;
    for (std::size_t k = 1; k < n; ++k) {
        if (k < half || (k == half && n % 2 == 1)) {
            spec[k] *= 2.0;
        } else if (k > half) {
            spec[k] = 0.0;
        }
    }
    auto z = detail::dft(spec, detail::FftPlan::Direction::inverse);
    const double inv = 1.0 / static_cast<double>(n);
    for (auto& v : z) v *= inv;
    return Signal(std::move(z), signal.fs(), signal.t0());
}

Mixture synth_example1(std::uint64_t seed) { return synth_example1(seed, NoiseOptions{10.0}); }

Mixture synth_example1(std::uint64_t seed, const NoiseOptions& noise) {
    constexpr double fs = 256.0;
    constexpr std::size_t n = 512;

    auto sine_chirp = [](double f0, double half_rate, double lo, double hi) {
        return [=](double t) {
            if (!in_support(t, lo, hi, fs)) return 0.0;
            return std::sin(kTwoPi * (f0 * t + half_rate * t * t));
        };
    };
    Signal c1 = analytic(real_samples(n, fs, sine_chirp(20.0, 40.0, 0.0, 1.0)));
    Signal c2 = analytic(real_samples(n, fs, sine_chirp(34.0, 40.0, 0.1, 0.78)));

    auto dft_chirp = [](double f0) {
        std::vector<cplx> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double t = static_cast<double>(i) / fs;
            x[i] = 0.02 * std::exp(cplx(0.0, kTwoPi * (f0 * t - 5.0 * t * t)));
        }
        auto X = detail::dft(x, detail::FftPlan::Direction::forward);
        const double unitary = 1.0 / std::sqrt(static_cast<double>(n));
        for (auto& v : X) v *= unitary;
        return Signal(std::move(X), fs);
    };
    Signal c3 = dft_chirp(430.0);
    Signal c4 = dft_chirp(445.0);

    std::vector<ComponentTruth> truth{
        {"chirp 20+80t Hz", [](double t) { return kTwoPi * (20.0 + 80.0 * t); }, 0.0, 1.0, std::nullopt},
        {"chirp 34+80t Hz", [](double t) { return kTwoPi * (34.0 + 80.0 * t); }, 0.1, 0.78, std::nullopt},
        {"DFT of 430 Hz chirp", {}, 0.0, 2.0, std::nullopt},
        {"DFT of 445 Hz chirp", {}, 0.0, 2.0, std::nullopt},
    };
    return make_mixture({c1, c2, c3, c4}, std::move(truth), seed, noise);
}

Mixture synth_example2(std::uint64_t seed) { return synth_example2(seed, NoiseOptions{8.0}); }

Mixture synth_example2(std::uint64_t seed, const NoiseOptions& noise) {
    constexpr double fs = 512.0;
    constexpr std::size_t n = 512;

    auto mode = [](double am_depth, double f0) {
        return [=](double t) {
            return (1.0 + am_depth * std::cos(20.0 * kPi * t)) *
                   std::cos(kTwoPi * (9.0 * std::sin(kTwoPi * t) + f0 * t));
        };
    };
    auto pulse = [](double tc) {
        return [=](double t) {
            const double d = t - tc;
            return 5.0 * std::exp(-10000.0 * kPi * d * d) * std::cos(340.0 * kPi * t);
        };
    };
    Signal c1 = analytic(real_samples(n, fs, mode(0.05, 80.0)));
    Signal c2 = analytic(real_samples(n, fs, mode(0.1, 115.0)));
    Signal c3 = analytic(real_samples(n, fs, pulse(0.46)));
    Signal c4 = analytic(real_samples(n, fs, pulse(0.52)));

    auto fm_law = [](double f0) {
        return [=](double t) { return kTwoPi * f0 + kTwoPi * 9.0 * kTwoPi * std::cos(kTwoPi * t); };
    };
    std::vector<ComponentTruth> truth{
        {"cosine FM mode around 80 Hz", fm_law(80.0), 0.0, 1.0, std::nullopt},
        {"cosine FM mode around 115 Hz", fm_law(115.0), 0.0, 1.0, std::nullopt},
        {"Gaussian pulse at 0.46 s", {}, 0.46, 0.46, 0.46},
        {"Gaussian pulse at 0.52 s", {}, 0.52, 0.52, 0.52},
    };
    return make_mixture({c1, c2, c3, c4}, std::move(truth), seed, noise);
}

Mixture synth_chirps_and_pulses() {
    constexpr double fs = 64.0;
    constexpr double duration = 8.0;
    constexpr double rate = 7.0;
    const double a1 = kTwoPi * 10.0;
    const double a2 = kTwoPi * 11.5;

    Signal c1 = synth_chirp(ChirpSpec::constant(1.0, a1, rate, 0.0, duration), fs, duration);
    Signal c2 = synth_chirp(ChirpSpec::constant(1.0, a2, rate, 0.0, duration), fs, duration);
    Signal c3 = synth_impulse({0.5, 3.8}, fs, duration);
    Signal c4 = synth_impulse({0.5, 4.2}, fs, duration);

    std::vector<ComponentTruth> truth{
        {"chirp 10 Hz", [=](double t) { return a1 + rate * t; }, 0.0, duration, std::nullopt},
        {"chirp 11.5 Hz", [=](double t) { return a2 + rate * t; }, 0.0, duration, std::nullopt},
        {"impulse at 3.8 s", {}, 3.8, 3.8, 3.8},
        {"impulse at 4.2 s", {}, 4.2, 4.2, 4.2},
    };
    NoiseOptions none;
    none.snr_db = std::numeric_limits<double>::infinity();
    return make_mixture({c1, c2, c3, c4}, std::move(truth), 0, none);
}

}  // namespace mrct
