#pragma once

// Test-signal synthesis, calibrated noise and analytic-signal conversion.

#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "mrct/types.hpp"

namespace mrct {

/// Amplitude envelope A(t), t in seconds.
using Envelope = std::function<double(double)>;

/// A(t) * exp(j(a t + b t^2 / 2)) on [t_start, t_end], zero elsewhere.
struct ChirpSpec {
    Envelope amp = [](double) { return 1.0; };
    double a = 0.0;  ///< rad/s
    double b = 0.0;  ///< rad/s^2
    double t_start = 0.0;
    double t_end = std::numeric_limits<double>::infinity();

    static ChirpSpec constant(double amplitude, double a, double b, double t_start, double t_end);
};

/// A_1 * delta(t - t0).
struct ImpulseSpec {
    double amp = 1.0;
    double t0 = 0.0;
};

Signal synth_chirp(const ChirpSpec& spec, double fs, double duration);

/// Discrete delta: the sample nearest t0 holds amp * fs so that the
/// Riemann sum of the record equals amp.
Signal synth_impulse(const ImpulseSpec& spec, double fs, double duration);

/// Ground truth for one synthesized component.
struct ComponentTruth {
    std::string label;
    /// Instantaneous frequency in rad/s; empty for transients.
    std::function<double(double)> inst_freq;
    double t_start = 0.0;
    double t_end = 0.0;
    /// Energy centre of transient components.
    std::optional<double> center_time;
};

/// What the SNR of a synthesized mixture is measured against.
enum class SnrReference {
    mixture,         ///< mean power of the whole clean mixture
    mean_component,  ///< average of the per-component mean powers
};

struct NoiseOptions {
    double snr_db = 10.0;
    SnrReference reference = SnrReference::mixture;
};

/// Noisy mixture with its exact decomposition: noisy[n] = clean[n] + noise[n].
struct Mixture {
    Signal noisy;
    Signal clean;
    std::vector<cplx> noise;
    std::vector<Signal> components;
    std::vector<ComponentTruth> truth;
};

/// Two close linear chirps plus two transient components built from the
/// DFT of fast chirps; fs = 256 Hz, 2 s, SNR 10 dB by default. Returned in
/// analytic form.
Mixture synth_example1(std::uint64_t seed);
Mixture synth_example1(std::uint64_t seed, const NoiseOptions& noise);

/// Two sinusoidally frequency-modulated modes plus two narrow Gaussian
/// pulses; fs = 512 Hz, 1 s, SNR 8 dB by default. Returned in analytic form.
Mixture synth_example2(std::uint64_t seed);
Mixture synth_example2(std::uint64_t seed, const NoiseOptions& noise);

/// Two parallel slow chirps (rate 7 rad/s^2, 1.5 Hz apart) and two impulses
/// 0.4 s apart; fs = 64 Hz, 8 s, noiseless. Separating both pairs at once
/// is beyond any single Gaussian window.
Mixture synth_chirps_and_pulses();

/// White Gaussian noise whose empirical mean power is exactly
/// mean|signal|^2 / 10^(snr_db/10). Real when the signal is real.
/// snr_db = +inf yields zeros.
std::vector<cplx> awgn(const Signal& signal, double snr_db, std::uint64_t seed);

/// signal + awgn(signal, snr_db, seed).
Signal add_awgn(const Signal& signal, double snr_db, std::uint64_t seed);

/// Discrete analytic signal: negative-frequency DFT bins zeroed, interior
/// positive bins doubled. Input must be real.
Signal analytic(const Signal& signal);

/// Mean squared magnitude.
double mean_power(std::span<const cplx> x);

}  // namespace mrct
