#include "lag_spectrum.hpp"

#include <algorithm>
#include <cmath>

namespace mrct::detail {

namespace {
constexpr std::size_t kMaxFftLength = std::size_t{1} << 22;
constexpr std::size_t kMaxTableEntries = std::size_t{1} << 23;
constexpr std::size_t kResyncInterval = 64;

bool near_integer(double v, double rel) {
    return std::abs(v - std::round(v)) <= rel * std::max(1.0, std::abs(v));
}
}  // namespace

LagSpectrum::LagSpectrum(const UniformAxis& freqs, double tau, long lo, long hi)
    : freqs_(freqs), tau_(tau), lo_(lo), len_(static_cast<std::size_t>(hi - lo + 1)) {
    if (hi < lo) throw ValidationError("empty lag range");

    const double base = kTwoPi / (freqs_.step * tau_);
    const double offset = freqs_.start / freqs_.step;
    if (base >= 1.0 && near_integer(base, 1e-9) && near_integer(offset, 1e-9)) {
        const auto base_len = static_cast<std::size_t>(std::llround(base));
        const std::size_t reps = (len_ + base_len - 1) / base_len;
        const std::size_t fft_len = base_len * reps;
        if (fft_len <= kMaxFftLength) {
            fft_len_ = fft_len;
            plan_ = std::make_unique<FftPlan>(fft_len_, FftPlan::Direction::forward);
            const long k0 = std::lround(offset);
            const long L = static_cast<long>(fft_len_);
            bins_.resize(freqs_.count);
            for (std::size_t k = 0; k < freqs_.count; ++k) {
                long q = ((k0 + static_cast<long>(k)) * static_cast<long>(reps)) % L;
                if (q < 0) q += L;
                bins_[k] = static_cast<std::size_t>(q);
            }
            return;
        }
    }

    if (freqs_.count * len_ <= kMaxTableEntries) {
        table_.resize(freqs_.count * len_);
        for (std::size_t k = 0; k < freqs_.count; ++k) {
            const double w = freqs_[k] * tau_;
            cplx* row = table_.data() + k * len_;
            for (std::size_t i = 0; i < len_; ++i) {
                row[i] = std::polar(1.0, -w * static_cast<double>(lo_ + static_cast<long>(i)));
            }
        }
    }
}

void LagSpectrum::evaluate(std::span<const cplx> x, std::span<cplx> out, Workspace& ws) const {
    if (!plan_) {
        evaluate_direct(x, out);
        return;
    }
    const long L = static_cast<long>(fft_len_);
    std::fill(ws.in_.data(), ws.in_.data() + fft_len_, cplx{});
    for (std::size_t i = 0; i < len_; ++i) {
        long pos = (lo_ + static_cast<long>(i)) % L;
        if (pos < 0) pos += L;
        ws.in_[static_cast<std::size_t>(pos)] = x[i];
    }
    plan_->execute(ws.in_, ws.out_);
    for (std::size_t k = 0; k < bins_.size(); ++k) out[k] = ws.out_[bins_[k]];
}

void LagSpectrum::evaluate_direct(std::span<const cplx> x, std::span<cplx> out) const {
    if (!table_.empty()) {
        for (std::size_t k = 0; k < freqs_.count; ++k) {
            const cplx* row = table_.data() + k * len_;
            double re = 0.0;
            double im = 0.0;
            for (std::size_t i = 0; i < len_; ++i) {
                const double a = x[i].real(), b = x[i].imag();
                const double c = row[i].real(), d = row[i].imag();
                re += a * c - b * d;
                im += a * d + b * c;
            }
            out[k] = cplx(re, im);
        }
        return;
    }
    // Phasor recurrence, resynchronized periodically to bound drift.
    for (std::size_t k = 0; k < freqs_.count; ++k) {
        const double w = freqs_[k] * tau_;
        const cplx step = std::polar(1.0, -w);
        cplx acc{};
        cplx ph;
        for (std::size_t i = 0; i < len_; ++i) {
            if (i % kResyncInterval == 0) {
                ph = std::polar(1.0, -w * static_cast<double>(lo_ + static_cast<long>(i)));
            }
            acc += x[i] * ph;
            ph *= step;
        }
        out[k] = acc;
    }
}

}  // namespace mrct::detail
