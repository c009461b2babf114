#include "mrct/types.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mrct {

namespace {

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_axis(const UniformAxis& axis, const char* name) {
    if (axis.count == 0) {
        throw ValidationError(std::string(name) + " axis is empty");
    }
    if (!std::isfinite(axis.start) || !std::isfinite(axis.step) || !(axis.step > 0.0)) {
        throw ValidationError(std::string(name) + " axis needs a finite positive step");
    }
}

}  // namespace

Signal::Signal(std::vector<cplx> samples, double fs, double t0)
    : samples_(std::move(samples)), fs_(fs), t0_(t0) {
    if (samples_.empty()) {
        throw ValidationError("signal has no samples");
    }
    if (!(fs_ > 0.0) || !std::isfinite(fs_)) {
        throw ValidationError("sample rate must be finite and > 0");
    }
    if (!std::isfinite(t0_)) {
        throw ValidationError("start time must be finite");
    }
    if (!std::all_of(samples_.begin(), samples_.end(), finite)) {
        throw ValidationError("signal contains non-finite samples");
    }
}

Signal Signal::from_real(std::span<const double> samples, double fs, double t0) {
    std::vector<cplx> z(samples.begin(), samples.end());
    return Signal(std::move(z), fs, t0);
}

bool Signal::is_real() const {
    return std::all_of(samples_.begin(), samples_.end(), [](cplx z) { return z.imag() == 0.0; });
}

std::size_t Signal::index_of_instant(double t) const {
    const double pos = (t - t0_) * fs_;
    const double idx = std::round(pos);
    if (std::abs(pos - idx) > 1e-6 || idx < 0.0 || idx >= static_cast<double>(samples_.size())) {
        throw ValidationError("time " + std::to_string(t) + " is not a sample instant of the signal");
    }
    return static_cast<std::size_t>(idx);
}

std::size_t UniformAxis::nearest(double x) const {
    const double pos = std::round((x - start) / step);
    if (pos <= 0.0) return 0;
    if (pos >= static_cast<double>(count - 1)) return count - 1;
    return static_cast<std::size_t>(pos);
}

bool UniformAxis::contains(double x) const {
    const double half = 0.5 * step;
    return x >= start - half && x <= back() + half;
}

std::vector<double> UniformAxis::values() const {
    std::vector<double> v(count);
    for (std::size_t i = 0; i < count; ++i) v[i] = (*this)[i];
    return v;
}

UniformAxis UniformAxis::from_values(std::span<const double> values) {
    if (values.size() < 2) {
        throw ValidationError("an axis needs at least two values to define its spacing");
    }
    const double step = values[1] - values[0];
    if (!(step > 0.0)) {
        throw ValidationError("axis values must be strictly increasing");
    }
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double expected = values[0] + step * static_cast<double>(i);
        const double scale = std::max({std::abs(values[i]), std::abs(expected), step});
        if (std::abs(values[i] - expected) > 1e-12 * scale * static_cast<double>(values.size())) {
            throw ValidationError("axis values are not uniformly spaced");
        }
    }
    return UniformAxis{values[0], step, values.size()};
}

TFGrid::TFGrid(UniformAxis times, UniformAxis freqs) : times_(times), freqs_(freqs) {
    check_axis(times_, "time");
    check_axis(freqs_, "frequency");
}

bool operator==(const TFGrid& a, const TFGrid& b) {
    auto same = [](const UniformAxis& x, const UniformAxis& y) {
        return x.count == y.count && x.start == y.start && x.step == y.step;
    };
    return same(a.times_, b.times_) && same(a.freqs_, b.freqs_);
}

TFGrid make_tf_grid(const Signal& signal, std::size_t n_freq_bins, double f_max_hz) {
    if (n_freq_bins < 2) {
        throw ValidationError("n_freq_bins must be at least 2");
    }
    if (!(f_max_hz > 0.0)) {
        throw ValidationError("f_max must be > 0");
    }
    if (f_max_hz > 0.5 * signal.fs() * (1.0 + 1e-12)) {
        throw ValidationError("f_max exceeds the Nyquist frequency fs/2");
    }
    const UniformAxis times{signal.t0(), 1.0 / signal.fs(), signal.size()};
    const UniformAxis freqs{0.0, hz_to_rad(f_max_hz) / static_cast<double>(n_freq_bins - 1), n_freq_bins};
    return TFGrid(times, freqs);
}

TFMatrix TFMatrix::complex(TFGrid grid, std::vector<cplx> values) {
    if (values.size() != grid.n_freqs() * grid.n_times()) {
        throw ValidationError("matrix size does not match its grid");
    }
    if (!std::all_of(values.begin(), values.end(), finite)) {
        throw ValidationError("matrix contains non-finite values");
    }
    TFMatrix m(std::move(grid), Kind::complex);
    m.complex_ = std::move(values);
    return m;
}

TFMatrix TFMatrix::magnitude(TFGrid grid, std::vector<double> values) {
    if (values.size() != grid.n_freqs() * grid.n_times()) {
        throw ValidationError("matrix size does not match its grid");
    }
    for (double v : values) {
        if (!std::isfinite(v)) throw ValidationError("matrix contains non-finite values");
        if (v < 0.0) throw ValidationError("magnitude matrix contains negative values");
    }
    TFMatrix m(std::move(grid), Kind::magnitude);
    m.real_ = std::move(values);
    return m;
}

TFMatrix TFMatrix::real(TFGrid grid, std::vector<double> values) {
    if (values.size() != grid.n_freqs() * grid.n_times()) {
        throw ValidationError("matrix size does not match its grid");
    }
    if (!std::all_of(values.begin(), values.end(), [](double v) { return std::isfinite(v); })) {
        throw ValidationError("matrix contains non-finite values");
    }
    TFMatrix m(std::move(grid), Kind::real);
    m.real_ = std::move(values);
    return m;
}

TFMatrix TFMatrix::zeros(TFGrid grid, Kind kind) {
    const std::size_t n = grid.n_freqs() * grid.n_times();
    TFMatrix m(std::move(grid), kind);
    if (kind == Kind::complex) {
        m.complex_.assign(n, cplx{});
    } else {
        m.real_.assign(n, 0.0);
    }
    return m;
}

cplx TFMatrix::value(std::size_t k, std::size_t n) const {
    const std::size_t i = k * cols() + n;
    return kind_ == Kind::complex ? complex_[i] : cplx(real_[i], 0.0);
}

double TFMatrix::abs(std::size_t k, std::size_t n) const {
    const std::size_t i = k * cols() + n;
    return kind_ == Kind::complex ? std::abs(complex_[i]) : std::abs(real_[i]);
}

TFMatrix TFMatrix::abs() const {
    std::vector<double> out;
    if (kind_ == Kind::complex) {
        out.resize(complex_.size());
        std::transform(complex_.begin(), complex_.end(), out.begin(), [](cplx z) { return std::abs(z); });
    } else {
        out.resize(real_.size());
        std::transform(real_.begin(), real_.end(), out.begin(), [](double v) { return std::abs(v); });
    }
    TFMatrix m(grid_, Kind::magnitude);
    m.real_ = std::move(out);
    return m;
}

double TFMatrix::max_abs() const {
    double best = 0.0;
    if (kind_ == Kind::complex) {
        for (cplx z : complex_) best = std::max(best, std::abs(z));
    } else {
        for (double v : real_) best = std::max(best, std::abs(v));
    }
    return best;
}

WindowParams::WindowParams(double sigma, double beta) : sigma_(sigma), beta_(beta) {
    if (!std::isfinite(sigma_) || !(sigma_ > 0.0)) {
        throw ValidationError("window sigma must be finite and > 0");
    }
    if (!std::isfinite(beta_)) {
        throw ValidationError("window beta must be finite");
    }
}

ParameterSet::ParameterSet(std::vector<WindowParams> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) {
        throw ValidationError("parameter set needs at least one entry");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        for (std::size_t j = i + 1; j < entries_.size(); ++j) {
            if (entries_[i] == entries_[j]) {
                throw ValidationError("parameter set contains duplicate (sigma, beta) entries");
            }
        }
    }
}

}  // namespace mrct
