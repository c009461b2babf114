#pragma once

// Shared domain types: signals, uniform axes, time-frequency grids and
// matrices, window parameters.
//
// Units: time in seconds, frequency in rad/s, chirp rate in rad/s^2. Hz and
// Hz/s only appear at the CLI and file boundaries.

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace mrct {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Thrown when an argument violates a documented precondition.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Thrown for unreadable, unwritable or malformed files.
class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline double hz_to_rad(double hz) { return kTwoPi * hz; }
inline double rad_to_hz(double rad) { return rad / kTwoPi; }

/// Uniformly sampled complex time series.
class Signal {
public:
    Signal(std::vector<cplx> samples, double fs, double t0 = 0.0);

    static Signal from_real(std::span<const double> samples, double fs, double t0 = 0.0);

    std::span<const cplx> samples() const { return samples_; }
    const cplx& operator[](std::size_t n) const { return samples_[n]; }
    std::size_t size() const { return samples_.size(); }
    double fs() const { return fs_; }
    double t0() const { return t0_; }
    double dt() const { return 1.0 / fs_; }
    double duration() const { return static_cast<double>(samples_.size()) / fs_; }
    double time(std::size_t n) const { return t0_ + static_cast<double>(n) / fs_; }

    /// True when every imaginary part is exactly zero.
    bool is_real() const;

    /// Sample index whose instant equals `t`; throws if `t` is not a sample
    /// instant of this signal (within 1e-6 of a sample period).
    std::size_t index_of_instant(double t) const;

private:
    std::vector<cplx> samples_;
    double fs_;
    double t0_;
};

/// `count` points start, start + step, ...
struct UniformAxis {
    double start = 0.0;
    double step = 1.0;
    std::size_t count = 0;

    double operator[](std::size_t i) const { return start + step * static_cast<double>(i); }
    double back() const { return (*this)[count - 1]; }

    /// Nearest index, clamped to the axis.
    std::size_t nearest(double x) const;
    bool contains(double x) const;
    std::vector<double> values() const;

    /// Builds an axis from explicit values; they must be strictly increasing
    /// and uniform within 1e-12 relative.
    static UniformAxis from_values(std::span<const double> values);
};

/// Discretized (time, frequency) lattice.
class TFGrid {
public:
    TFGrid(UniformAxis times, UniformAxis freqs);

    const UniformAxis& times() const { return times_; }
    const UniformAxis& freqs() const { return freqs_; }
    std::size_t n_times() const { return times_.count; }
    std::size_t n_freqs() const { return freqs_.count; }
    double time(std::size_t n) const { return times_[n]; }
    double freq(std::size_t k) const { return freqs_[k]; }
    double dt() const { return times_.step; }
    double domega() const { return freqs_.step; }

    std::size_t time_index(double t) const { return times_.nearest(t); }
    std::size_t freq_index(double omega) const { return freqs_.nearest(omega); }

    friend bool operator==(const TFGrid&, const TFGrid&);

private:
    UniformAxis times_;
    UniformAxis freqs_;
};

/// Grid over every sample instant of `signal` and `n_freq_bins` uniform
/// frequencies spanning [0, 2*pi*f_max_hz].
TFGrid make_tf_grid(const Signal& signal, std::size_t n_freq_bins, double f_max_hz);

/// Matrix over a TFGrid, indexed [freq_bin][time_bin], row-major.
class TFMatrix {
public:
    enum class Kind { complex, magnitude, real };

    static TFMatrix complex(TFGrid grid, std::vector<cplx> values);
    static TFMatrix magnitude(TFGrid grid, std::vector<double> values);
    static TFMatrix real(TFGrid grid, std::vector<double> values);
    static TFMatrix zeros(TFGrid grid, Kind kind);

    const TFGrid& grid() const { return grid_; }
    Kind kind() const { return kind_; }
    bool is_magnitude() const { return kind_ == Kind::magnitude; }
    bool is_complex() const { return kind_ == Kind::complex; }
    std::size_t rows() const { return grid_.n_freqs(); }
    std::size_t cols() const { return grid_.n_times(); }

    /// Complex value; real kinds are promoted.
    cplx value(std::size_t k, std::size_t n) const;
    /// Real value; only valid for the magnitude and real kinds.
    double real_value(std::size_t k, std::size_t n) const { return real_[k * cols() + n]; }
    double abs(std::size_t k, std::size_t n) const;

    std::span<const cplx> complex_values() const { return complex_; }
    std::span<const double> real_values() const { return real_; }

    /// Elementwise modulus as a magnitude matrix.
    TFMatrix abs() const;
    double max_abs() const;

private:
    TFMatrix(TFGrid grid, Kind kind) : grid_(std::move(grid)), kind_(kind) {}

    TFGrid grid_;
    Kind kind_;
    std::vector<cplx> complex_;
    std::vector<double> real_;
};

/// One chirp-modulated Gaussian window: width sigma (s), chirp rate beta (rad/s^2).
class WindowParams {
public:
    WindowParams(double sigma, double beta);

    double sigma() const { return sigma_; }
    double beta() const { return beta_; }

    friend bool operator==(const WindowParams&, const WindowParams&) = default;

private:
    double sigma_;
    double beta_;
};

/// Ordered, duplicate-free list of window parameters.
class ParameterSet {
public:
    explicit ParameterSet(std::vector<WindowParams> entries);

    const std::vector<WindowParams>& entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }
    const WindowParams& operator[](std::size_t i) const { return entries_[i]; }
    auto begin() const { return entries_.begin(); }
    auto end() const { return entries_.end(); }

private:
    std::vector<WindowParams> entries_;
};

}  // namespace mrct
