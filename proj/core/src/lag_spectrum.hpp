#pragma once

// Evaluates finite exponential sums
//
//   X(omega_k) = sum_{m=lo}^{hi} x[m] * exp(-j * omega_k * m * tau)
//
// on a uniform frequency axis. Every transform kernel reduces to this after
// forming its per-frame lag sequence. When the axis coincides with the bins
// of some DFT length L >= hi - lo + 1 the sum is one FFT; otherwise it is a
// direct summation against a precomputed phasor table.

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "fft.hpp"
#include "mrct/types.hpp"

namespace mrct::detail {

class LagSpectrum {
public:
    LagSpectrum(const UniformAxis& freqs, double tau, long lo, long hi);

    class Workspace {
    public:
        explicit Workspace(std::size_t fft_len) : in_(fft_len), out_(fft_len) {}

    private:
        friend class LagSpectrum;
        FftBuffer in_;
        FftBuffer out_;
    };

    Workspace make_workspace() const { return Workspace(fft_len_); }

    bool uses_fft() const { return plan_ != nullptr; }
    std::size_t fft_length() const { return fft_len_; }
    std::size_t length() const { return len_; }
    long lo() const { return lo_; }

    /// `x[i]` holds the term for lag lo + i; `out` receives one value per axis bin.
    void evaluate(std::span<const cplx> x, std::span<cplx> out, Workspace& ws) const;

private:
    void evaluate_direct(std::span<const cplx> x, std::span<cplx> out) const;

    UniformAxis freqs_;
    double tau_;
    long lo_;
    std::size_t len_;

    std::size_t fft_len_ = 0;
    std::unique_ptr<FftPlan> plan_;
    std::vector<std::size_t> bins_;

    std::vector<cplx> table_;
};

}  // namespace mrct::detail
