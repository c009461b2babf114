#pragma once

// Thin RAII layer over FFTW's complex DFT.

#include <cstddef>
#include <span>
#include <vector>

#include "mrct/types.hpp"

typedef struct fftw_plan_s* fftw_plan;

namespace mrct::detail {

/// FFTW-aligned complex buffer.
class FftBuffer {
public:
    explicit FftBuffer(std::size_t n);
    ~FftBuffer();
    FftBuffer(const FftBuffer&) = delete;
    FftBuffer& operator=(const FftBuffer&) = delete;
    FftBuffer(FftBuffer&& other) noexcept;
    FftBuffer& operator=(FftBuffer&& other) noexcept;

    cplx* data() { return data_; }
    const cplx* data() const { return data_; }
    std::size_t size() const { return size_; }
    cplx& operator[](std::size_t i) { return data_[i]; }
    const cplx& operator[](std::size_t i) const { return data_[i]; }
    std::span<cplx> span() { return {data_, size_}; }

private:
    cplx* data_ = nullptr;
    std::size_t size_ = 0;
};

/// Out-of-place forward (e^{-j...}) or inverse (unnormalized e^{+j...}) DFT
/// plan. Execution is thread-safe; buffers passed to execute() must come
/// from FftBuffer so alignment matches the planning buffers.
class FftPlan {
public:
    enum class Direction { forward, inverse };

    FftPlan(std::size_t n, Direction dir);
    ~FftPlan();
    FftPlan(const FftPlan&) = delete;
    FftPlan& operator=(const FftPlan&) = delete;

    std::size_t size() const { return n_; }
    void execute(FftBuffer& in, FftBuffer& out) const;

private:
    std::size_t n_;
    fftw_plan plan_ = nullptr;
};

/// One-shot DFT of a span (forward, or unnormalized inverse).
std::vector<cplx> dft(std::span<const cplx> x, FftPlan::Direction dir);

}  // namespace mrct::detail
