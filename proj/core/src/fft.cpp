#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>
#include <new>
#include <utility>

namespace mrct::detail {

namespace {
// The FFTW planner is not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

FftBuffer::FftBuffer(std::size_t n) : size_(n) {
    data_ = reinterpret_cast<cplx*>(fftw_alloc_complex(std::max<std::size_t>(n, 1)));
    if (!data_) throw std::bad_alloc();
    std::fill(data_, data_ + n, cplx{});
}

FftBuffer::~FftBuffer() {
    if (data_) fftw_free(data_);
}

FftBuffer::FftBuffer(FftBuffer&& other) noexcept
    : data_(std::exchange(other.data_, nullptr)), size_(std::exchange(other.size_, 0)) {}

FftBuffer& FftBuffer::operator=(FftBuffer&& other) noexcept {
    if (this != &other) {
        if (data_) fftw_free(data_);
        data_ = std::exchange(other.data_, nullptr);
        size_ = std::exchange(other.size_, 0);
    }
    return *this;
}

FftPlan::FftPlan(std::size_t n, Direction dir) : n_(n) {
    if (n == 0) throw ValidationError("FFT length must be positive");
    FftBuffer in(n);
    FftBuffer out(n);
    std::lock_guard lock(planner_mutex());
    plan_ = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                             reinterpret_cast<fftw_complex*>(out.data()),
                             dir == Direction::forward ? FFTW_FORWARD : FFTW_BACKWARD, FFTW_ESTIMATE);
    if (!plan_) throw std::runtime_error("FFTW planning failed");
}

FftPlan::~FftPlan() {
    if (plan_) {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
}

void FftPlan::execute(FftBuffer& in, FftBuffer& out) const {
    fftw_execute_dft(plan_, reinterpret_cast<fftw_complex*>(in.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
}

std::vector<cplx> dft(std::span<const cplx> x, FftPlan::Direction dir) {
    const FftPlan plan(x.size(), dir);
    FftBuffer in(x.size());
    FftBuffer out(x.size());
    std::copy(x.begin(), x.end(), in.data());
    plan.execute(in, out);
    return {out.data(), out.data() + x.size()};
}

}  // namespace mrct::detail
