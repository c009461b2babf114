#pragma once

// Transform kernels: chirplet transform (CT), STFT, t-weighted CT,
// rotation-window CT, Wigner-Ville distribution and chirp-Fourier transform.
//
// All integrals are Riemann sums with weight 1/fs. Windows are truncated at
// five standard deviations and the record is zero-padded outside its span.

#include <vector>

#include "mrct/types.hpp"

namespace mrct {

/// h(t) = (sqrt(2 pi) sigma)^(-1/2) exp(-t^2 / (2 sigma^2)) exp(j beta t^2 / 2).
cplx chirp_window(const WindowParams& wp, double t);

/// C(t_n, w_k) = sum_m f(mu_m) g(mu_m - t_n) exp(-j beta/2 (mu_m - t_n)^2)
///               exp(-j w_k (mu_m - t_n)) / fs
/// Every grid time must be a sample instant of `signal`.
TFMatrix ct(const Signal& signal, const WindowParams& wp, const TFGrid& grid);

/// ct() with beta = 0.
TFMatrix stft(const Signal& signal, double sigma, const TFGrid& grid);

/// ct() with the integrand weighted by (mu - t).
TFMatrix ct_t_weighted(const Signal& signal, const WindowParams& wp, const TFGrid& grid);

/// Samples of a window on m / fs for m = -half_length .. half_length.
struct SampledWindow {
    std::vector<cplx> samples;
    long half_length = 0;
    double fs = 1.0;

    cplx at(long m) const { return samples[static_cast<std::size_t>(m + half_length)]; }
};

/// The rotated Gaussian window: a chirp window with the parameters given by
/// rotated_params(wp), sampled over five of its standard deviations.
SampledWindow rotation_window(const WindowParams& wp, double fs);

/// Correlation of the signal against the conjugated rotation window. Equal
/// to ct(signal, rotated_params(wp), grid).
TFMatrix rotation_ct(const Signal& signal, const WindowParams& wp, const TFGrid& grid);

/// Discrete WVD W(t_n, w_k) = (2/fs) sum_m f[c+m] f*[c-m] exp(-j 2 w_k m / fs)
/// over every lag that stays inside the record. Periodic in w with period
/// pi * fs. Real-valued.
TFMatrix wvd(const Signal& signal, const TFGrid& grid);

/// |CFT| over a (chirp rate, frequency) lattice, mag indexed [cr][freq].
struct CRSpectrum {
    UniformAxis freqs;
    UniformAxis crs;
    std::vector<double> mag;

    double at(std::size_t q, std::size_t k) const { return mag[q * freqs.count + k]; }
};

/// mag[q][k] = |sum_n f(t_n) exp(-j beta_q t_n^2 / 2) exp(-j w_k t_n) / fs|
/// with absolute sample times t_n.
CRSpectrum cft(const Signal& signal, const UniformAxis& freq_axis, const UniformAxis& cr_axis);

/// Closed-form CT of A exp(j(a t + b t^2 / 2)) for an unbounded record:
///   f(t) sqrt(sqrt(2 pi) sigma / D) exp(-sigma^2 (w - a - b t)^2 / (2 D)),
///   D = 1 + j sigma^2 (beta - b).
TFMatrix closed_form_chirp_ct(double A, double a, double b, const WindowParams& wp, const TFGrid& grid);

}  // namespace mrct
