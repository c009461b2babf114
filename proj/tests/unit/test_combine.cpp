#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include <mrct/mrct.hpp>

#include "oracles.hpp"

using namespace mrct;

namespace {

const UniformAxis kFreqAxis{0.0, kTwoPi * 0.5, 257};
const UniformAxis kCrAxis{-kTwoPi * 200.0, kTwoPi * 2.0, 201};

Signal single_chirp() {
    return synth_chirp(ChirpSpec::constant(1.0, kTwoPi * 20.0, kTwoPi * 80.0, 0.0, 1.0), 256.0, 1.0);
}

TFMatrix random_magnitude(const TFGrid& g, std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> v(g.n_freqs() * g.n_times());
    for (auto& x : v) x = u(rng);
    return TFMatrix::magnitude(g, std::move(v));
}

TFMatrix scaled(const TFMatrix& m, double s) {
    std::vector<double> v(m.real_values().begin(), m.real_values().end());
    for (auto& x : v) x *= s;
    return TFMatrix::magnitude(m.grid(), std::move(v));
}

}  // namespace

TEST(SigmaSchedule, Examples) {
    const auto mult = sigma_schedule(0.1, 3, SigmaMode::multiplicative);
    ASSERT_EQ(mult.size(), 3u);
    EXPECT_NEAR(mult[0], 0.1, 1e-15);
    EXPECT_NEAR(mult[1], 0.2, 1e-15);
    EXPECT_NEAR(mult[2], 0.3, 1e-15);
    const auto add = sigma_schedule(0.1, 3, SigmaMode::additive, 0.05);
    ASSERT_EQ(add.size(), 3u);
    EXPECT_NEAR(add[0], 0.15, 1e-15);
    EXPECT_NEAR(add[1], 0.2, 1e-15);
    EXPECT_NEAR(add[2], 0.25, 1e-15);
    EXPECT_EQ(sigma_schedule(0.1, 1, SigmaMode::multiplicative), std::vector<double>{0.1});
    EXPECT_THROW(sigma_schedule(0.1, 3, SigmaMode::additive, 0.0), ValidationError);
    EXPECT_THROW(sigma_schedule(0.0, 3, SigmaMode::multiplicative), ValidationError);
    EXPECT_THROW(sigma_schedule(0.1, 0, SigmaMode::multiplicative), ValidationError);
}

TEST(SelectParameters, SingleChirp) {
    const Selection sel = select_parameters(single_chirp(), 1, 1.0, kFreqAxis, kCrAxis);
    ASSERT_EQ(sel.params.size(), 1u);
    EXPECT_FALSE(sel.incomplete);
    const double beta = sel.params[0].beta();
    EXPECT_LE(std::abs(beta - kTwoPi * 80.0), kCrAxis.step);
    EXPECT_NEAR(sel.params[0].sigma(), 1.0 / std::sqrt(kTwoPi * std::abs(beta)), 1e-12);
    EXPECT_NEAR(1.0 / std::sqrt(kTwoPi * kTwoPi * 80.0), 0.0178, 1e-4);
    EXPECT_NEAR(sel.peaks.peaks[0].omega, kTwoPi * 20.0, kFreqAxis.step);
}

TEST(SelectParameters, SelectedBetaIsBruteForceArgmax) {
    const Signal s = single_chirp();
    double best = -1.0, best_beta = 0.0;
    for (std::size_t q = 0; q < kCrAxis.count; q += 1) {
        for (std::size_t k = 30; k < 50; ++k) {
            cplx acc(0.0, 0.0);
            for (std::size_t n = 0; n < s.size(); ++n) {
                const double t = s.time(n);
                acc += s[n] * std::exp(cplx(0.0, -0.5 * kCrAxis[q] * t * t - kFreqAxis[k] * t));
            }
            if (std::abs(acc) > best) {
                best = std::abs(acc);
                best_beta = kCrAxis[q];
            }
        }
    }
    const Selection sel = select_parameters(s, 1, 1.0, kFreqAxis, kCrAxis);
    EXPECT_EQ(sel.params[0].beta(), best_beta);
}

TEST(SelectParameters, ToneTakesTheSigmaCap) {
    const Signal tone = oracle::chirp(1.0, kTwoPi * 30.0, 0.0, 256.0, 512, 0.0);
    const Selection sel = select_parameters(tone, 1, 1.0, kFreqAxis, kCrAxis);
    EXPECT_EQ(sel.params[0].beta(), kCrAxis[kCrAxis.nearest(0.0)]);
    EXPECT_NEAR(sel.params[0].sigma(), tone.duration() / 4.0, 1e-12);
}

TEST(SelectParameters, CSigmaScalesSigma) {
    const Selection a = select_parameters(single_chirp(), 1, 1.0, kFreqAxis, kCrAxis);
    const Selection b = select_parameters(single_chirp(), 1, 2.0, kFreqAxis, kCrAxis);
    EXPECT_NEAR(b.params[0].sigma(), 2.0 * a.params[0].sigma(), 1e-12);
}

TEST(SelectParameters, ExampleOneRecoversChirpRate) {
    const Mixture m = synth_example1(1);
    const Selection sel = select_parameters(m.noisy, 3, 1.0, kFreqAxis, kCrAxis);
    EXPECT_EQ(sel.params.size(), 3u);
    bool has_chirp_rate = false;
    for (const auto& wp : sel.params) has_chirp_rate |= std::abs(wp.beta() - kTwoPi * 80.0) <= kCrAxis.step;
    EXPECT_TRUE(has_chirp_rate);
    for (std::size_t i = 1; i < sel.peaks.peaks.size(); ++i) {
        EXPECT_GE(sel.peaks.peaks[i - 1].mag, sel.peaks.peaks[i].mag);
    }
}

TEST(SelectParameters, ExampleOneTransientChirpRate) {
    // Read as a time series, the DFT of exp(j 2 pi (f0 t - 5 t^2)) sampled at
    // 256 Hz over 512 points is a chirp of rate 128^2 / 10 Hz/s (stationary
    // phase: frequency bin k sits at time k / 256 and frequency k / 2 Hz).
    const Mixture m = synth_example1(1);
    std::vector<cplx> x(m.clean.size());
    for (std::size_t n = 0; n < x.size(); ++n) x[n] = m.components[2][n] + m.components[3][n];
    const UniformAxis cra{-kTwoPi * 2000.0, kTwoPi * 8.0, 501};
    const CRSpectrum sp = cft(Signal(x, 256.0), kFreqAxis, cra);
    const std::size_t q = oracle::argmax(sp.mag) / kFreqAxis.count;
    EXPECT_LE(std::abs(cra[q] - kTwoPi * 128.0 * 128.0 / 10.0), cra.step);
}

TEST(SelectParameters, IncompleteWhenChirpRatesRunOut) {
    const UniformAxis one_rate{kTwoPi * 80.0, 1.0, 1};
    const Selection sel = select_parameters(single_chirp(), 3, 1.0, kFreqAxis, one_rate);
    EXPECT_EQ(sel.params.size(), 1u);
    EXPECT_TRUE(sel.incomplete);
}

TEST(SelectParameters, RejectsBadArguments) {
    EXPECT_THROW(select_parameters(single_chirp(), 0, 1.0, kFreqAxis, kCrAxis), ValidationError);
    EXPECT_THROW(select_parameters(single_chirp(), 1, 0.0, kFreqAxis, kCrAxis), ValidationError);
    const Signal zero(std::vector<cplx>(256, 0.0), 256.0);
    EXPECT_THROW(select_parameters(zero, 1, 1.0, kFreqAxis, kCrAxis), ValidationError);
}

TEST(Mrct, SingleEntryIsExactCtMagnitude) {
    const Signal s = synth_example1(2).noisy;
    const TFGrid g = make_tf_grid(s, 128, 128.0);
    const WindowParams wp(0.1, kTwoPi * 80.0);
    const MrctResult r = mrct::mrct(s, ParameterSet({wp}), g);
    const TFMatrix c = ct(s, wp, g);
    for (std::size_t k = 0; k < g.n_freqs(); ++k) {
        for (std::size_t n = 0; n < g.n_times(); ++n) ASSERT_EQ(r.magnitude.real_value(k, n), c.abs(k, n));
    }
    ASSERT_EQ(r.cts.size(), 1u);
}

TEST(Mrct, ImpulseTimeSpread) {
    // M^2 ~ exp(-(s1^2 + s2^2) / (2 s1^2 s2^2) (t0 - t)^2).
    const double s1 = 0.03, s2 = 0.05, t0 = 1.0;
    const Signal s = synth_impulse({1.0, t0}, 256.0, 2.0);
    const TFGrid g = make_tf_grid(s, 64, 128.0);
    const MrctResult r = mrct::mrct(s, ParameterSet({{s1, 0.0}, {s2, 0.0}}), g);
    const double want = 2.0 * std::sqrt(std::log(2.0) * 2.0 * s1 * s1 * s2 * s2 / (s1 * s1 + s2 * s2));
    for (double f : {10.0, 40.0, 90.0}) {
        const double w = mainlobe_width(slice_at_freq(r.magnitude, kTwoPi * f), std::sqrt(0.5));
        EXPECT_NEAR(w, want, 0.05 * want) << f;
    }
}

TEST(Mrct, MatchedChirpBandwidth) {
    // M^2 ~ exp(-((s1^2 + s2^2) / 2) (w - IF)^2): between the two single CTs.
    const double s1 = 0.1, s2 = 0.2, b = kTwoPi * 40.0;
    const Signal s = oracle::chirp(1.0, kTwoPi * 10.0, b, 256.0, 768, -0.5);
    const TFGrid g(UniformAxis{1.0, 1.0, 1}, UniformAxis{kTwoPi * 50.0 - 30.0, 0.05, 1200});
    const MrctResult r = mrct::mrct(s, ParameterSet({{s1, b}, {s2, b}}), g);
    SliceCurve col{g.freqs().values(), std::vector<double>(g.n_freqs())};
    for (std::size_t k = 0; k < g.n_freqs(); ++k) col.values[k] = r.magnitude.real_value(k, 0);
    const double width = mainlobe_width(col, std::sqrt(0.5));
    auto single = [](double sig) { return 2.0 * std::sqrt(std::log(2.0)) / sig; };
    EXPECT_NEAR(width, 2.0 * std::sqrt(2.0 * std::log(2.0) / (s1 * s1 + s2 * s2)), 0.01 * width);
    EXPECT_LT(width, single(s1));
    EXPECT_GT(width, single(s2));
}

TEST(Mrct, GeometricMeanBounds) {
    const Signal s = synth_example1(3).noisy;
    const TFGrid g = make_tf_grid(s, 128, 128.0);
    const MrctResult r = mrct::mrct(s, ParameterSet({{0.05, 0.0}, {0.1, kTwoPi * 80.0}, {0.2, -100.0}}), g);
    for (std::size_t k = 0; k < g.n_freqs(); ++k) {
        for (std::size_t n = 0; n < g.n_times(); ++n) {
            double lo = 1e300, hi = 0.0;
            for (const auto& c : r.cts) {
                lo = std::min(lo, std::max(c.abs(k, n), r.floor));
                hi = std::max(hi, std::max(c.abs(k, n), r.floor));
            }
            const double v = r.magnitude.real_value(k, n);
            ASSERT_GE(v, lo * (1.0 - 1e-12));
            ASSERT_LE(v, hi * (1.0 + 1e-12));
        }
    }
}

TEST(Mrct, ScaleEquivariance) {
    const Signal s = synth_example1(4).noisy;
    std::vector<cplx> y(s.samples().begin(), s.samples().end());
    for (auto& v : y) v *= 3.5;
    const TFGrid g = make_tf_grid(s, 128, 128.0);
    const ParameterSet p({{0.1, kTwoPi * 80.0}, {0.25, kTwoPi * 80.0}});
    const MrctResult a = mrct::mrct(s, p, g), b = mrct::mrct(Signal(y, s.fs()), p, g);
    for (std::size_t i = 0; i < a.magnitude.real_values().size(); ++i) {
        ASSERT_NEAR(b.magnitude.real_values()[i], 3.5 * a.magnitude.real_values()[i], 1e-9 * b.magnitude.max_abs());
    }
    EXPECT_EQ(oracle::argmax(a.magnitude.real_values()), oracle::argmax(b.magnitude.real_values()));
}

TEST(Mrct, PermutationInvariance) {
    const Signal s = synth_example1(5).noisy;
    const TFGrid g = make_tf_grid(s, 128, 128.0);
    const MrctResult a = mrct::mrct(s, ParameterSet({{0.1, 0.0}, {0.16, 300.0}, {0.25, kTwoPi * 80.0}}), g);
    const MrctResult b = mrct::mrct(s, ParameterSet({{0.25, kTwoPi * 80.0}, {0.1, 0.0}, {0.16, 300.0}}), g);
    for (std::size_t i = 0; i < a.magnitude.real_values().size(); ++i) {
        ASSERT_NEAR(a.magnitude.real_values()[i], b.magnitude.real_values()[i], 1e-12 * a.magnitude.max_abs());
    }
}

TEST(Mrct, FloorAndZeroInput) {
    const Signal z(std::vector<cplx>(128, 0.0), 64.0);
    const TFGrid g = make_tf_grid(z, 16, 32.0);
    const MrctResult r = mrct::mrct(z, ParameterSet({{0.1, 0.0}, {0.2, 0.0}}), g);
    EXPECT_EQ(r.floor, 0.0);
    EXPECT_EQ(r.magnitude.max_abs(), 0.0);
    const Signal s = synth_example1(1).noisy;
    const TFGrid g2 = make_tf_grid(s, 64, 128.0);
    const MrctResult r2 = mrct::mrct(s, ParameterSet({{0.1, 0.0}, {0.2, 0.0}}), g2);
    EXPECT_DOUBLE_EQ(r2.floor, 1e-12 * std::max(r2.cts[0].max_abs(), r2.cts[1].max_abs()));
}

TEST(Gkl, IdenticalInputsGiveZero) {
    std::mt19937_64 rng(1);
    const TFGrid g(UniformAxis{0.0, 0.1, 6}, UniformAxis{0.0, 0.5, 5});
    const TFMatrix c = random_magnitude(g, rng, 0.1, 2.0);
    const std::vector<TFMatrix> cts{c, c, c};
    const GklValue v = gkl_objective(c, cts);
    EXPECT_FALSE(v.infinite);
    EXPECT_NEAR(v.value, 0.0, 1e-15);
}

TEST(Gkl, GeometricMeanIsStationaryAndMinimal) {
    std::mt19937_64 rng(2024);
    for (int instance = 0; instance < 10; ++instance) {
        const TFGrid g(UniformAxis{0.0, 0.01, 7}, UniformAxis{0.0, 2.0, 6});
        std::vector<TFMatrix> cts;
        for (int i = 0; i < 3; ++i) cts.push_back(random_magnitude(g, rng, 0.01, 5.0));
        const TFMatrix P = geometric_mean(cts, magnitude_floor(cts));
        for (std::size_t k = 0; k < g.n_freqs(); ++k) {
            for (std::size_t n = 0; n < g.n_times(); ++n) {
                double s = 0.0;
                for (const auto& c : cts) s += std::log(P.real_value(k, n) / c.real_value(k, n));
                ASSERT_NEAR(s, 0.0, 1e-9);
            }
        }
        const double at_p = gkl_objective(P, cts).value;
        EXPECT_LE(at_p, gkl_objective(scaled(P, 1.01), cts).value);
        EXPECT_LE(at_p, gkl_objective(scaled(P, 0.99), cts).value);
    }
}

TEST(Gkl, ZeroLogZeroAndInfiniteFlag) {
    const TFGrid g(UniformAxis{0.0, 1.0, 2}, UniformAxis{0.0, 1.0, 1});
    const TFMatrix P0 = TFMatrix::magnitude(g, {0.0, 0.0});
    const TFMatrix C = TFMatrix::magnitude(g, {1.0, 2.0});
    const std::vector<TFMatrix> one{C};
    EXPECT_NEAR(gkl_objective(P0, one).value, 3.0, 1e-12);
    const TFMatrix Cz = TFMatrix::magnitude(g, {0.0, 0.0});
    const std::vector<TFMatrix> zero{Cz};
    EXPECT_TRUE(gkl_objective(TFMatrix::magnitude(g, {1.0, 0.0}), zero).infinite);
}

TEST(Gkl, RejectsGridMismatch) {
    const TFGrid g1(UniformAxis{0.0, 1.0, 2}, UniformAxis{0.0, 1.0, 1});
    const TFGrid g2(UniformAxis{0.0, 1.0, 1}, UniformAxis{0.0, 1.0, 2});
    const std::vector<TFMatrix> cts{TFMatrix::magnitude(g2, {1.0, 1.0})};
    EXPECT_THROW(gkl_objective(TFMatrix::magnitude(g1, {1.0, 1.0}), cts), ValidationError);
    const std::vector<TFMatrix> mixed{TFMatrix::magnitude(g1, {1.0, 1.0}), TFMatrix::magnitude(g2, {1.0, 1.0})};
    EXPECT_THROW(geometric_mean(mixed, 0.0), ValidationError);
}
