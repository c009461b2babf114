#include "mrct_cli/run.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace mrct::cli {

namespace {

bool is_member(const std::string& s, const std::vector<std::string>& names) {
    return std::find(names.begin(), names.end(), s) != names.end();
}

bool uses_window(const std::string& method) {
    return method == "stft" || method == "ct" || method == "rotation-ct";
}

bool is_multi(const std::string& method) { return method == "mrct" || method == "mrsect"; }

void require_positive(const std::string& field, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be a positive number");
}

/// Hz -> rad/s and Hz/s -> rad/s^2; the only unit conversion into the library.
double to_angular(double hz) { return hz_to_rad(hz); }

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::filesystem::path sibling(const std::filesystem::path& out, const std::string& suffix) {
    std::filesystem::path p = out;
    p.replace_filename(out.stem().string() + suffix);
    return p;
}

std::vector<double> broadcast_betas(const RunConfig& cfg, std::size_t count) {
    if (cfg.betas_hz_s.empty()) return std::vector<double>(count, 0.0);
    if (cfg.betas_hz_s.size() == 1) return std::vector<double>(count, to_angular(cfg.betas_hz_s[0]));
    if (cfg.betas_hz_s.size() != count) {
        throw ConfigError("beta-hz-s", "needs one value or one per sigma (" + std::to_string(count) + ")");
    }
    std::vector<double> out;
    for (double b : cfg.betas_hz_s) out.push_back(to_angular(b));
    return out;
}

ParameterSet make_set(const std::vector<double>& sigmas, const std::vector<double>& betas) {
    std::vector<WindowParams> entries;
    for (std::size_t i = 0; i < sigmas.size(); ++i) entries.emplace_back(sigmas[i], betas[i]);
    try {
        return ParameterSet(std::move(entries));
    } catch (const ValidationError& e) {
        throw ConfigError("sigma", e.what());
    }
}

UniformAxis cr_axis(const RunConfig& cfg) {
    const double lo = to_angular(cfg.cr_min_hz_s);
    const double hi = to_angular(cfg.cr_max_hz_s);
    return UniformAxis{lo, (hi - lo) / static_cast<double>(cfg.cr_bins - 1), cfg.cr_bins};
}

}  // namespace

void validate(const RunConfig& cfg) {
    if (cfg.generator && cfg.input) throw ConfigError("input", "give either a generator or an input file, not both");
    if (!cfg.generator && !cfg.input) throw ConfigError("generator", "an input source is required (generator or input)");
    if (cfg.generator) {
        if (!is_member(*cfg.generator, generator_names())) {
            throw ConfigError("generator", "unknown generator '" + *cfg.generator + "'");
        }
        if (!cfg.seed) throw ConfigError("seed", "is mandatory with a generator");
        if (cfg.keep_real) throw ConfigError("keep-real", "only applies to input files");
    }
    if (cfg.snr_db && std::isnan(*cfg.snr_db)) throw ConfigError("snr-db", "must be a number");

    if (cfg.method.empty()) throw ConfigError("method", "is required");
    if (!is_member(cfg.method, method_names())) throw ConfigError("method", "unknown method '" + cfg.method + "'");

    for (double s : cfg.sigmas) require_positive("sigma", s);
    for (double b : cfg.betas_hz_s) {
        if (!std::isfinite(b)) throw ConfigError("beta-hz-s", "must be finite");
    }
    if (uses_window(cfg.method)) {
        if (cfg.sigmas.size() != 1) throw ConfigError("sigma", cfg.method + " needs exactly one sigma");
        if (cfg.method == "stft" && !cfg.betas_hz_s.empty()) throw ConfigError("beta-hz-s", "stft has no chirp rate");
        if (cfg.betas_hz_s.size() > 1) throw ConfigError("beta-hz-s", cfg.method + " takes at most one chirp rate");
    } else if (!is_multi(cfg.method)) {
        if (!cfg.sigmas.empty()) throw ConfigError("sigma", cfg.method + " takes no window");
        if (!cfg.betas_hz_s.empty()) throw ConfigError("beta-hz-s", cfg.method + " takes no window");
    }
    if (cfg.sigma1) {
        if (!is_multi(cfg.method)) throw ConfigError("sigma1", "only applies to mrct and mrsect");
        if (!cfg.sigmas.empty()) throw ConfigError("sigma1", "give either a sigma list or sigma1, not both");
        require_positive("sigma1", *cfg.sigma1);
    }
    if (cfg.schedule != "multiplicative" && cfg.schedule != "additive") {
        throw ConfigError("schedule", "must be multiplicative or additive");
    }
    if (cfg.schedule == "additive" && cfg.sigma1 && !(cfg.delta > 0.0)) {
        throw ConfigError("delta", "must be > 0 for the additive schedule");
    }
    if (cfg.m < 1) throw ConfigError("m", "must be at least 1");
    require_positive("c-sigma", cfg.c_sigma);
    if (!(cfg.gamma_rel > 0.0 && cfg.gamma_rel < 1.0)) throw ConfigError("gamma-rel", "must lie in (0, 1)");
    if (cfg.tolerance_mode != "scaled" && cfg.tolerance_mode != "literal") {
        throw ConfigError("tolerance-mode", "must be scaled or literal");
    }
    require_positive("half-width-bins", cfg.half_width_bins);
    if (cfg.tolerance) require_positive("tolerance", *cfg.tolerance);

    if (cfg.bins < 2) throw ConfigError("bins", "must be at least 2");
    if (cfg.fmax_hz) require_positive("fmax-hz", *cfg.fmax_hz);
    if (cfg.cr_bins < 2) throw ConfigError("cr-bins", "must be at least 2");
    if (!(cfg.cr_min_hz_s < cfg.cr_max_hz_s) || !std::isfinite(cfg.cr_min_hz_s) || !std::isfinite(cfg.cr_max_hz_s)) {
        throw ConfigError("cr-min-hz-s", "must be finite and below cr-max-hz-s");
    }

    if (cfg.out.empty()) throw ConfigError("out", "an output matrix path is required");
    if (cfg.complex_output && !uses_window(cfg.method)) {
        throw ConfigError("complex", "only stft, ct and rotation-ct produce complex matrices");
    }
    const Colormap cmap = [&] {
        try {
            return parse_colormap(cfg.colormap);
        } catch (const ValidationError& e) {
            throw ConfigError("colormap", e.what());
        }
    }();
    if (cfg.pgm && cmap != Colormap::gray) throw ConfigError("pgm", "PGM output needs the gray colormap");
    if (cfg.png && !png_supported()) throw ConfigError("png", "this build has no PNG support");
    require_positive("db-floor", cfg.db_floor);

    if (cfg.method == "cft" && (!cfg.slice_times.empty() || !cfg.slice_freqs_hz.empty())) {
        throw ConfigError("slice-time", "slices are not available for cft output");
    }
    if (cfg.slice_band_hz && !(cfg.slice_band_hz->first < cfg.slice_band_hz->second)) {
        throw ConfigError("slice-band-hz", "needs LO < HI");
    }
    if (cfg.slice_window_s && !(cfg.slice_window_s->first < cfg.slice_window_s->second)) {
        throw ConfigError("slice-window-s", "needs LO < HI");
    }
}

Signal load_signal(const RunConfig& cfg) {
    if (cfg.input) {
        Signal s = read_signal_csv(*cfg.input);
        if (s.size() < 2) throw ConfigError("input", "needs at least 2 samples");
        if (cfg.snr_db) s = add_awgn(s, *cfg.snr_db, cfg.seed.value_or(0));
        if (s.is_real() && !cfg.keep_real) s = analytic(s);
        return s;
    }
    const std::string& g = *cfg.generator;
    const std::uint64_t seed = *cfg.seed;
    if (g == "example1" || g == "example2") {
        NoiseOptions noise;
        noise.snr_db = g == "example1" ? 10.0 : 8.0;
        if (cfg.snr_db) noise.snr_db = *cfg.snr_db;
        return g == "example1" ? synth_example1(seed, noise).noisy : synth_example2(seed, noise).noisy;
    }
    Signal s = [&] {
        if (g == "chirps-and-pulses") return synth_chirps_and_pulses().clean;
        if (g == "chirp") return synth_chirp(ChirpSpec::constant(1.0, to_angular(20.0), to_angular(40.0), 0.0, 2.0), 256.0, 2.0);
        return synth_impulse({1.0, 1.0}, 256.0, 2.0);
    }();
    if (cfg.snr_db) s = add_awgn(s, *cfg.snr_db, seed);
    return s;
}

TFGrid make_grid(const RunConfig& cfg, const Signal& signal) {
    const double nyquist = 0.5 * signal.fs();
    const double fmax = cfg.fmax_hz.value_or(nyquist);
    if (fmax > nyquist * (1.0 + 1e-12)) {
        throw ConfigError("fmax-hz", "exceeds fs/2 = " + fmt(nyquist) + " Hz");
    }
    return make_tf_grid(signal, cfg.bins, fmax);
}

ParameterSet resolve_parameters(const RunConfig& cfg, const Signal& signal, const TFGrid& grid) {
    if (!cfg.sigmas.empty()) return make_set(cfg.sigmas, broadcast_betas(cfg, cfg.sigmas.size()));
    if (cfg.sigma1) {
        const SigmaMode mode = cfg.schedule == "additive" ? SigmaMode::additive : SigmaMode::multiplicative;
        const std::vector<double> sigmas = sigma_schedule(*cfg.sigma1, cfg.m, mode, cfg.delta);
        return make_set(sigmas, broadcast_betas(cfg, sigmas.size()));
    }
    return select_parameters(signal, cfg.m, cfg.c_sigma, grid.freqs(), cr_axis(cfg)).params;
}

RunResult run(const RunConfig& cfg) {
    validate(cfg);
    set_thread_count(cfg.threads);
    const auto start = std::chrono::steady_clock::now();

    const Signal signal = load_signal(cfg);
    const TFGrid grid = make_grid(cfg, signal);
    for (double t : cfg.slice_times) {
        if (!grid.times().contains(t)) throw ConfigError("slice-time", fmt(t) + " s lies outside the signal");
    }
    for (double f : cfg.slice_freqs_hz) {
        if (!grid.freqs().contains(to_angular(f))) {
            throw ConfigError("slice-freq-hz", fmt(f) + " Hz lies outside the grid");
        }
    }
    RunResult result;
    std::optional<TFMatrix> tf;

    if (cfg.method == "stft") {
        tf = stft(signal, cfg.sigmas[0], grid);
    } else if (cfg.method == "ct" || cfg.method == "rotation-ct") {
        const WindowParams wp(cfg.sigmas[0], cfg.betas_hz_s.empty() ? 0.0 : to_angular(cfg.betas_hz_s[0]));
        tf = cfg.method == "ct" ? ct(signal, wp, grid) : rotation_ct(signal, wp, grid);
        result.params = ParameterSet({wp});
    } else if (cfg.method == "wvd") {
        tf = wvd(signal, grid);
    } else if (cfg.method == "cft") {
        result.matrix = to_matrix_file(cft(signal, grid.freqs(), cr_axis(cfg)));
    } else {
        const ParameterSet params = resolve_parameters(cfg, signal, grid);
        result.params = params;
        if (cfg.method == "mrct") {
            tf = mrct::mrct(signal, params, grid).magnitude;
        } else {
            ExtractionConfig ec;
            ec.gamma_rel = cfg.gamma_rel;
            ec.mode = cfg.tolerance_mode == "literal" ? ToleranceMode::literal : ToleranceMode::scaled;
            ec.half_width_bins = cfg.half_width_bins;
            ec.tolerance = cfg.tolerance;
            tf = mrsect(signal, params, grid, ec);
        }
    }
    if (tf) result.matrix = to_matrix_file(*tf, cfg.complex_output);

    write_matrix_file(cfg.out, result.matrix);
    result.written.push_back(cfg.out);

    const Colormap cmap = parse_colormap(cfg.colormap);
    for (const auto& path : {cfg.png, cfg.pgm, cfg.ppm}) {
        if (!path) continue;
        write_image(*path, render_image(result.matrix, cmap, cfg.db_floor));
        result.written.push_back(*path);
    }

    for (double t : cfg.slice_times) {
        SliceCurve c = slice_at_time(*tf, t);
        for (double& w : c.axis) w = rad_to_hz(w);
        const double lo = cfg.slice_band_hz ? cfg.slice_band_hz->first : c.axis.front();
        const double hi = cfg.slice_band_hz ? cfg.slice_band_hz->second : c.axis.back();
        SliceReport rep{"t=" + fmt(t) + " s", sibling(cfg.out, "_t" + fmt(t) + ".csv"), {}};
        for (const auto& p : find_peaks(c, lo, hi)) rep.peaks.push_back(p.position);
        write_curve_csv(rep.file, c);
        result.written.push_back(rep.file);
        result.slices.push_back(std::move(rep));
    }
    for (double f : cfg.slice_freqs_hz) {
        const SliceCurve c = slice_at_freq(*tf, to_angular(f));
        const double lo = cfg.slice_window_s ? cfg.slice_window_s->first : c.axis.front();
        const double hi = cfg.slice_window_s ? cfg.slice_window_s->second : c.axis.back();
        SliceReport rep{"f=" + fmt(f) + " Hz", sibling(cfg.out, "_f" + fmt(f) + ".csv"), {}};
        for (const auto& p : find_peaks(c, lo, hi)) rep.peaks.push_back(p.position);
        write_curve_csv(rep.file, c);
        result.written.push_back(rep.file);
        result.slices.push_back(std::move(rep));
    }

    result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream os;
    os << cfg.method << ' ' << result.matrix.rows << 'x' << result.matrix.cols << " in " << fmt(result.seconds) << " s";
    if (result.params && is_multi(cfg.method)) {
        os << " params [";
        for (std::size_t i = 0; i < result.params->size(); ++i) {
            const auto& wp = (*result.params)[i];
            os << (i ? " " : "") << '(' << fmt(wp.sigma()) << ", " << fmt(rad_to_hz(wp.beta())) << " Hz/s)";
        }
        os << ']';
    }
    for (const auto& s : result.slices) {
        os << " peaks@" << s.label << " " << s.peaks.size();
    }
    os << " ->";
    for (const auto& p : result.written) os << ' ' << p.string();
    result.summary = os.str();
    return result;
}

void render(const std::filesystem::path& matrix_path, const std::filesystem::path& image_path, Colormap cmap,
            double db_floor) {
    if (cmap != Colormap::gray && image_path.extension() == ".pgm") {
        throw ConfigError("colormap", "PGM output needs the gray colormap");
    }
    const MatrixFile m = read_matrix_file(matrix_path);
    write_image(image_path, render_image(m, cmap, db_floor));
}

}  // namespace mrct::cli
