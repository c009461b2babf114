#include "mrct_cli/app.hpp"

#include <CLI11.hpp>

#include <ostream>

#include "mrct_cli/run.hpp"

namespace mrct::cli {

namespace {

/// TOML whose top-level keys are the long flag names of `run`.
class RunConfigFormat : public CLI::ConfigTOML {
public:
    std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
        std::vector<CLI::ConfigItem> items = CLI::ConfigTOML::from_config(input);
        for (auto& item : items) {
            if (item.parents.empty() || item.parents.front() != "run") item.parents.insert(item.parents.begin(), "run");
        }
        return items;
    }
};

std::optional<std::pair<double, double>> as_range(const std::vector<double>& v) {
    if (v.empty()) return std::nullopt;
    return std::make_pair(v[0], v[1]);
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multi-resolution chirplet transform toolkit"};
    app.require_subcommand(1);
    app.config_formatter(std::make_shared<RunConfigFormat>());
    app.set_config("--config", "", "TOML file whose keys mirror the long flag names of run");

    RunConfig cfg;
    std::string generator, input, fmax, snr, sigma1, tolerance, png, pgm, ppm;
    std::optional<std::uint64_t> seed;
    std::vector<double> band, window;

    CLI::App* run_cmd = app.add_subcommand("run", "Compute a time-frequency representation and write it to disk");
    run_cmd->fallthrough();
    app.allow_config_extras(CLI::config_extras_mode::error);
    run_cmd->add_option("--generator", generator, "example1 | example2 | chirps-and-pulses | chirp | impulse");
    run_cmd->add_option("--seed", seed, "Noise seed (mandatory with --generator)");
    run_cmd->add_option("--snr-db", snr, "Noise level in dB (generator default when omitted)");
    run_cmd->add_option("--input", input, "Signal CSV (# fs=<Hz> t0=<s>, then re[,im] rows)");
    run_cmd->add_flag("--keep-real", cfg.keep_real, "Analyse real input as is instead of its analytic signal");
    run_cmd->add_option("--method", cfg.method, "stft | ct | rotation-ct | wvd | cft | mrct | mrsect");
    run_cmd->add_option("--sigma", cfg.sigmas, "Window widths in s")->delimiter(',');
    run_cmd->add_option("--beta-hz-s", cfg.betas_hz_s, "Window chirp rates in Hz/s (one, or one per sigma)")
        ->delimiter(',');
    run_cmd->add_option("--sigma1", sigma1, "First width of a sigma schedule in s");
    run_cmd->add_option("--schedule", cfg.schedule, "multiplicative | additive")->capture_default_str();
    run_cmd->add_option("--delta", cfg.delta, "Step of the additive schedule in s");
    run_cmd->add_option("--m", cfg.m, "Number of windows")->capture_default_str();
    run_cmd->add_option("--c-sigma", cfg.c_sigma, "Scale of selected window widths")->capture_default_str();
    run_cmd->add_option("--gamma-rel", cfg.gamma_rel, "Magnitude gate relative to the MrCT maximum")
        ->capture_default_str();
    run_cmd->add_option("--tolerance-mode", cfg.tolerance_mode, "scaled | literal")->capture_default_str();
    run_cmd->add_option("--half-width-bins", cfg.half_width_bins, "Ridge half-width of the scaled tolerance")
        ->capture_default_str();
    run_cmd->add_option("--tolerance", tolerance, "Explicit extraction tolerance in s");
    run_cmd->add_option("--bins", cfg.bins, "Frequency bins")->capture_default_str();
    run_cmd->add_option("--fmax-hz", fmax, "Highest grid frequency (default fs/2)");
    run_cmd->add_option("--cr-min-hz-s", cfg.cr_min_hz_s, "Lowest CFT chirp rate")->capture_default_str();
    run_cmd->add_option("--cr-max-hz-s", cfg.cr_max_hz_s, "Highest CFT chirp rate")->capture_default_str();
    run_cmd->add_option("--cr-bins", cfg.cr_bins, "CFT chirp-rate bins")->capture_default_str();
    run_cmd->add_option("--out", cfg.out, "Output matrix file");
    run_cmd->add_flag("--complex", cfg.complex_output, "Keep complex values (stft, ct, rotation-ct)");
    run_cmd->add_option("--png", png, "PNG heat map");
    run_cmd->add_option("--pgm", pgm, "PGM heat map (gray)");
    run_cmd->add_option("--ppm", ppm, "PPM heat map");
    run_cmd->add_option("--colormap", cfg.colormap, "gray | viridis")->capture_default_str();
    run_cmd->add_option("--db-floor", cfg.db_floor, "Dynamic range of heat maps in dB")->capture_default_str();
    run_cmd->add_option("--slice-time", cfg.slice_times, "Write the frequency slice at these times (s)")
        ->delimiter(',');
    run_cmd->add_option("--slice-freq-hz", cfg.slice_freqs_hz, "Write the time slice at these frequencies")
        ->delimiter(',');
    run_cmd->add_option("--slice-band-hz", band, "Peak-count band of time slices: LO HI")->expected(2);
    run_cmd->add_option("--slice-window-s", window, "Peak-count window of frequency slices: LO HI")->expected(2);
    run_cmd->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")->capture_default_str();

    std::string matrix_path, image_path, colormap = "gray";
    double db_floor = 60.0;
    CLI::App* render_cmd = app.add_subcommand("render", "Render a matrix file as a heat map");
    render_cmd->add_option("matrix", matrix_path, "Matrix file")->required();
    render_cmd->add_option("image", image_path, "Output image (.pgm, .ppm or .png)")->required();
    render_cmd->add_option("--colormap", colormap, "gray | viridis")->capture_default_str();
    render_cmd->add_option("--db-floor", db_floor, "Dynamic range in dB")->capture_default_str();

    std::vector<std::string> argv;
    argv.reserve(args.size());
    for (auto it = args.rbegin(); it != args.rend(); ++it) argv.push_back(*it);

    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::FileError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    }

    try {
        if (run_cmd->parsed()) {
            auto opt_double = [](const std::string& field, const std::string& s) -> std::optional<double> {
                if (s.empty()) return std::nullopt;
                double v = 0.0;
                if (!CLI::detail::lexical_cast(s, v)) throw ConfigError(field, "'" + s + "' is not a number");
                return v;
            };
            if (!generator.empty()) cfg.generator = generator;
            if (!input.empty()) cfg.input = input;
            cfg.seed = seed;
            cfg.snr_db = opt_double("snr-db", snr);
            cfg.sigma1 = opt_double("sigma1", sigma1);
            cfg.tolerance = opt_double("tolerance", tolerance);
            cfg.fmax_hz = opt_double("fmax-hz", fmax);
            if (!png.empty()) cfg.png = png;
            if (!pgm.empty()) cfg.pgm = pgm;
            if (!ppm.empty()) cfg.ppm = ppm;
            cfg.slice_band_hz = as_range(band);
            cfg.slice_window_s = as_range(window);
            const RunResult r = run(cfg);
            out << r.summary << '\n';
            for (const auto& s : r.slices) {
                out << "  " << s.label << ':';
                for (double p : s.peaks) out << ' ' << p;
                out << '\n';
            }
        } else {
            render(matrix_path, image_path, parse_colormap(colormap), db_floor);
            out << "rendered " << matrix_path << " -> " << image_path << '\n';
        }
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const ValidationError& e) {
        err << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitOk;
}

}  // namespace mrct::cli
