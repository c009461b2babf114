#include "mrct/signal_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <string>
#include <string_view>

namespace mrct {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_number(std::string_view s, const std::string& where) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw IoError(where + ": cannot parse number '" + std::string(s) + "'");
    }
    return v;
}

double header_field(std::string_view header, std::string_view key, const std::string& where) {
    const auto pos = header.find(key);
    if (pos == std::string_view::npos) {
        throw IoError(where + ": header lacks '" + std::string(key) + "'");
    }
    auto rest = header.substr(pos + key.size());
    const auto end = rest.find_first_of(" \t");
    return parse_number(rest.substr(0, end), where);
}

}  // namespace

Signal read_signal_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    std::string line;
    if (!std::getline(in, line)) throw IoError(path.string() + ": empty file");
    const std::string where = path.string() + ":1";
    std::string_view header = trim(line);
    if (header.empty() || header.front() != '#') {
        throw IoError(where + ": expected '# fs=<Hz> t0=<s>' header");
    }
    const double fs = header_field(header, "fs=", where);
    const double t0 = header.find("t0=") == std::string_view::npos ? 0.0 : header_field(header, "t0=", where);

    std::vector<cplx> samples;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        const auto row = trim(line);
        if (row.empty() || row.front() == '#') continue;
        const std::string at = path.string() + ":" + std::to_string(lineno);
        const auto comma = row.find(',');
        if (comma == std::string_view::npos) {
            samples.emplace_back(parse_number(row, at), 0.0);
        } else {
            samples.emplace_back(parse_number(row.substr(0, comma), at), parse_number(row.substr(comma + 1), at));
        }
    }
    try {
        return Signal(std::move(samples), fs, t0);
    } catch (const ValidationError& e) {
        throw IoError(path.string() + ": " + e.what());
    }
}

void write_signal_csv(const std::filesystem::path& path, const Signal& signal) {
    std::FILE* f = std::fopen(path.string().c_str(), "w");
    if (f == nullptr) throw IoError("cannot write " + path.string());
    std::fprintf(f, "# fs=%.17g t0=%.17g\n", signal.fs(), signal.t0());
    for (cplx z : signal.samples()) std::fprintf(f, "%.17g,%.17g\n", z.real(), z.imag());
    const bool failed = std::ferror(f) != 0;
    if (std::fclose(f) != 0 || failed) throw IoError("error while writing " + path.string());
}

}  // namespace mrct
