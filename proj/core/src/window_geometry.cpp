#include "mrct/window_geometry.hpp"

#include <cmath>
#include <limits>

namespace mrct {

namespace {

void check_level(double C) {
    if (!(C > 0.0) || !std::isfinite(C)) throw ValidationError("level constant C must be finite and > 0");
}

}  // namespace

EllipseGeometry ellipse_geometry_ct(const WindowParams& wp, double C) {
    check_level(C);
    const double s2 = wp.sigma() * wp.sigma();
    const double b = wp.beta();
    const double A = 1.0 + b * b - 1.0 / (s2 * s2);
    const double D = std::sqrt(A * A * s2 * s2 + 4.0 * b * b);

    EllipseGeometry g;
    g.A_aux = A;
    g.long_axis_len = C * (A * s2 + 2.0 / s2 + D);
    if (b == 0.0) {
        g.tan_theta = wp.sigma() < 1.0 ? std::numeric_limits<double>::infinity() : 0.0;
    } else {
        g.tan_theta = 2.0 * b / (s2 * (D + A * s2)) + b;
    }
    return g;
}

EllipseGeometry ellipse_geometry_rotation(const WindowParams& wp, double C) {
    check_level(C);
    const double s = wp.sigma();
    const double b = wp.beta();
    const double s2 = s * s;
    EllipseGeometry g;
    g.A_aux = 1.0 + b * b - 1.0 / (s2 * s2);
    if (s < 1.0) {
        g.long_axis_len = 2.0 * C / s;
        g.tan_theta = b;
    } else if (s == 1.0) {
        g.long_axis_len = 2.0 * C;
        g.tan_theta = 0.0;
    } else {
        g.long_axis_len = 2.0 * s * C;
        g.tan_theta = b == 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / b;
    }
    return g;
}

WindowParams rotated_params(const WindowParams& wp) {
    const double s = wp.sigma();
    const double b = wp.beta();
    const double q = 1.0 + s * s * b * b;
    const double var = q / (s * (1.0 + b * b));
    return WindowParams(std::sqrt(var), b * (1.0 - s * s) / q);
}

double level_constant(double level_fraction) {
    if (!(level_fraction > 0.0 && level_fraction < 1.0)) {
        throw ValidationError("level fraction must lie in (0, 1)");
    }
    return std::log(1.0 / level_fraction);
}

TFMatrix window_wvd(const WindowParams& wp, const TFGrid& grid) {
    const double s2 = wp.sigma() * wp.sigma();
    const std::size_t K = grid.n_freqs();
    const std::size_t T = grid.n_times();
    std::vector<double> values(K * T);
    for (std::size_t k = 0; k < K; ++k) {
        const double w = grid.freq(k);
        for (std::size_t n = 0; n < T; ++n) {
            const double t = grid.time(n);
            const double d = w - wp.beta() * t;
            values[k * T + n] = std::sqrt(2.0) * std::exp(-t * t / s2 - s2 * d * d);
        }
    }
    return TFMatrix::real(grid, std::move(values));
}

TFGrid window_wvd_grid(const WindowParams& wp, double C, std::size_t n) {
    check_level(C);
    if (n < 3) throw ValidationError("grid needs at least 3 points per axis");
    const double s2 = wp.sigma() * wp.sigma();
    // Inverse of the quadratic form [[1/s2 + s2 b^2, -s2 b], [-s2 b, s2]] (unit determinant).
    const double t_half = 1.25 * std::sqrt(C * s2);
    const double w_half = 1.25 * std::sqrt(C * (1.0 / s2 + s2 * wp.beta() * wp.beta()));
    const double steps = static_cast<double>(n - 1);
    return TFGrid(UniformAxis{-t_half, 2.0 * t_half / steps, n}, UniformAxis{-w_half, 2.0 * w_half / steps, n});
}

EllipseGeometry extract_level_curve(const TFMatrix& wvd_matrix, double level_fraction) {
    if (!(level_fraction > 0.0 && level_fraction < 1.0)) {
        throw ValidationError("level fraction must lie in (0, 1)");
    }
    const TFGrid& grid = wvd_matrix.grid();
    const std::size_t K = grid.n_freqs();
    const std::size_t T = grid.n_times();
    auto val = [&](std::size_t k, std::size_t n) { return wvd_matrix.value(k, n).real(); };

    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t n = 0; n < T; ++n) peak = std::max(peak, val(k, n));
    }
    if (!(peak > 0.0)) throw ValidationError("matrix has no positive maximum; superlevel set is empty");
    const double thr = level_fraction * peak;
    auto inside = [&](long k, long n) {
        return k >= 0 && n >= 0 && k < static_cast<long>(K) && n < static_cast<long>(T) &&
               val(static_cast<std::size_t>(k), static_cast<std::size_t>(n)) >= thr;
    };

    double ct = 0.0, cw = 0.0;
    std::size_t count = 0;
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t n = 0; n < T; ++n) {
            if (val(k, n) >= thr) {
                ct += grid.time(n);
                cw += grid.freq(k);
                ++count;
            }
        }
    }
    ct /= static_cast<double>(count);
    cw /= static_cast<double>(count);

    struct Point {
        double dt, dw, d2;
    };
    std::vector<Point> boundary;
    double best = 0.0;
    for (long k = 0; k < static_cast<long>(K); ++k) {
        for (long n = 0; n < static_cast<long>(T); ++n) {
            if (!inside(k, n)) continue;
            if (inside(k - 1, n) && inside(k + 1, n) && inside(k, n - 1) && inside(k, n + 1)) continue;
            const double dt = grid.time(static_cast<std::size_t>(n)) - ct;
            const double dw = grid.freq(static_cast<std::size_t>(k)) - cw;
            const double d2 = dt * dt + dw * dw;
            boundary.push_back({dt, dw, d2});
            best = std::max(best, d2);
        }
    }

    // Axial mean of the near-farthest directions (angles doubled so the two
    // opposite vertices reinforce rather than cancel).
    double c2 = 0.0, s2 = 0.0;
    std::size_t pooled = 0;
    const double cutoff = 0.99 * 0.99 * best;
    for (const auto& p : boundary) {
        if (p.d2 < cutoff || p.d2 == 0.0) continue;
        const double phi = 2.0 * std::atan2(p.dw, p.dt);
        c2 += std::cos(phi);
        s2 += std::sin(phi);
        ++pooled;
    }

    EllipseGeometry g;
    g.long_axis_len = 2.0 * best;
    const double resultant = pooled == 0 ? 0.0 : std::hypot(c2, s2) / static_cast<double>(pooled);
    if (resultant < 0.1) {
        g.tan_theta = 0.0;
    } else {
        const double theta = 0.5 * std::atan2(s2, c2);
        const double c = std::cos(theta);
        g.tan_theta = std::abs(c) < 1e-12 ? std::numeric_limits<double>::infinity() : std::tan(theta);
    }
    return g;
}

}  // namespace mrct
