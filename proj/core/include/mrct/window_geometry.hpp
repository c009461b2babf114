#pragma once

// Level-curve geometry of window WVDs. The WVD of a chirp window is
//
//   W(t, w) = sqrt(2) exp(-t^2 / sigma^2 - sigma^2 (w - beta t)^2),
//
// whose level set W / max = exp(-C) is an ellipse. L_l is the long-axis
// measure 2 r^2 (twice the squared semi-major axis), which is linear in C.
// tan_theta is the slope w / t of the long axis in rad/s per second and may
// be +inf for a vertical axis.

#include <cstddef>
#include <optional>

#include "mrct/types.hpp"

namespace mrct {

struct EllipseGeometry {
    double long_axis_len = 0.0;
    double tan_theta = 0.0;
    /// A = 1 + beta^2 - 1/sigma^4; only set by the closed forms.
    std::optional<double> A_aux;
};

/// Closed-form geometry of the chirp-window WVD. beta = 0 gives an
/// axis-aligned ellipse: tan_theta = 0 for sigma >= 1 and +inf for sigma < 1.
EllipseGeometry ellipse_geometry_ct(const WindowParams& wp, double C);

/// Closed-form geometry of the rotation-window WVD. L = 2C/sigma for
/// sigma < 1, else 2 sigma C; tan_theta = beta (sigma < 1), 0 (sigma = 1),
/// -1/beta (sigma > 1). For sigma > 1 and beta = 0 the long axis is the
/// frequency axis and tan_theta = +inf.
EllipseGeometry ellipse_geometry_rotation(const WindowParams& wp, double C);

/// (sigma_hat, beta_hat) with sigma_hat^2 = (1 + s^2 b^2) / (s (1 + b^2)) and
/// beta_hat = b (1 - s^2) / (1 + s^2 b^2).
WindowParams rotated_params(const WindowParams& wp);

/// Level C reached at fraction p of the maximum: ln(1/p).
double level_constant(double level_fraction);

/// Sampled closed-form WVD of the chirp window on `grid`.
TFMatrix window_wvd(const WindowParams& wp, const TFGrid& grid);

/// n x n grid centred on the origin covering the level-C ellipse of the
/// chirp-window WVD with a 25% margin.
TFGrid window_wvd_grid(const WindowParams& wp, double C, std::size_t n);

/// Numerical geometry of the superlevel set {x >= level_fraction * max}:
/// the boundary point farthest from the set's centroid gives the long axis
/// (reported as 2 d^2) and its slope. Points within 1% of the farthest
/// distance are pooled as an axial mean; when their directions cancel (a
/// circle) tan_theta is 0.
EllipseGeometry extract_level_curve(const TFMatrix& wvd_matrix, double level_fraction);

}  // namespace mrct
