#include <cmath>
#include <limits>

#include <gtest/gtest.h>

#include <mrct/mrct.hpp>

using namespace mrct;

namespace {

constexpr double kLevel = 0.5;
constexpr std::size_t kGridPoints = 801;

EllipseGeometry numerical_ct_geometry(const WindowParams& wp) {
    const double C = level_constant(kLevel);
    const TFGrid g = window_wvd_grid(wp, C, kGridPoints);
    return extract_level_curve(window_wvd(wp, g), kLevel);
}

double rel(double num, double ref) { return std::abs(num - ref) / std::abs(ref); }

}  // namespace

TEST(EllipseCt, WorkedExample) {
    const EllipseGeometry e = ellipse_geometry_ct(WindowParams(2.0, 1.0), 1.0);
    ASSERT_TRUE(e.A_aux.has_value());
    EXPECT_NEAR(*e.A_aux, 1.9375, 1e-12);
    EXPECT_NEAR(e.long_axis_len, 16.254, 1e-3);
    EXPECT_NEAR(e.tan_theta, 1.0317, 1e-4);
}

TEST(EllipseCt, LengthIsLinearInC) {
    const WindowParams wp(0.7, 3.0);
    EXPECT_NEAR(ellipse_geometry_ct(wp, 2.5).long_axis_len, 2.5 * ellipse_geometry_ct(wp, 1.0).long_axis_len, 1e-12);
    EXPECT_EQ(ellipse_geometry_ct(wp, 2.5).tan_theta, ellipse_geometry_ct(wp, 1.0).tan_theta);
}

TEST(EllipseCt, LargeSigmaLimitIsBeta) {
    EXPECT_LT(std::abs(ellipse_geometry_ct(WindowParams(100.0, 5.0), 1.0).tan_theta - 5.0), 1e-3);
}

TEST(EllipseCt, SmallSigmaLowerBound) {
    const double bound = std::sqrt(1.0 / std::pow(0.3, 4) - 1.0);
    EXPECT_NEAR(bound, 11.07, 0.01);
    for (double beta : {0.01, 0.5, 1.0, 5.0, 20.0, 200.0}) {
        EXPECT_GE(ellipse_geometry_ct(WindowParams(0.3, beta), 1.0).tan_theta, bound - 1e-9) << beta;
    }
}

TEST(EllipseCt, UnchirpedWindowIsAxisAligned) {
    EXPECT_EQ(ellipse_geometry_ct(WindowParams(1.0, 0.0), 1.0).tan_theta, 0.0);
    EXPECT_EQ(ellipse_geometry_ct(WindowParams(2.0, 0.0), 1.0).tan_theta, 0.0);
    EXPECT_TRUE(std::isinf(ellipse_geometry_ct(WindowParams(0.5, 0.0), 1.0).tan_theta));
}

TEST(EllipseCt, LongAxisMonotonicity) {
    for (double sigma = 0.05; sigma <= 0.5 + 1e-12; sigma += 0.05) {
        double prev = 0.0;
        for (double beta = 0.0; beta <= 40.0; beta += 2.0) {
            const double l = ellipse_geometry_ct(WindowParams(sigma, beta), 1.0).long_axis_len;
            const double lm = ellipse_geometry_ct(WindowParams(sigma, -beta), 1.0).long_axis_len;
            EXPECT_DOUBLE_EQ(l, lm);
            EXPECT_GE(l, prev - 1e-9 * l) << sigma << " " << beta;
            prev = l;
        }
    }
    // In sigma the length falls while 1/sigma^2 dominates, i.e. up to
    // sigma = 1/sqrt(|beta|); beyond that the beta^2 sigma^2 term makes it grow.
    for (double beta : {0.0, 1.0, 5.0, 20.0}) {
        const double turn = beta == 0.0 ? 1.0 : std::min(1.0, 1.0 / std::sqrt(beta));
        double prev = std::numeric_limits<double>::infinity();
        for (double sigma = 0.05; sigma <= std::min(0.5, turn) + 1e-12; sigma += 0.01) {
            const double l = ellipse_geometry_ct(WindowParams(sigma, beta), 1.0).long_axis_len;
            EXPECT_LE(l, prev * (1.0 + 1e-12)) << sigma << " " << beta;
            prev = l;
        }
    }
    EXPECT_GT(ellipse_geometry_ct(WindowParams(0.5, 20.0), 1.0).long_axis_len,
              ellipse_geometry_ct(WindowParams(0.3, 20.0), 1.0).long_axis_len);
}

TEST(EllipseCt, RejectsNonPositiveLevel) {
    EXPECT_THROW(ellipse_geometry_ct(WindowParams(1.0, 1.0), 0.0), ValidationError);
    EXPECT_THROW(ellipse_geometry_rotation(WindowParams(1.0, 1.0), -1.0), ValidationError);
    EXPECT_THROW(level_constant(1.0), ValidationError);
}

TEST(EllipseCt, NumericalLevelCurveMatchesClosedForm) {
    const double C = level_constant(kLevel);
    for (double sigma : {2.0, 0.3}) {
        for (double beta : {0.0, 1.0, 5.0, 20.0}) {
            const WindowParams wp(sigma, beta);
            const EllipseGeometry cf = ellipse_geometry_ct(wp, C);
            const EllipseGeometry num = numerical_ct_geometry(wp);
            EXPECT_LE(rel(num.long_axis_len, cf.long_axis_len), 0.05) << sigma << " " << beta;
            if (std::isinf(cf.tan_theta)) {
                EXPECT_GT(std::abs(num.tan_theta), 20.0) << sigma << " " << beta;
            } else if (cf.tan_theta == 0.0) {
                EXPECT_LE(std::abs(num.tan_theta), 0.05) << sigma << " " << beta;
            } else {
                EXPECT_LE(rel(num.tan_theta, cf.tan_theta), 0.05) << sigma << " " << beta;
            }
        }
    }
}

TEST(EllipseCt, CircleHasZeroSlope) {
    EXPECT_LE(std::abs(numerical_ct_geometry(WindowParams(1.0, 0.0)).tan_theta), 0.05);
}

TEST(EllipseRotation, BranchExamples) {
    const EllipseGeometry a = ellipse_geometry_rotation(WindowParams(0.3, 5.0), 1.0);
    EXPECT_NEAR(a.long_axis_len, 2.0 / 0.3, 1e-12);
    EXPECT_EQ(a.tan_theta, 5.0);
    EXPECT_EQ(ellipse_geometry_rotation(WindowParams(1.0, 3.0), 1.0).tan_theta, 0.0);
    const EllipseGeometry c = ellipse_geometry_rotation(WindowParams(2.0, 1.0), 1.0);
    EXPECT_NEAR(c.long_axis_len, 4.0, 1e-12);
    EXPECT_EQ(c.tan_theta, -1.0);
}

TEST(EllipseRotation, UnchirpedWideWindowIsVertical) {
    // rotated_params(sigma > 1, 0) is a Gaussian of width 1/sqrt(sigma) < 1,
    // whose long axis is the frequency axis.
    const WindowParams wp(2.0, 0.0);
    EXPECT_TRUE(std::isinf(ellipse_geometry_rotation(wp, 1.0).tan_theta));
    EXPECT_TRUE(std::isinf(ellipse_geometry_ct(rotated_params(wp), 1.0).tan_theta));
}

TEST(EllipseRotation, ClosedFormsAgreeThroughRotatedParameters) {
    for (double sigma : {0.3, 0.5, 0.9, 1.0, 1.5, 2.0, 3.0}) {
        for (double beta : {0.5, 1.0, 5.0, 20.0, -3.0}) {
            const WindowParams wp(sigma, beta);
            const EllipseGeometry rot = ellipse_geometry_rotation(wp, 1.0);
            const EllipseGeometry via = ellipse_geometry_ct(rotated_params(wp), 1.0);
            EXPECT_NEAR(via.tan_theta, rot.tan_theta, 1e-9 * std::max(1.0, std::abs(rot.tan_theta)))
                << sigma << " " << beta;
            EXPECT_NEAR(via.long_axis_len, rot.long_axis_len, 1e-9 * rot.long_axis_len) << sigma << " " << beta;
        }
    }
}

TEST(EllipseRotation, NumericalBranchConsistency) {
    const double C = level_constant(kLevel);
    for (double sigma : {0.3, 0.5, 2.0, 3.0}) {
        for (double beta : {1.0, 5.0, 20.0}) {
            const WindowParams wp(sigma, beta);
            const EllipseGeometry cf = ellipse_geometry_rotation(wp, C);
            const EllipseGeometry num = numerical_ct_geometry(rotated_params(wp));
            EXPECT_LE(rel(num.tan_theta, cf.tan_theta), 0.05) << sigma << " " << beta;
            EXPECT_LE(rel(num.long_axis_len, cf.long_axis_len), 0.05) << sigma << " " << beta;
        }
    }
}

TEST(EllipseRotation, NumericalSmallSigmaSlopeIsBeta) {
    EXPECT_LE(rel(numerical_ct_geometry(rotated_params(WindowParams(0.3, 5.0))).tan_theta, 5.0), 0.05);
}

TEST(RotatedParams, Examples) {
    for (double beta : {0.0, 1.0, -4.0, 30.0}) {
        const WindowParams r = rotated_params(WindowParams(1.0, beta));
        EXPECT_NEAR(r.sigma(), 1.0, 1e-12);
        EXPECT_NEAR(r.beta(), 0.0, 1e-12);
    }
    for (double sigma : {0.2, 1.7}) {
        const WindowParams r = rotated_params(WindowParams(sigma, 0.0));
        EXPECT_NEAR(r.sigma() * r.sigma(), 1.0 / sigma, 1e-12);
        EXPECT_EQ(r.beta(), 0.0);
    }
    const WindowParams r = rotated_params(WindowParams(0.5, 2.0));
    EXPECT_NEAR(r.sigma() * r.sigma(), (1.0 + 0.25 * 4.0) / (0.5 * 5.0), 1e-12);
    EXPECT_NEAR(r.beta(), 2.0 * 0.75 / 2.0, 1e-12);
}

TEST(WindowWvd, PeakAndLevelSet) {
    const WindowParams wp(0.4, 3.0);
    const double C = level_constant(0.25);
    const TFGrid g = window_wvd_grid(wp, C, 201);
    const TFMatrix w = window_wvd(wp, g);
    EXPECT_NEAR(w.max_abs(), std::sqrt(2.0), 1e-9);
    // The grid covers the whole level set: its border stays below the level.
    for (std::size_t i = 0; i < 201; ++i) {
        EXPECT_LT(w.real_value(0, i), 0.25 * std::sqrt(2.0));
        EXPECT_LT(w.real_value(200, i), 0.25 * std::sqrt(2.0));
        EXPECT_LT(w.real_value(i, 0), 0.25 * std::sqrt(2.0));
        EXPECT_LT(w.real_value(i, 200), 0.25 * std::sqrt(2.0));
    }
}

TEST(LevelCurve, RejectsEmptyOrInvalidInput) {
    const TFGrid g(UniformAxis{0.0, 1.0, 3}, UniformAxis{0.0, 1.0, 3});
    EXPECT_THROW(extract_level_curve(TFMatrix::zeros(g, TFMatrix::Kind::real), 0.5), ValidationError);
    const TFMatrix one = TFMatrix::real(g, {0, 0, 0, 0, 1, 0, 0, 0, 0});
    EXPECT_THROW(extract_level_curve(one, 1.5), ValidationError);
}
