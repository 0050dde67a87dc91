// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <string>

#include "mmwsim/imaging.hpp"

namespace mmwsim {

/// Cross-range intensity cut through an image row.
struct IntensityProfile {
    Eigen::ArrayXd x;          // m
    Eigen::ArrayXd intensity;  // non-negative magnitudes
    /// Reference value used when exporting normalized intensity (the source
    /// image's global maximum by default).
    double normalization_reference = 1.0;
};

/// Magnitude-vs-x cut along the row with the largest total magnitude among
/// rows with y inside target_y_band. Errors if the band contains no rows.
IntensityProfile profile_at_target_center(const MagnitudeImage& image,
                                          std::array<double, 2> target_y_band);

/// Full width at half maximum: distance between the outermost crossings of
/// max/2, linearly interpolated between samples. Requires a positive maximum
/// and at least one sample below half max (errors on flat profiles).
double fwhm_length(const IntensityProfile& profile);

/// Peak of the profile divided by reference_max (reference_max > 0, finite).
double relative_intensity(const IntensityProfile& profile, double reference_max);

/// Mean spacing of consecutive local maxima with topographic prominence of at
/// least prominence_fraction * max(profile). Errors with fewer than two peaks.
double peak_spacing(const IntensityProfile& profile, double prominence_fraction = 0.1);

/// CSV "x_m,intensity,intensity_norm" (normalized by normalization_reference).
void write_profile_csv(const std::string& path, const IntensityProfile& profile);

}  // namespace mmwsim
