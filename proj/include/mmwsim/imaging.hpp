// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>

#include "mmwsim/solver.hpp"

namespace mmwsim {

/// Reconstruction grid in absolute scene coordinates (uniform, count-based).
struct GridSpec {
    double x0 = 0.0;
    double dx = 0.001;  // m, must be <= 1 mm
    int nx = 0;
    double y0 = 0.0;
    double dy = 0.002;  // m, must be <= 5 mm
    int ny = 0;

    /// x from the scan span at <= 1 mm; y from 0 to y_tr at 2 mm.
    static GridSpec default_for(const Dataset& ds);

    void validate() const;
};

/// Complex backprojected image; pixels(iy, ix) over (y_axis, x_axis).
struct ImageGrid {
    Eigen::ArrayXd x_axis;
    Eigen::ArrayXd y_axis;
    Eigen::MatrixXcd pixels;
};

/// Matched-filter backprojection:
///   pixel(x, y) = sum_p sum_q data(q, p) e^{+j 2 k_q (d(p; x, y) + range_offset)}
/// with d the transceiver-pixel distance and k_q the free-space wavenumber.
/// The phase sign cancels the forward model's two-way e^{-j 2 k d}.
/// Deterministic for any worker count (fixed p-then-q summation order).
ImageGrid backproject(const Dataset& ds, const GridSpec& grid, int workers = 1,
                      double range_offset = 0.0);

/// c / (2B) with B = count * f_step; requires count >= 2 (a single frequency
/// has no swept band).
double range_resolution(const FrequencyGrid& freq);

/// Pixel magnitudes scaled by a reference value.
struct MagnitudeImage {
    Eigen::ArrayXd x_axis;
    Eigen::ArrayXd y_axis;
    Eigen::MatrixXd values;
};

/// |pixels| / reference; reference defaults to the image's own maximum
/// (self-normalized to [0, 1]). Zero or non-finite reference is an error.
MagnitudeImage normalize(const ImageGrid& image, std::optional<double> reference = std::nullopt);

/// Optional acquisition metadata embedded in image files so analysis can
/// recover the range resolution.
struct ImageMeta {
    bool has_freq = false;
    FrequencyGrid freq;
};

/// 16-bit binary PGM (P5, big-endian samples, top row = max y) at `stem`.pgm,
/// self-normalized, plus a text sidecar `stem`.pgm.txt with axis metadata and
/// the magnitude scale.
void write_image_pgm16(const std::string& stem, const ImageGrid& image,
                       const ImageMeta& meta = {});

/// CSV "x_m,y_m,magnitude" with '#'-prefixed metadata lines (axes, optional
/// frequency grid). Exact round-trip companion of read_image_csv.
void write_image_csv(const std::string& path, const ImageGrid& image,
                     const ImageMeta& meta = {});

struct ImageFile {
    MagnitudeImage image;  // raw magnitudes (not normalized)
    ImageMeta meta;
};

ImageFile read_image_csv(const std::string& path);

}  // namespace mmwsim
