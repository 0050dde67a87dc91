// SPDX-License-Identifier: Apache-2.0
#include "mmwsim/metrics.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>
#include <vector>

namespace mmwsim {

namespace {

void check_profile(const IntensityProfile& p, const char* who) {
    if (p.x.size() != p.intensity.size())
        throw std::invalid_argument(std::string(who) + ": x and intensity sizes differ");
    if (p.x.size() < 2)
        throw std::invalid_argument(std::string(who) + ": need at least two samples");
    if (!p.intensity.isFinite().all() || (p.intensity < 0.0).any())
        throw std::invalid_argument(std::string(who) +
                                    ": intensities must be finite and non-negative");
    for (Eigen::Index i = 1; i < p.x.size(); ++i)
        if (!(p.x[i] > p.x[i - 1]))
            throw std::invalid_argument(std::string(who) + ": x must be strictly increasing");
}

}  // namespace

IntensityProfile profile_at_target_center(const MagnitudeImage& image,
                                          std::array<double, 2> target_y_band) {
    if (image.values.rows() != image.y_axis.size() || image.values.cols() != image.x_axis.size())
        throw std::invalid_argument("profile_at_target_center: axis sizes do not match values");
    if (!(target_y_band[0] <= target_y_band[1]))
        throw std::invalid_argument("profile_at_target_center: empty y band");

    Eigen::Index best = -1;
    double best_sum = -1.0;
    for (Eigen::Index iy = 0; iy < image.y_axis.size(); ++iy) {
        const double y = image.y_axis[iy];
        if (y < target_y_band[0] || y > target_y_band[1]) continue;
        const double sum = image.values.row(iy).sum();
        if (sum > best_sum) {
            best_sum = sum;
            best = iy;
        }
    }
    if (best < 0)
        throw std::invalid_argument("profile_at_target_center: no image rows inside the y band");

    IntensityProfile p;
    p.x = image.x_axis;
    p.intensity = image.values.row(best).transpose().array();
    p.normalization_reference = image.values.size() > 0 ? image.values.maxCoeff() : 1.0;
    return p;
}

double fwhm_length(const IntensityProfile& profile) {
    check_profile(profile, "fwhm_length");
    const Eigen::Index n = profile.intensity.size();
    Eigen::Index peak = 0;
    const double max = profile.intensity.maxCoeff(&peak);
    if (!(max > 0.0)) throw std::invalid_argument("fwhm_length: profile has no positive peak");
    const double half = 0.5 * max;

    Eigen::Index lo = 0;
    while (profile.intensity[lo] < half) ++lo;  // exists: the peak is >= half
    if (lo == 0)
        throw std::invalid_argument(
            "fwhm_length: profile does not fall below half maximum at the left edge");
    Eigen::Index hi = n - 1;
    while (profile.intensity[hi] < half) --hi;
    if (hi == n - 1)
        throw std::invalid_argument(
            "fwhm_length: profile does not fall below half maximum at the right edge");

    const auto cross = [&](Eigen::Index below, Eigen::Index above) {
        const double v0 = profile.intensity[below];
        const double v1 = profile.intensity[above];
        return profile.x[below] +
               (half - v0) / (v1 - v0) * (profile.x[above] - profile.x[below]);
    };
    const double x_left = cross(lo - 1, lo);
    const double x_right = cross(hi + 1, hi);
    return x_right - x_left;
}

double relative_intensity(const IntensityProfile& profile, double reference_max) {
    check_profile(profile, "relative_intensity");
    if (!std::isfinite(reference_max) || !(reference_max > 0.0))
        throw std::invalid_argument("relative_intensity: reference must be finite and positive");
    return profile.intensity.maxCoeff() / reference_max;
}

double peak_spacing(const IntensityProfile& profile, double prominence_fraction) {
    check_profile(profile, "peak_spacing");
    if (!(prominence_fraction > 0.0) || !(prominence_fraction <= 1.0))
        throw std::invalid_argument("peak_spacing: prominence_fraction must be in (0, 1]");
    const Eigen::ArrayXd& v = profile.intensity;
    const Eigen::Index n = v.size();
    const double global_max = v.maxCoeff();
    if (!(global_max > 0.0))
        throw std::invalid_argument("peak_spacing: profile has no positive values");
    const double min_prominence = prominence_fraction * global_max;

    // Local maxima (plateaus collapse to their midpoint), then topographic
    // prominence: height above the higher of the two minima that separate the
    // peak from the nearest higher ground on each side.
    std::vector<Eigen::Index> peaks;
    for (Eigen::Index i = 1; i + 1 < n; ++i) {
        if (!(v[i] > v[i - 1])) continue;
        Eigen::Index j = i;
        while (j + 1 < n && v[j + 1] == v[i]) ++j;
        if (j + 1 < n && v[j + 1] < v[i]) peaks.push_back((i + j) / 2);
        i = j;
    }

    std::vector<double> kept_x;
    for (const Eigen::Index i : peaks) {
        const double h = v[i];
        double left_min = h;
        for (Eigen::Index k = i; k >= 0 && v[k] <= h; --k) left_min = std::min(left_min, v[k]);
        double right_min = h;
        for (Eigen::Index k = i; k < n && v[k] <= h; ++k) right_min = std::min(right_min, v[k]);
        const double prominence = h - std::max(left_min, right_min);
        if (prominence >= min_prominence) kept_x.push_back(profile.x[i]);
    }
    if (kept_x.size() < 2)
        throw std::invalid_argument("peak_spacing: fewer than two prominent peaks");
    return (kept_x.back() - kept_x.front()) / static_cast<double>(kept_x.size() - 1);
}

void write_profile_csv(const std::string& path, const IntensityProfile& profile) {
    check_profile(profile, "write_profile_csv");
    const double ref = profile.normalization_reference;
    if (!std::isfinite(ref) || !(ref > 0.0))
        throw std::invalid_argument("write_profile_csv: normalization_reference must be positive");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument(path + ": cannot open for writing");
    out.precision(17);
    out << "x_m,intensity,intensity_norm\n";
    for (Eigen::Index i = 0; i < profile.x.size(); ++i)
        out << profile.x[i] << ',' << profile.intensity[i] << ',' << profile.intensity[i] / ref
            << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace mmwsim
