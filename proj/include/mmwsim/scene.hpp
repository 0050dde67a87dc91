// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>
#include <array>
#include <optional>
#include <vector>

#include "mmwsim/materials.hpp"

namespace mmwsim {

/// One piecewise-constant stretch of the obstacle's material profile,
/// [x_from, x_to) along the slab face.
struct ProfileSegment {
    double x_from = 0.0;
    double x_to = 0.0;
    Material material;
};

/// Which slab phase correction the transmission model applies (see em_kernels).
enum class SlabPhaseModel { excess, printed };

/// Thin dielectric slab between radar and target. Only the front face (normal
/// +y, toward the radar) carries equivalent currents; the thickness enters
/// through the transmission phase model.
struct SlabObstacle {
    double y_front = 0.25;     // m, front-face height
    double thickness = 0.009;  // m
    std::array<double, 2> x_extent{-0.25, 0.25};
    std::vector<ProfileSegment> profile;  // must tile x_extent contiguously
    SlabPhaseModel phase_model = SlabPhaseModel::excess;

    /// Material of the segment containing x. Throws if x lies outside x_extent
    /// or the profile does not cover it.
    const Material& material_at(double x) const;

    void validate() const;
};

/// Flat reflecting plate, normal +y.
struct TargetPlate {
    std::array<double, 2> x_extent{-0.05, 0.05};
    double y = 0.0;  // m
    Material material = Material::lossy(1.0, 2.28e6);
};

/// Monostatic scan line at constant height y_tr.
struct ScanPlan {
    double x_start = -0.125;  // m
    double x_step = 0.001;    // m
    int count = 251;
    double y_tr = 0.5;  // m

    Eigen::Vector2d position(int p) const;
    double x_end() const { return x_start + x_step * (count - 1); }
    void validate() const;
};

/// Stepped-frequency grid f_q = f_start + q*f_step, q in [0, count).
struct FrequencyGrid {
    double f_start = 77.2e9;    // Hz
    double f_step = 14.0625e6;  // Hz
    int count = 256;

    double frequency(int q) const;
    double f_max() const { return f_start + f_step * (count - 1); }
    /// Total swept bandwidth count*f_step (3.6 GHz for the canonical grid).
    double bandwidth() const { return f_step * count; }
    void validate() const;
};

struct Scene {
    ScanPlan scan;
    FrequencyGrid freq;
    std::optional<SlabObstacle> obstacle;
    std::optional<TargetPlate> target;

    void validate() const;
};

/// One integration element of a discretized surface.
struct SurfaceSample {
    Eigen::Vector2d position{0.0, 0.0};
    Eigen::Vector2d normal{0.0, 1.0};
    double segment_length = 0.0;  // m
    Material material;
};

/// Midpoint discretization of the obstacle front face with spacing
/// <= lambda_min / samples_per_wavelength. samples_per_wavelength must be >= 2.
std::vector<SurfaceSample> discretize(const SlabObstacle& slab, double lambda_min,
                                      double samples_per_wavelength);

/// Same for the target plate.
std::vector<SurfaceSample> discretize(const TargetPlate& plate, double lambda_min,
                                      double samples_per_wavelength);

/// Angle between the ray sample->source and the sample normal, in [0, pi].
/// Values >= pi/2 mean the source is behind or grazing the surface.
Angle incidence_angle(const Eigen::Vector2d& source, const SurfaceSample& sample);

/// Canonical measurement scenes: 251-point, 250 mm scan at y = 0.5 m;
/// 100 mm metal plate target at y = 0; 256 frequencies 77.2..80.8 GHz.
enum class PaperVariant {
    none,      // target only
    mdf,       // homogeneous 9 mm fiberboard slab at y = 0.25 m
    softwood,  // 10 mm slab with 10 mm alternating-permittivity stripes
};

/// Builds the canonical scene. softwood_pattern_offset_m shifts the stripe
/// pattern along +x (0 = first stripe material starts at x_extent minimum).
Scene build_paper_scene(PaperVariant variant, double softwood_pattern_offset_m = 0.0);

}  // namespace mmwsim
