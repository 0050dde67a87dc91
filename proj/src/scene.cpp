// SPDX-License-Identifier: Apache-2.0
#include "mmwsim/scene.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace mmwsim {

namespace {

// Canonical scene materials. The fiberboard loss value follows the building-
// material model this scenario is drawn from (eps'' ~ 0.11 at 79 GHz).
const Material kMdf = Material::lossy(1.99, 0.112);
const Material kSoftwoodAlt = Material::lossy(2.5, 0.2);
const Material kMetal = Material::lossy(1.0, 2.28e6);

std::vector<SurfaceSample> discretize_span(double x0, double x1, double y, double lambda_min,
                                           double spw, const SlabObstacle* profile_of) {
    if (!(lambda_min > 0.0)) throw std::invalid_argument("discretize: lambda_min must be positive");
    if (!(spw >= 2.0))
        throw std::invalid_argument("discretize: samples_per_wavelength must be >= 2");
    if (!(x1 > x0)) throw std::invalid_argument("discretize: empty extent");
    const double max_spacing = lambda_min / spw;
    const int n = static_cast<int>(std::ceil((x1 - x0) / max_spacing));
    const double dx = (x1 - x0) / n;
    std::vector<SurfaceSample> out;
    out.reserve(n);
    for (int i = 0; i < n; ++i) {
        SurfaceSample s;
        const double xc = x0 + (i + 0.5) * dx;
        s.position = Eigen::Vector2d(xc, y);
        s.normal = Eigen::Vector2d(0.0, 1.0);
        s.segment_length = dx;
        if (profile_of != nullptr) s.material = profile_of->material_at(xc);
        out.push_back(s);
    }
    return out;
}

}  // namespace

const Material& SlabObstacle::material_at(double x) const {
    if (x < x_extent[0] || x > x_extent[1])
        throw std::invalid_argument("obstacle profile lookup outside x_extent: x = " +
                                    std::to_string(x));
    // Segments tile the extent left to right; first segment whose end covers x.
    auto it = std::upper_bound(profile.begin(), profile.end(), x,
                               [](double v, const ProfileSegment& s) { return v < s.x_to; });
    if (it == profile.end()) {
        if (!profile.empty() && x >= profile.back().x_from) return profile.back().material;
        throw std::invalid_argument("obstacle profile does not cover x = " + std::to_string(x));
    }
    if (x < it->x_from)
        throw std::invalid_argument("obstacle profile gap at x = " + std::to_string(x));
    return it->material;
}

void SlabObstacle::validate() const {
    if (!(thickness > 0.0)) throw std::invalid_argument("obstacle.thickness_m must be positive");
    if (!(x_extent[1] > x_extent[0]))
        throw std::invalid_argument("obstacle.x_extent_m must be a non-empty interval");
    if (profile.empty()) throw std::invalid_argument("obstacle.profile must not be empty");
    const double tol = 1e-9;
    if (std::abs(profile.front().x_from - x_extent[0]) > tol)
        throw std::invalid_argument("obstacle.profile must start at x_extent_m[0]");
    for (std::size_t i = 0; i < profile.size(); ++i) {
        if (!(profile[i].x_to > profile[i].x_from))
            throw std::invalid_argument("obstacle.profile segment " + std::to_string(i) +
                                        " is empty or reversed");
        if (i > 0 && std::abs(profile[i].x_from - profile[i - 1].x_to) > tol)
            throw std::invalid_argument("obstacle.profile has a gap/overlap before segment " +
                                        std::to_string(i));
    }
    if (std::abs(profile.back().x_to - x_extent[1]) > tol)
        throw std::invalid_argument("obstacle.profile must end at x_extent_m[1]");
}

Eigen::Vector2d ScanPlan::position(int p) const {
    if (p < 0 || p >= count) throw std::out_of_range("scan position index out of range");
    return {x_start + x_step * p, y_tr};
}

void ScanPlan::validate() const {
    if (count < 1) throw std::invalid_argument("radar.count must be >= 1");
    if (!(x_step > 0.0)) throw std::invalid_argument("radar.x_step_m must be positive");
    if (!(y_tr > 0.0)) throw std::invalid_argument("radar.y_tr_m must be positive");
}

double FrequencyGrid::frequency(int q) const {
    if (q < 0 || q >= count) throw std::out_of_range("frequency index out of range");
    return f_start + f_step * q;
}

void FrequencyGrid::validate() const {
    if (count < 1) throw std::invalid_argument("frequency.count must be >= 1");
    if (!(f_start > 0.0)) throw std::invalid_argument("frequency.start_hz must be positive");
    if (!(f_step > 0.0)) throw std::invalid_argument("frequency.step_hz must be positive");
}

void Scene::validate() const {
    scan.validate();
    freq.validate();
    if (obstacle) {
        obstacle->validate();
        if (!(obstacle->y_front < scan.y_tr))
            throw std::invalid_argument("obstacle.y_front_m must be below the scan line");
    }
    if (target) {
        if (!(target->x_extent[1] > target->x_extent[0]))
            throw std::invalid_argument("target.x_extent_m must be a non-empty interval");
        if (!(target->y < scan.y_tr))
            throw std::invalid_argument("target must be below the scan line");
        if (obstacle && !(target->y < obstacle->y_front))
            throw std::invalid_argument("target must be below the obstacle front face");
    }
}

std::vector<SurfaceSample> discretize(const SlabObstacle& slab, double lambda_min,
                                      double samples_per_wavelength) {
    slab.validate();
    return discretize_span(slab.x_extent[0], slab.x_extent[1], slab.y_front, lambda_min,
                           samples_per_wavelength, &slab);
}

std::vector<SurfaceSample> discretize(const TargetPlate& plate, double lambda_min,
                                      double samples_per_wavelength) {
    auto samples = discretize_span(plate.x_extent[0], plate.x_extent[1], plate.y, lambda_min,
                                   samples_per_wavelength, nullptr);
    for (auto& s : samples) s.material = plate.material;
    return samples;
}

Angle incidence_angle(const Eigen::Vector2d& source, const SurfaceSample& sample) {
    const Eigen::Vector2d v = source - sample.position;
    const double d = v.norm();
    if (!(d > 0.0)) throw std::invalid_argument("incidence_angle: source coincides with sample");
    const double c = std::clamp(v.dot(sample.normal) / d, -1.0, 1.0);
    return Angle{std::acos(c)};
}

Scene build_paper_scene(PaperVariant variant, double softwood_pattern_offset_m) {
    Scene scene;
    scene.scan = ScanPlan{-0.125, 0.001, 251, 0.5};
    scene.freq = FrequencyGrid{77.2e9, 14.0625e6, 256};
    scene.target = TargetPlate{{-0.05, 0.05}, 0.0, kMetal};

    if (variant != PaperVariant::none) {
        SlabObstacle slab;
        slab.y_front = 0.25;
        slab.x_extent = {scene.scan.x_start - 0.125, scene.scan.x_end() + 0.125};
        slab.phase_model = SlabPhaseModel::excess;
        if (variant == PaperVariant::mdf) {
            slab.thickness = 0.009;
            slab.profile = {{slab.x_extent[0], slab.x_extent[1], kMdf}};
        } else {
            slab.thickness = 0.010;
            // 10 mm stripes alternating between the two permittivities; the
            // pattern phase is anchored at x_extent[0] + offset.
            const double period = 0.010;
            const double anchor = slab.x_extent[0] + softwood_pattern_offset_m;
            double x = slab.x_extent[0];
            while (x < slab.x_extent[1] - 1e-12) {
                const double idx = std::floor((x - anchor) / period + 1e-9);
                const double seg_end =
                    std::min(slab.x_extent[1], anchor + (idx + 1.0) * period);
                const bool first = static_cast<long long>(std::llround(idx)) % 2 == 0;
                slab.profile.push_back({x, seg_end, first ? kMdf : kSoftwoodAlt});
                x = seg_end;
            }
        }
        scene.obstacle = slab;
    }
    scene.validate();
    return scene;
}

}  // namespace mmwsim
