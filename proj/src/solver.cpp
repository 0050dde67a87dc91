// SPDX-License-Identifier: Apache-2.0
#include "mmwsim/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "mmwsim/em_kernels.hpp"
#include "mmwsim/parallel.hpp"

namespace mmwsim {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;
const double grazing_cutoff_rad = grazing_cutoff_deg * std::numbers::pi / 180.0;

// One-way slab factor e^{j phi} T_in T_out for the straight ray tr -> point,
// evaluated at the slab segment the ray crosses; 1 if the ray misses the slab.
std::complex<double> slab_one_way(const Eigen::Vector2d& tr, const Eigen::Vector2d& point,
                                  const SlabObstacle& slab, double freq_hz) {
    const double dy_total = tr.y() - point.y();
    if (!(dy_total > 0.0)) return {1.0, 0.0};  // ray does not descend through the slab
    const double t = (tr.y() - slab.y_front) / dy_total;
    if (t <= 0.0 || t >= 1.0) return {1.0, 0.0};  // crossing not between endpoints
    const double x_cross = tr.x() + (point.x() - tr.x()) * t;
    if (x_cross < slab.x_extent[0] || x_cross > slab.x_extent[1]) return {1.0, 0.0};

    const Material& mat = slab.material_at(x_cross);
    const Eigen::Vector2d v = tr - point;
    const double cos_ray = dy_total / v.norm();  // vs the slab normal +y
    const Angle theta{std::acos(std::clamp(cos_ray, -1.0, 1.0))};
    const TransmissionPair tp = transmission_pair(theta, Material::vacuum(), mat);
    const std::complex<double> phi = slab.phase_model == SlabPhaseModel::printed
                                         ? slab_phase(theta, mat, slab.thickness, freq_hz)
                                         : slab_excess_phase(theta, mat, slab.thickness, freq_hz);
    return std::exp(std::complex<double>(0.0, 1.0) * phi) * tp.into * tp.out_of;
}

}  // namespace

IncidentField incident_fields(const Eigen::Vector2d& tr, const SurfaceSample& sample,
                              std::complex<double> k, std::complex<double> prior) {
    if (k.imag() != 0.0)
        throw std::invalid_argument("incident_fields: free-space wavenumber must be real");
    if (!(k.real() > 0.0))
        throw std::invalid_argument("incident_fields: wavenumber must be positive");
    const double d = (tr - sample.position).norm();
    if (!(d > 0.0))
        throw std::invalid_argument("incident_fields: transceiver coincides with sample");
    IncidentField f;
    f.e_z = prior * hankel_h0_2(k.real() * d);
    f.h_t = f.e_z / eta0;
    return f;
}

SurfaceCurrents equivalent_currents(const SurfaceSample& sample, const IncidentField& inc,
                                    Angle theta_i) {
    const std::complex<double> r = reflection_coefficient(theta_i, sample.material);
    SurfaceCurrents c;
    c.j_z = (1.0 - r) * inc.h_t * std::cos(theta_i.rad);
    c.m_t = (1.0 + r) * inc.e_z;
    return c;
}

FieldResult scattered_field(const Eigen::Vector2d& tr, std::span<const SurfaceSample> samples,
                            double freq_hz, ScatterPath path, const Scene& scene) {
    if (!(freq_hz > 0.0))
        throw std::invalid_argument("scattered_field: frequency must be positive");
    const double k0 = two_pi * freq_hz / c0;
    const double omega = two_pi * freq_hz;
    const std::complex<double> j(0.0, 1.0);
    const SlabObstacle* slab =
        (path == ScatterPath::target && scene.obstacle) ? &*scene.obstacle : nullptr;

    std::complex<double> acc{0.0, 0.0};
    bool any_used = false;
    for (const SurfaceSample& s : samples) {
        const Eigen::Vector2d v = tr - s.position;
        const double d = v.norm();
        if (!(d > 0.0))
            throw std::invalid_argument("scattered_field: transceiver coincides with a sample");
        const double cos_i = std::clamp(v.dot(s.normal) / d, -1.0, 1.0);
        const Angle theta{std::acos(cos_i)};
        if (theta.rad >= grazing_cutoff_rad) continue;
        any_used = true;

        std::complex<double> prior{1.0, 0.0};
        if (slab != nullptr) prior = slab_one_way(tr, s.position, *slab, freq_hz);

        const std::complex<double> h = hankel_h0_2(k0 * d);
        const std::complex<double> e_i = prior * h;
        const std::complex<double> r = reflection_coefficient(theta, s.material);
        const std::complex<double> j_z = (1.0 - r) * (e_i / eta0) * cos_i;
        const std::complex<double> m_t = (1.0 + r) * e_i;
        // G = -(1/4j) H0^(2)(k d); monostatic return angle equals theta_i.
        const std::complex<double> green = j * 0.25 * h;
        std::complex<double> contrib =
            (-j * omega * mu0 * j_z + j * k0 * cos_i * m_t) * green * s.segment_length;
        if (slab != nullptr) contrib *= prior;  // return leg, identical factor
        acc += contrib;
    }
    if (!samples.empty() && !any_used) return {std::complex<double>{0.0, 0.0}, true};
    return {acc, false};
}

FieldResult total_signal(const Eigen::Vector2d& tr, const Scene& scene, double freq_hz,
                         double samples_per_wavelength) {
    scene.validate();
    const double lambda_min = c0 / scene.freq.f_max();
    std::vector<SurfaceSample> obstacle_samples;
    std::vector<SurfaceSample> target_samples;
    if (scene.obstacle)
        obstacle_samples = discretize(*scene.obstacle, lambda_min, samples_per_wavelength);
    if (scene.target)
        target_samples = discretize(*scene.target, lambda_min, samples_per_wavelength);

    FieldResult total;
    bool degenerate = false, any_body = false;
    if (scene.obstacle) {
        const FieldResult f =
            scattered_field(tr, obstacle_samples, freq_hz, ScatterPath::obstacle, scene);
        total.value += f.value;
        degenerate |= f.all_grazing;
        any_body = true;
    }
    if (scene.target) {
        const FieldResult f =
            scattered_field(tr, target_samples, freq_hz, ScatterPath::target, scene);
        total.value += f.value;
        degenerate |= f.all_grazing;
        any_body = true;
    }
    total.all_grazing = any_body && degenerate;
    return total;
}

Dataset sweep(const Scene& scene, const SweepOptions& opts) {
    scene.validate();
    if (opts.workers < 1) throw std::invalid_argument("sweep: workers must be >= 1");
    const double lambda_min = c0 / scene.freq.f_max();
    std::vector<SurfaceSample> obstacle_samples;
    std::vector<SurfaceSample> target_samples;
    if (scene.obstacle)
        obstacle_samples = discretize(*scene.obstacle, lambda_min, opts.samples_per_wavelength);
    if (scene.target)
        target_samples = discretize(*scene.target, lambda_min, opts.samples_per_wavelength);

    const int np = scene.scan.count;
    const int nq = scene.freq.count;
    Dataset ds{Eigen::MatrixXcd::Zero(nq, np), scene.scan, scene.freq};

    parallel_chunks(static_cast<std::size_t>(np) * nq, opts.workers,
                    [&](std::size_t begin, std::size_t end) {
                        for (std::size_t i = begin; i < end; ++i) {
                            const int q = static_cast<int>(i / np);
                            const int p = static_cast<int>(i % np);
                            const Eigen::Vector2d tr = scene.scan.position(p);
                            const double f = scene.freq.frequency(q);
                            std::complex<double> v{0.0, 0.0};
                            if (scene.obstacle)
                                v += scattered_field(tr, obstacle_samples, f,
                                                     ScatterPath::obstacle, scene)
                                         .value;
                            if (scene.target)
                                v += scattered_field(tr, target_samples, f, ScatterPath::target,
                                                     scene)
                                         .value;
                            ds.data(q, p) = v * opts.e0;
                        }
                    });

    if (!ds.data.allFinite()) throw NumericalError("sweep: non-finite dataset entry");
    return ds;
}

}  // namespace mmwsim
