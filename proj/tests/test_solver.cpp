// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>
#include <cmath>
#include <complex>
#include <cstring>
#include <limits>
#include <span>

#include "mmwsim/em_kernels.hpp"
#include "mmwsim/solver.hpp"

using namespace mmwsim;
using cplx = std::complex<double>;

namespace {

void check_close(cplx got, cplx want, double tol) {
    CAPTURE(got.real(), got.imag(), want.real(), want.imag(), tol);
    CHECK(std::abs(got - want) <= tol);
}

SurfaceSample sample_at(double x, double y, Material m, double dl = 5e-4) {
    SurfaceSample s;
    s.position = {x, y};
    s.normal = {0.0, 1.0};
    s.segment_length = dl;
    s.material = m;
    return s;
}

/// Small fast scene: 3 positions, 4 frequencies, short plate.
Scene tiny_scene(bool with_obstacle, Material slab_material = Material::vacuum()) {
    Scene scene;
    scene.scan = ScanPlan{-0.01, 0.01, 3, 0.5};
    scene.freq = FrequencyGrid{77.2e9, 14.0625e6, 4};
    scene.target = TargetPlate{{-0.02, 0.02}, 0.0, Material::lossy(1.0, 2.28e6)};
    if (with_obstacle) {
        SlabObstacle slab;
        slab.y_front = 0.25;
        slab.thickness = 0.009;
        slab.x_extent = {-0.1, 0.1};
        slab.profile = {{-0.1, 0.1, slab_material}};
        scene.obstacle = slab;
    }
    scene.validate();
    return scene;
}

}  // namespace

TEST_CASE("incident_fields carries the cylindrical wave and prior factor") {
    const SurfaceSample s = sample_at(0.0, 0.0, Material::vacuum());
    const IncidentField f = incident_fields({0.0, 1.0}, s, {1.0, 0.0}, {2.0, 0.0});
    // 2 * H0^(2)(1), frozen reference value.
    check_close(f.e_z, {2 * 0.76519768655796655, 2 * -0.088256964215676958}, 1e-12);
    check_close(f.h_t, f.e_z / eta0, 0.0);  // identical arithmetic
    CHECK_THROWS_AS(incident_fields({0.0, 1.0}, s, {1.0, 0.5}, {1.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(incident_fields({0.0, 1.0}, s, {0.0, 0.0}, {1.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(incident_fields({0.0, 0.0}, s, {1.0, 0.0}, {1.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("equivalent_currents applies the impedance-surface weights") {
    const Angle theta = Angle::from_degrees(30.0);
    const Material m = Material::lossless(4.0);
    const IncidentField inc{{0.3, -0.4}, {0.3 / eta0, -0.4 / eta0}};
    const SurfaceCurrents c = equivalent_currents(sample_at(0.0, 0.0, m), inc, theta);
    const cplx r = reflection_coefficient(theta, m);
    check_close(c.j_z, (1.0 - r) * inc.h_t * std::cos(theta.rad), 1e-15);
    check_close(c.m_t, (1.0 + r) * inc.e_z, 1e-15);

    // No contrast: reflection vanishes, both sheets carry the incident field.
    const SurfaceCurrents c0 = equivalent_currents(sample_at(0.0, 0.0, Material::vacuum()), inc,
                                                   Angle{0.0});
    check_close(c0.j_z, inc.h_t, 1e-15);
    check_close(c0.m_t, inc.e_z, 1e-15);
}

TEST_CASE("scattered_field reproduces the frozen single-element value") {
    const Scene scene = tiny_scene(false);
    const SurfaceSample s = sample_at(0.01, 0.0, Material::lossless(4.0));
    const FieldResult f =
        scattered_field({0.0, 0.5}, std::span(&s, 1), 79e9, ScatterPath::target, scene);
    CHECK_FALSE(f.all_grazing);
    check_close(f.value, {-4.413063738886938e-5, -9.646704273107268e-5}, 1e-14);
}

TEST_CASE("scattered_field handles empty and degenerate sample sets") {
    const Scene scene = tiny_scene(false);
    const FieldResult empty =
        scattered_field({0.0, 0.5}, std::span<const SurfaceSample>{}, 79e9,
                        ScatterPath::target, scene);
    CHECK(empty.value == cplx{0.0, 0.0});
    CHECK_FALSE(empty.all_grazing);

    // A single far-off element seen at ~89.5 degrees is excluded.
    const SurfaceSample grazing = sample_at(60.0, 0.0, Material::lossless(4.0));
    const FieldResult g =
        scattered_field({0.0, 0.5}, std::span(&grazing, 1), 79e9, ScatterPath::target, scene);
    CHECK(g.value == cplx{0.0, 0.0});
    CHECK(g.all_grazing);

    // Mixed: the grazing element contributes nothing, the usable one all.
    const SurfaceSample usable = sample_at(0.01, 0.0, Material::lossless(4.0));
    const SurfaceSample both[] = {grazing, usable};
    const FieldResult mixed =
        scattered_field({0.0, 0.5}, std::span(both, 2), 79e9, ScatterPath::target, scene);
    const FieldResult alone =
        scattered_field({0.0, 0.5}, std::span(&usable, 1), 79e9, ScatterPath::target, scene);
    CHECK_FALSE(mixed.all_grazing);
    CHECK(mixed.value == alone.value);

    CHECK_THROWS_AS(
        scattered_field({0.0, 0.5}, std::span(&usable, 1), 0.0, ScatterPath::target, scene),
        std::invalid_argument);
    const SurfaceSample coincident = sample_at(0.0, 0.5, Material::lossless(4.0));
    CHECK_THROWS_AS(scattered_field({0.0, 0.5}, std::span(&coincident, 1), 79e9,
                                    ScatterPath::target, scene),
                    std::invalid_argument);
}

TEST_CASE("monostatic scattering is mirror-symmetric to the bit") {
    const Scene scene = tiny_scene(false);
    const SurfaceSample right = sample_at(0.03, 0.0, Material::lossy(1.99, 0.112));
    const SurfaceSample left = sample_at(-0.03, 0.0, Material::lossy(1.99, 0.112));
    const FieldResult fr =
        scattered_field({0.01, 0.4}, std::span(&right, 1), 79e9, ScatterPath::target, scene);
    const FieldResult fl =
        scattered_field({-0.01, 0.4}, std::span(&left, 1), 79e9, ScatterPath::target, scene);
    CHECK(fr.value.real() == fl.value.real());
    CHECK(fr.value.imag() == fl.value.imag());
}

TEST_CASE("scattered magnitude falls off as 1/distance for the round trip") {
    const Scene scene = tiny_scene(false);
    const SurfaceSample s = sample_at(0.0, 0.0, Material::lossless(4.0));
    const double m1 =
        std::abs(scattered_field({0.0, 0.5}, std::span(&s, 1), 79e9, ScatterPath::target, scene)
                     .value);
    const double m2 =
        std::abs(scattered_field({0.0, 1.0}, std::span(&s, 1), 79e9, ScatterPath::target, scene)
                     .value);
    // |H0^(2)(kd)|^2 ~ 2/(pi k d): doubling d halves the power-like product.
    CHECK(m1 / m2 == Catch::Approx(2.0).epsilon(1e-4));
}

TEST_CASE("a contrast-free slab is exactly transparent to the target echo") {
    const Scene with = tiny_scene(true, Material::vacuum());
    const Scene without = tiny_scene(false);
    const Eigen::Vector2d tr{0.0, 0.5};
    const double f = 79e9;
    const double lam = c0 / with.freq.f_max();
    const auto target_with = discretize(*with.target, lam, 10.0);
    const auto target_without = discretize(*without.target, lam, 10.0);
    const cplx through =
        scattered_field(tr, target_with, f, ScatterPath::target, with).value;
    const cplx free =
        scattered_field(tr, target_without, f, ScatterPath::target, without).value;
    CHECK(through.real() == free.real());  // transmission factor is exactly one
    CHECK(through.imag() == free.imag());

    // And the slab's own backscatter cancels to rounding noise.
    const auto slab_samples = discretize(*with.obstacle, lam, 10.0);
    const cplx self = scattered_field(tr, slab_samples, f, ScatterPath::obstacle, with).value;
    CHECK(std::abs(self) <= 1e-12 * std::abs(free));
}

TEST_CASE("the slab factor is applied on both legs of the target path") {
    Scene scene = tiny_scene(true, Material::lossy(1.99, 0.112));
    scene.target->x_extent = {-5e-5, 5e-5};  // single element directly below
    scene.validate();
    const Eigen::Vector2d tr{0.0, 0.5};
    const double f = 79e9;
    const double lam = c0 / scene.freq.f_max();
    const auto target_samples = discretize(*scene.target, lam, 10.0);
    REQUIRE(target_samples.size() == 1);
    REQUIRE(target_samples[0].position.x() == 0.0);

    Scene bare = scene;
    bare.obstacle.reset();
    const cplx with =
        scattered_field(tr, target_samples, f, ScatterPath::target, scene).value;
    const cplx without =
        scattered_field(tr, target_samples, f, ScatterPath::target, bare).value;

    const Material slab_m = Material::lossy(1.99, 0.112);
    const cplx phi = slab_excess_phase(Angle{0.0}, slab_m, 0.009, f);
    const TransmissionPair tp = transmission_pair(Angle{0.0}, Material::vacuum(), slab_m);
    const cplx one_way = std::exp(cplx(0.0, 1.0) * phi) * tp.into * tp.out_of;
    check_close(with / without, one_way * one_way, 1e-12);
}

TEST_CASE("rays that miss the slab extent pass unmodified") {
    Scene far = tiny_scene(true, Material::lossy(1.99, 0.112));
    far.obstacle->x_extent = {-0.5, -0.4};  // far to the left of every ray
    far.obstacle->profile = {{-0.5, -0.4, Material::lossy(1.99, 0.112)}};
    far.validate();
    const Scene bare = tiny_scene(false);
    const double lam = c0 / far.freq.f_max();
    const auto samples = discretize(*far.target, lam, 10.0);
    const cplx a =
        scattered_field({0.0, 0.5}, samples, 79e9, ScatterPath::target, far).value;
    const cplx b =
        scattered_field({0.0, 0.5}, samples, 79e9, ScatterPath::target, bare).value;
    CHECK(a.real() == b.real());
    CHECK(a.imag() == b.imag());
}

TEST_CASE("the slab crossing point selects the slab segment") {
    // Slab lossy only for x > 0.049: the echo from a plate sample at x = 0.1
    // (crossing x = 0.05) is attenuated, its mirror at x = -0.1 is not.
    Scene scene = tiny_scene(true, Material::vacuum());
    scene.obstacle->profile = {{-0.1, 0.049, Material::vacuum()},
                               {0.049, 0.1, Material::lossy(1.99, 1.12)}};
    scene.target->x_extent = {-0.15, 0.15};
    scene.validate();
    const SurfaceSample right = sample_at(0.1, 0.0, Material::lossy(1.0, 2.28e6));
    const SurfaceSample left = sample_at(-0.1, 0.0, Material::lossy(1.0, 2.28e6));
    const double att =
        std::abs(scattered_field({0.0, 0.5}, std::span(&right, 1), 79e9, ScatterPath::target,
                                 scene)
                     .value);
    const double clear =
        std::abs(scattered_field({0.0, 0.5}, std::span(&left, 1), 79e9, ScatterPath::target,
                                 scene)
                     .value);
    CHECK(att < 0.1 * clear);  // the heavy-loss stripe eats the echo
}

TEST_CASE("total_signal sums body contributions and flags degenerate geometry") {
    const Scene scene = tiny_scene(true, Material::lossy(1.99, 0.112));
    const Eigen::Vector2d tr = scene.scan.position(1);
    const double f = scene.freq.frequency(0);
    const double lam = c0 / scene.freq.f_max();
    const cplx obstacle_part =
        scattered_field(tr, discretize(*scene.obstacle, lam, 10.0), f, ScatterPath::obstacle,
                        scene)
            .value;
    const cplx target_part =
        scattered_field(tr, discretize(*scene.target, lam, 10.0), f, ScatterPath::target, scene)
            .value;
    const FieldResult total = total_signal(tr, scene, f);
    check_close(total.value, obstacle_part + target_part, 1e-15);
    CHECK_FALSE(total.all_grazing);

    Scene empty;
    empty.scan = scene.scan;
    empty.freq = scene.freq;
    const FieldResult nothing = total_signal(tr, empty, f);
    CHECK(nothing.value == cplx{0.0, 0.0});
    CHECK_FALSE(nothing.all_grazing);
}

TEST_CASE("sweep fills the frequency-by-position matrix deterministically") {
    const Scene scene = tiny_scene(true, Material::lossy(1.99, 0.112));
    SweepOptions one;
    one.workers = 1;
    const Dataset a = sweep(scene, one);
    REQUIRE(a.data.rows() == scene.freq.count);
    REQUIRE(a.data.cols() == scene.scan.count);
    CHECK(a.data.allFinite());

    SweepOptions three;
    three.workers = 3;
    const Dataset b = sweep(scene, three);
    REQUIRE(b.data.rows() == a.data.rows());
    REQUIRE(b.data.cols() == a.data.cols());
    CHECK(std::memcmp(a.data.data(), b.data.data(),
                      sizeof(cplx) * a.data.size()) == 0);  // byte-identical

    // Entries match the per-point solver.
    const FieldResult direct =
        total_signal(scene.scan.position(2), scene, scene.freq.frequency(1));
    check_close(a.data(1, 2), direct.value, 1e-15);

    SweepOptions bad;
    bad.workers = 0;
    CHECK_THROWS_AS(sweep(scene, bad), std::invalid_argument);
}

TEST_CASE("sweep scales entries by the excitation amplitude exactly") {
    const Scene scene = tiny_scene(false);
    SweepOptions base;
    const Dataset a = sweep(scene, base);
    SweepOptions scaled = base;
    scaled.e0 = 2.5;
    const Dataset b = sweep(scene, scaled);
    for (int q = 0; q < scene.freq.count; ++q)
        for (int p = 0; p < scene.scan.count; ++p) {
            CHECK(b.data(q, p).real() == 2.5 * a.data(q, p).real());
            CHECK(b.data(q, p).imag() == 2.5 * a.data(q, p).imag());
        }
}

TEST_CASE("sweep reports non-finite results as a numerical error") {
    const Scene scene = tiny_scene(false);
    SweepOptions opts;
    opts.e0 = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(sweep(scene, opts), NumericalError);
}
