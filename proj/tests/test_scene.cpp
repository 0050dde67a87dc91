// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "mmwsim/scene.hpp"
#include "mmwsim/scene_io.hpp"

using namespace mmwsim;

namespace {

// Highest frequency of the canonical grid; the solver discretizes there.
constexpr double f_max = 77.2e9 + 255 * 14.0625e6;
const double lambda_min = c0 / f_max;

}  // namespace

TEST_CASE("discretize covers the target plate at the requested density") {
    const TargetPlate plate;
    const auto samples = discretize(plate, lambda_min, 10.0);
    // 100 mm extent at lambda_min/10 = 0.371 mm spacing -> 270 segments.
    REQUIRE(samples.size() == 270);
    const double dl = 0.1 / 270.0;
    CHECK(dl <= lambda_min / 10.0);
    double total = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const SurfaceSample& s = samples[i];
        total += s.segment_length;
        CHECK(s.segment_length == Catch::Approx(dl).epsilon(1e-12));
        CHECK(s.position.y() == 0.0);
        CHECK(s.position.x() ==
              Catch::Approx(-0.05 + (i + 0.5) * dl).margin(1e-12));
        CHECK(s.normal.x() == 0.0);
        CHECK(s.normal.y() == 1.0);
        CHECK(s.material.eps_rel == plate.material.eps_rel);
    }
    CHECK(total == Catch::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("discretize assigns stripe materials by position") {
    const Scene scene = build_paper_scene(PaperVariant::softwood);
    REQUIRE(scene.obstacle.has_value());
    const auto samples = discretize(*scene.obstacle, lambda_min, 10.0);
    REQUIRE(samples.size() >= 1340);  // 500 mm face at <= 0.3711 mm spacing
    for (const SurfaceSample& s : samples) {
        CHECK(s.position.y() == scene.obstacle->y_front);
        const int stripe = static_cast<int>(std::floor((s.position.x() + 0.25) / 0.010));
        const double want_re = stripe % 2 == 0 ? 1.99 : 2.5;
        CHECK(s.material.eps_rel.real() == want_re);
    }
}

TEST_CASE("discretize input validation") {
    const TargetPlate plate;
    CHECK_THROWS_AS(discretize(plate, lambda_min, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(discretize(plate, 0.0, 10.0), std::invalid_argument);
    TargetPlate empty = plate;
    empty.x_extent = {0.05, 0.05};
    CHECK_THROWS_AS(discretize(empty, lambda_min, 10.0), std::invalid_argument);
}

TEST_CASE("incidence_angle geometry") {
    SurfaceSample s;
    s.position = {0.0, 0.0};
    s.normal = {0.0, 1.0};
    CHECK(incidence_angle({0.0, 0.5}, s).degrees() == Catch::Approx(0.0).margin(1e-12));
    CHECK(incidence_angle({0.3, 0.3}, s).degrees() == Catch::Approx(45.0).epsilon(1e-12));
    CHECK(incidence_angle({0.1, 0.4}, s).degrees() ==
          Catch::Approx(std::atan2(0.1, 0.4) * 180.0 / std::numbers::pi).epsilon(1e-12));
    CHECK(incidence_angle({0.1, 0.4}, s).degrees() == Catch::Approx(14.0362434679).epsilon(1e-9));
    CHECK_THROWS_AS(incidence_angle({0.0, 0.0}, s), std::invalid_argument);
}

TEST_CASE("slab material lookup uses half-open segments") {
    const Scene scene = build_paper_scene(PaperVariant::softwood);
    const SlabObstacle& slab = *scene.obstacle;
    CHECK(slab.material_at(-0.25).eps_rel.real() == 1.99);
    CHECK(slab.material_at(-0.2401).eps_rel.real() == 1.99);
    CHECK(slab.material_at(-0.24).eps_rel.real() == 2.5);   // boundary -> next stripe
    CHECK(slab.material_at(-0.2301).eps_rel.real() == 2.5);
    CHECK(slab.material_at(0.25).eps_rel.real() == 2.5);    // closed right end
    CHECK_THROWS_AS(slab.material_at(0.2501), std::invalid_argument);
    CHECK_THROWS_AS(slab.material_at(-0.2501), std::invalid_argument);
}

TEST_CASE("canonical scene variants") {
    const Scene none = build_paper_scene(PaperVariant::none);
    CHECK_FALSE(none.obstacle.has_value());
    REQUIRE(none.target.has_value());
    CHECK(none.scan.x_start == -0.125);
    CHECK(none.scan.x_step == 0.001);
    CHECK(none.scan.count == 251);
    CHECK(none.scan.y_tr == 0.5);
    CHECK(none.scan.x_end() == Catch::Approx(0.125).margin(1e-12));
    CHECK(none.freq.f_start == 77.2e9);
    CHECK(none.freq.f_step == 14.0625e6);
    CHECK(none.freq.count == 256);
    CHECK(none.freq.bandwidth() == 3.6e9);  // exact in floating point
    CHECK(none.freq.f_max() == Catch::Approx(80.7859375e9).epsilon(1e-15));
    CHECK(none.target->x_extent[0] == -0.05);
    CHECK(none.target->x_extent[1] == 0.05);
    CHECK(none.target->y == 0.0);
    CHECK(none.target->material.eps_rel.real() == 1.0);
    CHECK(none.target->material.eps_rel.imag() == -2.28e6);

    const Scene mdf = build_paper_scene(PaperVariant::mdf);
    REQUIRE(mdf.obstacle.has_value());
    CHECK(mdf.obstacle->y_front == 0.25);
    CHECK(mdf.obstacle->thickness == 0.009);
    CHECK(mdf.obstacle->x_extent[0] == -0.25);
    CHECK(mdf.obstacle->x_extent[1] == 0.25);
    CHECK(mdf.obstacle->phase_model == SlabPhaseModel::excess);
    REQUIRE(mdf.obstacle->profile.size() == 1);
    CHECK(mdf.obstacle->profile[0].material.eps_rel == std::complex<double>(1.99, -0.112));

    const Scene sw = build_paper_scene(PaperVariant::softwood);
    REQUIRE(sw.obstacle.has_value());
    CHECK(sw.obstacle->thickness == 0.010);
    REQUIRE(sw.obstacle->profile.size() == 50);
    for (std::size_t i = 0; i < 50; ++i) {
        const ProfileSegment& seg = sw.obstacle->profile[i];
        CHECK(seg.x_from == Catch::Approx(-0.25 + 0.01 * i).margin(1e-12));
        CHECK(seg.x_to == Catch::Approx(-0.24 + 0.01 * i).margin(1e-12));
        const std::complex<double> want =
            i % 2 == 0 ? std::complex<double>(1.99, -0.112) : std::complex<double>(2.5, -0.2);
        CHECK(seg.material.eps_rel == want);
    }
}

TEST_CASE("softwood stripe pattern offset shifts the boundaries") {
    const Scene sw = build_paper_scene(PaperVariant::softwood, 0.004);
    REQUIRE(sw.obstacle.has_value());
    const auto& profile = sw.obstacle->profile;
    REQUIRE(profile.size() == 51);  // 4 mm lead-in stripe + 50 full/partial
    CHECK(profile.front().x_from == -0.25);
    CHECK(profile.front().x_to == Catch::Approx(-0.246).margin(1e-12));
    // The lead-in continues the alternation from the left (odd stripe).
    CHECK(profile.front().material.eps_rel.real() == 2.5);
    CHECK(profile[1].material.eps_rel.real() == 1.99);
    CHECK(profile[1].x_to == Catch::Approx(-0.236).margin(1e-12));
    CHECK(profile.back().x_to == Catch::Approx(0.25).margin(1e-12));
}

TEST_CASE("scene validation rejects inconsistent geometry") {
    Scene scene = build_paper_scene(PaperVariant::mdf);
    scene.obstacle->y_front = 0.6;  // above the scan line
    CHECK_THROWS_AS(scene.validate(), std::invalid_argument);

    scene = build_paper_scene(PaperVariant::mdf);
    scene.target->y = 0.3;  // above the obstacle front face
    CHECK_THROWS_AS(scene.validate(), std::invalid_argument);

    scene = build_paper_scene(PaperVariant::mdf);
    scene.obstacle->profile[0].x_to = 0.2;  // no longer covers x_extent
    CHECK_THROWS_AS(scene.validate(), std::invalid_argument);

    scene = build_paper_scene(PaperVariant::mdf);
    scene.scan.count = 0;
    CHECK_THROWS_AS(scene.validate(), std::invalid_argument);

    scene = build_paper_scene(PaperVariant::mdf);
    scene.freq.f_step = 0.0;
    CHECK_THROWS_AS(scene.validate(), std::invalid_argument);
}

TEST_CASE("scan and frequency grids index their axes") {
    const Scene scene = build_paper_scene(PaperVariant::none);
    CHECK(scene.scan.position(0).x() == -0.125);
    CHECK(scene.scan.position(0).y() == 0.5);
    CHECK(scene.scan.position(250).x() == Catch::Approx(0.125).margin(1e-12));
    CHECK_THROWS_AS(scene.scan.position(251), std::out_of_range);
    CHECK_THROWS_AS(scene.scan.position(-1), std::out_of_range);
    CHECK(scene.freq.frequency(0) == 77.2e9);
    CHECK(scene.freq.frequency(255) == scene.freq.f_max());
    CHECK_THROWS_AS(scene.freq.frequency(256), std::out_of_range);
}

TEST_CASE("scene TOML round-trips every variant exactly") {
    for (const PaperVariant v :
         {PaperVariant::none, PaperVariant::mdf, PaperVariant::softwood}) {
        const Scene a = build_paper_scene(v);
        const Scene b = parse_scene_toml(scene_to_toml(a), "roundtrip");
        CHECK(a.scan.x_start == b.scan.x_start);
        CHECK(a.scan.x_step == b.scan.x_step);
        CHECK(a.scan.count == b.scan.count);
        CHECK(a.scan.y_tr == b.scan.y_tr);
        CHECK(a.freq.f_start == b.freq.f_start);
        CHECK(a.freq.f_step == b.freq.f_step);
        CHECK(a.freq.count == b.freq.count);
        REQUIRE(a.obstacle.has_value() == b.obstacle.has_value());
        if (a.obstacle) {
            CHECK(a.obstacle->y_front == b.obstacle->y_front);
            CHECK(a.obstacle->thickness == b.obstacle->thickness);
            CHECK(a.obstacle->x_extent == b.obstacle->x_extent);
            CHECK(a.obstacle->phase_model == b.obstacle->phase_model);
            REQUIRE(a.obstacle->profile.size() == b.obstacle->profile.size());
            for (std::size_t i = 0; i < a.obstacle->profile.size(); ++i) {
                CHECK(a.obstacle->profile[i].x_from == b.obstacle->profile[i].x_from);
                CHECK(a.obstacle->profile[i].x_to == b.obstacle->profile[i].x_to);
                CHECK(a.obstacle->profile[i].material.eps_rel ==
                      b.obstacle->profile[i].material.eps_rel);
            }
        }
        REQUIRE(a.target.has_value() == b.target.has_value());
        if (a.target) {
            CHECK(a.target->x_extent == b.target->x_extent);
            CHECK(a.target->y == b.target->y);
            CHECK(a.target->material.eps_rel == b.target->material.eps_rel);
        }
    }
}

TEST_CASE("scene TOML defaults and present flags") {
    // An empty document yields the default scan/frequency grids and no bodies.
    const Scene empty = parse_scene_toml("", "empty");
    CHECK(empty.scan.count == 251);
    CHECK(empty.freq.count == 256);
    CHECK_FALSE(empty.obstacle.has_value());
    CHECK_FALSE(empty.target.has_value());

    const Scene off = parse_scene_toml("[target]\npresent = false\neps_re = 1.0\n", "off");
    CHECK_FALSE(off.target.has_value());

    const Scene on = parse_scene_toml("[target]\ny_m = 0.01\n", "on");
    REQUIRE(on.target.has_value());
    CHECK(on.target->y == 0.01);
    CHECK(on.target->material.eps_rel.imag() == -2.28e6);  // default plate kept
}

TEST_CASE("scene TOML diagnostics carry file and line") {
    const auto message = [](auto fn) -> std::string {
        try {
            fn();
            FAIL("expected a parse error");
        } catch (const std::invalid_argument& e) {
            return e.what();
        }
        return {};
    };

    std::string m = message([] { parse_scene_toml("[radar]\nbogus_key = 1\n", "f.toml"); });
    CHECK(m.find("f.toml:2") != std::string::npos);
    CHECK(m.find("bogus_key") != std::string::npos);

    m = message([] { parse_scene_toml("[nope]\n", "f.toml"); });
    CHECK(m.find("unknown section") != std::string::npos);

    m = message([] { parse_scene_toml("[radar]\ncount = 12.5\n", "f.toml"); });
    CHECK(m.find("integer") != std::string::npos);

    m = message([] { parse_scene_toml("[radar]\ncount = \n", "f.toml"); });
    CHECK(m.find("f.toml:2") != std::string::npos);

    m = message([] { parse_scene_toml("[radar]\ncount = 5\ncount = 6\n", "f.toml"); });
    CHECK(m.find("duplicate key") != std::string::npos);

    m = message([] { parse_scene_toml("x_step_m = 0.001\n", "f.toml"); });
    CHECK(m.find("outside of any [section]") != std::string::npos);

    m = message([] {
        parse_scene_toml("[obstacle]\nprofile = [{ x_from_m = -0.1, x_to_m = 0.1 }]\n", "f.toml");
    });
    CHECK(m.find("f.toml") != std::string::npos);  // profile does not span x_extent

    m = message([] { parse_scene_toml("[obstacle]\nphase_model = \"fancy\"\n", "f.toml"); });
    CHECK(m.find("phase_model") != std::string::npos);

    m = message([] { parse_scene_toml("[target]\neps_im = -1.0\n", "f.toml"); });
    CHECK(m.find("eps_im") != std::string::npos);

    m = message([] { parse_scene_toml("[radar]\ncount = 5 trailing\n", "f.toml"); });
    CHECK(m.find("unexpected text") != std::string::npos);
}

TEST_CASE("scene TOML accepts comments and flexible whitespace") {
    const Scene s = parse_scene_toml("# leading comment\n"
                                     "[radar]  # trailing\n"
                                     "  count = 7\n"
                                     "\n"
                                     "[frequency]\n"
                                     "count = 3\n"
                                     "step_hz = 1.0e9\n",
                                     "ws");
    CHECK(s.scan.count == 7);
    CHECK(s.freq.count == 3);
    CHECK(s.freq.f_step == 1.0e9);
}
