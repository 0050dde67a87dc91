// SPDX-License-Identifier: Apache-2.0
//
// mmwsim: simulate | image | analyze
//   simulate  scene TOML -> scattered-signal dataset (binary, optional CSV)
//   image     dataset -> backprojected image (pgm + csv)
//   analyze   image CSV -> target-cut metrics as a JSON report

#include <chrono>
#include <cmath>
#include <complex>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mmwsim/dataset_io.hpp"
#include "mmwsim/imaging.hpp"
#include "mmwsim/metrics.hpp"
#include "mmwsim/scene_io.hpp"
#include "mmwsim/solver.hpp"

namespace {

using json = nlohmann::ordered_json;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int run_simulate(const std::string& scene_path, const std::string& out_path,
                 const std::string& csv_path, double spw, int workers, double e0) {
    const mmwsim::Scene scene = mmwsim::load_scene_toml(scene_path);
    mmwsim::SweepOptions opts;
    opts.samples_per_wavelength = spw;
    opts.workers = workers;
    opts.e0 = e0;
    const auto t0 = std::chrono::steady_clock::now();
    const mmwsim::Dataset ds = mmwsim::sweep(scene, opts);
    mmwsim::write_dataset(out_path, ds);
    if (!csv_path.empty()) mmwsim::write_dataset_csv(csv_path, ds);
    std::cout << "wrote " << out_path << ": " << ds.freq.count << " frequencies x "
              << ds.scan.count << " positions ("
              << ds.freq.f_start / 1e9 << ".." << ds.freq.f_max() / 1e9 << " GHz, x "
              << ds.scan.x_start << ".." << ds.scan.x_end() << " m) in " << seconds_since(t0)
              << " s\n";
    return 0;
}

int run_image(const std::string& ds_path, const std::string& stem, double pixel_x, double pixel_y,
              int workers, double range_offset, double x_min, double x_max, double y_min,
              double y_max) {
    const mmwsim::Dataset ds = mmwsim::read_dataset(ds_path);

    mmwsim::GridSpec grid;
    grid.dx = pixel_x;
    grid.dy = pixel_y;
    const double gx0 = std::isnan(x_min) ? ds.scan.x_start : x_min;
    const double gx1 = std::isnan(x_max) ? ds.scan.x_end() : x_max;
    const double gy0 = std::isnan(y_min) ? 0.0 : y_min;
    const double gy1 = std::isnan(y_max) ? ds.scan.y_tr : y_max;
    if (!(gx1 >= gx0)) throw std::invalid_argument("--x-max must be >= --x-min");
    if (!(gy1 >= gy0)) throw std::invalid_argument("--y-max must be >= --y-min");
    grid.x0 = gx0;
    grid.nx = static_cast<int>(std::floor((gx1 - gx0) / grid.dx + 1e-9)) + 1;
    grid.y0 = gy0;
    grid.ny = static_cast<int>(std::floor((gy1 - gy0) / grid.dy + 1e-9)) + 1;

    const auto t0 = std::chrono::steady_clock::now();
    const mmwsim::ImageGrid img = mmwsim::backproject(ds, grid, workers, range_offset);
    const mmwsim::ImageMeta meta{true, ds.freq};
    mmwsim::write_image_pgm16(stem, img, meta);
    mmwsim::write_image_csv(stem + ".csv", img, meta);
    std::cout << "wrote " << stem << ".pgm, " << stem << ".pgm.txt, " << stem << ".csv: "
              << grid.nx << " x " << grid.ny << " pixels in " << seconds_since(t0) << " s\n";
    return 0;
}

int run_analyze(const std::string& image_path, const std::string& reference_path,
                const std::string& out_path, const std::string& profile_path,
                std::vector<double> band) {
    const mmwsim::ImageFile file = mmwsim::read_image_csv(image_path);
    const auto& y_axis = file.image.y_axis;

    std::array<double, 2> y_band{};
    if (band.empty()) {
        // Default: the lowest 40% of the image's y span (target side).
        const double lo = y_axis.minCoeff();
        const double hi = y_axis.maxCoeff();
        y_band = {lo, lo + 0.4 * (hi - lo)};
    } else {
        y_band = {band[0], band[1]};
    }

    const mmwsim::IntensityProfile profile = mmwsim::profile_at_target_center(file.image, y_band);
    if (!profile_path.empty()) mmwsim::write_profile_csv(profile_path, profile);

    json report;
    report["input"] = image_path;
    report["band_y_m"] = {y_band[0], y_band[1]};
    report["profile_peak"] = profile.intensity.maxCoeff();
    report["image_max"] = profile.normalization_reference;

    try {
        report["fwhm_m"] = mmwsim::fwhm_length(profile);
    } catch (const std::invalid_argument& e) {
        report["fwhm_error"] = e.what();
    }
    try {
        report["peak_spacing_m"] = mmwsim::peak_spacing(profile);
    } catch (const std::invalid_argument& e) {
        report["peak_spacing_error"] = e.what();
    }
    if (!reference_path.empty()) {
        const mmwsim::ImageFile ref = mmwsim::read_image_csv(reference_path);
        const double ref_max = ref.image.values.size() > 0 ? ref.image.values.maxCoeff() : 0.0;
        report["reference"] = reference_path;
        report["reference_max"] = ref_max;
        try {
            report["relative_intensity"] = mmwsim::relative_intensity(profile, ref_max);
        } catch (const std::invalid_argument& e) {
            report["relative_intensity_error"] = e.what();
        }
    }
    if (file.meta.has_freq)
        report["range_resolution_m"] = mmwsim::range_resolution(file.meta.freq);

    const std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path, std::ios::binary);
        if (!out) throw std::invalid_argument(out_path + ": cannot open for writing");
        out << text;
        if (!out) throw std::runtime_error(out_path + ": write failed");
        std::cout << "wrote " << out_path << "\n";
    }
    return 0;
}

int run(int argc, char** argv) {
    CLI::App app{"2D forward simulator and imager for FMCW synthetic-aperture scans"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "Sweep a scene into a signal dataset");
    std::string scene_path, sim_out, sim_csv;
    double spw = 10.0, e0 = 1.0;
    int sim_workers = 1;
    sim->add_option("--scene", scene_path, "Scene description (TOML)")->required();
    sim->add_option("--out", sim_out, "Output dataset path (binary)")->required();
    sim->add_option("--csv", sim_csv, "Also write the dataset as CSV");
    sim->add_option("--spw", spw, "Surface samples per wavelength (>= 2)")
        ->capture_default_str();
    sim->add_option("--workers", sim_workers, "Worker threads")->capture_default_str();
    sim->add_option("--e0", e0, "Incident-field amplitude scale")->capture_default_str();

    // image
    auto* img = app.add_subcommand("image", "Backproject a dataset into an image");
    std::string ds_path, img_stem;
    double pixel_x = 0.001, pixel_y = 0.002, range_offset = 0.0;
    double x_min = NAN, x_max = NAN, y_min = NAN, y_max = NAN;
    int img_workers = 1;
    img->add_option("dataset", ds_path, "Input dataset (binary)")->required();
    img->add_option("--out", img_stem, "Output stem (writes stem.pgm/.pgm.txt/.csv)")->required();
    img->add_option("--pixel-x", pixel_x, "Pixel width (m), <= 0.001")->capture_default_str();
    img->add_option("--pixel-y", pixel_y, "Pixel height (m), <= 0.005")->capture_default_str();
    img->add_option("--workers", img_workers, "Worker threads")->capture_default_str();
    img->add_option("--range-offset", range_offset, "Added to every transceiver-pixel distance (m)")
        ->capture_default_str();
    img->add_option("--x-min", x_min, "Image x minimum (m); default: scan start");
    img->add_option("--x-max", x_max, "Image x maximum (m); default: scan end");
    img->add_option("--y-min", y_min, "Image y minimum (m); default: 0");
    img->add_option("--y-max", y_max, "Image y maximum (m); default: scan height");

    // analyze
    auto* ana = app.add_subcommand("analyze", "Measure a target cut of an image CSV");
    std::string image_path, ref_path, ana_out, profile_out;
    std::vector<double> band;
    ana->add_option("image", image_path, "Image CSV (from the image subcommand)")->required();
    ana->add_option("--reference", ref_path,
                    "Image CSV whose global maximum normalizes the relative intensity");
    ana->add_option("--out", ana_out, "Write the JSON report here instead of stdout");
    ana->add_option("--profile-out", profile_out, "Also write the selected cut as CSV");
    ana->add_option("--target-band", band,
                    "y band (m) searched for the target row; default: lowest 40% of the image")
        ->expected(2);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    if (sim->parsed()) return run_simulate(scene_path, sim_out, sim_csv, spw, sim_workers, e0);
    if (img->parsed())
        return run_image(ds_path, img_stem, pixel_x, pixel_y, img_workers, range_offset, x_min,
                         x_max, y_min, y_max);
    return run_analyze(image_path, ref_path, ana_out, profile_out, band);
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const mmwsim::NumericalError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
