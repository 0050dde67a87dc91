// SPDX-License-Identifier: Apache-2.0
#include "mmwsim/imaging.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mmwsim/parallel.hpp"

namespace mmwsim {

namespace {

void write_meta_keys(std::ostream& out, const char* prefix, const ImageMeta& meta) {
    if (!meta.has_freq) return;
    out.precision(17);
    out << prefix << "f_start_hz = " << meta.freq.f_start << "\n";
    out << prefix << "f_step_hz = " << meta.freq.f_step << "\n";
    out << prefix << "f_count = " << meta.freq.count << "\n";
}

}  // namespace

GridSpec GridSpec::default_for(const Dataset& ds) {
    ds.scan.validate();
    GridSpec g;
    g.dx = std::min(ds.scan.x_step, 0.001);
    g.x0 = ds.scan.x_start;
    const double span = ds.scan.x_end() - ds.scan.x_start;
    g.nx = static_cast<int>(std::floor(span / g.dx + 1e-9)) + 1;
    g.dy = 0.002;
    g.y0 = 0.0;
    g.ny = static_cast<int>(std::floor(ds.scan.y_tr / g.dy + 1e-9)) + 1;
    g.validate();
    return g;
}

void GridSpec::validate() const {
    if (!(dx > 0.0)) throw std::invalid_argument("grid: dx must be positive");
    if (!(dy > 0.0)) throw std::invalid_argument("grid: dy must be positive");
    if (dx > 0.001 * (1.0 + 1e-9))
        throw std::invalid_argument("grid: dx must be <= 1 mm for an unaliased image");
    if (dy > 0.005 * (1.0 + 1e-9))
        throw std::invalid_argument("grid: dy must be <= 5 mm for an unaliased image");
    if (nx < 1) throw std::invalid_argument("grid: nx must be >= 1");
    if (ny < 1) throw std::invalid_argument("grid: ny must be >= 1");
}

ImageGrid backproject(const Dataset& ds, const GridSpec& grid, int workers, double range_offset) {
    grid.validate();
    ds.scan.validate();
    ds.freq.validate();
    if (ds.data.rows() != ds.freq.count || ds.data.cols() != ds.scan.count)
        throw std::invalid_argument("backproject: data shape does not match scan/frequency grid");
    if (workers < 1) throw std::invalid_argument("backproject: workers must be >= 1");
    if (!std::isfinite(range_offset))
        throw std::invalid_argument("backproject: range_offset must be finite");

    ImageGrid img;
    img.x_axis.resize(grid.nx);
    for (int i = 0; i < grid.nx; ++i) img.x_axis[i] = grid.x0 + grid.dx * i;
    img.y_axis.resize(grid.ny);
    for (int i = 0; i < grid.ny; ++i) img.y_axis[i] = grid.y0 + grid.dy * i;
    img.pixels.resize(grid.ny, grid.nx);

    const int np = ds.scan.count;
    const int nq = ds.freq.count;
    const double y_tr = ds.scan.y_tr;
    // Phase 2 k_q D = (4 pi / c0) f_q D; over q this advances by a constant
    // angle, so the per-frequency factor follows a complex recurrence.
    const double phase_per_hz = 4.0 * std::numbers::pi / c0;

    parallel_chunks(static_cast<std::size_t>(grid.ny), workers,
                    [&](std::size_t row0, std::size_t row1) {
                        for (std::size_t iy = row0; iy < row1; ++iy) {
                            const double y = img.y_axis[static_cast<Eigen::Index>(iy)];
                            for (int ix = 0; ix < grid.nx; ++ix) {
                                const double x = img.x_axis[ix];
                                std::complex<double> acc{0.0, 0.0};
                                for (int p = 0; p < np; ++p) {
                                    const double ddx = ds.scan.x_start + ds.scan.x_step * p - x;
                                    const double ddy = y_tr - y;
                                    const double dist =
                                        std::sqrt(ddx * ddx + ddy * ddy) + range_offset;
                                    const std::complex<double> ratio =
                                        std::polar(1.0, phase_per_hz * ds.freq.f_step * dist);
                                    std::complex<double> cur =
                                        std::polar(1.0, phase_per_hz * ds.freq.f_start * dist);
                                    std::complex<double> inner{0.0, 0.0};
                                    for (int q = 0; q < nq; ++q) {
                                        inner += ds.data(q, p) * cur;
                                        cur *= ratio;
                                    }
                                    acc += inner;
                                }
                                img.pixels(static_cast<Eigen::Index>(iy), ix) = acc;
                            }
                        }
                    });

    if (!img.pixels.allFinite()) throw NumericalError("backproject: non-finite image pixel");
    return img;
}

double range_resolution(const FrequencyGrid& freq) {
    freq.validate();
    if (freq.count < 2)
        throw std::invalid_argument("range_resolution: need at least two frequencies");
    return c0 / (2.0 * freq.bandwidth());
}

MagnitudeImage normalize(const ImageGrid& image, std::optional<double> reference) {
    MagnitudeImage out;
    out.x_axis = image.x_axis;
    out.y_axis = image.y_axis;
    Eigen::MatrixXd mag = image.pixels.cwiseAbs();
    double ref;
    if (reference) {
        ref = *reference;
        if (!std::isfinite(ref) || !(ref > 0.0))
            throw std::invalid_argument("normalize: reference must be finite and positive");
    } else {
        ref = mag.size() > 0 ? mag.maxCoeff() : 0.0;
        if (!(ref > 0.0))
            throw std::invalid_argument("normalize: image is identically zero, no self-reference");
    }
    out.values = mag / ref;
    return out;
}

void write_image_pgm16(const std::string& stem, const ImageGrid& image, const ImageMeta& meta) {
    const Eigen::Index ny = image.pixels.rows();
    const Eigen::Index nx = image.pixels.cols();
    if (image.x_axis.size() != nx || image.y_axis.size() != ny)
        throw std::invalid_argument("write_image_pgm16: axis sizes do not match pixels");
    if (nx < 1 || ny < 1) throw std::invalid_argument("write_image_pgm16: empty image");

    const Eigen::MatrixXd mag = image.pixels.cwiseAbs();
    const double mag_max = mag.maxCoeff();
    const double scale = mag_max > 0.0 ? 65535.0 / mag_max : 0.0;

    const std::string pgm_path = stem + ".pgm";
    std::ofstream out(pgm_path, std::ios::binary);
    if (!out) throw std::invalid_argument(pgm_path + ": cannot open for writing");
    out << "P5\n" << nx << " " << ny << "\n65535\n";
    for (Eigen::Index iy = ny - 1; iy >= 0; --iy)  // top row = max y
        for (Eigen::Index ix = 0; ix < nx; ++ix) {
            const auto v = static_cast<std::uint16_t>(std::lround(mag(iy, ix) * scale));
            const unsigned char bytes[2] = {static_cast<unsigned char>(v >> 8),
                                            static_cast<unsigned char>(v & 0xff)};
            out.write(reinterpret_cast<const char*>(bytes), 2);
        }
    if (!out) throw std::runtime_error(pgm_path + ": write failed");

    const std::string txt_path = pgm_path + ".txt";
    std::ofstream txt(txt_path, std::ios::binary);
    if (!txt) throw std::invalid_argument(txt_path + ": cannot open for writing");
    txt.precision(17);
    txt << "# axis and scale metadata for " << pgm_path << "\n";
    txt << "nx = " << nx << "\n";
    txt << "ny = " << ny << "\n";
    txt << "x_min_m = " << image.x_axis[0] << "\n";
    txt << "x_max_m = " << image.x_axis[nx - 1] << "\n";
    txt << "y_min_m = " << image.y_axis[0] << "\n";
    txt << "y_max_m = " << image.y_axis[ny - 1] << "\n";
    txt << "row_order = top_is_max_y\n";
    txt << "magnitude_at_65535 = " << mag_max << "\n";
    write_meta_keys(txt, "", meta);
    if (!txt) throw std::runtime_error(txt_path + ": write failed");
}

void write_image_csv(const std::string& path, const ImageGrid& image, const ImageMeta& meta) {
    const Eigen::Index ny = image.pixels.rows();
    const Eigen::Index nx = image.pixels.cols();
    if (image.x_axis.size() != nx || image.y_axis.size() != ny)
        throw std::invalid_argument("write_image_csv: axis sizes do not match pixels");
    if (nx < 1 || ny < 1) throw std::invalid_argument("write_image_csv: empty image");

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument(path + ": cannot open for writing");
    out.precision(17);
    out << "# backprojected image magnitudes\n";
    out << "# nx = " << nx << "\n";
    out << "# ny = " << ny << "\n";
    write_meta_keys(out, "# ", meta);
    out << "x_m,y_m,magnitude\n";
    for (Eigen::Index iy = 0; iy < ny; ++iy)
        for (Eigen::Index ix = 0; ix < nx; ++ix)
            out << image.x_axis[ix] << ',' << image.y_axis[iy] << ','
                << std::abs(image.pixels(iy, ix)) << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

ImageFile read_image_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument(path + ": cannot open image CSV");

    std::map<std::string, double> keys;
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.ends_with('\r')) line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream row(line.substr(1));
            std::string key, eq;
            double value = 0.0;
            if (row >> key >> eq >> value && eq == "=") keys[key] = value;
            continue;
        }
        if (line == "x_m,y_m,magnitude") {
            saw_header = true;
            break;
        }
        throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                    ": expected header 'x_m,y_m,magnitude'");
    }
    if (!saw_header) throw std::invalid_argument(path + ": missing 'x_m,y_m,magnitude' header");
    if (!keys.contains("nx") || !keys.contains("ny"))
        throw std::invalid_argument(path + ": missing '# nx = ...' / '# ny = ...' metadata");
    const auto nx = static_cast<Eigen::Index>(keys.at("nx"));
    const auto ny = static_cast<Eigen::Index>(keys.at("ny"));
    if (nx < 1 || ny < 1) throw std::invalid_argument(path + ": implausible nx/ny metadata");

    ImageFile file;
    file.image.x_axis.resize(nx);
    file.image.y_axis.resize(ny);
    file.image.values.resize(ny, nx);
    Eigen::Index next = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.ends_with('\r')) line.pop_back();
        if (line.empty()) continue;
        double x = 0.0, y = 0.0, mag = 0.0;
        char c1 = 0, c2 = 0;
        std::istringstream row(line);
        if (!(row >> x >> c1 >> y >> c2 >> mag) || c1 != ',' || c2 != ',')
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": malformed row");
        if (next >= nx * ny)
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": more rows than nx * ny");
        const Eigen::Index iy = next / nx;
        const Eigen::Index ix = next % nx;
        if (iy == 0) file.image.x_axis[ix] = x;
        if (ix == 0) file.image.y_axis[iy] = y;
        file.image.values(iy, ix) = mag;
        ++next;
    }
    if (next != nx * ny)
        throw std::invalid_argument(path + ": expected " + std::to_string(nx * ny) +
                                    " data rows, got " + std::to_string(next));

    if (keys.contains("f_start_hz") || keys.contains("f_step_hz") || keys.contains("f_count")) {
        if (!keys.contains("f_start_hz") || !keys.contains("f_step_hz") ||
            !keys.contains("f_count"))
            throw std::invalid_argument(path + ": incomplete frequency metadata");
        file.meta.has_freq = true;
        file.meta.freq.f_start = keys.at("f_start_hz");
        file.meta.freq.f_step = keys.at("f_step_hz");
        file.meta.freq.count = static_cast<int>(keys.at("f_count"));
        file.meta.freq.validate();
    }
    return file;
}

}  // namespace mmwsim
