// SPDX-License-Identifier: Apache-2.0
#include "mmwsim/fmcw.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace mmwsim {

void RadarParams::validate() const {
    if (!(f0 > 0.0)) throw std::invalid_argument("radar params: f0 must be positive");
    if (!(slope > 0.0)) throw std::invalid_argument("radar params: slope must be positive");
    if (!(dt > 0.0)) throw std::invalid_argument("radar params: dt must be positive");
    if (n_samples < 1) throw std::invalid_argument("radar params: n_samples must be >= 1");
    if (!(a0 > 0.0)) throw std::invalid_argument("radar params: a0 must be positive");
}

RadarParams canonical_radar_params() {
    RadarParams p;
    p.f0 = 77.2e9;
    p.dt = 1.0 / 4194304.0;  // 2^-22 s
    p.slope = 5.89824e13;    // Hz/s; slope * dt = 14.0625 MHz exactly
    p.n_samples = 256;
    return p;
}

Eigen::VectorXcd if_signal(const RadarParams& params, const std::vector<Reflector>& reflectors) {
    params.validate();
    Eigen::VectorXcd s = Eigen::VectorXcd::Zero(params.n_samples);
    const double amp = 0.5 * params.a0 * params.a0;
    for (const Reflector& r : reflectors) {
        if (!(r.tau >= 0.0)) throw std::invalid_argument("if_signal: tau must be >= 0");
        for (int n = 0; n < params.n_samples; ++n) {
            const double f = params.f0 + params.slope * params.dt * n;
            const double phase = 2.0 * std::numbers::pi * r.tau * f;
            s[n] += amp * r.sigma * std::complex<double>(std::cos(phase), std::sin(phase));
        }
    }
    return s;
}

double sample_frequency(const RadarParams& params, int n) {
    if (n < 0 || n >= params.n_samples)
        throw std::out_of_range("sample_frequency: sample index out of range");
    return params.f0 + params.slope * params.dt * n;
}

FrequencyGrid frequency_grid(const RadarParams& params) {
    params.validate();
    FrequencyGrid g;
    g.f_start = params.f0;
    g.f_step = params.slope * params.dt;
    g.count = params.n_samples;
    g.validate();
    return g;
}

Dataset dataset_from_if_cube(const Eigen::MatrixXcd& cube, const RadarParams& params,
                             const ScanPlan& scan, IqConvention convention) {
    params.validate();
    scan.validate();
    if (cube.rows() != params.n_samples)
        throw std::invalid_argument("dataset_from_if_cube: cube must have n_samples rows, got " +
                                    std::to_string(cube.rows()));
    if (cube.cols() != scan.count)
        throw std::invalid_argument(
            "dataset_from_if_cube: cube must have one column per scan position, got " +
            std::to_string(cube.cols()));
    Dataset ds;
    ds.scan = scan;
    ds.freq = frequency_grid(params);
    ds.data = convention == IqConvention::positive_beat ? cube.conjugate() : cube;
    return ds;
}

void write_if_cube_csv(const std::string& path, const Eigen::MatrixXcd& cube) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument(path + ": cannot open for writing");
    out << "p,n,re,im\n";
    out.precision(17);
    for (Eigen::Index p = 0; p < cube.cols(); ++p)
        for (Eigen::Index n = 0; n < cube.rows(); ++n)
            out << p << ',' << n << ',' << cube(n, p).real() << ',' << cube(n, p).imag() << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

Eigen::MatrixXcd read_if_cube_csv(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument(path + ": cannot open IF cube");
    std::string line;
    if (!std::getline(in, line)) throw std::invalid_argument(path + ": empty file");
    if (line.ends_with('\r')) line.pop_back();
    if (line != "p,n,re,im")
        throw std::invalid_argument(path + ": expected header 'p,n,re,im', got '" + line + "'");

    struct Entry {
        long p, n;
        double re, im;
    };
    std::vector<Entry> entries;
    long max_p = -1, max_n = -1;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.ends_with('\r')) line.pop_back();
        if (line.empty()) continue;
        Entry e{};
        char c1 = 0, c2 = 0, c3 = 0;
        std::istringstream row(line);
        if (!(row >> e.p >> c1 >> e.n >> c2 >> e.re >> c3 >> e.im) || c1 != ',' || c2 != ',' ||
            c3 != ',')
            throw std::invalid_argument(path + ":" + std::to_string(line_no) + ": malformed row");
        if (e.p < 0 || e.n < 0)
            throw std::invalid_argument(path + ":" + std::to_string(line_no) +
                                        ": negative index");
        max_p = std::max(max_p, e.p);
        max_n = std::max(max_n, e.n);
        entries.push_back(e);
    }
    if (entries.empty()) throw std::invalid_argument(path + ": no samples");
    const long rows = max_n + 1, cols = max_p + 1;
    if (static_cast<long>(entries.size()) != rows * cols)
        throw std::invalid_argument(path + ": expected a dense " + std::to_string(rows) + "x" +
                                    std::to_string(cols) + " sample grid, got " +
                                    std::to_string(entries.size()) + " rows");
    Eigen::MatrixXcd cube(rows, cols);
    Eigen::MatrixXi seen = Eigen::MatrixXi::Zero(rows, cols);
    for (const Entry& e : entries) {
        if (seen(e.n, e.p)++ != 0)
            throw std::invalid_argument(path + ": duplicate sample p=" + std::to_string(e.p) +
                                        " n=" + std::to_string(e.n));
        cube(e.n, e.p) = {e.re, e.im};
    }
    return cube;
}

}  // namespace mmwsim
