// SPDX-License-Identifier: Apache-2.0
#include "mmwsim/dataset_io.hpp"

#include <array>
#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace mmwsim {

namespace {

constexpr std::array<char, 16> kMagic = {'M', 'M', 'W', 'S', 'I', 'M', '-', 'D',
                                         'A', 'T', 'A', 'S', 'E', 'T', '1', '\0'};

static_assert(std::endian::native == std::endian::little,
              "dataset container assumes a little-endian host");

void put_u32(std::ostream& out, std::uint32_t v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& out, double v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t get_u32(std::istream& in, const std::string& path, const char* field) {
    std::uint32_t v = 0;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
        throw std::invalid_argument(path + ": truncated dataset (" + field + ")");
    return v;
}

double get_f64(std::istream& in, const std::string& path, const char* field) {
    double v = 0.0;
    if (!in.read(reinterpret_cast<char*>(&v), sizeof v))
        throw std::invalid_argument(path + ": truncated dataset (" + field + ")");
    return v;
}

}  // namespace

void write_dataset(const std::string& path, const Dataset& ds) {
    if (ds.data.rows() != ds.freq.count || ds.data.cols() != ds.scan.count)
        throw std::invalid_argument("write_dataset: data shape does not match scan/frequency grid");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument(path + ": cannot open for writing");
    out.write(kMagic.data(), kMagic.size());
    put_u32(out, static_cast<std::uint32_t>(ds.freq.count));
    put_u32(out, static_cast<std::uint32_t>(ds.scan.count));
    put_f64(out, ds.freq.f_start);
    put_f64(out, ds.freq.f_step);
    put_f64(out, ds.scan.x_start);
    put_f64(out, ds.scan.x_step);
    put_f64(out, ds.scan.y_tr);
    for (int q = 0; q < ds.freq.count; ++q)
        for (int p = 0; p < ds.scan.count; ++p) {
            put_f64(out, ds.data(q, p).real());
            put_f64(out, ds.data(q, p).imag());
        }
    if (!out) throw std::runtime_error(path + ": write failed");
}

Dataset read_dataset(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::invalid_argument(path + ": cannot open dataset");
    std::array<char, 16> magic{};
    if (!in.read(magic.data(), magic.size()) || magic != kMagic)
        throw std::invalid_argument(path + ": not a dataset file (bad magic)");

    Dataset ds;
    const std::uint32_t count_f = get_u32(in, path, "count_f");
    const std::uint32_t count_p = get_u32(in, path, "count_p");
    constexpr std::uint32_t kMaxCount = 1u << 24;
    if (count_f == 0 || count_f > kMaxCount)
        throw std::invalid_argument(path + ": implausible count_f");
    if (count_p == 0 || count_p > kMaxCount)
        throw std::invalid_argument(path + ": implausible count_p");
    ds.freq.count = static_cast<int>(count_f);
    ds.scan.count = static_cast<int>(count_p);
    ds.freq.f_start = get_f64(in, path, "f_start_hz");
    ds.freq.f_step = get_f64(in, path, "f_step_hz");
    ds.scan.x_start = get_f64(in, path, "x_start_m");
    ds.scan.x_step = get_f64(in, path, "x_step_m");
    ds.scan.y_tr = get_f64(in, path, "y_tr_m");
    ds.freq.validate();
    ds.scan.validate();

    ds.data.resize(count_f, count_p);
    for (std::uint32_t q = 0; q < count_f; ++q)
        for (std::uint32_t p = 0; p < count_p; ++p) {
            const double re = get_f64(in, path, "data");
            const double im = get_f64(in, path, "data");
            ds.data(q, p) = {re, im};
        }
    char extra = 0;
    if (in.read(&extra, 1))
        throw std::invalid_argument(path + ": trailing bytes after dataset payload");
    return ds;
}

void write_dataset_csv(const std::string& path, const Dataset& ds) {
    if (ds.data.rows() != ds.freq.count || ds.data.cols() != ds.scan.count)
        throw std::invalid_argument(
            "write_dataset_csv: data shape does not match scan/frequency grid");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument(path + ": cannot open for writing");
    out << "q,p,f_hz,x_m,re,im\n";
    out.precision(17);
    for (int q = 0; q < ds.freq.count; ++q)
        for (int p = 0; p < ds.scan.count; ++p)
            out << q << ',' << p << ',' << ds.freq.frequency(q) << ',' << ds.scan.position(p).x()
                << ',' << ds.data(q, p).real() << ',' << ds.data(q, p).imag() << "\n";
    if (!out) throw std::runtime_error(path + ": write failed");
}

}  // namespace mmwsim
