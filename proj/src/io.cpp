#include "tfsq/io.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace tfsq {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error(path + ": " + what);
}

void put_u32(std::ostream& os, std::uint32_t v) {
    unsigned char b[4] = {static_cast<unsigned char>(v & 0xff),
                          static_cast<unsigned char>((v >> 8) & 0xff),
                          static_cast<unsigned char>((v >> 16) & 0xff),
                          static_cast<unsigned char>((v >> 24) & 0xff)};
    os.write(reinterpret_cast<const char*>(b), 4);
}

void put_f64(std::ostream& os, double v) {
    std::uint64_t u;
    std::memcpy(&u, &v, 8);
    unsigned char b[8];
    for (int i = 0; i < 8; ++i) b[i] = static_cast<unsigned char>((u >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(b), 8);
}

std::uint32_t get_u32(std::istream& is, const std::string& path, const char* field) {
    unsigned char b[4];
    if (!is.read(reinterpret_cast<char*>(b), 4)) fail(path, std::string("truncated ") + field);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

double get_f64(std::istream& is, const std::string& path, const char* field) {
    unsigned char b[8];
    if (!is.read(reinterpret_cast<char*>(b), 8)) fail(path, std::string("truncated ") + field);
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i) u |= static_cast<std::uint64_t>(b[i]) << (8 * i);
    double v;
    std::memcpy(&v, &u, 8);
    return v;
}

}  // namespace

void write_signal_csv(const std::string& path, const DiscreteSignal& x) {
    std::ofstream os(path);
    if (!os) fail(path, "cannot open for writing");
    char head[96];
    std::snprintf(head, sizeof head, "# fs_hz=%.17g t0_s=%.17g\n", x.fs, x.t0);
    os << head;
    char line[80];
    const bool re_only = x.is_real();
    for (const auto& s : x.samples) {
        if (re_only)
            std::snprintf(line, sizeof line, "%.17g\n", s.real());
        else
            std::snprintf(line, sizeof line, "%.17g,%.17g\n", s.real(), s.imag());
        os << line;
    }
    if (!os) fail(path, "write error");
}

DiscreteSignal read_signal_csv(const std::string& path) {
    std::ifstream is(path);
    if (!is) fail(path, "cannot open");
    std::string header;
    if (!std::getline(is, header)) fail(path, "missing header line");
    DiscreteSignal x;
    if (std::sscanf(header.c_str(), "# fs_hz=%lf t0_s=%lf", &x.fs, &x.t0) != 2)
        fail(path, "bad header, expected '# fs_hz=<float> t0_s=<float>'");
    if (!(x.fs > 0.0)) fail(path, "fs_hz must be positive");
    std::string line;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        double re = 0.0, im = 0.0;
        const int got = std::sscanf(line.c_str(), "%lf,%lf", &re, &im);
        if (got < 1)
            fail(path, "unparseable sample at line " + std::to_string(lineno));
        x.samples.emplace_back(re, got == 2 ? im : 0.0);
    }
    if (x.samples.empty()) fail(path, "no samples");
    return x;
}

namespace {

void write_tfr_header(std::ostream& os, std::uint32_t rows, std::uint32_t cols,
                      double fs, double t0, TfrKind kind) {
    os.write("TFR1", 4);
    put_u32(os, rows);
    put_u32(os, cols);
    put_f64(os, fs);
    put_f64(os, t0);
    const char k = static_cast<char>(kind);
    os.write(&k, 1);
}

}  // namespace

void write_tfr(const std::string& path, const TFMatrix& m) {
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(path, "cannot open for writing");
    write_tfr_header(os, static_cast<std::uint32_t>(m.rows),
                     static_cast<std::uint32_t>(m.cols), m.fs, m.t0,
                     TfrKind::complex_matrix);
    for (const auto& z : m.data) {
        put_f64(os, z.real());
        put_f64(os, z.imag());
    }
    if (!os) fail(path, "write error");
}

void write_tfr_real(const std::string& path, const std::vector<double>& data,
                    std::uint32_t rows, std::uint32_t cols, double fs, double t0) {
    if (data.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("write_tfr_real: data size does not match rows*cols");
    std::ofstream os(path, std::ios::binary);
    if (!os) fail(path, "cannot open for writing");
    write_tfr_header(os, rows, cols, fs, t0, TfrKind::real_matrix);
    for (double v : data) put_f64(os, v);
    if (!os) fail(path, "write error");
}

TfrData read_tfr(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) fail(path, "cannot open");
    char magic[4];
    if (!is.read(magic, 4) || std::memcmp(magic, "TFR1", 4) != 0)
        fail(path, "bad magic, expected TFR1");
    TfrData d;
    d.rows = get_u32(is, path, "rows");
    d.cols = get_u32(is, path, "cols");
    d.fs = get_f64(is, path, "fs");
    d.t0 = get_f64(is, path, "t0");
    char kind;
    if (!is.read(&kind, 1)) fail(path, "truncated kind");
    if (kind != 0 && kind != 1) fail(path, "unknown kind byte");
    d.kind = static_cast<TfrKind>(kind);
    if (d.rows == 0 || d.cols == 0) fail(path, "empty matrix dimensions");
    if (!(d.fs > 0.0)) fail(path, "fs must be positive");
    if (d.rows > d.cols / 2 + 1) fail(path, "rows exceed the scale grid for cols");
    const std::size_t cells = static_cast<std::size_t>(d.rows) * d.cols;
    if (d.kind == TfrKind::complex_matrix) {
        d.cdata.resize(cells);
        for (auto& z : d.cdata) {
            const double re = get_f64(is, path, "payload");
            const double im = get_f64(is, path, "payload");
            z = {re, im};
        }
    } else {
        d.rdata.resize(cells);
        for (auto& v : d.rdata) v = get_f64(is, path, "payload");
    }
    char extra;
    if (is.read(&extra, 1)) fail(path, "trailing bytes after payload");
    return d;
}

TFMatrix TfrData::to_tfmatrix() const {
    if (kind != TfrKind::complex_matrix)
        throw std::invalid_argument("to_tfmatrix: real-valued container");
    TFMatrix m;
    m.rows = rows;
    m.cols = cols;
    m.k_min = cols / 2 - rows + 1;
    m.fs = fs;
    m.t0 = t0;
    m.data = cdata;
    return m;
}

}  // namespace tfsq
