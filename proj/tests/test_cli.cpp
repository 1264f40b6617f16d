#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <png.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "tfsq/io.hpp"
#include "tfsq/mwt.hpp"
#include "tfsq/signal.hpp"
#include "tfsq/wavelet.hpp"

using namespace tfsq;
namespace fs = std::filesystem;

namespace {

const fs::path kDir = [] {
    auto d = fs::temp_directory_path() /
             ("tfsq_cli_" + std::to_string(static_cast<unsigned>(::getpid())));
    fs::create_directories(d);
    return d;
}();

std::string p(const char* name) { return (kDir / name).string(); }

int run(const std::string& args) {
    const std::string cmd = std::string(TFSQUEEZE_BIN) + " " + args + " >/dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::vector<char> slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    REQUIRE(is.good());
    return {std::istreambuf_iterator<char>(is), std::istreambuf_iterator<char>()};
}

// Minimal libpng decode into 8-bit RGB rows.
struct Png {
    std::size_t width = 0, height = 0;
    std::vector<unsigned char> rgb;  // row-major, 3 bytes per pixel
    unsigned char at(std::size_t row, std::size_t col, int ch) const {
        return rgb[(row * width + col) * 3 + static_cast<std::size_t>(ch)];
    }
};

Png decode_png(const std::string& path) {
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    REQUIRE(fp != nullptr);
    png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png_create_info_struct(png);
    REQUIRE(setjmp(png_jmpbuf(png)) == 0);
    png_init_io(png, fp);
    png_read_info(png, info);
    png_set_expand(png);
    png_set_strip_16(png);
    png_set_strip_alpha(png);
    png_set_gray_to_rgb(png);
    png_read_update_info(png, info);

    Png out;
    out.width = png_get_image_width(png, info);
    out.height = png_get_image_height(png, info);
    out.rgb.resize(out.width * out.height * 3);
    std::vector<png_bytep> rows(out.height);
    for (std::size_t r = 0; r < out.height; ++r) rows[r] = out.rgb.data() + r * out.width * 3;
    png_read_image(png, rows.data());
    png_destroy_read_struct(&png, &info, nullptr);
    std::fclose(fp);
    return out;
}

}  // namespace

TEST_CASE("usage errors exit with status 2") {
    CHECK(run("gen dirac --len 64 --out " + p("x.csv")) == 2);  // missing --fs
    CHECK(run("gen blorp --fs 100 --len 64 --out " + p("x.csv")) == 2);
    CHECK(run("") == 2);
    CHECK(run("transform nosuch --in a --out b") == 2);
    CHECK(run("render --in a --out b --scale cubic") == 2);
    CHECK(run("--help") == 0);
}

TEST_CASE("gen then transform mwt reproduces the in-process transform") {
    REQUIRE(run("gen dirac --fs 200 --len 200 --t0 0.5 --out " + p("d.csv")) == 0);
    REQUIRE(run("transform mwt --kmin 16 --in " + p("d.csv") + " --out " + p("d.tfr")) == 0);

    const auto x = read_signal_csv(p("d.csv"));
    const WaveletSpec spec{6.0, 1.0};
    const auto grid = make_scale_grid(x.size(), x.fs, spec, 16);
    const auto W = mwt(x, grid, spec, WindowWeight::plain);

    const auto d = read_tfr(p("d.tfr"));
    REQUIRE(d.kind == TfrKind::complex_matrix);
    const auto M = d.to_tfmatrix();
    REQUIRE(M.rows == W.rows);
    REQUIRE(M.k_min == W.k_min);
    CHECK(M.data == W.data);
}

TEST_CASE("transform wtsst concentrates the Dirac TFR on its column") {
    REQUIRE(run("transform wtsst --kmin 16 --in " + p("d.csv") + " --out " + p("s.tfr")) == 0);
    const auto d = read_tfr(p("s.tfr"));
    const auto S = d.to_tfmatrix();
    double on = 0.0, total = 0.0;
    for (std::size_t k = 0; k < S.rows; ++k)
        for (std::size_t n = 0; n < S.cols; ++n) {
            const double e = std::norm(S.at(k, n));
            total += e;
            if (n == 100) on += e;
        }
    REQUIRE(total > 0.0);
    CHECK(on / total > 0.999);
}

TEST_CASE("wtmsst validates the exponential iteration count") {
    CHECK(run("transform wtmsst --iters 10 --iter-mode exp --in " + p("d.csv") + " --out " +
              p("bad.tfr")) == 2);
    CHECK(run("transform wtmsst --iters 8 --iter-mode exp --kmin 16 --in " + p("d.csv") +
              " --out " + p("m8.tfr")) == 0);
}

TEST_CASE("thread count does not change output bytes") {
    REQUIRE(run("gen twomode --fs 512 --len 512 --snr 10 --seed 7 --out " + p("n.csv")) == 0);
    REQUIRE(run("transform wtmsst --iters 4 --kmin 8 --threads 1 --in " + p("n.csv") +
                " --out " + p("t1.tfr")) == 0);
    REQUIRE(run("transform wtmsst --iters 4 --kmin 8 --threads 8 --in " + p("n.csv") +
                " --out " + p("t8.tfr")) == 0);
    CHECK(slurp(p("t1.tfr")) == slurp(p("t8.tfr")));
}

TEST_CASE("I/O failures exit with status 1") {
    CHECK(run("transform mwt --in " + p("missing.csv") + " --out " + p("y.tfr")) == 1);
    std::ofstream(p("junk.tfr")) << "not a tfr";
    CHECK(run("metrics entropy --in " + p("junk.tfr")) == 1);
    CHECK(run("render --in " + p("junk.tfr") + " --out " + p("y.png")) == 1);
}

TEST_CASE("entropy runs single-shot and as an SNR sweep") {
    CHECK(run("metrics entropy --in " + p("s.tfr")) == 0);
    CHECK(run("metrics entropy") == 2);  // neither --in nor --sweep-snr
    CHECK(run("metrics entropy --sweep-snr 20:10") == 2);
    REQUIRE(run("metrics entropy --sweep-snr 10:20:10 --trials 1 --len 256 --fs 256 "
                "--kmin 4 --iters 2 --out " + p("sweep.csv")) == 0);
    std::ifstream is(p("sweep.csv"));
    std::string line;
    std::getline(is, line);
    CHECK(line == "method,snr_db,alpha,entropy");
    std::size_t rows = 0;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 6);  // 3 methods x 2 SNR points
}

TEST_CASE("tfes writes the spectrum and interval tables") {
    REQUIRE(run("gen pulses --fs 4096 --len 2048 --period-ms 50 --carrier 800 --decay 400 "
                "--out " + p("pt.csv")) == 0);
    REQUIRE(run("transform wtsst --kmin 64 --in " + p("pt.csv") + " --out " + p("pt.tfr")) ==
            0);
    REQUIRE(run("metrics tfes --in " + p("pt.tfr") + " --min-separation 0.005 --out " +
                p("tfes.csv") + " --intervals-out " + p("iv.csv")) == 0);
    std::ifstream ts(p("tfes.csv"));
    std::string line;
    std::getline(ts, line);
    CHECK(line == "row_hz,spectrum_peak");
    std::size_t rows = 0;
    while (std::getline(ts, line))
        if (!line.empty()) ++rows;
    const auto d = read_tfr(p("pt.tfr"));
    CHECK(rows == d.rows);

    // 50 ms period pulses: every detected interval is a multiple of 0.05 s
    std::ifstream ivs(p("iv.csv"));
    std::getline(ivs, line);
    CHECK(line == "t_start_s,interval_s");
    std::size_t n_iv = 0;
    while (std::getline(ivs, line)) {
        if (line.empty()) continue;
        ++n_iv;
        const double dt = std::atof(line.substr(line.find(',') + 1).c_str());
        const double cycles = dt / 0.05;
        CHECK(std::abs(cycles - std::round(cycles)) < 0.05);
    }
    CHECK(n_iv >= 5);
}

TEST_CASE("recon-error of a file against itself is exact") {
    CHECK(run("metrics recon-error --in " + p("n.csv") + " --ref " + p("n.csv")) == 0);
    CHECK(run("metrics recon-error --in " + p("n.csv") + " --ref " + p("d.csv")) == 2);
}

TEST_CASE("render produces a heatmap whose bright band is the Dirac column") {
    REQUIRE(run("render --in " + p("s.tfr") + " --out " + p("h.png") +
                " --scale linear --colormap gray") == 0);
    const auto img = decode_png(p("h.png"));
    const auto d = read_tfr(p("s.tfr"));
    REQUIRE(img.height >= d.rows);
    REQUIRE(img.width >= d.cols);

    // column sums of the gray channel: essentially all intensity sits in the
    // pixel band covering signal column 100 of 200
    std::vector<double> colsum(img.width, 0.0);
    double total = 0.0;
    for (std::size_t r = 0; r < img.height; ++r)
        for (std::size_t c = 0; c < img.width; ++c) {
            colsum[c] += img.at(r, c, 0);
            total += img.at(r, c, 0);
        }
    REQUIRE(total > 0.0);
    const double px_per_col = static_cast<double>(img.width) / static_cast<double>(d.cols);
    double band = 0.0;
    for (std::size_t c = 0; c < img.width; ++c) {
        const double col = static_cast<double>(c) / px_per_col;
        if (col >= 99.0 && col <= 102.0) band += colsum[c];
    }
    CHECK(band / total > 0.999);

    // log scale and viridis smoke: decodes, non-gray pixels present
    REQUIRE(run("render --in " + p("s.tfr") + " --out " + p("v.png") +
                " --scale log --colormap viridis") == 0);
    const auto vimg = decode_png(p("v.png"));
    bool colored = false;
    for (std::size_t i = 0; i < vimg.rgb.size(); i += 3)
        if (vimg.rgb[i] != vimg.rgb[i + 1] || vimg.rgb[i + 1] != vimg.rgb[i + 2]) {
            colored = true;
            break;
        }
    CHECK(colored);
}
