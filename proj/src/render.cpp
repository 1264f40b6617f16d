#include "tfsq/render.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <stdexcept>

namespace tfsq {

namespace {

// Eight anchor points of the matplotlib viridis map, linearly interpolated.
constexpr double kViridis[8][3] = {
    {0.267004, 0.004874, 0.329415}, {0.275191, 0.194905, 0.496005},
    {0.212395, 0.359683, 0.551710}, {0.153364, 0.497000, 0.557724},
    {0.122312, 0.633153, 0.530398}, {0.288921, 0.758394, 0.428426},
    {0.626579, 0.854645, 0.223353}, {0.993248, 0.906157, 0.143936}};

void map_color(double v, bool gray, unsigned char* rgb) {
    v = std::clamp(v, 0.0, 1.0);
    if (gray) {
        const auto g = static_cast<unsigned char>(std::lround(v * 255.0));
        rgb[0] = rgb[1] = rgb[2] = g;
        return;
    }
    const double pos = v * 7.0;
    const int i = std::min(6, static_cast<int>(pos));
    const double f = pos - i;
    for (int c = 0; c < 3; ++c) {
        const double x = kViridis[i][c] + f * (kViridis[i + 1][c] - kViridis[i][c]);
        rgb[c] = static_cast<unsigned char>(std::lround(x * 255.0));
    }
}

}  // namespace

void render_heatmap_png(const std::string& path, const std::vector<double>& mag,
                        std::size_t rows, std::size_t cols, double fs, double t0,
                        std::size_t k_min, const RenderOptions& opts) {
    if (rows == 0 || cols == 0 || mag.size() != rows * cols)
        throw std::invalid_argument("render_heatmap_png: bad matrix shape");
    if (opts.colormap != "viridis" && opts.colormap != "gray")
        throw std::invalid_argument("render_heatmap_png: unknown colormap '" +
                                    opts.colormap + "'");
    const bool gray = opts.colormap == "gray";

    double vmax = 0.0;
    for (double v : mag) vmax = std::max(vmax, std::abs(v));
    if (vmax == 0.0) vmax = 1.0;
    const double floor_v = 1e-8 * vmax;
    const double log_span = std::log10(vmax) - std::log10(floor_v);

    std::FILE* fp = std::fopen(path.c_str(), "wb");
    if (!fp) throw std::runtime_error(path + ": cannot open for writing");

    png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
    png_infop info = png ? png_create_info_struct(png) : nullptr;
    if (!png || !info) {
        if (png) png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw std::runtime_error(path + ": libpng initialization failed");
    }
    if (setjmp(png_jmpbuf(png))) {
        png_destroy_write_struct(&png, &info);
        std::fclose(fp);
        throw std::runtime_error(path + ": libpng write failed");
    }
    png_init_io(png, fp);
    png_set_IHDR(png, info, static_cast<png_uint_32>(cols), static_cast<png_uint_32>(rows),
                 8, PNG_COLOR_TYPE_RGB, PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
                 PNG_FILTER_TYPE_DEFAULT);

    const double L = static_cast<double>(cols);
    char tmin[64], tmaxs[64], fmin[64], fmaxs[64];
    std::snprintf(tmin, sizeof tmin, "%.9g", t0);
    std::snprintf(tmaxs, sizeof tmaxs, "%.9g", t0 + (L - 1.0) / fs);
    std::snprintf(fmin, sizeof fmin, "%.9g", static_cast<double>(k_min) * fs / L);
    std::snprintf(fmaxs, sizeof fmaxs, "%.9g",
                  static_cast<double>(k_min + rows - 1) * fs / L);
    png_text text[5];
    std::memset(text, 0, sizeof text);
    const char* keys[5] = {"time_min_s", "time_max_s", "freq_min_hz", "freq_max_hz", "scale"};
    char* vals[5] = {tmin, tmaxs, fmin, fmaxs,
                     const_cast<char*>(opts.log_scale ? "log10" : "linear")};
    for (int i = 0; i < 5; ++i) {
        text[i].compression = PNG_TEXT_COMPRESSION_NONE;
        text[i].key = const_cast<char*>(keys[i]);
        text[i].text = vals[i];
    }
    png_set_text(png, info, text, 5);
    png_write_info(png, info);

    std::vector<unsigned char> rowbuf(cols * 3);
    // top image row = highest frequency row
    for (std::size_t img_row = 0; img_row < rows; ++img_row) {
        const std::size_t j = rows - 1 - img_row;
        const double* src = mag.data() + j * cols;
        for (std::size_t n = 0; n < cols; ++n) {
            const double a = std::abs(src[n]);
            double v;
            if (opts.log_scale)
                v = (std::log10(std::max(a, floor_v)) - std::log10(floor_v)) / log_span;
            else
                v = a / vmax;
            map_color(v, gray, rowbuf.data() + 3 * n);
        }
        png_write_row(png, rowbuf.data());
    }
    png_write_end(png, info);
    png_destroy_write_struct(&png, &info);
    std::fclose(fp);
}

}  // namespace tfsq
