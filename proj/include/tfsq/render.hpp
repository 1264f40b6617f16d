#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace tfsq {

struct RenderOptions {
    bool log_scale = false;       // log10 magnitude, clamped at 1e-8 of max
    std::string colormap = "viridis";  // "viridis" or "gray"
};

// Magnitude heatmap PNG: time on x, frequency on y (low at the bottom).
// Axis ranges are baked into tEXt metadata chunks. `mag` is row-major
// rows x cols with row j at frequency (k_min + j) * fs / L.
void render_heatmap_png(const std::string& path, const std::vector<double>& mag,
                        std::size_t rows, std::size_t cols, double fs, double t0,
                        std::size_t k_min, const RenderOptions& opts = {});

}  // namespace tfsq
