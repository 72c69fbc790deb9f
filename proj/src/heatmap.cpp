#include "gaze/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "gaze/errors.hpp"

namespace gaze {

namespace {

void require_valid_dims(const Heatmap& h, const char* op) {
    if (h.width < 1 || h.height < 1 ||
        h.values.size() != static_cast<std::size_t>(h.width) * static_cast<std::size_t>(h.height)) {
        throw std::invalid_argument(std::string(op) + ": heatmap dimensions are invalid");
    }
}

} // namespace

float Heatmap::max_value() const {
    float m = 0.0f;
    bool first = true;
    for (float v : values) {
        if (first || v > m) {
            m = v;
            first = false;
        }
    }
    return m;
}

Heatmap normalize_max(const Heatmap& h) {
    require_valid_dims(h, "normalize_max");
    float max = 0.0f;
    for (float v : h.values) {
        if (!std::isfinite(v) || v < 0.0f) {
            throw data_error("normalize_max: values must be finite and nonnegative");
        }
        max = std::max(max, v);
    }
    if (max == 0.0f) return h;
    Heatmap out(h.width, h.height);
    for (std::size_t i = 0; i < h.values.size(); ++i) {
        out.values[i] = static_cast<float>(static_cast<double>(h.values[i]) / max);
    }
    return out;
}

Point argmax(const Heatmap& h) {
    require_valid_dims(h, "argmax");
    std::size_t best = 0;
    for (std::size_t i = 1; i < h.values.size(); ++i) {
        if (h.values[i] > h.values[best]) best = i;
    }
    const int x = static_cast<int>(best % static_cast<std::size_t>(h.width));
    const int y = static_cast<int>(best / static_cast<std::size_t>(h.width));
    return {static_cast<double>(x), static_cast<double>(y)};
}

HotRegion hottest_region(const Heatmap& h, double tau, CentroidMode mode) {
    require_valid_dims(h, "hottest_region");
    if (!(tau > 0.0) || tau > 1.0) {
        throw std::invalid_argument("hottest_region: tau must lie in (0, 1]");
    }
    const float max = h.max_value();
    if (!(max > 0.0f)) {
        throw no_region_error("hottest_region: heatmap has no positive value");
    }
    const double threshold = tau * static_cast<double>(max);

    const Point peak = argmax(h);
    const int w = h.width;
    std::vector<char> member(h.cell_count(), 0);
    std::vector<std::size_t> stack;
    const std::size_t start =
        static_cast<std::size_t>(peak.y) * w + static_cast<std::size_t>(peak.x);
    member[start] = 1;
    stack.push_back(start);

    int min_x = w, min_y = h.height, max_x = -1, max_y = -1;
    double weight_sum = 0.0, cx = 0.0, cy = 0.0;
    std::size_t count = 0;

    while (!stack.empty()) {
        const std::size_t idx = stack.back();
        stack.pop_back();
        const int x = static_cast<int>(idx % w);
        const int y = static_cast<int>(idx / w);

        ++count;
        min_x = std::min(min_x, x);
        min_y = std::min(min_y, y);
        max_x = std::max(max_x, x);
        max_y = std::max(max_y, y);
        const double weight =
            mode == CentroidMode::weighted ? static_cast<double>(h.values[idx]) : 1.0;
        weight_sum += weight;
        cx += weight * (x + 0.5);
        cy += weight * (y + 0.5);

        const auto visit = [&](int nx, int ny) {
            if (nx < 0 || ny < 0 || nx >= w || ny >= h.height) return;
            const std::size_t nidx = static_cast<std::size_t>(ny) * w + nx;
            if (member[nidx]) return;
            if (static_cast<double>(h.values[nidx]) >= threshold) {
                member[nidx] = 1;
                stack.push_back(nidx);
            }
        };
        visit(x - 1, y);
        visit(x + 1, y);
        visit(x, y - 1);
        visit(x, y + 1);
    }

    HotRegion region;
    region.threshold_used = threshold;
    region.bbox = {static_cast<double>(min_x), static_cast<double>(min_y),
                   static_cast<double>(max_x + 1), static_cast<double>(max_y + 1)};
    region.centroid = {cx / weight_sum, cy / weight_sum};
    region.cell_count = count;
    return region;
}

Heatmap gaussian_mask(const Point& center, double sigma, int width, int height) {
    if (!(sigma > 0.0)) {
        throw std::invalid_argument("gaussian_mask: sigma must be positive");
    }
    if (width < 1 || height < 1) {
        throw std::invalid_argument("gaussian_mask: dimensions must be at least 1");
    }
    const double inv = 1.0 / (2.0 * sigma * sigma);
    std::vector<double> col(width), row(height);
    for (int x = 0; x < width; ++x) {
        const double dx = (x + 0.5) - center.x;
        col[x] = std::exp(-dx * dx * inv);
    }
    for (int y = 0; y < height; ++y) {
        const double dy = (y + 0.5) - center.y;
        row[y] = std::exp(-dy * dy * inv);
    }
    Heatmap out(width, height);
    for (int y = 0; y < height; ++y) {
        for (int x = 0; x < width; ++x) {
            out.at(x, y) = static_cast<float>(col[x] * row[y]);
        }
    }
    return out;
}

namespace {

inline double lerp_exact(double a, double b, double t) {
    return a + t * (b - a);
}

} // namespace

Heatmap resample(const Heatmap& h, int new_width, int new_height) {
    require_valid_dims(h, "resample");
    if (new_width < 1 || new_height < 1) {
        throw std::invalid_argument("resample: dimensions must be at least 1");
    }
    if (new_width == h.width && new_height == h.height) return h;

    Heatmap out(new_width, new_height);
    const double sx = static_cast<double>(h.width) / new_width;
    const double sy = static_cast<double>(h.height) / new_height;
    for (int yo = 0; yo < new_height; ++yo) {
        const double yi = (yo + 0.5) * sy - 0.5;
        const double yf = std::floor(yi);
        const int y0 = std::clamp(static_cast<int>(yf), 0, h.height - 1);
        const int y1 = std::clamp(static_cast<int>(yf) + 1, 0, h.height - 1);
        const double fy = yi - yf;
        for (int xo = 0; xo < new_width; ++xo) {
            const double xi = (xo + 0.5) * sx - 0.5;
            const double xf = std::floor(xi);
            const int x0 = std::clamp(static_cast<int>(xf), 0, h.width - 1);
            const int x1 = std::clamp(static_cast<int>(xf) + 1, 0, h.width - 1);
            const double fx = xi - xf;

            const double v00 = h.at(x0, y0);
            const double v10 = h.at(x1, y0);
            const double v01 = h.at(x0, y1);
            const double v11 = h.at(x1, y1);
            double v = lerp_exact(lerp_exact(v00, v10, fx), lerp_exact(v01, v11, fx), fy);
            // keep interpolation inside the corner range despite rounding
            const double lo = std::min(std::min(v00, v10), std::min(v01, v11));
            const double hi = std::max(std::max(v00, v10), std::max(v01, v11));
            v = std::clamp(v, lo, hi);
            out.at(xo, yo) = static_cast<float>(v);
        }
    }
    return out;
}

} // namespace gaze
