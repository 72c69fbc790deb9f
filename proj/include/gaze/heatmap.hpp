#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "gaze/geometry.hpp"

namespace gaze {

/// Row-major grid of attention confidences. The evaluation contract expects
/// values in [0, 1]; raw detector output may exceed that until normalize_max
/// is applied. Cell (x, y) sits at continuous coordinates (x + 0.5, y + 0.5).
struct Heatmap {
    int width = 0;
    int height = 0;
    std::vector<float> values;  // index = y * width + x

    Heatmap() = default;
    Heatmap(int w, int h, float fill = 0.0f)
        : width(w), height(h), values(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    float at(int x, int y) const { return values[static_cast<std::size_t>(y) * width + x]; }
    float& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }

    std::size_t cell_count() const { return values.size(); }
    float max_value() const;

    bool operator==(const Heatmap&) const = default;
};

/// Connected set of cells at or above a fraction of the grid maximum,
/// containing the argmax cell.
struct HotRegion {
    double threshold_used = 0.0;  // absolute cutoff applied to cell values
    BoundingBox bbox;             // extent of the covered cells, grid coordinates
    Point centroid;               // weighted average of member cell centres
    std::size_t cell_count = 0;
};

enum class CentroidMode {
    weighted,  // cell centres weighted by heatmap value
    uniform,   // plain average of cell centres
};

/// Divides every value by the grid maximum; an all-zero grid is returned
/// unchanged. Throws data_error when a value is negative or non-finite.
Heatmap normalize_max(const Heatmap& h);

/// Cell coordinates of the maximum value; ties resolve to the smallest
/// row-major index.
Point argmax(const Heatmap& h);

/// Binarizes at tau * max(h) and returns the 4-connected component of
/// supra-threshold cells that contains the argmax cell. Throws
/// no_region_error when the grid has no positive value, and
/// std::invalid_argument when tau is outside (0, 1].
HotRegion hottest_region(const Heatmap& h, double tau,
                         CentroidMode mode = CentroidMode::weighted);

/// Isotropic Gaussian evaluated at cell centres:
/// value(c) = exp(-|c - center|^2 / (2 sigma^2)). Throws
/// std::invalid_argument on nonpositive sigma.
Heatmap gaussian_mask(const Point& center, double sigma, int width, int height);

/// Bilinear resampling with edge clamping. Identity dimensions return a
/// bit-identical copy; constant grids stay constant; output values never
/// leave the input range.
Heatmap resample(const Heatmap& h, int new_width, int new_height);

} // namespace gaze
