// Independent reference implementations used to cross-check the library.
// Everything here recomputes results from first principles (counting,
// exhaustive search, pairwise statistics) and must stay free of the
// production code paths it verifies.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "gaze/fusion.hpp"
#include "gaze/geometry.hpp"
#include "gaze/heatmap.hpp"

namespace oracle {

/// IoU of integer-coordinate boxes by counting unit lattice cells.
/// Returns 0 when the union covers no cell.
inline double rasterized_iou(const gaze::BoundingBox& a, const gaze::BoundingBox& b) {
    const auto inside = [](const gaze::BoundingBox& box, long long x, long long y) {
        return x >= static_cast<long long>(box.x_min) && x + 1 <= static_cast<long long>(box.x_max) &&
               y >= static_cast<long long>(box.y_min) && y + 1 <= static_cast<long long>(box.y_max);
    };
    const long long x0 = static_cast<long long>(std::min(a.x_min, b.x_min));
    const long long x1 = static_cast<long long>(std::max(a.x_max, b.x_max));
    const long long y0 = static_cast<long long>(std::min(a.y_min, b.y_min));
    const long long y1 = static_cast<long long>(std::max(a.y_max, b.y_max));
    long long inter = 0, uni = 0;
    for (long long y = y0; y < y1; ++y) {
        for (long long x = x0; x < x1; ++x) {
            const bool in_a = inside(a, x, y);
            const bool in_b = inside(b, x, y);
            if (in_a && in_b) ++inter;
            if (in_a || in_b) ++uni;
        }
    }
    if (uni == 0) return 0.0;
    return static_cast<double>(inter) / static_cast<double>(uni);
}

struct Region {
    std::set<std::pair<int, int>> cells;  // (x, y)
    double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
};

/// Exhaustive flood fill: threshold at tau * max, then grow the component
/// containing the first row-major maximum via repeated scanning.
inline Region flood_region(const gaze::Heatmap& h, double tau) {
    float max = h.values[0];
    std::size_t peak = 0;
    for (std::size_t i = 1; i < h.values.size(); ++i) {
        if (h.values[i] > max) {
            max = h.values[i];
            peak = i;
        }
    }
    const double threshold = tau * static_cast<double>(max);
    const auto qualifies = [&](int x, int y) {
        return static_cast<double>(h.at(x, y)) >= threshold;
    };

    Region region;
    region.cells.insert({static_cast<int>(peak % h.width), static_cast<int>(peak / h.width)});
    bool grew = true;
    while (grew) {
        grew = false;
        for (int y = 0; y < h.height; ++y) {
            for (int x = 0; x < h.width; ++x) {
                if (region.cells.count({x, y})) continue;
                if (!qualifies(x, y)) continue;
                const bool touches = region.cells.count({x - 1, y}) ||
                                     region.cells.count({x + 1, y}) ||
                                     region.cells.count({x, y - 1}) ||
                                     region.cells.count({x, y + 1});
                if (touches) {
                    region.cells.insert({x, y});
                    grew = true;
                }
            }
        }
    }
    region.min_x = region.max_x = region.cells.begin()->first;
    region.min_y = region.max_y = region.cells.begin()->second;
    for (const auto& [x, y] : region.cells) {
        region.min_x = std::min(region.min_x, static_cast<double>(x));
        region.max_x = std::max(region.max_x, static_cast<double>(x));
        region.min_y = std::min(region.min_y, static_cast<double>(y));
        region.max_y = std::max(region.max_y, static_cast<double>(y));
    }
    return region;
}

/// Mann-Whitney pairwise ranking statistic: fraction of (positive, negative)
/// pairs where the positive outscores the negative; ties count 1/2.
inline double pairwise_auc(const std::vector<float>& scores,
                           const std::vector<std::uint8_t>& labels) {
    double sum = 0.0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (!labels[i]) continue;
        for (std::size_t j = 0; j < scores.size(); ++j) {
            if (labels[j]) continue;
            ++pairs;
            if (scores[i] > scores[j]) {
                sum += 1.0;
            } else if (scores[i] == scores[j]) {
                sum += 0.5;
            }
        }
    }
    return sum / static_cast<double>(pairs);
}

struct SelectionOutcome {
    std::optional<int> index;
    std::string rule;  // "overlap", "nearest", "none"
};

/// Brute-force restatement of the selection rule. Recomputes the hot region
/// with flood_region, the region box/centroid, every IoU (own closed form)
/// and every distance, then applies the overlap-else-nearest logic by
/// exhaustive comparison.
inline SelectionOutcome brute_force_selection(const gaze::Heatmap& h, const gaze::DetectionSet& d,
                                              double tau, bool pick_largest) {
    const Region region = flood_region(h, tau);
    const gaze::BoundingBox region_box{region.min_x, region.min_y, region.max_x + 1,
                                       region.max_y + 1};
    double wsum = 0, cx = 0, cy = 0;
    for (const auto& [x, y] : region.cells) {
        const double w = h.at(x, y);
        wsum += w;
        cx += w * (x + 0.5);
        cy += w * (y + 0.5);
    }
    cx /= wsum;
    cy /= wsum;

    const auto own_iou = [](const gaze::BoundingBox& a, const gaze::BoundingBox& b) {
        const double ix = std::max(0.0, std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min));
        const double iy = std::max(0.0, std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min));
        const double inter = ix * iy;
        const double area_a = (a.x_max - a.x_min) * (a.y_max - a.y_min);
        const double area_b = (b.x_max - b.x_min) * (b.y_max - b.y_min);
        const double uni = area_a + area_b - inter;
        return uni > 0.0 ? inter / uni : 0.0;
    };
    const auto center_dist = [&](const gaze::BoundingBox& b) {
        const double dx = (b.x_min + b.x_max) / 2.0 - cx;
        const double dy = (b.y_min + b.y_max) / 2.0 - cy;
        return std::sqrt(dx * dx + dy * dy);
    };

    SelectionOutcome out;
    if (d.detections.empty()) {
        out.rule = "none";
        return out;
    }
    int best = -1;
    for (std::size_t i = 0; i < d.detections.size(); ++i) {
        if (own_iou(region_box, d.detections[i].bbox) <= 0.0) continue;
        if (best < 0) {
            best = static_cast<int>(i);
            continue;
        }
        const double vi = own_iou(region_box, d.detections[i].bbox);
        const double vb = own_iou(region_box, d.detections[best].bbox);
        if ((pick_largest && vi > vb) || (!pick_largest && vi < vb) ||
            (vi == vb && center_dist(d.detections[i].bbox) < center_dist(d.detections[best].bbox))) {
            best = static_cast<int>(i);
        }
    }
    if (best >= 0) {
        out.index = best;
        out.rule = "overlap";
        return out;
    }
    best = 0;
    for (std::size_t i = 1; i < d.detections.size(); ++i) {
        if (center_dist(d.detections[i].bbox) < center_dist(d.detections[best].bbox)) {
            best = static_cast<int>(i);
        }
    }
    out.index = best;
    out.rule = "nearest";
    return out;
}

} // namespace oracle
