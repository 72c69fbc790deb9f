#include "gaze/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace gaze {

double iou(const BoundingBox& a, const BoundingBox& b) {
    const double iw = std::min(a.x_max, b.x_max) - std::max(a.x_min, b.x_min);
    const double ih = std::min(a.y_max, b.y_max) - std::max(a.y_min, b.y_min);
    const double inter = std::max(0.0, iw) * std::max(0.0, ih);
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) return 0.0;
    return inter / uni;
}

Point center(const BoundingBox& b) {
    return {(b.x_min + b.x_max) / 2.0, (b.y_min + b.y_max) / 2.0};
}

double normalized_distance(const Point& p, const Point& q, double image_w, double image_h) {
    if (!(image_w > 0.0) || !(image_h > 0.0)) {
        throw std::invalid_argument("normalized_distance: image dimensions must be positive");
    }
    const double dx = (p.x - q.x) / image_w;
    const double dy = (p.y - q.y) / image_h;
    return std::sqrt(dx * dx + dy * dy);
}

double distance(const Point& p, const Point& q) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    return std::sqrt(dx * dx + dy * dy);
}

} // namespace gaze
