#pragma once

#include <cmath>

namespace gaze {

struct Point {
    double x = 0.0;
    double y = 0.0;

    bool operator==(const Point&) const = default;
};

/// Axis-aligned rectangle over continuous pixel coordinates. Boxes are closed
/// real intervals: width = x_max - x_min (no +1 convention anywhere).
struct BoundingBox {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }

    bool valid() const {
        return std::isfinite(x_min) && std::isfinite(y_min) &&
               std::isfinite(x_max) && std::isfinite(y_max) &&
               x_min <= x_max && y_min <= y_max;
    }

    bool operator==(const BoundingBox&) const = default;
};

/// Intersection over union. Total on valid boxes: degenerate (zero-area)
/// boxes yield 0, including two identical degenerate boxes (union area 0).
double iou(const BoundingBox& a, const BoundingBox& b);

/// Midpoint of the box.
Point center(const BoundingBox& b);

/// Euclidean distance between p and q after dividing each axis by the image
/// dimension, i.e. distance on an image with width and height normalized to 1.
/// Throws std::invalid_argument on nonpositive image dimensions.
double normalized_distance(const Point& p, const Point& q, double image_w, double image_h);

/// Plain Euclidean distance in pixels.
double distance(const Point& p, const Point& q);

} // namespace gaze
