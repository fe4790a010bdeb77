#pragma once

#include <array>
#include <vector>

namespace textspot {

// Coordinate convention used throughout: x grows rightward, y grows downward,
// and positive angles rotate counterclockwise in the mathematical sense
// applied to this frame. All geometry is in 64-bit floats.

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

struct Box {
    double xmin = 0.0;
    double ymin = 0.0;
    double xmax = 0.0;
    double ymax = 0.0;

    double width() const { return xmax - xmin; }
    double height() const { return ymax - ymin; }
    Vec2 center() const { return {0.5 * (xmin + xmax), 0.5 * (ymin + ymax)}; }
    bool contains(Vec2 p) const {
        return p.x >= xmin && p.x < xmax && p.y >= ymin && p.y < ymax;
    }
};

// Reduces an angle modulo pi into [-pi/2, pi/2).
double canonical_theta(double theta);

// Rectangle given by center, extents along its own axes, and rotation.
// (w, h, theta) and (h, w, theta + pi/2) describe the same rectangle; the
// stored form always has theta in [-pi/2, pi/2) with w the extent along the
// rect frame's x-axis. Degenerate extents are rejected at construction.
struct OrientedRect {
    double cx = 0.0;
    double cy = 0.0;
    double w = 1.0;
    double h = 1.0;
    double theta = 0.0;

    OrientedRect() = default;
    OrientedRect(double cx, double cy, double w, double h, double theta);

    double area() const { return w * h; }
    Vec2 center() const { return {cx, cy}; }
};

// Four vertices in consistent winding order (image-frame pixels).
struct Quad {
    std::array<Vec2, 4> v;
};

using Polygon = std::vector<Vec2>;

// Corners in counterclockwise order (positive shoelace area).
std::array<Vec2, 4> to_corners(const OrientedRect& r);

double polygon_area(const Polygon& poly);

// Convex hull (counterclockwise, collinear points dropped).
Polygon convex_hull(Polygon pts);

bool contains_point(const OrientedRect& r, Vec2 p);

// Area of the convex intersection polygon, via half-plane clipping.
double intersection_area(const OrientedRect& a, const OrientedRect& b);

double iou(const OrientedRect& a, const OrientedRect& b);

Box aabb(const OrientedRect& r);

// Minimum-area enclosing rectangle. One side of the optimum is collinear
// with a hull edge, so the search runs over hull-edge orientations. Among
// equal-area candidates the parameterization with theta closest to zero is
// returned (then the smaller signed theta).
OrientedRect min_area_rect(const Quad& q);
OrientedRect min_area_rect(const Polygon& pts);

// Minimum Euclidean distance between two rectangles; 0 when they intersect
// or touch. Exact via pairwise edge-segment distances plus an overlap check.
double min_distance(const OrientedRect& a, const OrientedRect& b);

double segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1);

}  // namespace textspot
