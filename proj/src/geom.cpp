#include "textspot/geom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "textspot/errors.hpp"

namespace textspot {

namespace {

constexpr double kDedupTol = 1e-9;  // near-degenerate clip vertices

// Fixed-capacity vertex buffer: clipping a 4-gon against 4 half-planes
// yields at most 8 vertices.
struct ClipBuf {
    std::array<Vec2, 16> v;
    int n = 0;
    void push(Vec2 p) { v[n++] = p; }
};

double buf_area(const ClipBuf& b) {
    double acc = 0.0;
    for (int i = 0; i < b.n; ++i) {
        const Vec2& p = b.v[i];
        const Vec2& q = b.v[(i + 1) % b.n];
        acc += p.x * q.y - q.x * p.y;
    }
    return 0.5 * acc;
}

// Clips a convex CCW polygon against the half-plane left of edge a->b.
void clip_edge(const ClipBuf& in, ClipBuf& out, Vec2 a, Vec2 b) {
    out.n = 0;
    const Vec2 dir = b - a;
    for (int i = 0; i < in.n; ++i) {
        const Vec2 p = in.v[i];
        const Vec2 q = in.v[(i + 1) % in.n];
        const double sp = cross(dir, p - a);
        const double sq = cross(dir, q - a);
        if (sp >= 0.0) out.push(p);
        if ((sp > 0.0 && sq < 0.0) || (sp < 0.0 && sq > 0.0)) {
            const double t = sp / (sp - sq);
            out.push(p + (q - p) * t);
        }
    }
}

void dedup(ClipBuf& b) {
    if (b.n < 2) return;
    ClipBuf out;
    for (int i = 0; i < b.n; ++i) {
        const Vec2 p = b.v[i];
        const Vec2 q = b.v[(i + 1) % b.n];
        if (std::abs(p.x - q.x) > kDedupTol || std::abs(p.y - q.y) > kDedupTol)
            out.push(p);
    }
    b = out;
}

}  // namespace

double canonical_theta(double theta) {
    double t = std::remainder(theta, M_PI);  // [-pi/2, pi/2]
    if (t >= M_PI / 2) t -= M_PI;
    return t;
}

OrientedRect::OrientedRect(double cx, double cy, double w, double h, double theta)
    : cx(cx), cy(cy), w(w), h(h), theta(canonical_theta(theta)) {
    if (!(w > 0.0) || !(h > 0.0) || !std::isfinite(w) || !std::isfinite(h) ||
        !std::isfinite(cx) || !std::isfinite(cy) || !std::isfinite(theta)) {
        throw std::invalid_argument("OrientedRect: degenerate or non-finite parameters");
    }
}

std::array<Vec2, 4> to_corners(const OrientedRect& r) {
    const double c = std::cos(r.theta);
    const double s = std::sin(r.theta);
    const double hw = 0.5 * r.w;
    const double hh = 0.5 * r.h;
    auto rot = [&](double x, double y) -> Vec2 {
        return {r.cx + c * x - s * y, r.cy + s * x + c * y};
    };
    return {rot(-hw, -hh), rot(hw, -hh), rot(hw, hh), rot(-hw, hh)};
}

double polygon_area(const Polygon& poly) {
    const size_t n = poly.size();
    if (n < 3) return 0.0;
    double acc = 0.0;
    for (size_t i = 0; i < n; ++i) {
        const Vec2& p = poly[i];
        const Vec2& q = poly[(i + 1) % n];
        acc += p.x * q.y - q.x * p.y;
    }
    return 0.5 * acc;
}

Polygon convex_hull(Polygon pts) {
    std::sort(pts.begin(), pts.end(), [](Vec2 a, Vec2 b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end(),
                          [](Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }),
              pts.end());
    const size_t n = pts.size();
    if (n < 3) return pts;
    Polygon hull(2 * n);
    size_t k = 0;
    for (size_t i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper chain
        while (k >= t && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    return hull;
}

bool contains_point(const OrientedRect& r, Vec2 p) {
    const double c = std::cos(r.theta);
    const double s = std::sin(r.theta);
    const double dx = p.x - r.cx;
    const double dy = p.y - r.cy;
    const double u = c * dx + s * dy;
    const double v = -s * dx + c * dy;
    return std::abs(u) <= 0.5 * r.w && std::abs(v) <= 0.5 * r.h;
}

double intersection_area(const OrientedRect& a, const OrientedRect& b) {
    const auto ca = to_corners(a);
    const auto cb = to_corners(b);
    ClipBuf cur;
    for (const Vec2& p : ca) cur.push(p);
    ClipBuf next;
    for (int e = 0; e < 4; ++e) {
        clip_edge(cur, next, cb[e], cb[(e + 1) % 4]);
        cur = next;
        if (cur.n == 0) return 0.0;
    }
    dedup(cur);
    if (cur.n < 3) return 0.0;
    return std::max(0.0, buf_area(cur));
}

double iou(const OrientedRect& a, const OrientedRect& b) {
    const double inter = intersection_area(a, b);
    const double uni = a.area() + b.area() - inter;
    if (uni <= 0.0) return 0.0;
    return std::clamp(inter / uni, 0.0, 1.0);
}

Box aabb(const OrientedRect& r) {
    const auto corners = to_corners(r);
    Box box{corners[0].x, corners[0].y, corners[0].x, corners[0].y};
    for (const Vec2& p : corners) {
        box.xmin = std::min(box.xmin, p.x);
        box.ymin = std::min(box.ymin, p.y);
        box.xmax = std::max(box.xmax, p.x);
        box.ymax = std::max(box.ymax, p.y);
    }
    return box;
}

OrientedRect min_area_rect(const Polygon& pts) {
    const Polygon hull = convex_hull(pts);
    if (hull.size() < 3)
        throw DegenerateQuadError("min_area_rect: collinear or degenerate vertices");

    struct Candidate {
        double area;
        double cx, cy, w, h, theta;
    };
    std::vector<Candidate> candidates;
    const size_t n = hull.size();
    for (size_t i = 0; i < n; ++i) {
        const Vec2 edge = hull[(i + 1) % n] - hull[i];
        const double len = std::hypot(edge.x, edge.y);
        if (len < 1e-12) continue;
        const Vec2 u{edge.x / len, edge.y / len};
        const Vec2 v{-u.y, u.x};
        double smin = std::numeric_limits<double>::max(), smax = -smin;
        double tmin = smin, tmax = -smin;
        for (const Vec2& p : hull) {
            const double s = dot(p, u);
            const double t = dot(p, v);
            smin = std::min(smin, s);
            smax = std::max(smax, s);
            tmin = std::min(tmin, t);
            tmax = std::max(tmax, t);
        }
        const double we = smax - smin;
        const double he = tmax - tmin;
        const Vec2 c = u * (0.5 * (smin + smax)) + v * (0.5 * (tmin + tmax));
        const double phi = std::atan2(u.y, u.x);
        // Both parameterizations of the same rectangle.
        candidates.push_back({we * he, c.x, c.y, we, he, canonical_theta(phi)});
        candidates.push_back({we * he, c.x, c.y, he, we, canonical_theta(phi + M_PI / 2)});
    }
    if (candidates.empty())
        throw DegenerateQuadError("min_area_rect: degenerate hull");

    double best_area = std::numeric_limits<double>::max();
    for (const auto& c : candidates) best_area = std::min(best_area, c.area);
    if (!(best_area > 0.0))
        throw DegenerateQuadError("min_area_rect: zero-area enclosure");

    const Candidate* best = nullptr;
    const double area_tol = best_area * (1.0 + 1e-9);
    for (const auto& c : candidates) {
        if (c.area > area_tol) continue;
        if (best == nullptr || std::abs(c.theta) < std::abs(best->theta) ||
            (std::abs(c.theta) == std::abs(best->theta) && c.theta < best->theta)) {
            best = &c;
        }
    }
    return OrientedRect(best->cx, best->cy, best->w, best->h, best->theta);
}

OrientedRect min_area_rect(const Quad& q) {
    return min_area_rect(Polygon(q.v.begin(), q.v.end()));
}

double segment_distance(Vec2 a0, Vec2 a1, Vec2 b0, Vec2 b1) {
    auto point_seg = [](Vec2 p, Vec2 s0, Vec2 s1) {
        const Vec2 d = s1 - s0;
        const double len2 = dot(d, d);
        double t = len2 > 0.0 ? dot(p - s0, d) / len2 : 0.0;
        t = std::clamp(t, 0.0, 1.0);
        const Vec2 proj = s0 + d * t;
        return std::hypot(p.x - proj.x, p.y - proj.y);
    };
    // Proper crossing means distance 0.
    const double d1 = cross(a1 - a0, b0 - a0);
    const double d2 = cross(a1 - a0, b1 - a0);
    const double d3 = cross(b1 - b0, a0 - b0);
    const double d4 = cross(b1 - b0, a1 - b0);
    if (((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0))) return 0.0;
    return std::min(std::min(point_seg(a0, b0, b1), point_seg(a1, b0, b1)),
                    std::min(point_seg(b0, a0, a1), point_seg(b1, a0, a1)));
}

double min_distance(const OrientedRect& a, const OrientedRect& b) {
    if (intersection_area(a, b) > 0.0) return 0.0;
    const auto ca = to_corners(a);
    const auto cb = to_corners(b);
    double best = std::numeric_limits<double>::max();
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            best = std::min(best, segment_distance(ca[i], ca[(i + 1) % 4],
                                                   cb[j], cb[(j + 1) % 4]));
        }
    }
    return best;
}

}  // namespace textspot
