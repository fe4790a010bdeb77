#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "textspot/errors.hpp"
#include "textspot/geom.hpp"
#include "textspot/rng.hpp"
#include "support/oracles.hpp"

using namespace textspot;

namespace {

OrientedRect random_rect(Rng& rng) {
    return OrientedRect(rng.uniform(-50.0, 50.0), rng.uniform(-50.0, 50.0),
                        rng.uniform(0.5, 60.0), rng.uniform(0.5, 60.0),
                        rng.uniform(-M_PI / 2, M_PI / 2));
}

bool corners_match(const std::array<Vec2, 4>& got, const std::array<Vec2, 4>& want,
                   double tol = 1e-12) {
    // Same vertex set, any rotation/reflection of the order.
    for (const Vec2& w : want) {
        bool found = false;
        for (const Vec2& g : got) {
            if (std::abs(g.x - w.x) < tol && std::abs(g.y - w.y) < tol) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace

TEST_SUITE("geom") {

TEST_CASE("construction rejects degenerate rects and canonicalizes theta") {
    CHECK_THROWS_AS(OrientedRect(0, 0, 0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(OrientedRect(0, 0, 1.0, -2.0, 0.0), std::invalid_argument);

    CHECK(OrientedRect(0, 0, 1, 1, M_PI / 2).theta == doctest::Approx(-M_PI / 2));
    CHECK(OrientedRect(0, 0, 1, 1, M_PI).theta == doctest::Approx(0.0));
    CHECK(OrientedRect(0, 0, 1, 1, 0.3 + M_PI).theta == doctest::Approx(0.3));
    CHECK(OrientedRect(0, 0, 1, 1, -M_PI / 2).theta == doctest::Approx(-M_PI / 2));
}

TEST_CASE("to_corners identity rotation") {
    const auto c = to_corners(OrientedRect(0, 0, 2, 1, 0));
    CHECK(corners_match(c, {Vec2{-1, -0.5}, Vec2{1, -0.5}, Vec2{1, 0.5}, Vec2{-1, 0.5}}));
}

TEST_CASE("to_corners quarter turn gives the swapped axis-aligned rect") {
    const auto c = to_corners(OrientedRect(0, 0, 2, 1, M_PI / 2));
    CHECK(corners_match(c, {Vec2{-0.5, -1}, Vec2{0.5, -1}, Vec2{0.5, 1}, Vec2{-0.5, 1}}));
}

TEST_CASE("to_corners rotates by the math-convention matrix") {
    const auto c = to_corners(OrientedRect(0, 0, 2, 1, M_PI / 4));
    // corner (1, 0.5) in the rect frame
    CHECK(c[2].x == doctest::Approx(0.35355).epsilon(1e-4));
    CHECK(c[2].y == doctest::Approx(1.06066).epsilon(1e-4));
}

TEST_CASE("to_corners is counterclockwise") {
    Rng rng(7);
    for (int i = 0; i < 50; ++i) {
        const auto c = to_corners(random_rect(rng));
        CHECK(polygon_area(Polygon(c.begin(), c.end())) > 0.0);
    }
}

TEST_CASE("intersection_area basic cases") {
    const OrientedRect unit(0, 0, 1, 1, 0);
    CHECK(intersection_area(unit, unit) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(intersection_area(unit, OrientedRect(5, 5, 1, 1, 0)) == 0.0);

    // unit square vs its 45-degree rotation: regular octagon, 2(sqrt(2)-1)
    const OrientedRect rot(0, 0, 1, 1, M_PI / 4);
    CHECK(intersection_area(unit, rot) ==
          doctest::Approx(2 * (std::sqrt(2.0) - 1.0)).epsilon(1e-3));
}

TEST_CASE("iou basic cases") {
    const OrientedRect unit(0, 0, 1, 1, 0);
    CHECK(iou(unit, unit) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(iou(unit, OrientedRect(0.5, 0, 1, 1, 0)) == doctest::Approx(1.0 / 3).epsilon(1e-12));
    CHECK(iou(unit, OrientedRect(0, 0, 1, 1, M_PI / 4)) ==
          doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-3));
}

TEST_CASE("iou symmetry, identity, and bounds") {
    Rng rng(11);
    for (int i = 0; i < 300; ++i) {
        const OrientedRect a = random_rect(rng);
        const OrientedRect b = random_rect(rng);
        const double ab = iou(a, b);
        const double ba = iou(b, a);
        CHECK(std::abs(ab - ba) < 1e-12);
        CHECK(ab >= 0.0);
        CHECK(ab <= 1.0);
        const double inter = intersection_area(a, b);
        CHECK(inter >= 0.0);
        CHECK(inter <= std::min(a.area(), b.area()) + 1e-9);
        CHECK(iou(a, a) == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("iou invariant under joint translation and rotation") {
    Rng rng(13);
    for (int i = 0; i < 100; ++i) {
        const OrientedRect a = random_rect(rng);
        const OrientedRect b = random_rect(rng);
        const double base = iou(a, b);
        const double tx = rng.uniform(-100, 100);
        const double ty = rng.uniform(-100, 100);
        const double phi = rng.uniform(-M_PI, M_PI);
        const double c = std::cos(phi), s = std::sin(phi);
        auto moved = [&](const OrientedRect& r) {
            return OrientedRect(c * r.cx - s * r.cy + tx, s * r.cx + c * r.cy + ty,
                                r.w, r.h, r.theta + phi);
        };
        CHECK(std::abs(iou(moved(a), moved(b)) - base) < 1e-9);
    }
}

TEST_CASE("iou matches the rasterization oracle on seeded pairs") {
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        const OrientedRect a = random_rect(rng);
        const OrientedRect b = random_rect(rng);
        CHECK(std::abs(iou(a, b) - testing::raster_iou(a, b)) < 1e-3);
    }
}

TEST_CASE("aabb") {
    auto check_box = [](const Box& got, double x0, double y0, double x1, double y1) {
        CHECK(got.xmin == doctest::Approx(x0).epsilon(1e-12));
        CHECK(got.ymin == doctest::Approx(y0).epsilon(1e-12));
        CHECK(got.xmax == doctest::Approx(x1).epsilon(1e-12));
        CHECK(got.ymax == doctest::Approx(y1).epsilon(1e-12));
    };
    check_box(aabb(OrientedRect(0, 0, 4, 2, 0)), -2, -1, 2, 1);
    check_box(aabb(OrientedRect(0, 0, 4, 2, M_PI / 2)), -1, -2, 1, 2);
    const double s2 = std::sqrt(2.0);
    check_box(aabb(OrientedRect(0, 0, s2, s2, M_PI / 4)), -1, -1, 1, 1);
}

TEST_CASE("min_area_rect of an axis-aligned square quad") {
    const Quad q{{Vec2{0, 0}, Vec2{1, 0}, Vec2{1, 1}, Vec2{0, 1}}};
    const OrientedRect r = min_area_rect(q);
    CHECK(r.cx == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.cy == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.w == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.h == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(r.theta == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("min_area_rect rejects degenerate quads") {
    CHECK_THROWS_AS(min_area_rect(Quad{{Vec2{0, 0}, Vec2{1, 1}, Vec2{2, 2}, Vec2{3, 3}}}),
                    DegenerateQuadError);
    CHECK_THROWS_AS(min_area_rect(Quad{{Vec2{0, 0}, Vec2{0, 0}, Vec2{0, 0}, Vec2{0, 0}}}),
                    DegenerateQuadError);
}

TEST_CASE("min_area_rect round-trips rect corners") {
    Rng rng(19);
    for (int i = 0; i < 200; ++i) {
        const OrientedRect r = random_rect(rng);
        const auto c = to_corners(r);
        const OrientedRect back = min_area_rect(Quad{c});
        CHECK(std::abs(back.cx - r.cx) < 1e-9);
        CHECK(std::abs(back.cy - r.cy) < 1e-9);
        CHECK(std::abs(back.area() - r.area()) / r.area() < 1e-9);
    }
}

TEST_CASE("min_area_rect equals brute-force search over hull edge angles") {
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
        Polygon pts;
        for (int k = 0; k < 4; ++k)
            pts.push_back({rng.uniform(-20, 20), rng.uniform(-20, 20)});
        const Polygon hull = convex_hull(pts);
        if (hull.size() < 3) continue;

        double best = 1e300;
        const size_t n = hull.size();
        for (size_t e = 0; e < n; ++e) {
            const Vec2 d = hull[(e + 1) % n] - hull[e];
            const double phi = std::atan2(d.y, d.x);
            const double c = std::cos(phi), s = std::sin(phi);
            double umin = 1e300, umax = -1e300, vmin = 1e300, vmax = -1e300;
            for (const Vec2& p : hull) {
                const double u = c * p.x + s * p.y;
                const double v = -s * p.x + c * p.y;
                umin = std::min(umin, u);
                umax = std::max(umax, u);
                vmin = std::min(vmin, v);
                vmax = std::max(vmax, v);
            }
            best = std::min(best, (umax - umin) * (vmax - vmin));
        }
        const OrientedRect r = min_area_rect(pts);
        CHECK(r.area() == doctest::Approx(best).epsilon(1e-9));
    }
}

TEST_CASE("min_distance") {
    // touching rects have distance 0
    CHECK(min_distance(OrientedRect(0, 0, 2, 2, 0), OrientedRect(2, 0, 2, 2, 0)) ==
          doctest::Approx(0.0).epsilon(1e-12));
    // one inside the other
    CHECK(min_distance(OrientedRect(0, 0, 10, 10, 0), OrientedRect(0, 0, 1, 1, 0)) == 0.0);
    // side by side with a 3px gap
    CHECK(min_distance(OrientedRect(0, 0, 2, 2, 0), OrientedRect(5, 0, 2, 2, 0)) ==
          doctest::Approx(3.0).epsilon(1e-12));
    // diagonal gap
    CHECK(min_distance(OrientedRect(0, 0, 2, 2, 0), OrientedRect(4, 4, 2, 2, 0)) ==
          doctest::Approx(3.0 * std::sqrt(2.0)).epsilon(1e-12));
}

}  // TEST_SUITE
