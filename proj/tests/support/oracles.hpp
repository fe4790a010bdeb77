#pragma once

// Test-only reference implementations, kept independent of the library's
// computation paths they are used to check.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "textspot/geom.hpp"
#include "textspot/postproc.hpp"

namespace textspot::testing {

// IoU measured by counting sample points on a grid x grid lattice over the
// joint AABB. Per row, the inside interval of each rectangle is solved from
// its slab constraints, so the count equals point-in-rect testing of every
// lattice point without visiting each one.
inline double raster_iou(const OrientedRect& a, const OrientedRect& b, int grid = 2048) {
    const Box ba = aabb(a);
    const Box bb = aabb(b);
    const double xmin = std::min(ba.xmin, bb.xmin);
    const double ymin = std::min(ba.ymin, bb.ymin);
    const double xmax = std::max(ba.xmax, bb.xmax);
    const double ymax = std::max(ba.ymax, bb.ymax);
    const double dx = (xmax - xmin) / grid;
    const double dy = (ymax - ymin) / grid;

    // Inclusive x-interval of r on the line y = yc; false when empty.
    auto row_interval = [](const OrientedRect& r, double yc, double& lo, double& hi) {
        const double c = std::cos(r.theta);
        const double s = std::sin(r.theta);
        const double ry = yc - r.cy;
        lo = -1e300;
        hi = 1e300;
        auto slab = [&](double k, double m, double half) {
            if (std::abs(k) < 1e-15) return std::abs(m) <= half;
            double t0 = (-half - m) / k;
            double t1 = (half - m) / k;
            if (t0 > t1) std::swap(t0, t1);
            lo = std::max(lo, r.cx + t0);
            hi = std::min(hi, r.cx + t1);
            return lo <= hi;
        };
        return slab(c, s * ry, 0.5 * r.w) && slab(-s, c * ry, 0.5 * r.h) && lo <= hi;
    };

    auto count_samples = [&](double lo, double hi) -> long {
        // lattice x positions: xmin + (i + 0.5) * dx, i in [0, grid)
        long i0 = static_cast<long>(std::ceil((lo - xmin) / dx - 0.5));
        long i1 = static_cast<long>(std::floor((hi - xmin) / dx - 0.5));
        i0 = std::max(i0, 0l);
        i1 = std::min(i1, static_cast<long>(grid) - 1);
        return std::max(0l, i1 - i0 + 1);
    };

    long count_a = 0, count_b = 0, count_both = 0;
    for (int row = 0; row < grid; ++row) {
        const double yc = ymin + (row + 0.5) * dy;
        double alo, ahi, blo, bhi;
        const bool ina = row_interval(a, yc, alo, ahi);
        const bool inb = row_interval(b, yc, blo, bhi);
        if (ina) count_a += count_samples(alo, ahi);
        if (inb) count_b += count_samples(blo, bhi);
        if (ina && inb) count_both += count_samples(std::max(alo, blo), std::min(ahi, bhi));
    }
    const long uni = count_a + count_b - count_both;
    return uni > 0 ? static_cast<double>(count_both) / static_cast<double>(uni) : 0.0;
}

// Straightforward O(n^2) greedy NMS used as the equivalence reference:
// no pre-sorting, repeated linear scans for the current best survivor.
inline std::vector<Detection> reference_nms(const std::vector<Detection>& ds,
                                            double iou_threshold) {
    std::vector<bool> removed(ds.size(), false);
    std::vector<Detection> kept;
    for (;;) {
        int best = -1;
        for (int i = 0; i < static_cast<int>(ds.size()); ++i) {
            if (removed[i]) continue;
            if (best < 0 || detection_before(ds[i], ds[best], i, best)) best = i;
        }
        if (best < 0) break;
        kept.push_back(ds[best]);
        removed[best] = true;
        for (int i = 0; i < static_cast<int>(ds.size()); ++i) {
            if (!removed[i] && iou(ds[best].rect, ds[i].rect) > iou_threshold)
                removed[i] = true;
        }
    }
    return kept;
}

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace textspot::testing
