#include "textspot/gridcodec.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "textspot/errors.hpp"

namespace textspot {

GridSpec::GridSpec(int n, int b, double side) : n(n), b(b), side(side) {
    if (n < 1 || b < 1 || !(side > 0.0))
        throw std::invalid_argument("GridSpec: n >= 1, b >= 1, side > 0 required");
}

BoxParams clamp_params(BoxParams p) {
    static const double kThetaMax = std::nextafter(1.0, 0.0);
    p.x = std::clamp(p.x, 0.0, 1.0);
    p.y = std::clamp(p.y, 0.0, 1.0);
    p.w = std::clamp(p.w, kMinBoxExtent, 1.0);
    p.h = std::clamp(p.h, kMinBoxExtent, 1.0);
    p.theta_norm = std::clamp(p.theta_norm, 0.0, kThetaMax);
    p.c = std::clamp(p.c, 0.0, 1.0);
    return p;
}

int GridTarget::occupied_count() const {
    int count = 0;
    for (const auto& c : cells) count += c.has_value() ? 1 : 0;
    return count;
}

std::pair<int, int> cell_of_point(Vec2 p, const GridSpec& spec) {
    if (!(p.x >= 0.0) || !(p.y >= 0.0) || !(p.x < spec.side) || !(p.y < spec.side))
        throw OutOfBoundsError("cell_of_point: point outside the block image");
    const int row = static_cast<int>(std::floor(p.y * spec.n / spec.side));
    const int col = static_cast<int>(std::floor(p.x * spec.n / spec.side));
    return {std::min(row, spec.n - 1), std::min(col, spec.n - 1)};
}

EncodeResult encode_scene(const std::vector<OrientedRect>& words, const GridSpec& spec) {
    EncodeResult res;
    res.target = GridTarget(spec);
    std::vector<int> displaced;
    for (int i = 0; i < static_cast<int>(words.size()); ++i) {
        const OrientedRect& word = words[i];
        const auto [row, col] = cell_of_point({word.cx, word.cy}, spec);
        CellTruth truth;
        truth.x = word.cx * spec.n / spec.side - col;
        truth.y = word.cy * spec.n / spec.side - row;
        truth.w = word.w / spec.side;
        truth.h = word.h / spec.side;
        truth.theta_norm = theta_to_norm(word.theta);
        truth.word_index = i;
        auto& cell = res.target.cells[static_cast<size_t>(row) * spec.n + col];
        if (!cell) {
            cell = truth;
        } else if (word.area() > words[cell->word_index].area()) {
            displaced.push_back(cell->word_index);
            cell = truth;
        } else {
            displaced.push_back(i);
        }
    }
    std::sort(displaced.begin(), displaced.end());
    res.collisions = std::move(displaced);
    return res;
}

OrientedRect decode_box(const BoxParams& p, int row, int col, const GridSpec& spec) {
    return OrientedRect((col + p.x) * spec.side / spec.n,
                        (row + p.y) * spec.side / spec.n,
                        p.w * spec.side, p.h * spec.side,
                        norm_to_theta(p.theta_norm));
}

OrientedRect decode_truth(const CellTruth& t, int row, int col, const GridSpec& spec) {
    return OrientedRect((col + t.x) * spec.side / spec.n,
                        (row + t.y) * spec.side / spec.n,
                        t.w * spec.side, t.h * spec.side,
                        norm_to_theta(t.theta_norm));
}

std::vector<std::pair<OrientedRect, double>> decode_grid(const GridTensor& g) {
    std::vector<std::pair<OrientedRect, double>> out;
    out.reserve(g.boxes.size());
    for (int cell = 0; cell < g.spec.cell_count(); ++cell) {
        const int row = cell / g.spec.n;
        const int col = cell % g.spec.n;
        for (int j = 0; j < g.spec.b; ++j) {
            const BoxParams& p = g.at(cell, j);
            out.emplace_back(decode_box(p, row, col, g.spec), p.c);
        }
    }
    return out;
}

std::vector<int> assign_responsibility(const GridTensor& g, const GridTarget& t) {
    if (!(g.spec == t.spec))
        throw SpecMismatchError("assign_responsibility: tensor and target specs differ");
    std::vector<int> responsible(static_cast<size_t>(g.spec.cell_count()), -1);
    for (int cell = 0; cell < g.spec.cell_count(); ++cell) {
        if (!t.cells[cell]) continue;
        const int row = cell / g.spec.n;
        const int col = cell % g.spec.n;
        const OrientedRect truth = decode_truth(*t.cells[cell], row, col, g.spec);
        int best = 0;
        double best_iou = -1.0;
        for (int j = 0; j < g.spec.b; ++j) {
            const double v = iou(decode_box(g.at(cell, j), row, col, g.spec), truth);
            if (v > best_iou) {
                best_iou = v;
                best = j;
            }
        }
        responsible[cell] = best;
    }
    return responsible;
}

GridTensor tensor_from_target(const GridTarget& t) {
    GridTensor g(t.spec);
    for (int cell = 0; cell < t.spec.cell_count(); ++cell) {
        if (!t.cells[cell]) continue;
        const CellTruth& truth = *t.cells[cell];
        BoxParams& p = g.at(cell, 0);
        p.x = truth.x;
        p.y = truth.y;
        p.w = truth.w;
        p.h = truth.h;
        p.theta_norm = truth.theta_norm;
        p.c = 1.0;
    }
    return g;
}

}  // namespace textspot
