#pragma once

#include <cmath>
#include <optional>
#include <utility>
#include <vector>

#include "textspot/geom.hpp"

namespace textspot {

// N x N grid over a square block image, B candidate boxes per cell.
// The matching detector network has stride 16, so side = 16 * n when
// modeling it; other combinations are accepted (see matches_conv_stride).
struct GridSpec {
    int n = 15;
    int b = 1;
    double side = 240.0;

    GridSpec() = default;
    GridSpec(int n, int b, double side);

    int cell_count() const { return n * n; }
    int box_count() const { return n * n * b; }
    double cell_size() const { return side / n; }
    bool matches_conv_stride() const { return side == 16.0 * n; }

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

// One candidate box: center offset within its cell as fractions of the cell,
// extents as fractions of the image side, angle mapped into [0, 1), and a
// confidence in [0, 1].
struct BoxParams {
    double x = 0.5;
    double y = 0.5;
    double w = 0.1;
    double h = 0.1;
    double theta_norm = 0.5;
    double c = 0.0;
};

// Smallest extent used during optimization; keeps d(sqrt(w))/dw finite.
constexpr double kMinBoxExtent = 1e-4;

// Clamps every field to its optimization range.
BoxParams clamp_params(BoxParams p);

// theta <-> theta_norm bijection between [-pi/2, pi/2) and [0, 1).
inline double theta_to_norm(double theta) { return (theta + M_PI / 2) / M_PI; }
inline double norm_to_theta(double norm) { return norm * M_PI - M_PI / 2; }

// The full parameter field: N^2 cells in row-major order, B boxes each.
struct GridTensor {
    GridSpec spec;
    std::vector<BoxParams> boxes;  // size n*n*b, index (row*n + col)*b + j

    GridTensor() = default;
    explicit GridTensor(const GridSpec& spec)
        : spec(spec), boxes(static_cast<size_t>(spec.box_count())) {}

    BoxParams& at(int cell, int j) { return boxes[static_cast<size_t>(cell) * spec.b + j]; }
    const BoxParams& at(int cell, int j) const {
        return boxes[static_cast<size_t>(cell) * spec.b + j];
    }
};

// Ground truth for one cell: the word's encoded pose plus its source index.
struct CellTruth {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;
    double theta_norm = 0.0;
    int word_index = -1;
};

struct GridTarget {
    GridSpec spec;
    std::vector<std::optional<CellTruth>> cells;  // size n*n, row-major

    GridTarget() = default;
    explicit GridTarget(const GridSpec& spec)
        : spec(spec), cells(static_cast<size_t>(spec.cell_count())) {}

    int occupied_count() const;
};

struct EncodeResult {
    GridTarget target;
    std::vector<int> collisions;  // word indices displaced by a larger word
};

// Cell containing a point; half-open cell intervals. Throws OutOfBounds for
// points outside [0, side) x [0, side).
std::pair<int, int> cell_of_point(Vec2 p, const GridSpec& spec);

// Assigns each word to the cell containing its center. When several words
// share a cell the largest-area word occupies it; the others are reported
// as collisions (ascending index order).
EncodeResult encode_scene(const std::vector<OrientedRect>& words, const GridSpec& spec);

// Emits every box of the tensor as a rect + confidence; no thresholding.
std::vector<std::pair<OrientedRect, double>> decode_grid(const GridTensor& g);

OrientedRect decode_box(const BoxParams& p, int row, int col, const GridSpec& spec);
OrientedRect decode_truth(const CellTruth& t, int row, int col, const GridSpec& spec);

// Responsible box per occupied cell: argmax over the B predictions of IoU
// against the cell's ground truth; ties and the all-zero case resolve to the
// smallest index. Unoccupied cells hold -1.
std::vector<int> assign_responsibility(const GridTensor& g, const GridTarget& t);

// Tensor whose responsible entries reproduce the target with confidence 1
// and every other box left at defaults with confidence 0.
GridTensor tensor_from_target(const GridTarget& t);

}  // namespace textspot
