#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "textspot/geom.hpp"
#include "textspot/postproc.hpp"

namespace textspot {

// Row-major boolean grid; pixel (x, y) covers [x, x+1) x [y, y+1) in the
// continuous image frame.
struct BinaryMask {
    int width = 0;
    int height = 0;
    std::vector<uint8_t> bits;  // 0 or 1, size width * height

    BinaryMask() = default;
    BinaryMask(int width, int height)
        : width(width), height(height),
          bits(static_cast<size_t>(width) * height, 0) {}

    bool at(int x, int y) const { return bits[static_cast<size_t>(y) * width + x] != 0; }
    void set(int x, int y, bool v) { bits[static_cast<size_t>(y) * width + x] = v ? 1 : 0; }
};

struct Block {
    int id = 0;
    Box region_aabb;
    std::vector<int> member_word_indices;  // filled by the miner only
};

// Affine mapping from a source box in the image frame onto the square
// detector input [0, dst_side)^2. scale_x == scale_y unless the edge
// exception clipped the co-centered square (anisotropic set).
struct CropPlan {
    Box src;
    double dst_side = 240.0;
    double scale_x = 1.0;
    double scale_y = 1.0;
    Vec2 offset;  // src top-left corner
    bool anisotropic = false;

    Vec2 to_block(Vec2 p) const {
        return {(p.x - offset.x) * scale_x, (p.y - offset.y) * scale_y};
    }
    Vec2 to_image(Vec2 p) const {
        return {p.x / scale_x + offset.x, p.y / scale_y + offset.y};
    }
};

// 8-connected components of true pixels; components smaller than min_area
// pixels are dropped. Blocks come out ordered by (ymin, xmin).
std::vector<Block> connected_components(const BinaryMask& m, int min_area = 10);

// Training-time block miner: words are linked when the minimum distance
// between their rectangles is strictly smaller than the sum of their
// heights; one block per connected component, bounded by the members'
// corners.
std::vector<Block> mine_blocks(const std::vector<OrientedRect>& words,
                               double image_w, double image_h);

// Square crop co-centered with the block, uniformly scaled to dst_side.
// When the square would leave the image it is clipped instead (edge
// exception) and the resize becomes anisotropic.
CropPlan crop_plan(const Block& b, double image_w, double image_h,
                   double dst_side = 240.0);

OrientedRect map_rect_to_block(const OrientedRect& r, const CropPlan& p);
OrientedRect map_rect_to_image(const OrientedRect& r, const CropPlan& p);

Detection map_detection_to_image(const Detection& d, const CropPlan& p);

// Binary PGM ("P5") mask I/O; values >= 128 read as text, written as 0/255.
BinaryMask read_pgm(const std::string& path);
void write_pgm(const BinaryMask& m, const std::string& path);

}  // namespace textspot
