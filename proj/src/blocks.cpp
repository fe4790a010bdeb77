#include "textspot/blocks.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <vector>

#include "textspot/errors.hpp"

namespace textspot {

std::vector<Block> connected_components(const BinaryMask& m, int min_area) {
    std::vector<int> label(static_cast<size_t>(m.width) * m.height, -1);
    struct Component {
        int xmin, ymin, xmax, ymax;
        int pixels;
    };
    std::vector<Component> comps;
    std::vector<int> stack;

    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) {
            const size_t idx = static_cast<size_t>(y) * m.width + x;
            if (!m.bits[idx] || label[idx] >= 0) continue;
            const int id = static_cast<int>(comps.size());
            Component c{x, y, x, y, 0};
            label[idx] = id;
            stack.push_back(static_cast<int>(idx));
            while (!stack.empty()) {
                const int cur = stack.back();
                stack.pop_back();
                const int cy = cur / m.width;
                const int cx = cur % m.width;
                ++c.pixels;
                c.xmin = std::min(c.xmin, cx);
                c.xmax = std::max(c.xmax, cx);
                c.ymin = std::min(c.ymin, cy);
                c.ymax = std::max(c.ymax, cy);
                for (int dy = -1; dy <= 1; ++dy) {
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int nx = cx + dx;
                        const int ny = cy + dy;
                        if (nx < 0 || ny < 0 || nx >= m.width || ny >= m.height) continue;
                        const size_t nidx = static_cast<size_t>(ny) * m.width + nx;
                        if (m.bits[nidx] && label[nidx] < 0) {
                            label[nidx] = id;
                            stack.push_back(static_cast<int>(nidx));
                        }
                    }
                }
            }
            comps.push_back(c);
        }
    }

    std::vector<Block> blocks;
    for (const Component& c : comps) {
        if (c.pixels < min_area) continue;
        Block b;
        b.region_aabb = {static_cast<double>(c.xmin), static_cast<double>(c.ymin),
                         static_cast<double>(c.xmax + 1), static_cast<double>(c.ymax + 1)};
        blocks.push_back(std::move(b));
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
        if (a.region_aabb.ymin != b.region_aabb.ymin)
            return a.region_aabb.ymin < b.region_aabb.ymin;
        return a.region_aabb.xmin < b.region_aabb.xmin;
    });
    for (size_t i = 0; i < blocks.size(); ++i) blocks[i].id = static_cast<int>(i);
    return blocks;
}

std::vector<Block> mine_blocks(const std::vector<OrientedRect>& words,
                               double image_w, double image_h) {
    (void)image_w;
    (void)image_h;
    const int n = static_cast<int>(words.size());
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int i) {
        while (parent[i] != i) {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        return i;
    };
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double threshold = words[i].h + words[j].h;
            if (min_distance(words[i], words[j]) < threshold) {
                parent[find(i)] = find(j);
            }
        }
    }

    std::vector<Block> blocks;
    std::vector<int> root_to_block(n, -1);
    for (int i = 0; i < n; ++i) {
        const int root = find(i);
        if (root_to_block[root] < 0) {
            root_to_block[root] = static_cast<int>(blocks.size());
            blocks.push_back({});
        }
        blocks[root_to_block[root]].member_word_indices.push_back(i);
    }
    for (Block& b : blocks) {
        bool first = true;
        for (int wi : b.member_word_indices) {
            for (const Vec2& p : to_corners(words[wi])) {
                if (first) {
                    b.region_aabb = {p.x, p.y, p.x, p.y};
                    first = false;
                } else {
                    b.region_aabb.xmin = std::min(b.region_aabb.xmin, p.x);
                    b.region_aabb.ymin = std::min(b.region_aabb.ymin, p.y);
                    b.region_aabb.xmax = std::max(b.region_aabb.xmax, p.x);
                    b.region_aabb.ymax = std::max(b.region_aabb.ymax, p.y);
                }
            }
        }
    }
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
        if (a.region_aabb.ymin != b.region_aabb.ymin)
            return a.region_aabb.ymin < b.region_aabb.ymin;
        return a.region_aabb.xmin < b.region_aabb.xmin;
    });
    for (size_t i = 0; i < blocks.size(); ++i) blocks[i].id = static_cast<int>(i);
    return blocks;
}

CropPlan crop_plan(const Block& b, double image_w, double image_h, double dst_side) {
    const Box& r = b.region_aabb;
    const double side = std::max(r.width(), r.height());
    const Vec2 c = r.center();
    Box src{c.x - side / 2, c.y - side / 2, c.x + side / 2, c.y + side / 2};

    CropPlan plan;
    plan.dst_side = dst_side;
    if (src.xmin < 0.0 || src.ymin < 0.0 || src.xmax > image_w || src.ymax > image_h) {
        src.xmin = std::max(src.xmin, 0.0);
        src.ymin = std::max(src.ymin, 0.0);
        src.xmax = std::min(src.xmax, image_w);
        src.ymax = std::min(src.ymax, image_h);
        plan.anisotropic = true;
    }
    plan.src = src;
    plan.offset = {src.xmin, src.ymin};
    plan.scale_x = dst_side / src.width();
    plan.scale_y = dst_side / src.height();
    return plan;
}

OrientedRect map_rect_to_block(const OrientedRect& r, const CropPlan& p) {
    if (!p.anisotropic) {
        const Vec2 c = p.to_block({r.cx, r.cy});
        return OrientedRect(c.x, c.y, r.w * p.scale_x, r.h * p.scale_y, r.theta);
    }
    // Anisotropic scaling turns the rect into a parallelogram; fit the
    // minimum-area rect to the mapped corners.
    Polygon mapped;
    for (const Vec2& v : to_corners(r)) mapped.push_back(p.to_block(v));
    return min_area_rect(mapped);
}

OrientedRect map_rect_to_image(const OrientedRect& r, const CropPlan& p) {
    if (!p.anisotropic) {
        const Vec2 c = p.to_image({r.cx, r.cy});
        return OrientedRect(c.x, c.y, r.w / p.scale_x, r.h / p.scale_y, r.theta);
    }
    Polygon mapped;
    for (const Vec2& v : to_corners(r)) mapped.push_back(p.to_image(v));
    return min_area_rect(mapped);
}

Detection map_detection_to_image(const Detection& d, const CropPlan& p) {
    Detection out = d;
    out.rect = map_rect_to_image(d.rect, p);
    return out;
}

BinaryMask read_pgm(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFileError("cannot open mask file: " + path);

    auto next_token = [&]() -> std::string {
        std::string tok;
        int ch;
        while ((ch = in.get()) != EOF) {
            if (ch == '#') {  // comment to end of line
                while ((ch = in.get()) != EOF && ch != '\n') {
                }
                continue;
            }
            if (std::isspace(ch)) {
                if (!tok.empty()) break;
                continue;
            }
            tok.push_back(static_cast<char>(ch));
        }
        if (tok.empty()) throw ParseError("truncated PGM header", -1, path);
        return tok;
    };

    if (next_token() != "P5") throw ParseError("not a binary PGM (magic != P5)", -1, path);
    int width = 0, height = 0, maxval = 0;
    try {
        width = std::stoi(next_token());
        height = std::stoi(next_token());
        maxval = std::stoi(next_token());
    } catch (const std::exception&) {
        throw ParseError("malformed PGM header", -1, path);
    }
    if (width <= 0 || height <= 0 || maxval <= 0 || maxval > 255)
        throw ParseError("unsupported PGM dimensions or maxval", -1, path);

    BinaryMask m(width, height);
    std::vector<unsigned char> row(static_cast<size_t>(width));
    for (int y = 0; y < height; ++y) {
        in.read(reinterpret_cast<char*>(row.data()), width);
        if (in.gcount() != width) throw ParseError("truncated PGM pixel data", -1, path);
        for (int x = 0; x < width; ++x) m.set(x, y, row[x] >= 128);
    }
    return m;
}

void write_pgm(const BinaryMask& m, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFileError("cannot write mask file: " + path);
    out << "P5\n" << m.width << " " << m.height << "\n255\n";
    std::vector<unsigned char> row(static_cast<size_t>(m.width));
    for (int y = 0; y < m.height; ++y) {
        for (int x = 0; x < m.width; ++x) row[x] = m.at(x, y) ? 255 : 0;
        out.write(reinterpret_cast<const char*>(row.data()), m.width);
    }
}

}  // namespace textspot
