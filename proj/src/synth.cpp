#include "textspot/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "textspot/errors.hpp"

namespace textspot {

namespace {

constexpr int kLineAttempts = 200;

void validate(const SynthConfig& cfg) {
    auto bad_range = [](ValueRange r) { return r.hi < r.lo; };
    if (cfg.width <= 0 || cfg.height <= 0 || cfg.lines.hi < cfg.lines.lo ||
        cfg.lines.lo < 0 || cfg.words_per_line.lo < 1 ||
        cfg.words_per_line.hi < cfg.words_per_line.lo ||
        bad_range(cfg.word_height) || cfg.word_height.lo <= 0 ||
        bad_range(cfg.aspect) || cfg.aspect.lo <= 0 ||
        bad_range(cfg.line_angle) || bad_range(cfg.inter_word_gap) ||
        cfg.inter_word_gap.lo < 0 || cfg.dont_care_prob < 0 || cfg.dont_care_prob > 1) {
        throw std::invalid_argument("SynthConfig: empty range or invalid value");
    }
}

}  // namespace

std::vector<OrientedRect> SceneTruth::rects() const {
    std::vector<OrientedRect> out;
    out.reserve(words.size());
    for (const SceneWord& w : words) out.push_back(w.rect);
    return out;
}

SceneTruth gen_scene(const SynthConfig& cfg) {
    validate(cfg);
    Rng rng(cfg.seed);
    SceneTruth scene;
    scene.width = cfg.width;
    scene.height = cfg.height;

    const int n_lines = rng.uniform_int(cfg.lines.lo, cfg.lines.hi);
    for (int line = 0; line < n_lines; ++line) {
        bool placed = false;
        for (int attempt = 0; attempt < kLineAttempts && !placed; ++attempt) {
            const double h = rng.uniform(cfg.word_height.lo, cfg.word_height.hi);
            const double phi = rng.uniform(cfg.line_angle.lo, cfg.line_angle.hi);
            const int n_words = rng.uniform_int(cfg.words_per_line.lo, cfg.words_per_line.hi);
            std::vector<double> widths(n_words);
            std::vector<double> gaps(std::max(0, n_words - 1));
            double total = 0.0;
            for (int i = 0; i < n_words; ++i) {
                widths[i] = rng.uniform(cfg.aspect.lo, cfg.aspect.hi) * h;
                total += widths[i];
            }
            for (double& g : gaps) {
                g = rng.uniform(cfg.inter_word_gap.lo, cfg.inter_word_gap.hi) * h;
                total += g;
            }
            // Feasible centers keep the whole line's oriented box inside the image.
            const double ex = 0.5 * (total * std::abs(std::cos(phi)) + h * std::abs(std::sin(phi)));
            const double ey = 0.5 * (total * std::abs(std::sin(phi)) + h * std::abs(std::cos(phi)));
            if (2 * ex >= cfg.width || 2 * ey >= cfg.height) continue;
            const Vec2 center{rng.uniform(ex, cfg.width - ex), rng.uniform(ey, cfg.height - ey)};

            const Vec2 u{std::cos(phi), std::sin(phi)};
            std::vector<OrientedRect> line_words;
            double s = -total / 2;
            for (int i = 0; i < n_words; ++i) {
                const double mid = s + widths[i] / 2;
                line_words.emplace_back(center.x + u.x * mid, center.y + u.y * mid,
                                        widths[i], h, phi);
                s += widths[i] + (i < n_words - 1 ? gaps[i] : 0.0);
            }

            bool overlap = false;
            for (const OrientedRect& cand : line_words) {
                for (const SceneWord& existing : scene.words) {
                    if (iou(cand, existing.rect) > 0.1) {
                        overlap = true;
                        break;
                    }
                }
                if (overlap) break;
            }
            if (overlap) continue;

            for (const OrientedRect& r : line_words) {
                scene.words.push_back({r, rng.bernoulli(cfg.dont_care_prob), line});
            }
            placed = true;
        }
        if (!placed)
            throw GenerationFailedError("gen_scene: could not place line " +
                                        std::to_string(line));
    }
    return scene;
}

namespace {

// Inclusive x-interval of a rect on the horizontal line y = yc, empty when
// lo > hi. Solved from the rect-frame slab constraints.
bool rect_row_interval(const OrientedRect& r, double yc, double& lo, double& hi) {
    const double c = std::cos(r.theta);
    const double s = std::sin(r.theta);
    const double dy = yc - r.cy;
    lo = -1e300;
    hi = 1e300;
    // |k*(x - cx) + m| <= half
    auto apply = [&](double k, double m, double half) {
        if (std::abs(k) < 1e-15) return std::abs(m) <= half;
        double a = (-half - m) / k;
        double b = (half - m) / k;
        if (a > b) std::swap(a, b);
        lo = std::max(lo, r.cx + a);
        hi = std::min(hi, r.cx + b);
        return lo <= hi;
    };
    if (!apply(c, s * dy, 0.5 * r.w)) return false;
    if (!apply(-s, c * dy, 0.5 * r.h)) return false;
    return lo <= hi;
}

void dilate_square(BinaryMask& m, int radius) {
    if (radius <= 0) return;
    // Separable: horizontal pass then vertical pass over running counts.
    BinaryMask tmp(m.width, m.height);
    std::vector<int> prefix;
    for (int y = 0; y < m.height; ++y) {
        prefix.assign(static_cast<size_t>(m.width) + 1, 0);
        for (int x = 0; x < m.width; ++x)
            prefix[x + 1] = prefix[x] + (m.at(x, y) ? 1 : 0);
        for (int x = 0; x < m.width; ++x) {
            const int a = std::max(0, x - radius);
            const int b = std::min(m.width - 1, x + radius);
            tmp.set(x, y, prefix[b + 1] - prefix[a] > 0);
        }
    }
    for (int x = 0; x < m.width; ++x) {
        prefix.assign(static_cast<size_t>(m.height) + 1, 0);
        for (int y = 0; y < m.height; ++y)
            prefix[y + 1] = prefix[y] + (tmp.at(x, y) ? 1 : 0);
        for (int y = 0; y < m.height; ++y) {
            const int a = std::max(0, y - radius);
            const int b = std::min(m.height - 1, y + radius);
            m.set(x, y, prefix[b + 1] - prefix[a] > 0);
        }
    }
}

}  // namespace

BinaryMask oracle_segment(const SceneTruth& s, int dilation) {
    if (dilation < 0) throw std::invalid_argument("oracle_segment: dilation >= 0");
    const int w = static_cast<int>(std::ceil(s.width));
    const int h = static_cast<int>(std::ceil(s.height));
    BinaryMask mask(w, h);
    for (const SceneWord& word : s.words) {
        const Box bb = aabb(word.rect);
        const int y0 = std::max(0, static_cast<int>(std::floor(bb.ymin)));
        const int y1 = std::min(h - 1, static_cast<int>(std::ceil(bb.ymax)));
        for (int y = y0; y <= y1; ++y) {
            double lo, hi;
            if (!rect_row_interval(word.rect, y + 0.5, lo, hi)) continue;
            const int x0 = std::max(0, static_cast<int>(std::ceil(lo - 0.5)));
            const int x1 = std::min(w - 1, static_cast<int>(std::floor(hi - 0.5)));
            for (int x = x0; x <= x1; ++x) mask.set(x, y, true);
        }
    }
    dilate_square(mask, dilation);
    return mask;
}

OracleDetections oracle_detect(const CropPlan& plan, const SceneTruth& s,
                               const GridSpec& spec, const DetectorNoise& noise,
                               Rng& rng) {
    if (spec.side != plan.dst_side)
        throw SpecMismatchError("oracle_detect: spec.side must equal plan.dst_side");

    struct Candidate {
        int word_index;
        Detection det;
        int cell;
    };
    std::vector<Candidate> cands;
    for (int i = 0; i < static_cast<int>(s.words.size()); ++i) {
        const OrientedRect& word = s.words[i].rect;
        if (!plan.src.contains({word.cx, word.cy})) continue;
        OrientedRect r = map_rect_to_block(word, plan);
        const double cx = r.cx + rng.gaussian(0.0, 1.0) * noise.sigma_center;
        const double cy = r.cy + rng.gaussian(0.0, 1.0) * noise.sigma_center;
        const double w = r.w * std::max(0.05, 1.0 + rng.gaussian(0.0, 1.0) * noise.sigma_size);
        const double h = r.h * std::max(0.05, 1.0 + rng.gaussian(0.0, 1.0) * noise.sigma_size);
        const double theta = r.theta + rng.gaussian(0.0, 1.0) * noise.sigma_theta;
        const double conf = 1.0 - rng.uniform(0.0, 0.1);
        const double cell_size = spec.cell_size();
        const double bx = std::clamp(cx, 0.0, spec.side - 1e-9);
        const double by = std::clamp(cy, 0.0, spec.side - 1e-9);
        const int cell = static_cast<int>(by / cell_size) * spec.n +
                         static_cast<int>(bx / cell_size);
        cands.push_back({i, Detection{OrientedRect(cx, cy, w, h, theta), conf, {}}, cell});
    }

    // Per-cell capacity: keep the b largest-area candidates.
    std::map<int, std::vector<int>> by_cell;
    for (int k = 0; k < static_cast<int>(cands.size()); ++k)
        by_cell[cands[k].cell].push_back(k);
    std::vector<bool> keep(cands.size(), true);
    OracleDetections out;
    for (auto& [cell, members] : by_cell) {
        if (static_cast<int>(members.size()) <= spec.b) continue;
        std::sort(members.begin(), members.end(), [&](int a, int b) {
            const double aa = cands[a].det.rect.area();
            const double ab = cands[b].det.rect.area();
            if (aa != ab) return aa > ab;
            return cands[a].word_index < cands[b].word_index;
        });
        for (size_t k = spec.b; k < members.size(); ++k) {
            keep[members[k]] = false;
            out.dropped_word_indices.push_back(cands[members[k]].word_index);
        }
    }
    std::sort(out.dropped_word_indices.begin(), out.dropped_word_indices.end());
    for (size_t k = 0; k < cands.size(); ++k) {
        if (keep[k]) out.detections.push_back(cands[k].det);
    }

    if (noise.false_pos_rate > 0.0) {
        const double cell_size = spec.cell_size();
        for (int cell = 0; cell < spec.cell_count(); ++cell) {
            if (!rng.bernoulli(noise.false_pos_rate)) continue;
            const int row = cell / spec.n;
            const int col = cell % spec.n;
            const double cx = (col + rng.uniform01()) * cell_size;
            const double cy = (row + rng.uniform01()) * cell_size;
            const double w = rng.uniform(0.05, 0.3) * spec.side;
            const double h = rng.uniform(0.02, 0.1) * spec.side;
            const double theta = rng.uniform(-M_PI / 2, M_PI / 2);
            const double conf = rng.uniform(0.5, 0.7);
            out.detections.push_back({OrientedRect(cx, cy, w, h, theta), conf, {}});
        }
    }
    return out;
}

}  // namespace textspot
