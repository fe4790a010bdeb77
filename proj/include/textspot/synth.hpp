#pragma once

#include <cstdint>
#include <vector>

#include "textspot/blocks.hpp"
#include "textspot/geom.hpp"
#include "textspot/gridcodec.hpp"
#include "textspot/postproc.hpp"
#include "textspot/rng.hpp"

namespace textspot {

struct SceneWord {
    OrientedRect rect;
    bool dont_care = false;
    int line_id = -1;
};

struct SceneTruth {
    double width = 0.0;
    double height = 0.0;
    std::vector<SceneWord> words;

    std::vector<OrientedRect> rects() const;
};

struct ValueRange {
    double lo = 0.0;
    double hi = 0.0;
};

struct CountRange {
    int lo = 0;
    int hi = 0;
};

// Seeded synthetic layouts: words grouped into straight lines of shared
// angle and height. Purely geometric, no pixel rendering.
struct SynthConfig {
    double width = 1000.0;
    double height = 560.0;
    CountRange lines{1, 4};
    CountRange words_per_line{2, 5};
    ValueRange word_height{16.0, 40.0};
    ValueRange aspect{2.0, 6.0};          // word w / h
    ValueRange line_angle{-0.35, 0.35};   // radians
    ValueRange inter_word_gap{0.3, 0.9};  // fraction of line height
    double dont_care_prob = 0.0;
    uint64_t seed = 1;
};

// Deterministic given the seed. Lines are rejection-sampled until no word
// overlaps a word of another line with IoU > 0.1; throws GenerationFailed
// when a line cannot be placed within the retry budget.
SceneTruth gen_scene(const SynthConfig& cfg);

// Rasterizes every word (including don't-care) and dilates with a square
// structuring element of the given radius.
BinaryMask oracle_segment(const SceneTruth& s, int dilation);

struct DetectorNoise {
    double sigma_center = 0.0;  // pixels, block frame
    double sigma_size = 0.0;    // fraction of extent
    double sigma_theta = 0.0;   // radians
    double false_pos_rate = 0.0;  // per-cell probability
};

struct OracleDetections {
    std::vector<Detection> detections;     // block frame
    std::vector<int> dropped_word_indices;  // lost to per-cell capacity
};

// Detector stand-in: maps every ground-truth word whose center lies in the
// crop into block frame, perturbs it, and keeps at most spec.b detections
// per grid cell (largest area first). False positives are appended at the
// configured per-cell rate with confidence in [0.5, 0.7].
OracleDetections oracle_detect(const CropPlan& plan, const SceneTruth& s,
                               const GridSpec& spec, const DetectorNoise& noise,
                               Rng& rng);

}  // namespace textspot
