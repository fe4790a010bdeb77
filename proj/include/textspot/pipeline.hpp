#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "textspot/blocks.hpp"
#include "textspot/gridcodec.hpp"
#include "textspot/postproc.hpp"
#include "textspot/synth.hpp"

namespace textspot {

struct PipelineConfig {
    double resize_longest_side = 1000.0;
    double dst_side = 240.0;
    int grid_n = 15;
    int grid_b = 1;
    double conf_threshold = 0.5;
    double nms_iou = 0.3;
    int mask_min_area = 10;
    uint64_t seed = 1;
};

// Scene and/or mask feeding one cascade run. The mask, when supplied
// externally, must live in the working frame (scene scaled so its longest
// side equals resize_longest_side). block_detections, when supplied,
// replaces the oracle detector with per-block detection lists (block
// frame, indexed by block id).
struct CascadeInput {
    std::optional<SceneTruth> scene;
    std::optional<BinaryMask> mask;
    std::optional<std::vector<std::vector<Detection>>> block_detections;
    int dilation = 4;       // oracle segmenter dilation radius
    DetectorNoise noise;    // oracle detector perturbation
};

struct BlockTraceEntry {
    int block_id = 0;
    Box aabb;
    bool anisotropic = false;
    int detections = 0;
    int capacity_dropped = 0;
};

struct CascadeTrace {
    double working_scale = 1.0;
    int block_count = 0;
    int raw_detections = 0;
    int kept_after_confidence = 0;
    int final_detections = 0;
    int capacity_dropped_total = 0;
    std::vector<BlockTraceEntry> blocks;
};

struct CascadeResult {
    std::vector<Detection> detections;  // original scene frame
    CascadeTrace trace;
};

// Uniformly scales the scene (words and dimensions) by the given factor.
SceneTruth scale_scene(const SceneTruth& s, double factor);

// mask -> connected components -> per-block crop plans -> detection ->
// confidence filter -> map to image frame -> global NMS.
CascadeResult run_cascade(const CascadeInput& input, const PipelineConfig& cfg);

// Raw detections for precomputed blocks, already mapped into the working
// frame and tagged with their source block; no filtering or suppression.
// Per-block detector seeds derive from cfg.seed and the block id.
std::vector<Detection> detect_blocks(const SceneTruth& working_scene,
                                     const std::vector<Block>& blocks,
                                     const PipelineConfig& cfg,
                                     const DetectorNoise& noise,
                                     CascadeTrace* trace = nullptr);

struct CapacityStudyConfig {
    std::vector<int> n_values{7, 9, 11, 13, 15, 17, 19};
    std::vector<int> b_values{1, 2};
    int scenes = 1000;
    uint64_t seed = 1;
    double dst_side = 240.0;
    SynthConfig scene_template;  // seed replaced per scene

    CapacityStudyConfig();
};

struct CapacityRow {
    int n = 0;
    int b = 0;
    long words = 0;
    long dropped = 0;   // lost to per-cell capacity
    long matched = 0;   // true positives at IoU > 0.5
    double recall = 0.0;
};

// Sweeps grid capacity over seeded scenes, each treated as a single
// detector block, with a zero-noise oracle detector.
std::vector<CapacityRow> capacity_study(const CapacityStudyConfig& cfg);

}  // namespace textspot
