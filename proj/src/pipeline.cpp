#include "textspot/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "textspot/errors.hpp"
#include "textspot/evalbench.hpp"
#include "textspot/rng.hpp"

namespace textspot {

SceneTruth scale_scene(const SceneTruth& s, double factor) {
    SceneTruth out;
    out.width = s.width * factor;
    out.height = s.height * factor;
    out.words.reserve(s.words.size());
    for (const SceneWord& w : s.words) {
        out.words.push_back({OrientedRect(w.rect.cx * factor, w.rect.cy * factor,
                                          w.rect.w * factor, w.rect.h * factor,
                                          w.rect.theta),
                             w.dont_care, w.line_id});
    }
    return out;
}

std::vector<Detection> detect_blocks(const SceneTruth& working_scene,
                                     const std::vector<Block>& blocks,
                                     const PipelineConfig& cfg,
                                     const DetectorNoise& noise,
                                     CascadeTrace* trace) {
    const GridSpec spec(cfg.grid_n, cfg.grid_b, cfg.dst_side);
    std::vector<Detection> raw;
    for (const Block& block : blocks) {
        const CropPlan plan =
            crop_plan(block, working_scene.width, working_scene.height, cfg.dst_side);
        Rng rng(derive_seed(cfg.seed, static_cast<uint64_t>(block.id)));
        const OracleDetections dets =
            oracle_detect(plan, working_scene, spec, noise, rng);
        for (const Detection& d : dets.detections) {
            Detection mapped = map_detection_to_image(d, plan);
            mapped.source_block = block.id;
            raw.push_back(std::move(mapped));
        }
        if (trace) {
            trace->blocks.push_back({block.id, block.region_aabb, plan.anisotropic,
                                     static_cast<int>(dets.detections.size()),
                                     static_cast<int>(dets.dropped_word_indices.size())});
            trace->capacity_dropped_total +=
                static_cast<int>(dets.dropped_word_indices.size());
        }
    }
    return raw;
}

CascadeResult run_cascade(const CascadeInput& input, const PipelineConfig& cfg) {
    if (!input.scene && !input.mask)
        throw std::invalid_argument("run_cascade: need a scene or a mask");
    if (!input.scene && !input.block_detections)
        throw std::invalid_argument("run_cascade: mask-only input needs block detections");

    CascadeResult res;
    double factor = 1.0;
    SceneTruth working;
    if (input.scene) {
        const double longest = std::max(input.scene->width, input.scene->height);
        factor = cfg.resize_longest_side / longest;
        working = scale_scene(*input.scene, factor);
    }
    res.trace.working_scale = factor;

    BinaryMask mask;
    if (input.mask) {
        mask = *input.mask;
        if (input.scene) {
            const int ww = static_cast<int>(std::ceil(working.width));
            const int wh = static_cast<int>(std::ceil(working.height));
            if (mask.width != ww || mask.height != wh)
                throw SpecMismatchError(
                    "run_cascade: mask dimensions do not match the working frame");
        } else {
            working.width = mask.width;
            working.height = mask.height;
        }
    } else {
        mask = oracle_segment(working, input.dilation);
    }

    const std::vector<Block> blocks = connected_components(mask, cfg.mask_min_area);
    res.trace.block_count = static_cast<int>(blocks.size());

    std::vector<Detection> raw;
    if (input.block_detections) {
        const auto& per_block = *input.block_detections;
        for (const Block& block : blocks) {
            if (block.id >= static_cast<int>(per_block.size())) continue;
            const CropPlan plan =
                crop_plan(block, working.width, working.height, cfg.dst_side);
            for (const Detection& d : per_block[block.id]) {
                Detection mapped = map_detection_to_image(d, plan);
                mapped.source_block = block.id;
                raw.push_back(std::move(mapped));
            }
            res.trace.blocks.push_back({block.id, block.region_aabb, plan.anisotropic,
                                        static_cast<int>(per_block[block.id].size()), 0});
        }
    } else {
        raw = detect_blocks(working, blocks, cfg, input.noise, &res.trace);
    }
    res.trace.raw_detections = static_cast<int>(raw.size());

    const std::vector<Detection> kept = filter_confidence(raw, cfg.conf_threshold);
    res.trace.kept_after_confidence = static_cast<int>(kept.size());

    std::vector<Detection> final_working = nms(kept, cfg.nms_iou);
    res.trace.final_detections = static_cast<int>(final_working.size());

    res.detections.reserve(final_working.size());
    for (const Detection& d : final_working) {
        Detection out = d;
        out.rect = OrientedRect(d.rect.cx / factor, d.rect.cy / factor,
                                d.rect.w / factor, d.rect.h / factor, d.rect.theta);
        res.detections.push_back(std::move(out));
    }
    return res;
}

CapacityStudyConfig::CapacityStudyConfig() {
    scene_template.width = 240.0;
    scene_template.height = 240.0;
    scene_template.lines = {4, 7};
    scene_template.words_per_line = {2, 4};
    scene_template.word_height = {10.0, 20.0};
    scene_template.aspect = {2.0, 5.0};
    scene_template.line_angle = {-0.3, 0.3};
    scene_template.inter_word_gap = {0.3, 0.8};
    scene_template.dont_care_prob = 0.0;
}

std::vector<CapacityRow> capacity_study(const CapacityStudyConfig& cfg) {
    std::vector<CapacityRow> rows;
    for (int n : cfg.n_values) {
        for (int b : cfg.b_values) rows.push_back({n, b, 0, 0, 0, 0.0});
    }

    for (int si = 0; si < cfg.scenes; ++si) {
        SynthConfig scfg = cfg.scene_template;
        scfg.seed = derive_seed(cfg.seed, static_cast<uint64_t>(si));
        const SceneTruth scene = gen_scene(scfg);

        Block whole;
        whole.region_aabb = {0.0, 0.0, scene.width, scene.height};
        const CropPlan plan = crop_plan(whole, scene.width, scene.height, cfg.dst_side);

        std::vector<GtEntry> gts;
        for (const SceneWord& w : scene.words) {
            const auto corners = to_corners(w.rect);
            gts.push_back({w.rect, w.dont_care, Quad{corners}});
        }

        for (CapacityRow& row : rows) {
            const GridSpec spec(row.n, row.b, cfg.dst_side);
            Rng rng(derive_seed(scfg.seed, (static_cast<uint64_t>(row.n) << 8) |
                                               static_cast<uint64_t>(row.b)));
            const OracleDetections dets =
                oracle_detect(plan, scene, spec, DetectorNoise{}, rng);
            row.words += static_cast<long>(scene.words.size());
            row.dropped += static_cast<long>(dets.dropped_word_indices.size());

            std::vector<Detection> mapped;
            mapped.reserve(dets.detections.size());
            for (const Detection& d : dets.detections)
                mapped.push_back(map_detection_to_image(d, plan));
            const MatchResult m = match_detections(mapped, gts);
            row.matched += static_cast<long>(m.pairs.size());
        }
    }
    for (CapacityRow& row : rows) {
        row.recall = row.words == 0 ? 1.0
                                    : static_cast<double>(row.matched) /
                                          static_cast<double>(row.words);
    }
    return rows;
}

}  // namespace textspot
