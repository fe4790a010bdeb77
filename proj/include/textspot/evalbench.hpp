#pragma once

#include <string>
#include <utility>
#include <vector>

#include "textspot/geom.hpp"
#include "textspot/postproc.hpp"

namespace textspot {

struct GtEntry {
    OrientedRect rect;  // minimum-area enclosure of raw_quad
    bool dont_care = false;
    Quad raw_quad;
};

// Parses the comma-separated quad format: one word per line,
// "x1,y1,x2,y2,x3,y3,x4,y4,transcription", transcription "###" marking
// don't-care. Splits on the first 8 commas only; tolerates a UTF-8 BOM
// and CRLF endings. Throws ParseError / DegenerateQuad with line numbers.
std::vector<GtEntry> parse_icdar_gt(const std::string& text);

struct MatchResult {
    struct Pair {
        int detection = -1;
        int gt = -1;
        double iou = 0.0;
    };
    std::vector<Pair> pairs;              // in matching (confidence) order
    std::vector<int> unmatched_detections;
    std::vector<int> unmatched_gt;        // countable (non-don't-care) only
    std::vector<int> dontcare_absorbed;   // detection indices excluded from scoring
};

// One-to-one greedy matching in descending confidence order. A detection
// matches the unmatched countable gt of highest IoU when that IoU exceeds
// the threshold; failing that, an IoU above the threshold against any
// don't-care gt absorbs it. Don't-care regions absorb any number of
// detections.
MatchResult match_detections(const std::vector<Detection>& ds,
                             const std::vector<GtEntry>& gts,
                             double iou_threshold = 0.5);

struct EvalReport {
    long true_positives = 0;
    long detections_counted = 0;  // detections minus absorbed
    long gt_counted = 0;          // non-don't-care ground truth
    double precision = 1.0;
    double recall = 1.0;
    double f_score = 1.0;
};

EvalReport score(const MatchResult& m, const std::vector<GtEntry>& gts);

EvalReport report_from_counts(long tp, long detections_counted, long gt_counted);

struct ImageReport {
    std::string detections_file;
    std::string gt_file;
    EvalReport report;
};

struct DatasetReport {
    EvalReport aggregate;  // micro-averaged: counts summed before P/R/F
    std::vector<ImageReport> per_image;
};

// Evaluates aligned (detection JSON, ground-truth text) file pairs.
// Throws MissingFile for an empty list or unreadable file, ParseError with
// the file identified for malformed content.
DatasetReport evaluate_dataset(
    const std::vector<std::pair<std::string, std::string>>& det_gt_files);

}  // namespace textspot
