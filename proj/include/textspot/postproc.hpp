#pragma once

#include <optional>
#include <vector>

#include "textspot/geom.hpp"

namespace textspot {

struct Detection {
    OrientedRect rect;
    double confidence = 0.0;
    std::optional<int> source_block;
};

// Total order used by NMS and matching: confidence descending, then smaller
// cx, smaller cy, smaller original index. Makes results permutation-invariant.
bool detection_before(const Detection& a, const Detection& b, int ia, int ib);

// Keeps detections with confidence >= threshold, order preserved.
std::vector<Detection> filter_confidence(const std::vector<Detection>& ds,
                                         double threshold = 0.5);

// Greedy non-maximum suppression. Survivors come out in the total order
// above. Overlaps strictly greater than the threshold are suppressed; set
// suppress_equal to also drop overlaps exactly at the threshold.
std::vector<Detection> nms(const std::vector<Detection>& ds, double iou_threshold = 0.3,
                           bool suppress_equal = false);

}  // namespace textspot
