#include "textspot/postproc.hpp"

#include <algorithm>
#include <numeric>

namespace textspot {

bool detection_before(const Detection& a, const Detection& b, int ia, int ib) {
    if (a.confidence != b.confidence) return a.confidence > b.confidence;
    if (a.rect.cx != b.rect.cx) return a.rect.cx < b.rect.cx;
    if (a.rect.cy != b.rect.cy) return a.rect.cy < b.rect.cy;
    return ia < ib;
}

std::vector<Detection> filter_confidence(const std::vector<Detection>& ds,
                                         double threshold) {
    std::vector<Detection> out;
    out.reserve(ds.size());
    for (const Detection& d : ds) {
        if (d.confidence >= threshold) out.push_back(d);
    }
    return out;
}

std::vector<Detection> nms(const std::vector<Detection>& ds, double iou_threshold,
                           bool suppress_equal) {
    std::vector<int> order(ds.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return detection_before(ds[i], ds[j], i, j);
    });

    std::vector<Detection> kept;
    std::vector<bool> suppressed(ds.size(), false);
    for (size_t a = 0; a < order.size(); ++a) {
        if (suppressed[order[a]]) continue;
        const Detection& top = ds[order[a]];
        kept.push_back(top);
        for (size_t b = a + 1; b < order.size(); ++b) {
            if (suppressed[order[b]]) continue;
            const double v = iou(top.rect, ds[order[b]].rect);
            if (v > iou_threshold || (suppress_equal && v == iou_threshold))
                suppressed[order[b]] = true;
        }
    }
    return kept;
}

}  // namespace textspot
