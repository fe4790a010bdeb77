#include "textspot/evalbench.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

#include "textspot/errors.hpp"
#include "textspot/jsonio.hpp"

namespace textspot {

namespace {

double parse_coord(const std::string& tok, int line_no) {
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
    while (end > begin && (end[-1] == ' ' || end[-1] == '\t')) --end;
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end)
        throw ParseError("malformed coordinate '" + tok + "'", line_no);
    return value;
}

}  // namespace

std::vector<GtEntry> parse_icdar_gt(const std::string& text) {
    std::vector<GtEntry> out;
    size_t pos = 0;
    int line_no = 0;
    bool first_line = true;
    while (pos <= text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string::npos) nl = text.size();
        std::string line = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (first_line) {
            first_line = false;
            if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF &&
                static_cast<unsigned char>(line[1]) == 0xBB &&
                static_cast<unsigned char>(line[2]) == 0xBF) {
                line.erase(0, 3);
            }
        }
        if (line.empty()) {
            if (pos > text.size()) break;
            continue;
        }

        // Split on the first 8 commas; the transcription may contain commas.
        std::vector<std::string> fields;
        size_t start = 0;
        for (int i = 0; i < 8; ++i) {
            const size_t comma = line.find(',', start);
            if (comma == std::string::npos)
                throw ParseError("expected 8 coordinates", line_no);
            fields.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        const std::string transcription = line.substr(start);

        Quad q;
        for (int i = 0; i < 4; ++i) {
            q.v[i].x = parse_coord(fields[2 * i], line_no);
            q.v[i].y = parse_coord(fields[2 * i + 1], line_no);
        }
        GtEntry entry;
        try {
            entry.rect = min_area_rect(q);
        } catch (const DegenerateQuadError& e) {
            throw DegenerateQuadError(std::string(e.what()) + " at line " +
                                          std::to_string(line_no),
                                      line_no);
        }
        entry.dont_care = (transcription == "###");
        entry.raw_quad = q;
        out.push_back(std::move(entry));
        if (pos > text.size()) break;
    }
    return out;
}

MatchResult match_detections(const std::vector<Detection>& ds,
                             const std::vector<GtEntry>& gts,
                             double iou_threshold) {
    std::vector<int> order(ds.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int i, int j) {
        return detection_before(ds[i], ds[j], i, j);
    });

    MatchResult m;
    std::vector<bool> gt_used(gts.size(), false);
    for (const int di : order) {
        const Detection& d = ds[di];
        int best_gt = -1;
        double best_iou = 0.0;
        for (int gi = 0; gi < static_cast<int>(gts.size()); ++gi) {
            if (gts[gi].dont_care || gt_used[gi]) continue;
            const double v = iou(d.rect, gts[gi].rect);
            if (v > best_iou) {
                best_iou = v;
                best_gt = gi;
            }
        }
        if (best_gt >= 0 && best_iou > iou_threshold) {
            gt_used[best_gt] = true;
            m.pairs.push_back({di, best_gt, best_iou});
            continue;
        }
        double best_dc = 0.0;
        for (const GtEntry& gt : gts) {
            if (!gt.dont_care) continue;
            best_dc = std::max(best_dc, iou(d.rect, gt.rect));
        }
        if (best_dc > iou_threshold) {
            m.dontcare_absorbed.push_back(di);
        } else {
            m.unmatched_detections.push_back(di);
        }
    }
    std::sort(m.unmatched_detections.begin(), m.unmatched_detections.end());
    std::sort(m.dontcare_absorbed.begin(), m.dontcare_absorbed.end());
    for (int gi = 0; gi < static_cast<int>(gts.size()); ++gi) {
        if (!gts[gi].dont_care && !gt_used[gi]) m.unmatched_gt.push_back(gi);
    }
    return m;
}

EvalReport report_from_counts(long tp, long detections_counted, long gt_counted) {
    EvalReport r;
    r.true_positives = tp;
    r.detections_counted = detections_counted;
    r.gt_counted = gt_counted;
    r.precision = detections_counted == 0
                      ? 1.0
                      : static_cast<double>(tp) / static_cast<double>(detections_counted);
    r.recall = gt_counted == 0 ? 1.0
                               : static_cast<double>(tp) / static_cast<double>(gt_counted);
    r.f_score = (r.precision + r.recall) == 0.0
                    ? 0.0
                    : 2.0 * r.precision * r.recall / (r.precision + r.recall);
    return r;
}

EvalReport score(const MatchResult& m, const std::vector<GtEntry>& gts) {
    const long tp = static_cast<long>(m.pairs.size());
    const long detections = tp + static_cast<long>(m.unmatched_detections.size());
    long gt_counted = 0;
    for (const GtEntry& gt : gts) gt_counted += gt.dont_care ? 0 : 1;
    return report_from_counts(tp, detections, gt_counted);
}

DatasetReport evaluate_dataset(
    const std::vector<std::pair<std::string, std::string>>& det_gt_files) {
    if (det_gt_files.empty())
        throw MissingFileError("evaluate_dataset: empty file list");
    DatasetReport report;
    long tp = 0, detections = 0, gt_counted = 0;
    for (const auto& [det_file, gt_file] : det_gt_files) {
        const std::vector<Detection> ds = read_detections_json(det_file);
        const std::vector<GtEntry> gts = [&] {
            try {
                return parse_icdar_gt(read_text_file(gt_file));
            } catch (const ParseError& e) {
                throw ParseError(e.what(), e.line, gt_file);
            }
        }();
        const MatchResult m = match_detections(ds, gts);
        const EvalReport r = score(m, gts);
        tp += r.true_positives;
        detections += r.detections_counted;
        gt_counted += r.gt_counted;
        report.per_image.push_back({det_file, gt_file, r});
    }
    report.aggregate = report_from_counts(tp, detections, gt_counted);
    return report;
}

}  // namespace textspot
