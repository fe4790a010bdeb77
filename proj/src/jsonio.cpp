#include "textspot/jsonio.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "textspot/errors.hpp"

namespace textspot {

double json_num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return std::strtod(buf, nullptr);
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw MissingFileError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw MissingFileError("cannot write file: " + path);
    out << content;
}

Json parse_json(const std::string& text, const std::string& origin) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what(), -1, origin);
    }
}

Json read_json_file(const std::string& path) {
    return parse_json(read_text_file(path), path);
}

void write_json_file(const std::string& path, const Json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

Json scene_to_json(const SceneTruth& s) {
    Json j;
    j["width"] = json_num(s.width);
    j["height"] = json_num(s.height);
    Json words = Json::array();
    for (const SceneWord& w : s.words) {
        Json jw;
        jw["cx"] = json_num(w.rect.cx);
        jw["cy"] = json_num(w.rect.cy);
        jw["w"] = json_num(w.rect.w);
        jw["h"] = json_num(w.rect.h);
        jw["theta"] = json_num(w.rect.theta);
        jw["dont_care"] = w.dont_care;
        jw["line_id"] = w.line_id;
        words.push_back(std::move(jw));
    }
    j["words"] = std::move(words);
    return j;
}

SceneTruth scene_from_json(const Json& j) {
    SceneTruth s;
    try {
        s.width = j.at("width").get<double>();
        s.height = j.at("height").get<double>();
        for (const Json& jw : j.at("words")) {
            SceneWord w;
            w.rect = OrientedRect(jw.at("cx").get<double>(), jw.at("cy").get<double>(),
                                  jw.at("w").get<double>(), jw.at("h").get<double>(),
                                  jw.at("theta").get<double>());
            w.dont_care = jw.value("dont_care", false);
            w.line_id = jw.value("line_id", -1);
            s.words.push_back(std::move(w));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid scene JSON: ") + e.what());
    }
    return s;
}

Json detections_to_json(const std::vector<Detection>& ds) {
    Json arr = Json::array();
    for (const Detection& d : ds) {
        Json jd;
        jd["cx"] = json_num(d.rect.cx);
        jd["cy"] = json_num(d.rect.cy);
        jd["w"] = json_num(d.rect.w);
        jd["h"] = json_num(d.rect.h);
        jd["theta"] = json_num(d.rect.theta);
        jd["confidence"] = json_num(d.confidence);
        if (d.source_block) jd["source_block"] = *d.source_block;
        arr.push_back(std::move(jd));
    }
    return arr;
}

std::vector<Detection> detections_from_json(const Json& j) {
    std::vector<Detection> out;
    try {
        for (const Json& jd : j) {
            Detection d;
            d.rect = OrientedRect(jd.at("cx").get<double>(), jd.at("cy").get<double>(),
                                  jd.at("w").get<double>(), jd.at("h").get<double>(),
                                  jd.at("theta").get<double>());
            d.confidence = jd.at("confidence").get<double>();
            if (jd.contains("source_block")) d.source_block = jd["source_block"].get<int>();
            out.push_back(std::move(d));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid detections JSON: ") + e.what());
    }
    return out;
}

std::vector<Detection> read_detections_json(const std::string& path) {
    try {
        return detections_from_json(read_json_file(path));
    } catch (const ParseError& e) {
        throw ParseError(e.what(), e.line, path);
    }
}

Json tensor_to_json(const GridTensor& g) {
    Json j;
    j["n"] = g.spec.n;
    j["b"] = g.spec.b;
    j["side"] = json_num(g.spec.side);
    Json boxes = Json::array();
    for (const BoxParams& p : g.boxes) {
        Json jb;
        jb["x"] = json_num(p.x);
        jb["y"] = json_num(p.y);
        jb["w"] = json_num(p.w);
        jb["h"] = json_num(p.h);
        jb["theta_norm"] = json_num(p.theta_norm);
        jb["c"] = json_num(p.c);
        boxes.push_back(std::move(jb));
    }
    j["boxes"] = std::move(boxes);
    return j;
}

GridTensor tensor_from_json(const Json& j) {
    try {
        const GridSpec spec(j.at("n").get<int>(), j.at("b").get<int>(),
                            j.at("side").get<double>());
        GridTensor g(spec);
        const Json& boxes = j.at("boxes");
        if (static_cast<int>(boxes.size()) != spec.box_count())
            throw ParseError("tensor JSON: expected " + std::to_string(spec.box_count()) +
                             " boxes, got " + std::to_string(boxes.size()));
        for (size_t i = 0; i < g.boxes.size(); ++i) {
            const Json& jb = boxes[i];
            g.boxes[i] = BoxParams{jb.at("x").get<double>(),      jb.at("y").get<double>(),
                                   jb.at("w").get<double>(),      jb.at("h").get<double>(),
                                   jb.at("theta_norm").get<double>(), jb.at("c").get<double>()};
        }
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid tensor JSON: ") + e.what());
    }
}

Json blocks_to_json(const std::vector<Block>& blocks) {
    Json arr = Json::array();
    for (const Block& b : blocks) {
        Json jb;
        jb["id"] = b.id;
        jb["xmin"] = json_num(b.region_aabb.xmin);
        jb["ymin"] = json_num(b.region_aabb.ymin);
        jb["xmax"] = json_num(b.region_aabb.xmax);
        jb["ymax"] = json_num(b.region_aabb.ymax);
        if (!b.member_word_indices.empty()) jb["words"] = b.member_word_indices;
        arr.push_back(std::move(jb));
    }
    return arr;
}

std::vector<Block> blocks_from_json(const Json& j) {
    std::vector<Block> out;
    try {
        for (const Json& jb : j) {
            Block b;
            b.id = jb.at("id").get<int>();
            b.region_aabb = {jb.at("xmin").get<double>(), jb.at("ymin").get<double>(),
                             jb.at("xmax").get<double>(), jb.at("ymax").get<double>()};
            if (jb.contains("words"))
                b.member_word_indices = jb["words"].get<std::vector<int>>();
            out.push_back(std::move(b));
        }
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid blocks JSON: ") + e.what());
    }
    return out;
}

Json fit_report_to_json(const FitResult& r) {
    Json j;
    j["final_loss"] = json_num(r.final_loss);
    j["iterations"] = r.iterations;
    j["converged"] = r.converged;
    Json per_word = Json::array();
    for (const WordFit& wf : r.per_word) {
        Json jw;
        jw["word_index"] = wf.word_index;
        jw["iou"] = json_num(wf.iou);
        per_word.push_back(std::move(jw));
    }
    j["per_word"] = std::move(per_word);
    j["unrepresentable"] = r.unrepresentable;
    return j;
}

Json eval_report_to_json(const EvalReport& r) {
    Json j;
    j["true_positives"] = r.true_positives;
    j["detections_counted"] = r.detections_counted;
    j["gt_counted"] = r.gt_counted;
    j["precision"] = json_num(r.precision);
    j["recall"] = json_num(r.recall);
    j["f_score"] = json_num(r.f_score);
    return j;
}

Json dataset_report_to_json(const DatasetReport& r) {
    Json j;
    j["dontcare_rule"] = "absorb";  // detections matching only don't-care
                                    // regions leave both P and R untouched
    j["aggregate"] = eval_report_to_json(r.aggregate);
    Json images = Json::array();
    for (const ImageReport& ir : r.per_image) {
        Json ji;
        ji["detections_file"] = ir.detections_file;
        ji["gt_file"] = ir.gt_file;
        ji["report"] = eval_report_to_json(ir.report);
        images.push_back(std::move(ji));
    }
    j["per_image"] = std::move(images);
    return j;
}

std::string dataset_report_to_csv(const DatasetReport& r) {
    std::ostringstream ss;
    ss << "detections_file,gt_file,true_positives,detections_counted,gt_counted,"
          "precision,recall,f_score\n";
    char buf[128];
    for (const ImageReport& ir : r.per_image) {
        std::snprintf(buf, sizeof(buf), "%ld,%ld,%ld,%.9g,%.9g,%.9g",
                      ir.report.true_positives, ir.report.detections_counted,
                      ir.report.gt_counted, ir.report.precision, ir.report.recall,
                      ir.report.f_score);
        ss << ir.detections_file << "," << ir.gt_file << "," << buf << "\n";
    }
    return ss.str();
}

}  // namespace textspot
