#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "textspot/evalbench.hpp"
#include "textspot/gridcodec.hpp"
#include "textspot/loss.hpp"
#include "textspot/postproc.hpp"
#include "textspot/synth.hpp"

namespace textspot {

// All emitted JSON uses insertion-ordered keys and doubles rounded to
// 9 significant digits, so outputs are byte-stable across runs.
using Json = nlohmann::ordered_json;

// Rounds through "%.9g" so the dumped literal is short and reproducible.
double json_num(double v);

std::string read_text_file(const std::string& path);  // MissingFileError
void write_text_file(const std::string& path, const std::string& content);

Json scene_to_json(const SceneTruth& s);
SceneTruth scene_from_json(const Json& j);

Json detections_to_json(const std::vector<Detection>& ds);
std::vector<Detection> detections_from_json(const Json& j);
std::vector<Detection> read_detections_json(const std::string& path);

Json tensor_to_json(const GridTensor& g);
GridTensor tensor_from_json(const Json& j);

Json blocks_to_json(const std::vector<Block>& blocks);
std::vector<Block> blocks_from_json(const Json& j);

Json fit_report_to_json(const FitResult& r);

Json eval_report_to_json(const EvalReport& r);
Json dataset_report_to_json(const DatasetReport& r);
std::string dataset_report_to_csv(const DatasetReport& r);

Json parse_json(const std::string& text, const std::string& origin);
Json read_json_file(const std::string& path);
void write_json_file(const std::string& path, const Json& j);

}  // namespace textspot
