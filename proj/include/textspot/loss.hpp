#pragma once

#include <optional>
#include <vector>

#include "textspot/gridcodec.hpp"

namespace textspot {

struct LossWeights {
    double lambda_ang = 10.0;
    double lambda_coord = 5.0;
    double lambda_noobj = 0.1;
};

// Weighted parts of the multi-part squared loss; total is their sum.
struct LossBreakdown {
    double total = 0.0;
    double confidence_obj = 0.0;      // (1-C)^2 over responsible boxes
    double confidence_nonresp = 0.0;  // C^2 over other boxes in occupied cells
    double confidence_noobj = 0.0;    // lambda_noobj * C^2 in empty cells
    double angle = 0.0;               // lambda_ang * (theta_hat - theta)^2
    double coord = 0.0;               // lambda_coord * coordinate + sqrt-size terms
};

LossBreakdown loss(const GridTensor& g, const GridTarget& t, const LossWeights& w = {});

// Partial derivatives per BoxParams field, with the responsibility
// assignment held fixed at its current value.
struct BoxGrad {
    double x = 0.0;
    double y = 0.0;
    double w = 0.0;
    double h = 0.0;
    double theta_norm = 0.0;
    double c = 0.0;
};

struct GradField {
    GridSpec spec;
    std::vector<BoxGrad> boxes;  // same indexing as GridTensor
};

GradField loss_grad(const GridTensor& g, const GridTarget& t, const LossWeights& w = {});

struct FitConfig {
    double step_size = 0.05;
    int max_iters = 5000;
    double loss_tol = 1e-12;  // stop once the loss falls below this
    bool record_trace = true;
    std::optional<GridTensor> init;  // default: every box at BoxParams{} with c = 0.5
};

struct WordFit {
    int word_index = -1;
    double iou = 0.0;  // decoded responsible box vs its ground-truth word
};

struct FitResult {
    GridTensor tensor;
    double final_loss = 0.0;
    int iterations = 0;
    bool converged = false;
    std::vector<WordFit> per_word;
    std::vector<int> unrepresentable;  // words lost to cell-capacity collisions
    std::vector<double> loss_trace;    // loss before each step plus the final value
};

// Plain gradient descent over the parameter field, re-evaluating
// responsibility each iteration and clamping fields to their ranges.
FitResult fit_boxes(const EncodeResult& enc, const LossWeights& w = {},
                    const FitConfig& cfg = {});
FitResult fit_boxes(const GridTarget& t, const LossWeights& w = {},
                    const FitConfig& cfg = {});

}  // namespace textspot
