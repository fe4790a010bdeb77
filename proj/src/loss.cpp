#include "textspot/loss.hpp"

#include <algorithm>
#include <cmath>

#include "textspot/errors.hpp"

namespace textspot {

namespace {

void check_specs(const GridTensor& g, const GridTarget& t) {
    if (!(g.spec == t.spec))
        throw SpecMismatchError("loss: tensor and target disagree on (n, b, side)");
}

GridTensor default_init(const GridSpec& spec) {
    GridTensor g(spec);
    for (auto& p : g.boxes) p = BoxParams{0.5, 0.5, 0.1, 0.1, 0.5, 0.5};
    return g;
}

}  // namespace

LossBreakdown loss(const GridTensor& g, const GridTarget& t, const LossWeights& w) {
    check_specs(g, t);
    const std::vector<int> responsible = assign_responsibility(g, t);
    LossBreakdown out;
    for (int cell = 0; cell < g.spec.cell_count(); ++cell) {
        if (t.cells[cell]) {
            const CellTruth& truth = *t.cells[cell];
            for (int j = 0; j < g.spec.b; ++j) {
                const BoxParams& p = g.at(cell, j);
                if (j == responsible[cell]) {
                    out.confidence_obj += (1.0 - p.c) * (1.0 - p.c);
                    const double dth = truth.theta_norm - p.theta_norm;
                    out.angle += w.lambda_ang * dth * dth;
                    const double dx = truth.x - p.x;
                    const double dy = truth.y - p.y;
                    const double dw = std::sqrt(truth.w) - std::sqrt(p.w);
                    const double dh = std::sqrt(truth.h) - std::sqrt(p.h);
                    out.coord += w.lambda_coord * (dx * dx + dy * dy + dw * dw + dh * dh);
                } else {
                    out.confidence_nonresp += p.c * p.c;
                }
            }
        } else {
            for (int j = 0; j < g.spec.b; ++j) {
                const double c = g.at(cell, j).c;
                out.confidence_noobj += w.lambda_noobj * c * c;
            }
        }
    }
    out.total = out.confidence_obj + out.confidence_nonresp + out.confidence_noobj +
                out.angle + out.coord;
    return out;
}

GradField loss_grad(const GridTensor& g, const GridTarget& t, const LossWeights& w) {
    check_specs(g, t);
    const std::vector<int> responsible = assign_responsibility(g, t);
    GradField grad{g.spec, std::vector<BoxGrad>(g.boxes.size())};
    for (int cell = 0; cell < g.spec.cell_count(); ++cell) {
        for (int j = 0; j < g.spec.b; ++j) {
            const BoxParams& p = g.at(cell, j);
            BoxGrad& d = grad.boxes[static_cast<size_t>(cell) * g.spec.b + j];
            if (!t.cells[cell]) {
                d.c = 2.0 * w.lambda_noobj * p.c;
            } else if (j != responsible[cell]) {
                d.c = 2.0 * p.c;
            } else {
                const CellTruth& truth = *t.cells[cell];
                d.c = -2.0 * (1.0 - p.c);
                d.theta_norm = -2.0 * w.lambda_ang * (truth.theta_norm - p.theta_norm);
                d.x = -2.0 * w.lambda_coord * (truth.x - p.x);
                d.y = -2.0 * w.lambda_coord * (truth.y - p.y);
                d.w = w.lambda_coord * (1.0 - std::sqrt(truth.w) / std::sqrt(p.w));
                d.h = w.lambda_coord * (1.0 - std::sqrt(truth.h) / std::sqrt(p.h));
            }
        }
    }
    return grad;
}

FitResult fit_boxes(const EncodeResult& enc, const LossWeights& w, const FitConfig& cfg) {
    const GridTarget& t = enc.target;
    FitResult res;
    res.unrepresentable = enc.collisions;
    res.tensor = cfg.init ? *cfg.init : default_init(t.spec);
    for (auto& p : res.tensor.boxes) p = clamp_params(p);

    double current = loss(res.tensor, t, w).total;
    if (cfg.record_trace) res.loss_trace.push_back(current);
    int steps = 0;
    while (current > cfg.loss_tol && steps < cfg.max_iters) {
        const GradField grad = loss_grad(res.tensor, t, w);
        for (size_t k = 0; k < res.tensor.boxes.size(); ++k) {
            BoxParams& p = res.tensor.boxes[k];
            const BoxGrad& d = grad.boxes[k];
            p.x -= cfg.step_size * d.x;
            p.y -= cfg.step_size * d.y;
            p.w -= cfg.step_size * d.w;
            p.h -= cfg.step_size * d.h;
            p.theta_norm -= cfg.step_size * d.theta_norm;
            p.c -= cfg.step_size * d.c;
            p = clamp_params(p);
        }
        ++steps;
        current = loss(res.tensor, t, w).total;
        if (cfg.record_trace) res.loss_trace.push_back(current);
    }
    res.final_loss = current;
    res.iterations = steps;
    res.converged = current <= cfg.loss_tol;

    const std::vector<int> responsible = assign_responsibility(res.tensor, t);
    for (int cell = 0; cell < t.spec.cell_count(); ++cell) {
        if (!t.cells[cell]) continue;
        const int row = cell / t.spec.n;
        const int col = cell % t.spec.n;
        const OrientedRect truth = decode_truth(*t.cells[cell], row, col, t.spec);
        const OrientedRect fitted =
            decode_box(res.tensor.at(cell, responsible[cell]), row, col, t.spec);
        res.per_word.push_back({t.cells[cell]->word_index, iou(fitted, truth)});
    }
    std::sort(res.per_word.begin(), res.per_word.end(),
              [](const WordFit& a, const WordFit& b) { return a.word_index < b.word_index; });
    return res;
}

FitResult fit_boxes(const GridTarget& t, const LossWeights& w, const FitConfig& cfg) {
    return fit_boxes(EncodeResult{t, {}}, w, cfg);
}

}  // namespace textspot
