#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <iterator>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "image.hpp"

namespace seedgrow {

/// 2|a ∩ b| / (|a| + |b|), 1 when both are empty. Duplicates are ignored.
inline double dice(std::span<const Point> a, std::span<const Point> b) {
    auto sorted = [](std::span<const Point> s) {
        std::vector<Point> v(s.begin(), s.end());
        std::sort(v.begin(), v.end(), raster_less);
        v.erase(std::unique(v.begin(), v.end()), v.end());
        return v;
    };
    const auto sa = sorted(a);
    const auto sb = sorted(b);
    if (sa.empty() && sb.empty()) return 1.0;
    std::vector<Point> common;
    std::set_intersection(sa.begin(), sa.end(), sb.begin(), sb.end(), std::back_inserter(common), raster_less);
    return 2.0 * static_cast<double>(common.size()) / static_cast<double>(sa.size() + sb.size());
}

struct EvalReport {
    std::size_t n_pred = 0;
    std::size_t n_gt = 0;
    std::map<std::uint32_t, double> per_gt_dice;  ///< gt label -> best Dice over predicted regions
    double mean_dice = 0.0;
    std::size_t split_count = 0;  ///< gt regions claimed by >= 2 predicted regions
    std::size_t merge_count = 0;  ///< predicted regions claiming >= 2 gt regions
};

/// Compares a predicted label map against ground truth.
///
/// A predicted region P counts toward splitting gt region G when more than
/// half of P lies in G; a gt region G counts toward merging into P when more
/// than half of G lies in P. Dice per gt region is the best over all
/// predicted regions; mean_dice averages over gt regions.
inline EvalReport evaluate(const LabelMap& pred, const LabelMap& gt) {
    if (!pred.same_shape(gt)) {
        throw ParameterError("label maps differ in size: " + std::to_string(pred.width()) + "x" +
                             std::to_string(pred.height()) + " vs " + std::to_string(gt.width()) + "x" +
                             std::to_string(gt.height()));
    }
    std::map<std::uint32_t, std::size_t> pred_area;
    std::map<std::uint32_t, std::size_t> gt_area;
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::size_t> overlap;  // (pred, gt)
    for (std::size_t i = 0; i < pred.size(); ++i) {
        const std::uint32_t p = pred.pixels()[i];
        const std::uint32_t g = gt.pixels()[i];
        if (p) ++pred_area[p];
        if (g) ++gt_area[g];
        if (p && g) ++overlap[{p, g}];
    }

    EvalReport r;
    r.n_pred = pred_area.size();
    r.n_gt = gt_area.size();
    for (const auto& [g, area] : gt_area) r.per_gt_dice[g] = 0.0;

    std::map<std::uint32_t, std::size_t> splitters;  // gt -> predicted regions mostly inside it
    std::map<std::uint32_t, std::size_t> mergers;    // pred -> gt regions mostly inside it
    for (const auto& [key, n] : overlap) {
        const auto [p, g] = key;
        const double d = 2.0 * static_cast<double>(n) / static_cast<double>(pred_area[p] + gt_area[g]);
        r.per_gt_dice[g] = std::max(r.per_gt_dice[g], d);
        if (2 * n > pred_area[p]) ++splitters[g];
        if (2 * n > gt_area[g]) ++mergers[p];
    }
    for (const auto& [g, n] : splitters) r.split_count += n >= 2;
    for (const auto& [p, n] : mergers) r.merge_count += n >= 2;

    if (r.n_gt == 0) {
        r.mean_dice = r.n_pred == 0 ? 1.0 : 0.0;
    } else {
        double sum = 0.0;
        for (const auto& [g, d] : r.per_gt_dice) sum += d;
        r.mean_dice = sum / static_cast<double>(r.n_gt);
    }
    return r;
}

/// `key=value` lines, one fact per line.
inline std::string to_text(const EvalReport& r) {
    auto fixed = [](double v) {
        char buf[32];
        std::snprintf(buf, sizeof buf, "%.6f", v);
        return std::string(buf);
    };
    std::string out;
    out += "n_pred=" + std::to_string(r.n_pred) + "\n";
    out += "n_gt=" + std::to_string(r.n_gt) + "\n";
    out += "mean_dice=" + fixed(r.mean_dice) + "\n";
    out += "split_count=" + std::to_string(r.split_count) + "\n";
    out += "merge_count=" + std::to_string(r.merge_count) + "\n";
    for (const auto& [g, d] : r.per_gt_dice) out += "dice_gt_" + std::to_string(g) + "=" + fixed(d) + "\n";
    return out;
}

}  // namespace seedgrow
