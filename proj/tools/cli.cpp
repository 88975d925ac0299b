#include "cli.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <seedgrow/seedgrow.hpp>

namespace seedgrow::cli {
namespace {

struct PipelineFlags {
    int k = 0;
    int r = 3;
    int connectivity = 8;
    int median = 3;
    std::string polarity = "bright";
    int min_area = 5;
    std::uint64_t rng_seed = 0;
    std::string fill_mode = "eroded_core_then_fill";

    PipelineConfig to_config() const {
        PipelineConfig cfg;
        cfg.k = k;
        cfg.r = r;
        cfg.connectivity = connectivity_from_int(connectivity);
        cfg.median_window = median;
        cfg.polarity = parse_polarity(polarity);
        if (min_area < 1) throw ParameterError("--min-area must be >= 1, got " + std::to_string(min_area));
        cfg.min_area = static_cast<std::size_t>(min_area);
        cfg.rng_seed = rng_seed;
        if (fill_mode == "eroded_core_then_fill") {
            cfg.fill_mode = FillMode::eroded_core_then_fill;
        } else if (fill_mode == "otsu_only") {
            cfg.fill_mode = FillMode::otsu_only;
        } else {
            throw ParameterError("--fill-mode must be eroded_core_then_fill or otsu_only, got " + fill_mode);
        }
        cfg.validate();
        return cfg;
    }

    static Polarity parse_polarity(const std::string& s) {
        if (s == "bright") return Polarity::bright;
        if (s == "dark") return Polarity::dark;
        throw ParameterError("--polarity must be bright or dark, got " + s);
    }
};

void add_pipeline_flags(CLI::App& cmd, PipelineFlags& f) {
    cmd.add_option("--k", f.k, "Number of seeds (expected regions)")->required();
    cmd.add_option("--r", f.r, "Odd side of the R x R neighborhood window")->capture_default_str();
    cmd.add_option("--connectivity", f.connectivity, "Growth connectivity, 4 or 8")->capture_default_str();
    cmd.add_option("--median", f.median, "Odd median filter window (1 disables)")->capture_default_str();
    cmd.add_option("--polarity", f.polarity, "bright: cells above threshold; dark: below")->capture_default_str();
    cmd.add_option("--min-area", f.min_area, "Smallest ROI kept, in pixels")->capture_default_str();
    cmd.add_option("--rng-seed", f.rng_seed, "Seed for K-means++ initialization")->capture_default_str();
    cmd.add_option("--fill-mode", f.fill_mode, "eroded_core_then_fill or otsu_only")->capture_default_str();
}

GrayImage load_image(const std::string& path) { return read_pgm(read_file(path)); }

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Automatic seeded region growing for 2D grayscale cell images", "seedgrow"};
    app.require_subcommand(1);

    // segment
    PipelineFlags seg_flags;
    std::string seg_input;
    std::string seg_out;
    std::string seg_seeds_out;
    std::string seg_ppm_out;
    auto* segment_cmd = app.add_subcommand("segment", "Run the full pipeline and write a 16-bit label map");
    segment_cmd->add_option("input", seg_input, "Input binary PGM (P5)")->required();
    add_pipeline_flags(*segment_cmd, seg_flags);
    segment_cmd->add_option("--out", seg_out, "Output label map (16-bit PGM)")->required();
    segment_cmd->add_option("--seeds-out", seg_seeds_out, "Optional seeds CSV");
    segment_cmd->add_option("--ppm-out", seg_ppm_out, "Optional false-color PPM");

    // otsu
    std::string otsu_input;
    int otsu_median = 1;
    auto* otsu_cmd = app.add_subcommand("otsu", "Print the Otsu threshold of an image");
    otsu_cmd->add_option("input", otsu_input, "Input binary PGM (P5)")->required();
    otsu_cmd->add_option("--median", otsu_median, "Median filter applied first (1 = raw image)")
        ->capture_default_str();

    // seeds
    PipelineFlags seeds_flags;
    std::string seeds_input;
    std::string seeds_out;
    auto* seeds_cmd = app.add_subcommand("seeds", "Select seeds and write them as CSV");
    seeds_cmd->add_option("input", seeds_input, "Input binary PGM (P5)")->required();
    add_pipeline_flags(*seeds_cmd, seeds_flags);
    seeds_cmd->add_option("--out", seeds_out, "Output CSV (standard output when omitted)");

    // synth
    SynthSpec synth;
    std::string synth_out;
    std::string synth_gt_out;
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic cell image and its ground truth");
    synth_cmd->add_option("--width", synth.width)->capture_default_str();
    synth_cmd->add_option("--height", synth.height)->capture_default_str();
    synth_cmd->add_option("--cells", synth.n_cells)->capture_default_str();
    synth_cmd->add_option("--radius-min", synth.radius_min)->capture_default_str();
    synth_cmd->add_option("--radius-max", synth.radius_max)->capture_default_str();
    synth_cmd->add_option("--fg", synth.fg_mean, "Cell intensity")->capture_default_str();
    synth_cmd->add_option("--bg", synth.bg_mean, "Background intensity")->capture_default_str();
    synth_cmd->add_option("--noise", synth.noise_sigma, "Gaussian noise sigma")->capture_default_str();
    synth_cmd->add_option("--rng-seed", synth.rng_seed)->capture_default_str();
    synth_cmd->add_option("--out", synth_out, "Output image (8-bit PGM)")->required();
    synth_cmd->add_option("--gt-out", synth_gt_out, "Output ground truth (16-bit PGM)")->required();

    // eval
    std::string eval_pred;
    std::string eval_gt;
    auto* eval_cmd = app.add_subcommand("eval", "Compare a label map against ground truth");
    eval_cmd->add_option("pred", eval_pred, "Predicted label map (PGM)")->required();
    eval_cmd->add_option("gt", eval_gt, "Ground-truth label map (PGM)")->required();

    std::vector<const char*> argv;
    argv.reserve(args.size());
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidParameters;
    }

    try {
        if (segment_cmd->parsed()) {
            const PipelineConfig cfg = seg_flags.to_config();
            const GrayImage img = load_image(seg_input);
            const PipelineResult res = segment(img, cfg);
            write_file(seg_out, write_label_map(res.labels));
            if (!seg_seeds_out.empty()) write_file(seg_seeds_out, seeds_to_csv(res.seeds));
            if (!seg_ppm_out.empty()) write_file(seg_ppm_out, write_label_ppm(res.labels));
            out << "threshold=" << res.otsu.threshold << '\n';
            out << "seeds=" << res.seeds.size() << '\n';
            out << "regions=" << max_label(res.labels) << '\n';
        } else if (otsu_cmd->parsed()) {
            const GrayImage img = median_filter(load_image(otsu_input), otsu_median);
            const OtsuResult r = otsu(img);
            out << "threshold=" << r.threshold << '\n';
            out << "between_class_variance=" << fixed6(r.between_class_variance) << '\n';
        } else if (seeds_cmd->parsed()) {
            const PipelineConfig cfg = seeds_flags.to_config();
            const SeedStage s = select_seeds_for(load_image(seeds_input), cfg);
            const std::string csv = seeds_to_csv(s.seeds);
            if (seeds_out.empty()) {
                out << csv;
            } else {
                write_file(seeds_out, csv);
                out << "threshold=" << s.otsu.threshold << '\n';
                out << "seeds=" << s.seeds.size() << '\n';
            }
        } else if (synth_cmd->parsed()) {
            const SynthResult r = synth_cells(synth);
            write_file(synth_out, write_pgm(r.image));
            write_file(synth_gt_out, write_label_map(r.ground_truth));
            out << "cells=" << max_label(r.ground_truth) << '\n';
        } else if (eval_cmd->parsed()) {
            const LabelMap pred = read_label_map(read_file(eval_pred));
            const LabelMap gt = read_label_map(read_file(eval_gt));
            out << to_text(evaluate(pred, gt));
        }
    } catch (const IoError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    } catch (const ParameterError& e) {
        err << "error: " << e.what() << '\n';
        return kInvalidParameters;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kPipelineFailure;
    }
    return kOk;
}

}  // namespace seedgrow::cli
