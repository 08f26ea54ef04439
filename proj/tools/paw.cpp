// paw: anatomy-aware patch warping and verification evaluation.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "paw/cli.hpp"
#include "paw/error.hpp"
#include "paw/io.hpp"

namespace {

struct GeometryFlags {
    std::optional<std::string> config_file;
    std::optional<std::string> map_mode;
    std::optional<int> threshold, samples, anchors, patch_size, grid, canvas, threads;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_file, "flat JSON config; flags override its values")->check(CLI::ExistingFile);
        cmd->add_option("--map-mode", map_mode, "segmentation | landmark | union | intersection | none");
        cmd->add_option("--threshold", threshold, "binarization threshold for 8-bit masks (default 128)")
            ->check(CLI::Range(0, 255));
        cmd->add_option("--samples", samples, "boundary samples on the hull (default 200)");
        cmd->add_option("--anchors", anchors, "anchor points, must equal grid^2 (default 16)");
        cmd->add_option("--patch-size", patch_size, "patch edge in pixels (default 28)");
        cmd->add_option("--grid", grid, "patches per canvas row (default 4)");
        cmd->add_option("--canvas", canvas, "canvas edge, must equal grid * patch-size (default 112)");
        cmd->add_option("--threads", threads, "workers for the per-patch warps of one image (default 1)");
    }

    paw::PipelineConfig resolve(paw::MapMode default_mode) const {
        paw::PipelineConfig c;
        c.map_mode = default_mode;
        if (config_file) c = paw::io::read_config(*config_file, c);
        if (map_mode) c.map_mode = paw::parse_map_mode(*map_mode);
        if (threshold) c.threshold = static_cast<std::uint8_t>(*threshold);
        if (samples) c.samples = *samples;
        if (anchors) c.anchors = *anchors;
        if (patch_size) c.patch_size = *patch_size;
        if (grid) c.grid = *grid;
        if (canvas) c.canvas = *canvas;
        if (threads) c.threads = *threads;
        return c;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"paw - anatomy-aware patch warping of ear images and verification evaluation"};
    app.require_subcommand(1);

    paw::cli::WarpOptions warp;
    GeometryFlags warp_flags;
    std::string warp_manifest, warp_out;
    auto* warp_cmd = app.add_subcommand("warp", "warp every manifest row into a stitched canvas");
    warp_cmd->add_option("--manifest", warp_manifest, "CSV manifest")->required()->check(CLI::ExistingFile);
    warp_cmd->add_option("--out", warp_out, "output directory")->required();
    warp_cmd->add_flag("--strict", warp.strict, "stop at the first failing row");
    warp_cmd->add_flag("--dump-stages", warp.dump_stages, "write every intermediate under <out>/<image_id>/");
    warp_cmd->add_option("--workers", warp.workers, "row workers (default: cores, capped by PAW_THREADS)");
    warp_flags.attach(warp_cmd);

    paw::cli::MapsOptions maps;
    std::string maps_manifest, maps_out, maps_mode = "union";
    int maps_threshold = 128;
    auto* maps_cmd = app.add_subcommand("maps", "write combined 112x112 region maps");
    maps_cmd->add_option("--manifest", maps_manifest, "CSV manifest")->required()->check(CLI::ExistingFile);
    maps_cmd->add_option("--out", maps_out, "output directory")->required();
    maps_cmd->add_option("--mode", maps_mode, "segmentation | landmark | union | intersection")
        ->capture_default_str();
    maps_cmd->add_option("--threshold", maps_threshold, "binarization threshold")
        ->check(CLI::Range(0, 255))
        ->capture_default_str();
    maps_cmd->add_option("--canvas", maps.canvas, "output edge in pixels")->capture_default_str();
    maps_cmd->add_option("--workers", maps.workers, "row workers (default: cores, capped by PAW_THREADS)");

    paw::cli::EvalOptions ev;
    std::string ev_embeddings, ev_report, ev_roc;
    bool ev_cosine = false;
    auto* eval_cmd = app.add_subcommand("eval", "genuine/impostor AUC with repeated trials");
    eval_cmd->add_option("--embeddings", ev_embeddings, "JSON-lines embeddings")->required()->check(CLI::ExistingFile);
    eval_cmd->add_option("--report", ev_report, "report JSON path")->required();
    eval_cmd->add_option("--roc", ev_roc, "optional ROC curve CSV (fpr,tpr) from the first trial");
    eval_cmd->add_option("--trials", ev.trials, "repetitions")->capture_default_str()->check(CLI::PositiveNumber);
    eval_cmd->add_option("--cap", ev.impostor_cap, "impostor pairs per trial, 0 = all")->capture_default_str();
    eval_cmd->add_option("--seed", ev.seed, "base seed; trial t uses seed + t")->capture_default_str();
    eval_cmd->add_flag("--cosine", ev_cosine, "cosine similarity instead of raw dot product");

    paw::cli::InspectOptions inspect;
    GeometryFlags inspect_flags;
    std::string in_image, in_mask, in_landmarks, in_out;
    auto* inspect_cmd = app.add_subcommand("inspect", "dump every pipeline stage for one image");
    inspect_cmd->add_option("--image", in_image, "PGM/PPM image")->required()->check(CLI::ExistingFile);
    inspect_cmd->add_option("--mask", in_mask, "segmentation mask (PGM/PPM)");
    inspect_cmd->add_option("--landmarks", in_landmarks, "JSON-lines landmark file");
    inspect_cmd->add_option("--image-id", inspect.image_id, "id used for file names and landmark lookup")
        ->capture_default_str();
    inspect_cmd->add_option("--out", in_out, "output directory")->required();
    inspect_flags.attach(inspect_cmd);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*warp_cmd) {
            warp.manifest = warp_manifest;
            warp.out_dir = warp_out;
            warp.config = warp_flags.resolve(paw::MapMode::Segmentation);
            return paw::cli::cmd_warp(warp, std::cerr);
        }
        if (*maps_cmd) {
            maps.manifest = maps_manifest;
            maps.out_dir = maps_out;
            maps.mode = paw::parse_map_mode(maps_mode);
            maps.threshold = static_cast<std::uint8_t>(maps_threshold);
            return paw::cli::cmd_maps(maps, std::cerr);
        }
        if (*eval_cmd) {
            ev.embeddings = ev_embeddings;
            ev.report = ev_report;
            if (!ev_roc.empty()) ev.roc_csv = ev_roc;
            ev.similarity = ev_cosine ? paw::eval::Similarity::Cosine : paw::eval::Similarity::Dot;
            return paw::cli::cmd_eval(ev, std::cerr);
        }
        if (*inspect_cmd) {
            inspect.image = in_image;
            inspect.seg_mask = in_mask;
            inspect.landmarks = in_landmarks;
            inspect.out_dir = in_out;
            const auto default_mode = in_mask.empty() ? paw::MapMode::Landmark : paw::MapMode::Segmentation;
            inspect.config = inspect_flags.resolve(default_mode);
            return paw::cli::cmd_inspect(inspect, std::cerr);
        }
    } catch (const paw::PawError& e) {
        std::cerr << "error\t" << e.what() << "\n";
        return paw::cli::kExitConfig;
    }
    return paw::cli::kExitConfig;
}
