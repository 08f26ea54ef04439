#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>

#include "paw/io.hpp"
#include "paw/pipeline.hpp"

// Batch front end. Every command returns a process exit code:
// 0 success, 1 one or more rows failed, 2 configuration or input error
// detected before any output was written.
namespace paw::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRowFailure = 1;
inline constexpr int kExitConfig = 2;

struct WarpOptions {
    std::filesystem::path manifest;
    std::filesystem::path out_dir;
    PipelineConfig config;
    bool strict = false;
    bool dump_stages = false;
    int workers = 0;  // 0: hardware concurrency, capped by PAW_THREADS
};

struct MapsOptions {
    std::filesystem::path manifest;
    std::filesystem::path out_dir;
    MapMode mode = MapMode::Union;
    std::uint8_t threshold = 128;
    int canvas = 112;
    int workers = 0;
};

struct EvalOptions {
    std::filesystem::path embeddings;
    std::filesystem::path report;
    std::optional<std::filesystem::path> roc_csv;
    int trials = 5;
    std::uint64_t impostor_cap = 0;
    std::uint64_t seed = 0;
    eval::Similarity similarity = eval::Similarity::Dot;
};

struct InspectOptions {
    std::filesystem::path image;
    std::filesystem::path seg_mask;
    std::filesystem::path landmarks;
    std::string image_id = "image";
    std::filesystem::path out_dir;
    PipelineConfig config;
};

int cmd_warp(const WarpOptions& options, std::ostream& log);
int cmd_maps(const MapsOptions& options, std::ostream& log);
int cmd_eval(const EvalOptions& options, std::ostream& log);
int cmd_inspect(const InspectOptions& options, std::ostream& log);

// Region map for one manifest row under `mode`, normalized to `canvas` for
// union and intersection. Throws PawError.
BinaryMask build_region_map(const io::ManifestRow& row, MapMode mode, std::uint8_t threshold, int canvas);

// Files (relative name -> bytes) for one fully processed image. Stage dumps
// live under "<image_id>/".
std::map<std::string, std::string> render_outputs(const std::string& image_id, const PipelineTrace& trace,
                                                  bool dump_stages);

// min(requested or hardware concurrency, PAW_THREADS), at least 1.
int resolve_workers(int requested);

}  // namespace paw::cli
