#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "paw/fan.hpp"
#include "paw/geometry.hpp"
#include "paw/image.hpp"
#include "paw/warp.hpp"

namespace paw {

enum class MapMode { Segmentation, Landmark, Union, Intersection, None };

std::string_view map_mode_name(MapMode mode) noexcept;
MapMode parse_map_mode(std::string_view name);

struct PipelineConfig {
    int samples = kBoundarySamples;
    int anchors = kAnchorCount;
    int patch_size = kPatchSize;
    int grid = kGridSize;
    int canvas = 112;
    std::uint8_t threshold = 128;
    MapMode map_mode = MapMode::Segmentation;
    int threads = 1;  // workers for the per-patch warps

    // Throws ConfigError unless anchors == grid^2, canvas == grid * patch_size
    // and samples >= 2 * anchors.
    void validate() const;
};

// Every intermediate of one pipeline run.
struct PipelineTrace {
    Image image;              // normalized
    BinaryMask mask;          // normalized
    BinaryMask region;        // largest component
    ClosedContour contour;
    ConvexPolygon hull;
    std::vector<Point2> samples;
    std::size_t reference = 0;
    std::vector<Point2> anchors;  // in sampling order from the reference
    Point2 centroid;
    FanPartition fan;
    std::vector<QuadWarp> warps;
    std::vector<Image> patches;
    Image canvas;
};

// normalize -> largest_component -> trace_boundary -> convex_hull ->
// resample_closed -> canonical_reference -> select_anchors -> centroid ->
// order_anchors -> build_triangles -> pair_quadrilaterals -> warp -> stitch.
// Errors are rethrown with the failing stage attached.
PipelineTrace run_pipeline(const Image& image, const BinaryMask& mask, const PipelineConfig& config = {});

Image warp_pipeline(const Image& image, const BinaryMask& mask, const PipelineConfig& config = {});

// Baseline without warping: plain resize to the canvas size.
Image passthrough_canvas(const Image& image, const PipelineConfig& config = {});

}  // namespace paw
