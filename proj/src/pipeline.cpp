#include "paw/pipeline.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <utility>

#include "paw/error.hpp"
#include "paw/maskops.hpp"

namespace paw {

std::string_view map_mode_name(MapMode mode) noexcept {
    switch (mode) {
        case MapMode::Segmentation: return "segmentation";
        case MapMode::Landmark: return "landmark";
        case MapMode::Union: return "union";
        case MapMode::Intersection: return "intersection";
        case MapMode::None: return "none";
    }
    return "none";
}

MapMode parse_map_mode(std::string_view name) {
    for (MapMode m : {MapMode::Segmentation, MapMode::Landmark, MapMode::Union, MapMode::Intersection, MapMode::None})
        if (map_mode_name(m) == name) return m;
    throw PawError(ErrorKind::ConfigError, "unknown map mode '" + std::string(name) + "'");
}

void PipelineConfig::validate() const {
    auto fail = [](const std::string& why) { throw PawError(ErrorKind::ConfigError, why); };
    if (grid <= 0 || patch_size <= 1 || anchors < 3 || samples <= 0) fail("geometry parameters must be positive");
    if (anchors != grid * grid)
        fail("anchors (" + std::to_string(anchors) + ") must equal grid^2 (" + std::to_string(grid * grid) + ")");
    if (canvas != grid * patch_size)
        fail("canvas (" + std::to_string(canvas) + ") must equal grid * patch_size (" +
             std::to_string(grid * patch_size) + ")");
    if (samples < 2 * anchors)
        fail("samples (" + std::to_string(samples) + ") must be at least 2 * anchors (" +
             std::to_string(2 * anchors) + ")");
    if (threads < 1) fail("threads must be at least 1");
}

namespace {

template <typename F>
auto in_stage(const char* name, F&& body) -> decltype(body()) {
    try {
        return body();
    } catch (const PawError& e) {
        if (!e.stage().empty()) throw;
        throw e.with_stage(name);
    }
}

}  // namespace

PipelineTrace run_pipeline(const Image& image, const BinaryMask& mask, const PipelineConfig& config) {
    config.validate();
    PipelineTrace t;

    in_stage("normalize", [&] {
        t.mask = normalize_mask(mask, config.canvas);
        t.image = normalize_image(image, config.canvas, config.canvas);
    });
    t.region = in_stage("largest_component", [&] { return largest_component(t.mask); });
    t.contour = in_stage("trace_boundary", [&] { return trace_boundary(t.region); });
    t.hull = in_stage("convex_hull", [&] { return convex_hull(t.contour.points); });
    t.samples = in_stage("resample", [&] { return resample_closed(t.hull, config.samples); });
    t.reference = in_stage("canonical_reference", [&] { return canonical_reference(t.samples); });
    t.anchors = in_stage("select_anchors", [&] { return select_anchors(t.samples, t.reference, config.anchors); });
    t.centroid = in_stage("centroid", [&] { return centroid(t.anchors); });
    const auto ordered = in_stage("order_anchors", [&] { return order_anchors(t.anchors, t.centroid); });
    t.fan = in_stage("build_triangles", [&] { return build_triangles(ordered, t.centroid); });
    in_stage("pair_quadrilaterals", [&] { pair_quadrilaterals(t.fan); });

    in_stage("warp", [&] {
        t.warps.reserve(t.fan.quads.size());
        for (const auto& q : t.fan.quads)
            t.warps.push_back(make_quad_warp(
                {t.fan.vertex(q[0]), t.fan.vertex(q[1]), t.fan.vertex(q[2]), t.fan.vertex(q[3])}, config.patch_size));

        t.patches.assign(t.warps.size(), Image{});
        const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(config.threads), t.warps.size());
        std::vector<std::exception_ptr> failures(std::max<std::size_t>(workers, 1));
        auto run_stripe = [&](std::size_t first) {
            try {
                for (std::size_t i = first; i < t.warps.size(); i += std::max<std::size_t>(workers, 1))
                    t.patches[i] = warp_quad_to_patch(t.image, t.warps[i]);
            } catch (...) {
                failures[first] = std::current_exception();
            }
        };
        if (workers <= 1) {
            run_stripe(0);
        } else {
            std::vector<std::jthread> pool;
            for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run_stripe, w);
        }
        for (const auto& f : failures)
            if (f) std::rethrow_exception(f);
    });
    t.canvas = in_stage("stitch", [&] { return stitch(t.patches, config.grid); });
    return t;
}

Image warp_pipeline(const Image& image, const BinaryMask& mask, const PipelineConfig& config) {
    return run_pipeline(image, mask, config).canvas;
}

Image passthrough_canvas(const Image& image, const PipelineConfig& config) {
    config.validate();
    return in_stage("normalize", [&] { return normalize_image(image, config.canvas, config.canvas); });
}

}  // namespace paw
