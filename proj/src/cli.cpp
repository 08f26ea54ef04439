#include "paw/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <ostream>
#include <thread>
#include <vector>

#include <json.hpp>

#include "paw/error.hpp"
#include "paw/maskops.hpp"
#include "paw/overlay.hpp"

namespace paw::cli {

namespace {

namespace fs = std::filesystem;

enum class RowStatus { Ok, Warning, Failed, Skipped };

struct RowOutcome {
    RowStatus status = RowStatus::Skipped;
    std::string message;
    std::map<std::string, std::string> files;
};

std::string describe(const PawError& e) {
    std::string s(kind_name(e.kind()));
    if (!e.stage().empty()) s += "\tstage=" + e.stage();
    if (!e.detail().empty()) s += "\t" + e.detail();
    return s;
}

// Processes rows on a worker pool. Outputs of a row are written only after
// the row succeeds, so failed rows leave nothing behind. Log lines come out
// in manifest order regardless of scheduling.
template <typename Process>
int run_rows(const std::vector<io::ManifestRow>& rows, const fs::path& out_dir, int workers, bool strict,
             std::ostream& log, Process&& process) {
    std::vector<RowOutcome> outcomes(rows.size());
    std::atomic<std::size_t> next{0};
    std::atomic<bool> abort{false};

    auto worker = [&] {
        for (;;) {
            if (abort.load()) return;
            const std::size_t i = next.fetch_add(1);
            if (i >= rows.size()) return;
            RowOutcome& out = outcomes[i];
            try {
                out = process(rows[i]);
                for (const auto& [name, bytes] : out.files) io::write_file(out_dir / name, bytes);
            } catch (const PawError& e) {
                out = RowOutcome{RowStatus::Failed, describe(e), {}};
            } catch (const std::exception& e) {
                out = RowOutcome{RowStatus::Failed, std::string("IoError\t") + e.what(), {}};
            }
            if (out.status == RowStatus::Failed && strict) abort.store(true);
        }
    };

    const int pool_size = std::max(1, std::min<int>(workers, static_cast<int>(rows.size())));
    if (pool_size == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (int w = 0; w < pool_size; ++w) pool.emplace_back(worker);
    }

    std::string text;
    int failed = 0;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const RowOutcome& o = outcomes[i];
        const char* tag = "skipped";
        switch (o.status) {
            case RowStatus::Ok: tag = "ok"; break;
            case RowStatus::Warning: tag = "warning"; break;
            case RowStatus::Failed: tag = "error"; ++failed; break;
            case RowStatus::Skipped: tag = "skipped"; break;
        }
        text += rows[i].image_id + "\t" + tag;
        if (!o.message.empty()) text += "\t" + o.message;
        text += "\n";
    }
    const bool aborted = abort.load();
    text += "summary\trows=" + std::to_string(rows.size()) + "\tfailed=" + std::to_string(failed) +
            (aborted ? "\taborted=strict" : "") + "\n";
    log << text;
    io::write_file(out_dir / "run.log", text);
    return failed > 0 || aborted ? kExitRowFailure : kExitOk;
}

bool needs_seg(MapMode m) { return m == MapMode::Segmentation || m == MapMode::Union || m == MapMode::Intersection; }
bool needs_landmarks(MapMode m) { return m == MapMode::Landmark || m == MapMode::Union || m == MapMode::Intersection; }

// Config errors are reported before any row is touched.
std::optional<std::string> check_inputs(const std::vector<io::ManifestRow>& rows, MapMode mode) {
    for (const auto& r : rows) {
        if (needs_seg(mode) && r.seg_mask_path.empty())
            return "row '" + r.image_id + "' has no seg_mask_path, required by map mode " +
                   std::string(map_mode_name(mode));
        if (needs_landmarks(mode) && r.landmark_path.empty())
            return "row '" + r.image_id + "' has no landmark_path, required by map mode " +
                   std::string(map_mode_name(mode));
    }
    return std::nullopt;
}

std::vector<Point2> landmarks_for(const io::ManifestRow& row) {
    const auto all = io::read_landmarks(row.landmark_path);
    const auto it = all.find(row.image_id);
    if (it == all.end())
        throw PawError(ErrorKind::ParseError, "no landmarks for '" + row.image_id + "' in " + row.landmark_path);
    return it->second;
}

std::string pnm(const Image& image) { return io::encode_pnm(image); }

nlohmann::json point_json(Point2 p) { return nlohmann::json::array({p.x, p.y}); }

}  // namespace

int resolve_workers(int requested) {
    int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
    if (const char* env = std::getenv("PAW_THREADS")) {
        const int cap = std::atoi(env);
        if (cap > 0) n = std::min(n, cap);
    }
    return std::max(1, n);
}

BinaryMask build_region_map(const io::ManifestRow& row, MapMode mode, std::uint8_t threshold, int canvas) {
    auto segmentation = [&] { return binarize(to_gray(io::read_pnm(row.seg_mask_path)), threshold); };
    auto landmark = [&] {
        const Image image = io::read_pnm(row.image_path);
        return landmarks_to_mask(landmarks_for(row), image.width(), image.height());
    };

    switch (mode) {
        case MapMode::Segmentation: return segmentation();
        case MapMode::Landmark: return landmark();
        case MapMode::Union:
        case MapMode::Intersection: {
            const BinaryMask seg = segmentation();
            const BinaryMask lm = landmark();
            try {
                const BinaryMask a = normalize_mask(seg, canvas);
                const BinaryMask b = normalize_mask(lm, canvas);
                const BinaryMask combined = mode == MapMode::Union ? mask_union(a, b) : mask_intersect(a, b);
                if (!combined.any())
                    throw PawError(ErrorKind::EmptyMask, std::string(map_mode_name(mode)) + " map is empty");
                return combined;
            } catch (const PawError& e) {
                throw e.stage().empty() ? e.with_stage("normalize") : e;
            }
        }
        case MapMode::None: break;
    }
    throw PawError(ErrorKind::ConfigError, "map mode 'none' has no region map");
}

std::map<std::string, std::string> render_outputs(const std::string& image_id, const PipelineTrace& trace,
                                                  bool dump_stages) {
    std::map<std::string, std::string> files;
    files[image_id + ".canvas" + io::pnm_extension(trace.canvas)] = pnm(trace.canvas);
    if (!dump_stages) return files;

    const std::string dir = image_id + "/" + image_id;
    files[dir + ".image" + io::pnm_extension(trace.image)] = pnm(trace.image);
    files[dir + ".mask.pgm"] = pnm(mask_to_image(trace.mask));
    files[dir + ".region.pgm"] = pnm(mask_to_image(trace.region));
    files[dir + ".hull.ppm"] = pnm(overlay::hull_overlay(trace.image, trace.contour, trace.hull));
    files[dir + ".anchors.ppm"] = pnm(overlay::anchor_overlay(trace.image, trace.hull, trace.anchors, trace.centroid));
    files[dir + ".fan.ppm"] = pnm(overlay::fan_overlay(trace.image, trace.fan));
    for (std::size_t i = 0; i < trace.patches.size(); ++i) {
        char name[32];
        std::snprintf(name, sizeof name, ".patch%02zu", i);
        files[dir + name + io::pnm_extension(trace.patches[i])] = pnm(trace.patches[i]);
    }
    files[dir + ".canvas" + io::pnm_extension(trace.canvas)] = pnm(trace.canvas);

    nlohmann::json geo;
    for (const Point2& p : trace.hull.vertices) geo["hull"].push_back(point_json(p));
    geo["reference_index"] = trace.reference;
    for (const Point2& p : trace.anchors) geo["anchors"].push_back(point_json(p));
    geo["centroid"] = point_json(trace.centroid);
    for (const Point2& p : trace.fan.ordered_anchors) geo["ordered_anchors"].push_back(point_json(p));
    geo["triangles"] = trace.fan.triangles;
    geo["quads"] = trace.fan.quads;
    files[dir + ".geometry.json"] = geo.dump(2) + "\n";
    return files;
}

int cmd_warp(const WarpOptions& options, std::ostream& log) {
    std::vector<io::ManifestRow> rows;
    try {
        options.config.validate();
        rows = io::read_manifest(options.manifest);
        if (auto problem = check_inputs(rows, options.config.map_mode)) throw PawError(ErrorKind::ConfigError, *problem);
    } catch (const PawError& e) {
        log << "error\t" << describe(e) << "\n";
        return kExitConfig;
    }

    const int workers = resolve_workers(options.workers);
    PipelineConfig config = options.config;
    if (workers > 1) config.threads = 1;

    return run_rows(rows, options.out_dir, workers, options.strict, log, [&](const io::ManifestRow& row) {
        const Image image = io::read_pnm(row.image_path);
        RowOutcome out{RowStatus::Ok, {}, {}};
        if (config.map_mode == MapMode::None) {
            const Image canvas = passthrough_canvas(image, config);
            out.files[row.image_id + ".canvas" + io::pnm_extension(canvas)] = pnm(canvas);
            return out;
        }
        const BinaryMask mask = build_region_map(row, config.map_mode, config.threshold, config.canvas);
        out.files = render_outputs(row.image_id, run_pipeline(image, mask, config), options.dump_stages);
        return out;
    });
}

int cmd_maps(const MapsOptions& options, std::ostream& log) {
    std::vector<io::ManifestRow> rows;
    try {
        if (options.mode == MapMode::None) throw PawError(ErrorKind::ConfigError, "maps needs a region map mode");
        rows = io::read_manifest(options.manifest);
        if (auto problem = check_inputs(rows, options.mode)) throw PawError(ErrorKind::ConfigError, *problem);
    } catch (const PawError& e) {
        log << "error\t" << describe(e) << "\n";
        return kExitConfig;
    }

    const std::string suffix = "." + std::string(map_mode_name(options.mode)) + ".pgm";
    return run_rows(rows, options.out_dir, resolve_workers(options.workers), false, log,
                    [&](const io::ManifestRow& row) {
                        try {
                            const BinaryMask combined = normalize_mask(
                                build_region_map(row, options.mode, options.threshold, options.canvas),
                                options.canvas);
                            RowOutcome out{RowStatus::Ok, {}, {}};
                            out.files[row.image_id + suffix] = pnm(mask_to_image(combined));
                            return out;
                        } catch (const PawError& e) {
                            if (e.kind() == ErrorKind::EmptyMask) return RowOutcome{RowStatus::Warning, describe(e), {}};
                            throw;
                        }
                    });
}

int cmd_eval(const EvalOptions& options, std::ostream& log) {
    try {
        const eval::EmbeddingSet set = io::read_embeddings(options.embeddings);
        const auto counts = count_pairs(set);
        if (counts.genuine == 0 && counts.impostor == 0)
            throw PawError(ErrorKind::EmptyClass, "need two subjects or one subject with two images");
        const auto report =
            eval::repeated_auc(set, options.trials, options.impostor_cap, options.seed, options.similarity);
        const std::string json = io::report_to_json(report, options.similarity);
        std::string csv;
        if (options.roc_csv) {
            const auto scores = eval::score_pairs(set, {options.impostor_cap, options.seed}, options.similarity);
            csv = io::roc_to_csv(eval::roc_curve(scores));
        }
        io::write_file(options.report, json);
        if (options.roc_csv) io::write_file(*options.roc_csv, csv);
        log << "auc\tmean=" << report.mean << "\thalf_width=" << report.half_width << "\ttrials=" << report.trials
            << "\n";
        return kExitOk;
    } catch (const PawError& e) {
        log << "error\t" << describe(e) << "\n";
        return e.kind() == ErrorKind::EmptyClass || e.kind() == ErrorKind::ParseError ||
                       e.kind() == ErrorKind::IoError || e.kind() == ErrorKind::DimensionMismatch
                   ? kExitConfig
                   : kExitRowFailure;
    }
}

int cmd_inspect(const InspectOptions& options, std::ostream& log) {
    try {
        options.config.validate();
        io::ManifestRow row{options.image_id, options.image.string(), options.seg_mask.string(),
                            options.landmarks.string(), {}};
        const MapMode mode = options.config.map_mode;
        if (mode == MapMode::None) throw PawError(ErrorKind::ConfigError, "inspect needs a region map mode");
        if (auto problem = check_inputs({row}, mode)) throw PawError(ErrorKind::ConfigError, *problem);

        const Image image = io::read_pnm(row.image_path);
        const BinaryMask mask = build_region_map(row, mode, options.config.threshold, options.config.canvas);
        const auto files = render_outputs(row.image_id, run_pipeline(image, mask, options.config), true);
        for (const auto& [name, bytes] : files) io::write_file(options.out_dir / name, bytes);
        log << row.image_id << "\tok\t" << files.size() << " files\n";
        return kExitOk;
    } catch (const PawError& e) {
        log << options.image_id << "\terror\t" << describe(e) << "\n";
        return e.kind() == ErrorKind::ConfigError ? kExitConfig : kExitRowFailure;
    }
}

}  // namespace paw::cli
