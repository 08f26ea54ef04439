#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "paw/eval.hpp"
#include "paw/image.hpp"
#include "paw/pipeline.hpp"
#include "paw/point.hpp"

namespace paw::io {

// Binary PGM (P5) / PPM (P6), maxval <= 255. Writers emit "P5\n<w> <h>\n255\n".
Image read_pnm(const std::filesystem::path& path);
Image decode_pnm(const std::string& bytes);
std::string encode_pnm(const Image& image);
void write_pnm(const std::filesystem::path& path, const Image& image);
void write_mask(const std::filesystem::path& path, const BinaryMask& mask);

// ".pgm" for gray, ".ppm" for RGB.
std::string pnm_extension(const Image& image);

// JSON lines: {"image_id": str, "points": [[x, y], ...]}
std::map<std::string, std::vector<Point2>> read_landmarks(const std::filesystem::path& path);

// JSON lines: {"subject_id": str, "image_id": str, "embedding": [...]}
// Dimension is taken from the first record.
eval::EmbeddingSet read_embeddings(const std::filesystem::path& path);

struct ManifestRow {
    std::string image_id;
    std::string image_path;
    std::string seg_mask_path;
    std::string landmark_path;
    std::string subject_id;
};

// CSV with header image_id,image_path,seg_mask_path,landmark_path,subject_id.
// Relative paths resolve against the manifest's directory. Throws ManifestParse.
std::vector<ManifestRow> read_manifest(const std::filesystem::path& path);
std::vector<ManifestRow> parse_manifest(const std::string& text, const std::filesystem::path& base_dir = {});

// Flat JSON object; unknown keys are rejected.
PipelineConfig read_config(const std::filesystem::path& path, PipelineConfig base = {});
PipelineConfig parse_config(const std::string& text, PipelineConfig base = {});

std::string report_to_json(const eval::AucReport& report, eval::Similarity kind);
std::string roc_to_csv(const std::vector<eval::RocPoint>& curve);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& bytes);

}  // namespace paw::io
