// Regenerates tests/data. Usage: make_fixtures <data_dir>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>

#include <json.hpp>

#include "paw/eval.hpp"
#include "paw/geometry.hpp"
#include "paw/io.hpp"
#include "paw/maskops.hpp"
#include "paw/pipeline.hpp"
#include "synth.hpp"

namespace fs = std::filesystem;
using namespace paw;

namespace {

// Every third hull vertex of the mask, as landmark points.
std::vector<Point2> landmarks_from(const BinaryMask& mask) {
    const auto hull = convex_hull(trace_boundary(largest_component(mask)).points);
    std::vector<Point2> pts;
    for (std::size_t i = 0; i < hull.vertices.size(); i += 3) pts.push_back(hull.vertices[i]);
    return pts;
}

nlohmann::json points_json(const std::vector<Point2>& pts) {
    nlohmann::json out = nlohmann::json::array();
    for (const Point2& p : pts) out.push_back({p.x, p.y});
    return out;
}

void write_golden(const fs::path& dir) {
    const Image image = synth::checkerboard(112, 8);
    const BinaryMask mask = synth::ellipse_mask(112, {58, 54}, 42, 30, 0.35);
    io::write_pnm(dir / "image.pgm", image);
    io::write_mask(dir / "mask.pgm", mask);
    io::write_pnm(dir / "canvas.pgm", warp_pipeline(image, mask));
}

void write_ears(const fs::path& dir) {
    std::ostringstream manifest, landmarks;
    manifest << "image_id,image_path,seg_mask_path,landmark_path,subject_id\n";
    const double angles[] = {-0.12, 0.0, 0.15};
    for (int subject = 0; subject < 2; ++subject)
        for (int k = 0; k < 3; ++k) {
            const std::string id = "s" + std::to_string(subject) + "_" + std::to_string(k);
            const auto ear = synth::ear_sample(subject, angles[k], 112);
            io::write_pnm(dir / (id + ".pgm"), ear.image);
            io::write_mask(dir / (id + ".mask.pgm"), ear.mask);
            nlohmann::json rec{{"image_id", id}, {"points", points_json(landmarks_from(ear.mask))}};
            landmarks << rec.dump() << "\n";
            manifest << id << "," << id << ".pgm," << id << ".mask.pgm,landmarks.jsonl,subject" << subject << "\n";
        }
    io::write_file(dir / "manifest.csv", manifest.str());
    io::write_file(dir / "landmarks.jsonl", landmarks.str());
}

void write_eval(const fs::path& dir) {
    synth::Rng rng(2024);
    std::ostringstream lines;
    const int dim = 8;
    for (int s = 0; s < 5; ++s) {
        std::vector<double> mean(dim);
        for (double& m : mean) m = rng.normal();
        for (int k = 0; k < 3; ++k) {
            nlohmann::json e = nlohmann::json::array();
            for (int d = 0; d < dim; ++d) e.push_back(std::round((mean[d] + 0.7 * rng.normal()) * 1000) / 1000);
            nlohmann::json rec{{"subject_id", "subject" + std::to_string(s)},
                               {"image_id", "img" + std::to_string(s) + "_" + std::to_string(k)},
                               {"embedding", e}};
            lines << rec.dump() << "\n";
        }
    }
    io::write_file(dir / "embeddings.jsonl", lines.str());
    const auto set = io::read_embeddings(dir / "embeddings.jsonl");
    const auto report = eval::repeated_auc(set, 5, 40, 42);
    io::write_file(dir / "report.json", io::report_to_json(report, eval::Similarity::Dot));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: make_fixtures <data_dir>\n");
        return 2;
    }
    const fs::path root = argv[1];
    for (const char* sub : {"golden", "ears", "eval"}) fs::create_directories(root / sub);
    write_golden(root / "golden");
    write_ears(root / "ears");
    write_eval(root / "eval");
    return 0;
}
