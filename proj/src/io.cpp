#include "paw/io.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "paw/error.hpp"

namespace paw::io {

using nlohmann::json;

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw PawError(ErrorKind::IoError, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& bytes) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw PawError(ErrorKind::IoError, "cannot write " + path.string());
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw PawError(ErrorKind::IoError, "short write to " + path.string());
}

// ---------------------------------------------------------------- PNM

namespace {

class HeaderReader {
public:
    explicit HeaderReader(const std::string& bytes) : bytes_(bytes) {}

    int next_int() {
        skip_space_and_comments();
        std::size_t start = pos_;
        while (pos_ < bytes_.size() && std::isdigit(static_cast<unsigned char>(bytes_[pos_]))) ++pos_;
        if (start == pos_) throw PawError(ErrorKind::ParseError, "malformed PNM header");
        if (pos_ - start > 9) throw PawError(ErrorKind::ParseError, "PNM header value too large");
        return std::stoi(bytes_.substr(start, pos_ - start));
    }

    // Exactly one whitespace byte separates the header from the raster.
    std::size_t raster_offset() {
        if (pos_ >= bytes_.size() || !std::isspace(static_cast<unsigned char>(bytes_[pos_])))
            throw PawError(ErrorKind::ParseError, "missing separator after PNM header");
        return pos_ + 1;
    }

private:
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (std::isspace(static_cast<unsigned char>(bytes_[pos_]))) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
    }

    const std::string& bytes_;
    std::size_t pos_ = 2;
};

}  // namespace

Image decode_pnm(const std::string& bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
        throw PawError(ErrorKind::ParseError, "not a binary PGM/PPM (P5/P6) file");
    const int channels = bytes[1] == '5' ? 1 : 3;
    HeaderReader header(bytes);
    const int width = header.next_int();
    const int height = header.next_int();
    const int maxval = header.next_int();
    if (width <= 0 || height <= 0) throw PawError(ErrorKind::EmptyImage, "PNM has zero size");
    if (maxval <= 0 || maxval > 255) throw PawError(ErrorKind::ParseError, "only 8-bit PNM (maxval <= 255) supported");
    const std::size_t offset = header.raster_offset();
    const std::size_t need = static_cast<std::size_t>(width) * height * channels;
    if (bytes.size() < offset + need) throw PawError(ErrorKind::ParseError, "PNM raster is truncated");
    std::vector<std::uint8_t> data(bytes.begin() + static_cast<std::ptrdiff_t>(offset),
                                   bytes.begin() + static_cast<std::ptrdiff_t>(offset + need));
    return Image(width, height, channels, std::move(data));
}

Image read_pnm(const std::filesystem::path& path) { return decode_pnm(read_file(path)); }

std::string encode_pnm(const Image& image) {
    if (image.empty()) throw PawError(ErrorKind::EmptyImage, "cannot encode an empty image");
    std::string out = (image.channels() == 1 ? "P5\n" : "P6\n") + std::to_string(image.width()) + " " +
                      std::to_string(image.height()) + "\n255\n";
    out.append(reinterpret_cast<const char*>(image.data().data()), image.data().size());
    return out;
}

void write_pnm(const std::filesystem::path& path, const Image& image) { write_file(path, encode_pnm(image)); }

void write_mask(const std::filesystem::path& path, const BinaryMask& mask) { write_pnm(path, mask_to_image(mask)); }

std::string pnm_extension(const Image& image) { return image.channels() == 1 ? ".pgm" : ".ppm"; }

// ---------------------------------------------------------------- JSON lines

namespace {

template <typename F>
void for_each_json_line(const std::filesystem::path& path, F&& handle) {
    std::istringstream in(read_file(path));
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            handle(json::parse(line));
        } catch (const json::exception& e) {
            throw PawError(ErrorKind::ParseError, path.string() + ":" + std::to_string(number) + ": " + e.what());
        }
    }
}

}  // namespace

std::map<std::string, std::vector<Point2>> read_landmarks(const std::filesystem::path& path) {
    std::map<std::string, std::vector<Point2>> out;
    for_each_json_line(path, [&](const json& rec) {
        const auto id = rec.at("image_id").get<std::string>();
        std::vector<Point2> points;
        for (const auto& p : rec.at("points")) {
            if (!p.is_array() || p.size() != 2)
                throw PawError(ErrorKind::ParseError, "landmark point for '" + id + "' is not an [x, y] pair");
            points.push_back({p[0].get<double>(), p[1].get<double>()});
        }
        out[id] = std::move(points);
    });
    return out;
}

eval::EmbeddingSet read_embeddings(const std::filesystem::path& path) {
    std::optional<eval::EmbeddingSet> set;
    for_each_json_line(path, [&](const json& rec) {
        auto embedding = rec.at("embedding").get<std::vector<double>>();
        if (!set) set.emplace(embedding.size());
        set->add(rec.at("subject_id").get<std::string>(), std::move(embedding));
    });
    if (!set) throw PawError(ErrorKind::EmptyClass, "no embeddings in " + path.string());
    return *std::move(set);
}

// ---------------------------------------------------------------- manifest

namespace {

std::vector<std::string> split_csv_line(const std::string& line, int number) {
    std::vector<std::string> fields(1);
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
                fields.back() += '"';
                ++i;
            } else if (c == '"') {
                quoted = false;
            } else {
                fields.back() += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.emplace_back();
        } else if (c != '\r') {
            fields.back() += c;
        }
    }
    if (quoted) throw PawError(ErrorKind::ManifestParse, "line " + std::to_string(number) + ": unterminated quote");
    return fields;
}

}  // namespace

std::vector<ManifestRow> parse_manifest(const std::string& text, const std::filesystem::path& base_dir) {
    static const std::vector<std::string> kHeader{"image_id", "image_path", "seg_mask_path", "landmark_path",
                                                  "subject_id"};
    std::istringstream in(text);
    std::string line;
    int number = 0;
    bool header_seen = false;
    std::vector<ManifestRow> rows;
    std::map<std::string, int> seen_ids;

    auto resolve = [&](const std::string& p) {
        if (p.empty() || base_dir.empty() || std::filesystem::path(p).is_absolute()) return p;
        return (base_dir / p).string();
    };

    while (std::getline(in, line)) {
        ++number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        auto fields = split_csv_line(line, number);
        if (!header_seen) {
            if (fields != kHeader)
                throw PawError(ErrorKind::ManifestParse,
                               "header must be image_id,image_path,seg_mask_path,landmark_path,subject_id");
            header_seen = true;
            continue;
        }
        if (fields.size() != kHeader.size())
            throw PawError(ErrorKind::ManifestParse, "line " + std::to_string(number) + ": expected 5 fields, got " +
                                                         std::to_string(fields.size()));
        ManifestRow row{fields[0], resolve(fields[1]), resolve(fields[2]), resolve(fields[3]), fields[4]};
        if (row.image_id.empty() || row.image_path.empty())
            throw PawError(ErrorKind::ManifestParse,
                           "line " + std::to_string(number) + ": image_id and image_path are required");
        if (auto [it, fresh] = seen_ids.emplace(row.image_id, number); !fresh)
            throw PawError(ErrorKind::ManifestParse, "line " + std::to_string(number) + ": duplicate image_id '" +
                                                         row.image_id + "' (first on line " +
                                                         std::to_string(it->second) + ")");
        rows.push_back(std::move(row));
    }
    if (!header_seen) throw PawError(ErrorKind::ManifestParse, "manifest is empty");
    return rows;
}

std::vector<ManifestRow> read_manifest(const std::filesystem::path& path) {
    return parse_manifest(read_file(path), path.parent_path());
}

// ---------------------------------------------------------------- config

PipelineConfig parse_config(const std::string& text, PipelineConfig base) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw PawError(ErrorKind::ConfigError, std::string("config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) throw PawError(ErrorKind::ConfigError, "config must be a flat JSON object");
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "samples") base.samples = value.get<int>();
            else if (key == "anchors") base.anchors = value.get<int>();
            else if (key == "patch_size") base.patch_size = value.get<int>();
            else if (key == "grid") base.grid = value.get<int>();
            else if (key == "canvas") base.canvas = value.get<int>();
            else if (key == "threshold") {
                const int t = value.get<int>();
                if (t < 0 || t > 255) throw PawError(ErrorKind::ConfigError, "threshold must be in [0, 255]");
                base.threshold = static_cast<std::uint8_t>(t);
            } else if (key == "map_mode") base.map_mode = parse_map_mode(value.get<std::string>());
            else if (key == "threads") base.threads = value.get<int>();
            else throw PawError(ErrorKind::ConfigError, "unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw PawError(ErrorKind::ConfigError, std::string("bad config value: ") + e.what());
    }
    return base;
}

PipelineConfig read_config(const std::filesystem::path& path, PipelineConfig base) {
    return parse_config(read_file(path), base);
}

// ---------------------------------------------------------------- reports

std::string report_to_json(const eval::AucReport& report, eval::Similarity kind) {
    json doc;
    doc["mean"] = report.mean;
    doc["half_width"] = report.half_width;
    doc["trials"] = report.trials;
    doc["seed"] = report.seed;
    doc["trial_aucs"] = report.trial_aucs;
    doc["genuine_pairs"] = report.counts.genuine;
    doc["impostor_pairs"] = report.counts.impostor;
    doc["impostor_cap"] = report.impostor_cap;
    doc["impostor_pairs_per_trial"] = report.impostor_used;
    doc["similarity"] = kind == eval::Similarity::Dot ? "dot" : "cosine";
    return doc.dump(2) + "\n";
}

std::string roc_to_csv(const std::vector<eval::RocPoint>& curve) {
    std::string out = "fpr,tpr\n";
    char buf[64];
    for (const auto& p : curve) {
        std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", p.fpr, p.tpr);
        out += buf;
    }
    return out;
}

}  // namespace paw::io
