#include "paw/error.hpp"

namespace paw {

std::string_view kind_name(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::EmptyMask: return "EmptyMask";
        case ErrorKind::EmptyImage: return "EmptyImage";
        case ErrorKind::DimensionMismatch: return "DimensionMismatch";
        case ErrorKind::DegenerateLandmarks: return "DegenerateLandmarks";
        case ErrorKind::DegenerateRegion: return "DegenerateRegion";
        case ErrorKind::CollinearInput: return "CollinearInput";
        case ErrorKind::ZeroPerimeter: return "ZeroPerimeter";
        case ErrorKind::DuplicateAnchors: return "DuplicateAnchors";
        case ErrorKind::DegenerateCentroid: return "DegenerateCentroid";
        case ErrorKind::DegenerateTriangle: return "DegenerateTriangle";
        case ErrorKind::CollinearSource: return "CollinearSource";
        case ErrorKind::WrongPatchCount: return "WrongPatchCount";
        case ErrorKind::WrongPatchSize: return "WrongPatchSize";
        case ErrorKind::EmptyClass: return "EmptyClass";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::ManifestParse: return "ManifestParse";
        case ErrorKind::ConfigError: return "ConfigError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::InvalidArgument: return "InvalidArgument";
    }
    return "Unknown";
}

namespace {

std::string compose(ErrorKind kind, const std::string& detail, const std::string& stage) {
    std::string msg(kind_name(kind));
    if (!stage.empty()) msg += " [stage " + stage + "]";
    if (!detail.empty()) msg += ": " + detail;
    return msg;
}

}  // namespace

PawError::PawError(ErrorKind kind, const std::string& detail, std::string stage)
    : std::runtime_error(compose(kind, detail, stage)), kind_(kind), detail_(detail), stage_(std::move(stage)) {}

}  // namespace paw
