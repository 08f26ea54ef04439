#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace paw {

enum class ErrorKind {
    EmptyMask,
    EmptyImage,
    DimensionMismatch,
    DegenerateLandmarks,
    DegenerateRegion,
    CollinearInput,
    ZeroPerimeter,
    DuplicateAnchors,
    DegenerateCentroid,
    DegenerateTriangle,
    CollinearSource,
    WrongPatchCount,
    WrongPatchSize,
    EmptyClass,
    ParseError,
    ManifestParse,
    ConfigError,
    IoError,
    InvalidArgument,
};

std::string_view kind_name(ErrorKind kind) noexcept;

// Every failure raised by the library. `stage` is filled in by the pipeline
// when the error crosses a stage boundary; it stays empty for direct calls.
class PawError : public std::runtime_error {
public:
    PawError(ErrorKind kind, const std::string& detail, std::string stage = {});

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& stage() const noexcept { return stage_; }
    const std::string& detail() const noexcept { return detail_; }

    PawError with_stage(std::string stage) const { return PawError(kind_, detail_, std::move(stage)); }

private:
    ErrorKind kind_;
    std::string detail_;
    std::string stage_;
};

}  // namespace paw
