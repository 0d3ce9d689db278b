#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hiwx {

enum class ErrorCode {
    EmptySample,
    NonFinite,
    LevelOutOfRange,
    TooFewSamples,
    InsufficientClimate,
    UnknownLocation,
    ZeroScale,
    LocationMismatch,
    MissingClimate,
    DegenerateSample,
    ReferencePerfect,
    TooFewPoints,
    QuantileOrder,
    TooFewBlocks,
    BadBins,
    BadThresholds,
    BadConfig,
    NoQualifyingCrossing,
    ParseError,
    ManifestMismatch,
    IoError,
    Usage,
};

constexpr std::string_view to_string(ErrorCode code) {
    switch (code) {
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::TooFewSamples: return "TooFewSamples";
    case ErrorCode::InsufficientClimate: return "InsufficientClimate";
    case ErrorCode::UnknownLocation: return "UnknownLocation";
    case ErrorCode::ZeroScale: return "ZeroScale";
    case ErrorCode::LocationMismatch: return "LocationMismatch";
    case ErrorCode::MissingClimate: return "MissingClimate";
    case ErrorCode::DegenerateSample: return "DegenerateSample";
    case ErrorCode::ReferencePerfect: return "ReferencePerfect";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::QuantileOrder: return "QuantileOrder";
    case ErrorCode::TooFewBlocks: return "TooFewBlocks";
    case ErrorCode::BadBins: return "BadBins";
    case ErrorCode::BadThresholds: return "BadThresholds";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::NoQualifyingCrossing: return "NoQualifyingCrossing";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ManifestMismatch: return "ManifestMismatch";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::Usage: return "Usage";
    }
    return "Unknown";
}

// Every failure raised by the library carries one of the codes above so the
// CLI can report it in a single machine-parsable line.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
    throw Error(code, what);
}

} // namespace hiwx
