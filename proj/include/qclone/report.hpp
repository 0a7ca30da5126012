#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qclone/tradeoff.hpp"

namespace qclone {

inline constexpr const char* kToolVersion = "1.0.0";

/// Provenance header embedded verbatim in every output file.
struct RunManifest {
    std::string command;
    int d = 0;
    std::string merit;
    int samples = 0;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::string timestamp;  // UTC ISO-8601

    static std::string now_utc_iso8601();
    std::vector<std::pair<std::string, std::string>> fields() const;
};

/// Locale-independent shortest-faithful formatting with 17 significant digits.
std::string format_double17(double v);

struct CsvRow {
    double x1 = 0.0;
    double x2 = 0.0;
    std::string kind;
    std::string source;  // boundary | corner | origin
};

/// '#'-prefixed manifest header, column header, then rows.
std::string render_csv(const RunManifest& manifest, const std::vector<CsvRow>& rows);

/// Self-contained SVG 1.1 of the achievable region: filled convex hull of the
/// sampled boundary, corners and origin, with axes and the boundary formula
/// as a text annotation.
std::string render_boundary_svg(const RunManifest& manifest, MeritKind kind, int d,
                                const std::vector<BoundaryPoint>& pts);

}  // namespace qclone
