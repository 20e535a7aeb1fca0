#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "fractalhisto/attractor.hpp"
#include "fractalhisto/sampled_function.hpp"

namespace fractalhisto {

/// CSV with header `t,f`, one row per grid point, 17 significant digits,
/// LF line endings. Values survive a write/read round trip bit-exactly.
void export_function_csv(const SampledFunction& f, const std::filesystem::path& path);

/// Inverse of export_function_csv; validates the uniform grid.
SampledFunction import_function_csv(const std::filesystem::path& path,
                                    InterpMode mode = InterpMode::nearest_left);

/// CSV with header `t,x`.
void export_cloud_csv(const PointCloud& cloud, const std::filesystem::path& path);

struct SvgSeries {
    std::string label;
    std::vector<Point> points;
};

/// Standalone SVG scatter: axes plus one styled class per series. Samples
/// are drawn as disconnected marks; joining them with a polyline would
/// fabricate continuity across bin boundaries that the functions lack.
void emit_svg(const std::vector<SvgSeries>& series, const std::filesystem::path& path);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

/// 17-significant-digit decimal rendering (lossless for doubles).
std::string format_full(double v);

}  // namespace fractalhisto
