#pragma once

// File formats shared with the plotting scripts. CSV files are UTF-8 with a
// header row and doubles printed with 17 significant digits.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sepvol/estimator.hpp"
#include "sepvol/frames.hpp"
#include "sepvol/separability.hpp"

namespace sepvol::io {

std::string format_double(double value);

std::string frames_csv(std::span<const FrameRecord> records);
std::string scan_csv(std::span<const ScanRow> rows);
std::string sweep_csv(std::span<const SweepNode> nodes);
std::string mesh_csv(const RegionMesh& mesh);
std::string histogram_csv(const FrameHistograms& histograms);
std::string radius_csv(double decay_rate, long long d_max);

std::vector<ScanRow> parse_scan_csv(const std::string& text);

/// {"dims": [d_A, d_B], "vectors": [[re, im, re, im, ...], ...]}.
nlohmann::json frame_to_json(const Frame& frame);
Frame frame_from_json(const nlohmann::json& j);

Frame read_frame_file(const std::filesystem::path& path);
void write_frame_file(const std::filesystem::path& path, const Frame& frame);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace sepvol::io
