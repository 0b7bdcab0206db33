#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "jladder/hybrid.hpp"
#include "jladder/ladder.hpp"
#include "jladder/levelcurve.hpp"
#include "jladder/transmute.hpp"

namespace jladder {

inline constexpr int kTableFormatVersion = 1;

/// Cache file name for a table; tables with different steps or options never share one.
std::string table_cache_name(double step, const EvalOptions& opts);

/// Text format: versioned header, one "t V" record per node at 17 digits, checksum trailer.
std::string serialize_table(const ZetaIntegralTable& table);
/// Throws VersionMismatch or CorruptFile.
ZetaIntegralTable parse_table(const std::string& text);

void save_table(const ZetaIntegralTable& table, const std::filesystem::path& path);
ZetaIntegralTable load_table(const std::filesystem::path& path);

/// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);
std::string read_file(const std::filesystem::path& path);

/// %.17g
std::string format_double(double x);

/// One vertex per row: polyline, re, im, modulus, error.
std::string curve_csv(const LevelCurve& curve, const EvalOptions& opts = {});
nlohmann::json curve_manifest(const LevelCurve& curve, const std::string& csv_path);

nlohmann::json to_json(const Window& w);
nlohmann::json to_json(const AlphaSet& a);
nlohmann::json to_json(const MotherReport& r);
nlohmann::json to_json(const DisconnectedSet& ds);
nlohmann::json to_json(const TargetValues& t);
nlohmann::json to_json(const CurvePoint& p);
nlohmann::json to_json(const TransmutationReport& r);

}  // namespace jladder
